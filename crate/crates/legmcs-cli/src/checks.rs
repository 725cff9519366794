//! Property suites behind `verify`, the invariant report's verification
//! flags, and the acceptance tests.
//!
//! Each check takes a prepared [`FrontContext`] and returns a short success
//! detail, or an error carrying a [`legmcs::Error`] so the binary can map it
//! to the right exit code (invalid input 1, property violation 2, budget 3).

use std::collections::BTreeSet;

use anyhow::{Context, Result};
use legmcs::augment::{self, Augmentation, Homotopy};
use legmcs::disks;
use legmcs::front::FrontDiagram;
use legmcs::linhom;
use legmcs::mcs::moves::{self, Move};
use legmcs::mcs::ruling;
use legmcs::mcs::sweep;
use legmcs::mcs::Mcs;
use legmcs::sample::XorShift64;
use legmcs::{Budget, Dga, Error};

/// Everything the checks need about one front, computed once.
pub struct FrontContext {
    pub name: String,
    pub dga: Dga,
    pub augs: Vec<Augmentation>,
    pub budget: Budget,
}

impl FrontContext {
    pub fn new(name: &str, word: &str, budget: Budget) -> Result<Self> {
        let front = FrontDiagram::from_word(word).with_context(|| format!("front {}", name))?;
        let dga = Dga::new(&front, budget).with_context(|| format!("algebra of {}", name))?;
        let augs = augment::enumerate(&dga, augment::DEFAULT_MAX_AUG_VARS)
            .with_context(|| format!("augmentations of {}", name))?;
        Ok(FrontContext { name: name.to_string(), dga, augs, budget })
    }

    pub fn front(&self) -> &FrontDiagram {
        self.dga.front()
    }

    /// Ordered homotopic pairs `(i, j, certificate)` with `i < j`.
    pub fn homotopic_pairs(&self) -> Vec<(usize, usize, Homotopy)> {
        let mut out = Vec::new();
        for i in 0..self.augs.len() {
            for j in i + 1..self.augs.len() {
                if let Some(h) = augment::find_homotopy(&self.dga, &self.augs[i], &self.augs[j]) {
                    out.push((i, j, h));
                }
            }
        }
        out
    }
}

fn property(msg: String) -> anyhow::Error {
    anyhow::Error::new(Error::Property(msg))
}

/// One named property check. `deep_only` checks run only under `--deep`.
pub struct Check {
    pub id: &'static str,
    pub deep_only: bool,
    pub run: fn(&FrontContext, bool) -> Result<String>,
}

/// The full suite, in execution order.
pub const CHECKS: &[Check] = &[
    Check { id: "d-squared", deep_only: false, run: check_d_squared },
    Check { id: "degree-homogeneity", deep_only: false, run: check_degree_homogeneity },
    Check { id: "disk-agreement", deep_only: true, run: check_disk_agreement },
    Check { id: "homotopy-audit", deep_only: false, run: check_homotopy_audit },
    Check { id: "homotopy-brute-force", deep_only: true, run: check_homotopy_brute_force },
    Check { id: "bijection-counts", deep_only: false, run: check_bijection_counts },
    Check { id: "trace-replay", deep_only: false, run: check_trace_replay },
    Check { id: "slice-disk-identity", deep_only: true, run: check_slice_disk_identity },
    Check { id: "difference-parity", deep_only: true, run: check_difference_parity },
    Check { id: "transport-invariant", deep_only: true, run: check_transport_invariant },
    Check { id: "poincare-constancy", deep_only: false, run: check_poincare_constancy },
    Check { id: "fundamental-class", deep_only: false, run: check_fundamental_class },
    Check { id: "ruling-constancy", deep_only: false, run: check_ruling_constancy },
    Check { id: "ruling-normality", deep_only: false, run: check_ruling_normality },
    Check { id: "move-fuzz", deep_only: false, run: check_move_fuzz },
];

/// ∂² vanishes on every generator.
fn check_d_squared(cx: &FrontContext, _deep: bool) -> Result<String> {
    if !cx.dga.d_squared_vanishes() {
        return Err(property(format!("{}: ∂² does not vanish", cx.name)));
    }
    Ok(format!("{} generators", cx.dga.generators().len()))
}

/// Every word of `∂g` has degree `|g| − 1`.
fn check_degree_homogeneity(cx: &FrontContext, _deep: bool) -> Result<String> {
    let mut words = 0usize;
    for g in 0..cx.dga.generators().len() {
        for w in cx.dga.d(g) {
            if cx.dga.word_degree(w) != cx.dga.degree(g) - 1 {
                return Err(property(format!(
                    "{}: ∂{} has the word {} of degree {}, expected {}",
                    cx.name,
                    cx.dga.generators()[g].name,
                    cx.dga.word_name(w),
                    cx.dga.word_degree(w),
                    cx.dga.degree(g) - 1
                )));
            }
            words += 1;
        }
    }
    Ok(format!("{} differential words", words))
}

/// Cross-engine agreement: the coefficient of every monomial with exactly
/// one degree-(−1) letter (all others degree 0) in `∂q` equals the parity of
/// front disks with that corner word, at every degree-0 crossing `q`.
fn check_disk_agreement(cx: &FrontContext, _deep: bool) -> Result<String> {
    let dga = &cx.dga;
    let mut meter = cx.budget.meter();
    let shape = |w: &legmcs::Word| {
        w.iter().filter(|&&g| dga.degree(g) == -1).count() == 1
            && w.iter().all(|&g| matches!(dga.degree(g), 0 | -1))
    };
    let mut compared = 0usize;
    for event in dga.front().degree_zero_crossings() {
        let q = dga.generator_at_event(event).expect("crossing generator");
        let front_words = disks::crossing_disk_words(dga, event, &mut meter)?;
        let mut keys: BTreeSet<legmcs::Word> = front_words.keys().cloned().collect();
        keys.extend(dga.d(q).iter().cloned());
        for w in keys.iter().filter(|w| shape(w)) {
            let front_parity = front_words.get(w).copied().unwrap_or(0) % 2 == 1;
            if front_parity != dga.d(q).contains(w) {
                return Err(property(format!(
                    "{}: engines disagree on {} in ∂{}",
                    cx.name,
                    dga.word_name(w),
                    dga.generators()[q].name
                )));
            }
            compared += 1;
        }
    }
    Ok(format!("{} monomials compared", compared))
}

/// The homotopy relation is an audited equivalence (reflexive, symmetric,
/// transitive, with every solver certificate re-verified).
fn check_homotopy_audit(cx: &FrontContext, _deep: bool) -> Result<String> {
    let classes = augment::homotopy_classes(&cx.dga, &cx.augs)?;
    Ok(format!("{} augmentations in {} classes", cx.augs.len(), classes.len()))
}

/// Brute force over every candidate homotopy support (when there are at
/// most 2^20) agrees with the linear solver on every pair.
fn check_homotopy_brute_force(cx: &FrontContext, _deep: bool) -> Result<String> {
    let negatives: Vec<usize> = (0..cx.dga.generators().len())
        .filter(|&g| cx.dga.degree(g) == -1)
        .collect();
    if negatives.len() > 20 {
        return Ok(format!("skipped: 2^{} candidate supports", negatives.len()));
    }
    let mut pairs = 0usize;
    for i in 0..cx.augs.len() {
        for j in 0..cx.augs.len() {
            let solver = augment::find_homotopy(&cx.dga, &cx.augs[i], &cx.augs[j]).is_some();
            let brute = (0u32..1 << negatives.len()).any(|mask| {
                let support: BTreeSet<usize> = negatives
                    .iter()
                    .enumerate()
                    .filter(|&(b, _)| mask >> b & 1 == 1)
                    .map(|(_, &g)| g)
                    .collect();
                let h = Homotopy { support };
                augment::verify_homotopy(&cx.dga, &cx.augs[i], &cx.augs[j], &h)
            });
            if solver != brute {
                return Err(property(format!(
                    "{}: solver says {} ~ {} is {}, brute force says {}",
                    cx.name,
                    cx.augs[i].label(&cx.dga),
                    cx.augs[j].label(&cx.dga),
                    solver,
                    brute
                )));
            }
            pairs += 1;
        }
    }
    Ok(format!("{} pairs × 2^{} candidates", pairs, negatives.len()))
}

/// The bijection: the homotopy partition of the augmentations equals the
/// move-equivalence partition of their A-form MCSs.
fn check_bijection_counts(cx: &FrontContext, _deep: bool) -> Result<String> {
    let homotopy = augment::homotopy_classes(&cx.dga, &cx.augs)?;
    let mcs = sweep::mcs_classes(&cx.dga, &cx.augs)?;
    if homotopy != mcs {
        return Err(property(format!(
            "{}: homotopy classes {:?} but MCS classes {:?}",
            cx.name, homotopy, mcs
        )));
    }
    Ok(format!("{} classes on each side", homotopy.len()))
}

/// Every homotopic ordered pair yields a move trace whose replay lands
/// exactly on the target A-form; every non-homotopic pair yields none.
fn check_trace_replay(cx: &FrontContext, _deep: bool) -> Result<String> {
    let mut swept = 0usize;
    let mut refused = 0usize;
    for i in 0..cx.augs.len() {
        for j in 0..cx.augs.len() {
            if i == j {
                continue;
            }
            let homotopic =
                augment::find_homotopy(&cx.dga, &cx.augs[i], &cx.augs[j]).is_some();
            let start = Mcs::from_augmentation(&cx.dga, &cx.augs[i])?;
            let target = Mcs::from_augmentation(&cx.dga, &cx.augs[j])?;
            match sweep::are_equivalent(&cx.dga, &start, &target)? {
                Some(trace) => {
                    if !homotopic {
                        return Err(property(format!(
                            "{}: a non-homotopic pair produced a trace",
                            cx.name
                        )));
                    }
                    let replayed = sweep::replay(&start, &trace)?;
                    if replayed != target {
                        return Err(property(format!(
                            "{}: replaying the trace {} → {} missed the target",
                            cx.name,
                            cx.augs[i].label(&cx.dga),
                            cx.augs[j].label(&cx.dga)
                        )));
                    }
                    swept += 1;
                }
                None => {
                    if homotopic {
                        return Err(property(format!(
                            "{}: a homotopic pair failed to sweep",
                            cx.name
                        )));
                    }
                    refused += 1;
                }
            }
        }
    }
    Ok(format!("{} traces replayed, {} pairs refused", swept, refused))
}

/// Slice identity: every entry of every A-form slice complex equals the
/// parity of augmented half-disks on that strand pair.
fn check_slice_disk_identity(cx: &FrontContext, _deep: bool) -> Result<String> {
    let mut compared = 0usize;
    for eps in &cx.augs {
        let derived = Mcs::from_augmentation(&cx.dga, eps)?.derive()?;
        let mut meter = cx.budget.meter();
        for t in 0..cx.front().slots() {
            let n = cx.front().strands_at(t);
            for i in 1..=n {
                for j in i + 1..=n {
                    let parity =
                        disks::augmented_span_parity(&cx.dga, eps, t, i, j, &mut meter)?;
                    if derived.enter(t).entry(i, j) != parity {
                        return Err(property(format!(
                            "{}: slot {} pair ({}, {}) disagrees with the disks for {}",
                            cx.name,
                            t,
                            i,
                            j,
                            eps.label(&cx.dga)
                        )));
                    }
                    compared += 1;
                }
            }
        }
    }
    Ok(format!("{} slice entries against disks", compared))
}

/// Mark-difference parity: homotopic augmentations differ at a degree-0
/// crossing exactly when an odd number of homotopy disks corner there.
fn check_difference_parity(cx: &FrontContext, _deep: bool) -> Result<String> {
    let mut pairs = 0usize;
    for (i, j, h) in cx.homotopic_pairs() {
        let mut meter = cx.budget.meter();
        disks::check_difference_parity(&cx.dga, &cx.augs[i], &cx.augs[j], &h, &mut meter)?;
        pairs += 1;
    }
    Ok(format!("{} homotopic pairs", pairs))
}

/// The transport recurrence against raw disk enumeration: at every slot and
/// strand pair, the predicted wavefront entry equals the parity of homotopy
/// half-disks. (The sweep itself re-asserts the live wavefront against the
/// same recurrence at every event.)
fn check_transport_invariant(cx: &FrontContext, _deep: bool) -> Result<String> {
    let mut directed = Vec::new();
    for (i, j, h) in cx.homotopic_pairs() {
        let back = augment::find_homotopy(&cx.dga, &cx.augs[j], &cx.augs[i])
            .ok_or_else(|| property(format!("{}: the homotopy relation is not symmetric", cx.name)))?;
        directed.push((i, j, h));
        directed.push((j, i, back));
    }
    let mut compared = 0usize;
    for (a, b, h) in &directed {
        let v = disks::homotopy_transport(&cx.dga, &cx.augs[*a], &cx.augs[*b], h)?;
        let mut meter = cx.budget.meter();
        for t in 0..cx.front().slots() {
            let n = cx.front().strands_at(t);
            for top in 1..=n {
                for bot in top + 1..=n {
                    let parity = disks::homotopy_span_parity(
                        &cx.dga,
                        &cx.augs[*a],
                        &cx.augs[*b],
                        h,
                        t,
                        top,
                        bot,
                        &mut meter,
                    )?;
                    if v[t].contains(&(top, bot)) != parity {
                        return Err(property(format!(
                            "{}: transport and disks disagree at slot {} pair ({}, {})",
                            cx.name, t, top, bot
                        )));
                    }
                    compared += 1;
                }
            }
        }
    }
    Ok(format!("{} wavefront entries against disks", compared))
}

/// Poincaré polynomials of linearized homology are constant on homotopy
/// classes.
fn check_poincare_constancy(cx: &FrontContext, _deep: bool) -> Result<String> {
    let classes = augment::homotopy_classes(&cx.dga, &cx.augs)?;
    for class in &classes {
        let first = linhom::linearize(&cx.dga, &cx.augs[class[0]])?.poincare();
        for &m in &class[1..] {
            let other = linhom::linearize(&cx.dga, &cx.augs[m])?.poincare();
            if other != first {
                return Err(property(format!(
                    "{}: {} and {} are homotopic but have Poincaré polynomials {} and {}",
                    cx.name,
                    cx.augs[class[0]].label(&cx.dga),
                    cx.augs[m].label(&cx.dga),
                    linhom::poincare_polynomial_string(&first),
                    linhom::poincare_polynomial_string(&other)
                )));
            }
        }
    }
    Ok(format!("constant on {} classes", classes.len()))
}

/// The fundamental-class identity of linearized homology of a knot:
/// dim H₁ − dim H₋₁ = 1 for every augmentation.
fn check_fundamental_class(cx: &FrontContext, _deep: bool) -> Result<String> {
    for eps in &cx.augs {
        let p = linhom::linearize(&cx.dga, eps)?.poincare();
        let h1 = *p.get(&1).unwrap_or(&0) as i64;
        let hm1 = *p.get(&-1).unwrap_or(&0) as i64;
        if h1 - hm1 != 1 {
            return Err(property(format!(
                "{}: {} has dim H₁ − dim H₋₁ = {}, expected 1 (Poincaré {})",
                cx.name,
                eps.label(&cx.dga),
                h1 - hm1,
                linhom::poincare_polynomial_string(&p)
            )));
        }
    }
    Ok(format!("{} augmentations", cx.augs.len()))
}

/// Rulings read off A-form MCSs are constant on homotopy classes.
fn check_ruling_constancy(cx: &FrontContext, _deep: bool) -> Result<String> {
    let classes = augment::homotopy_classes(&cx.dga, &cx.augs)?;
    for class in &classes {
        let first = ruling::ruling_of(&Mcs::from_augmentation(&cx.dga, &cx.augs[class[0]])?)?;
        for &m in &class[1..] {
            let other = ruling::ruling_of(&Mcs::from_augmentation(&cx.dga, &cx.augs[m])?)?;
            if other != first {
                return Err(property(format!(
                    "{}: homotopic augmentations {} and {} give different rulings",
                    cx.name,
                    cx.augs[class[0]].label(&cx.dga),
                    cx.augs[m].label(&cx.dga)
                )));
            }
        }
    }
    Ok(format!("constant on {} classes", classes.len()))
}

/// Every ruling read off an A-form MCS passes the normality validator.
fn check_ruling_normality(cx: &FrontContext, _deep: bool) -> Result<String> {
    for eps in &cx.augs {
        let r = ruling::ruling_of(&Mcs::from_augmentation(&cx.dga, eps)?)?;
        r.is_normal(&cx.dga)
            .with_context(|| format!("{}: ruling of {}", cx.name, eps.label(&cx.dga)))?;
    }
    Ok(format!("{} rulings normal", cx.augs.len()))
}

/// Random legal moves re-validate the axioms and stay local; rejected
/// candidates must fail with a documented refusal, never a broken state.
fn check_move_fuzz(cx: &FrontContext, deep: bool) -> Result<String> {
    if cx.augs.is_empty() {
        return Ok("skipped: the front admits no MCS".into());
    }
    let steps = if deep { 10_000 } else { 2_000 };
    let (applied, ids) = fuzz_moves(cx, steps, 0x5eed)?;
    if applied == 0 {
        return Ok("skipped: the calculus has no legal move on this front".into());
    }
    Ok(format!("{} legal moves applied (catalog numbers {:?})", applied, ids))
}

/// Applies `steps` random legal moves starting from the first A-form MCS of
/// the front, returning how many were applied and which catalog numbers
/// occurred. Every application re-derives the full complex sequence and
/// re-checks the axioms and move locality; any error other than a documented
/// refusal aborts.
pub fn fuzz_moves(cx: &FrontContext, steps: usize, seed: u64) -> Result<(usize, BTreeSet<u8>)> {
    let Some(eps) = cx.augs.first() else {
        return Ok((0, BTreeSet::new()));
    };
    let base = Mcs::from_augmentation(&cx.dga, eps)?;
    let front = cx.front();
    let slots = front.slots();
    let mut equal: Vec<Vec<(usize, usize)>> = vec![Vec::new(); slots];
    let mut adjacent: Vec<Vec<(usize, usize)>> = vec![Vec::new(); slots];
    for (t, (eq, adj)) in equal.iter_mut().zip(adjacent.iter_mut()).enumerate() {
        let n = front.strands_at(t);
        for k in 1..=n {
            for l in k + 1..=n {
                if front.mu_at(t, k) == front.mu_at(t, l) {
                    eq.push((k, l));
                }
                if front.mu_at(t, k) == front.mu_at(t, l) - 1 {
                    adj.push((k, l));
                }
            }
        }
    }
    // With no marks to move and no strand pair eligible for an insertion,
    // the calculus has no legal move at all (the plain unknot, say).
    if base.handleslide_count() == 0
        && equal.iter().all(|v| v.is_empty())
        && adjacent.iter().all(|v| v.is_empty())
    {
        return Ok((0, BTreeSet::new()));
    }
    let mut rng = XorShift64::new(seed);
    let mut mcs = base.clone();
    let mut applied = 0usize;
    let mut ids = BTreeSet::new();
    let mut attempts = 0usize;
    while applied < steps {
        attempts += 1;
        if attempts > steps.saturating_mul(300) {
            return Err(property(format!(
                "{}: legal moves became too rare ({} applied of {})",
                cx.name, applied, steps
            )));
        }
        if mcs.handleslide_count() > 40 {
            mcs = base.clone();
        }
        let t = rng.below(slots);
        let len = mcs.slot(t).len();
        let pick_pair = |rng: &mut XorShift64, pool: &[(usize, usize)]| {
            if pool.is_empty() {
                None
            } else {
                Some(pool[rng.below(pool.len())])
            }
        };
        let mv = match rng.below(12) {
            0 | 1 => {
                let Some(strands) = pick_pair(&mut rng, &equal[t]) else { continue };
                Move::InsertPair { slot: t, pos: rng.below(len + 1), strands }
            }
            2 => {
                let marks = mcs.slot(t);
                let Some(pos) = (0..len.saturating_sub(1)).find(|&p| marks[p] == marks[p + 1])
                else {
                    continue;
                };
                Move::CancelPair { slot: t, pos }
            }
            3 | 4 => {
                if len < 2 {
                    continue;
                }
                Move::Commute { slot: t, pos: rng.below(len - 1) }
            }
            5 => {
                if len < 2 {
                    continue;
                }
                Move::ChainExpand { slot: t, pos: rng.below(len - 1) }
            }
            6 => {
                if len < 3 {
                    continue;
                }
                Move::ChainContract { slot: t, pos: rng.below(len - 2) }
            }
            7 => Move::PassEast { slot: t },
            8 => Move::PassWest { slot: t },
            9 => Move::CuspRemove { slot: t },
            10 => {
                let Some(strands) = pick_pair(&mut rng, &adjacent[t]) else { continue };
                Move::Explode { slot: t, pos: rng.below(len + 1), strands }
            }
            _ => {
                let Some(strands) = pick_pair(&mut rng, &equal[t]) else { continue };
                Move::CuspInsert { slot: t, strands }
            }
        };
        match moves::apply(&mcs, &mv) {
            Ok((next, receipt)) => {
                ids.insert(receipt.id);
                mcs = next;
                applied += 1;
            }
            Err(Error::InvalidMove(_)) | Err(Error::ForbiddenMove(_)) => {}
            Err(other) => {
                return Err(anyhow::Error::new(other)
                    .context(format!("{}: fuzz move {:?} broke the sequence", cx.name, mv)));
            }
        }
    }
    Ok((applied, ids))
}
