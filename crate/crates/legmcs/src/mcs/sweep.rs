//! The constructive equivalence sweep between canonical MCSs.
//!
//! Two augmentations that differ by a chain homotopy have canonical MCSs
//! connected by a finite sequence of catalog moves. This module *builds*
//! that sequence: it walks the front west to east, converting the canonical
//! form of `e0` into the canonical form of `e1` slot by slot, carrying a
//! wavefront of handleslide marks between the converted and unconverted
//! parts. At every event the wavefront is asserted — as a machine check,
//! not an assumption — to equal the algebraic transport of the homotopy
//! ([`crate::disks::homotopy_transport`]), and the slice complexes west and
//! east of it are asserted to match the two canonical forms. Every emitted
//! move goes through [`moves::apply`], so it is individually re-validated
//! and locality-checked; the returned trace replays from scratch.
//!
//! A [`Error::Property`] from this module means the constructive theory
//! itself failed on this input, never that the input was malformed.

use crate::augment::{self, Augmentation, Homotopy};
use crate::disks;
use crate::front::EventKind;
use crate::mcs::moves::{self, Applied, Move};
use crate::mcs::Mcs;
use crate::{Dga, Error, Result};
use std::collections::BTreeSet;

/// Marks sorted the way the sweep keeps its wavefront: upper strand
/// ascending, lower strand descending.
fn canonical_order(v: &BTreeSet<(usize, usize)>) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = v.iter().copied().collect();
    out.sort_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
    out
}

struct Sweep<'a> {
    work: Mcs,
    trace: Vec<Applied>,
    /// The untouched canonical form of `e0`, for reading how many marks of a
    /// slot belong to the unconverted east part.
    start: &'a Mcs,
}

impl Sweep<'_> {
    fn push(&mut self, mv: Move) -> Result<()> {
        let (next, ap) = moves::apply(&self.work, &mv)?;
        self.work = next;
        self.trace.push(ap);
        Ok(())
    }

    fn pass_all(&mut self, slot: usize) -> Result<()> {
        while !self.work.slot(slot).is_empty() {
            self.push(Move::PassEast { slot })?;
        }
        Ok(())
    }

    /// Moves the mark at `from` west until it sits at `to + 1`, then cancels
    /// it against its (identical) neighbor at `to`.
    fn bubble_west_and_cancel(&mut self, slot: usize, from: usize, to: usize) -> Result<()> {
        let mut p = from;
        while p > to + 1 {
            self.push(Move::Commute { slot, pos: p - 1 })?;
            p -= 1;
        }
        self.push(Move::CancelPair { slot, pos: to })?;
        Ok(())
    }

    /// Restores the wavefront order among the `count` marks that just
    /// arrived at the west end of `slot`: sorts them upper-ascending,
    /// lower-descending and cancels adjacent duplicates. The arriving marks
    /// commute freely — a chained pair here would falsify the transport
    /// recurrence, so it is reported as a property violation.
    fn sort_arrivals(&mut self, slot: usize, mut count: usize) -> Result<()> {
        loop {
            let marks = self.work.slot(slot);
            let mut acted = false;
            for p in 0..count.saturating_sub(1) {
                let (a, b) = (marks[p], marks[p + 1]);
                if a == b {
                    self.push(Move::CancelPair { slot, pos: p })?;
                    count -= 2;
                    acted = true;
                    break;
                }
                if a.0 > b.0 || (a.0 == b.0 && a.1 < b.1) {
                    if a.0 == b.1 || a.1 == b.0 {
                        return Err(Error::Property(format!(
                            "the arrival sort in slot {} met the chained pair \
                             {:?}, {:?}; the transport recurrence does not \
                             predict this",
                            slot, a, b
                        )));
                    }
                    self.push(Move::Commute { slot, pos: p })?;
                    acted = true;
                    break;
                }
            }
            if !acted {
                return Ok(());
            }
        }
    }
}

/// Constructs the move trace from the canonical MCS of `e0` to the
/// canonical MCS of `e1`, the two augmentations being chain homotopic via
/// `h`. Errors with [`Error::Property`] if `h` is not a homotopy from `e0`
/// to `e1` or if any step of the construction fails its machine checks.
pub fn sweep_equivalence(
    dga: &Dga,
    e0: &Augmentation,
    e1: &Augmentation,
    h: &Homotopy,
) -> Result<Vec<Applied>> {
    let start = Mcs::from_augmentation(dga, e0)?;
    let target = Mcs::from_augmentation(dga, e1)?;
    // Verifies the homotopy and computes the predicted wavefront at the west
    // edge of every slot.
    let transported = disks::homotopy_transport(dga, e0, e1, h)?;
    let ca = start.derive()?;
    let cb = target.derive()?;
    let front = dga.front();
    let events = front.events().to_vec();
    let mut sw = Sweep { work: start.clone(), trace: Vec::new(), start: &start };

    for (t, ev) in events.iter().enumerate() {
        let canon = canonical_order(&transported[t]);
        let vlen = canon.len();
        // The wavefront must sit at the west end of the slot, exactly as
        // transported, with the unconverted canonical marks east of it.
        let marks = sw.work.slot(t);
        if marks.len() < vlen || marks[..vlen] != canon[..] {
            return Err(Error::Property(format!(
                "slot {}: wavefront {:?} does not carry the transported matrix {:?}",
                t, marks, canon
            )));
        }
        if marks[vlen..] != sw.start.slot(t)[..] {
            return Err(Error::Property(format!(
                "slot {}: east marks {:?} are not the unconverted canonical marks",
                t,
                &marks[vlen..]
            )));
        }
        let derived = sw.work.derive()?;
        if derived.enter(t) != cb.enter(t) {
            return Err(Error::Property(format!(
                "slot {}: the complex west of the wavefront differs from the target form",
                t
            )));
        }
        if derived.exit(t) != ca.exit(t) {
            return Err(Error::Property(format!(
                "slot {}: the complex east of the wavefront differs from the source form",
                t
            )));
        }

        let k = ev.level;
        match ev.kind {
            EventKind::LeftCusp => sw.pass_all(t)?,
            EventKind::RightCusp => sweep_right_cusp(&mut sw, t, k)?,
            EventKind::Crossing => {
                let g = dga
                    .generator_at_event(t)
                    .ok_or_else(|| Error::Property(format!("no generator at event {}", t)))?;
                if dga.degree(g) == 0 {
                    let vkk = transported[t].contains(&(k, k + 1));
                    sweep_augmented_crossing(&mut sw, t, k, e0.eval(g), e1.eval(g), vkk)?;
                } else if h.support.contains(&g) {
                    sweep_homotopy_crossing(&mut sw, t, k)?;
                } else {
                    sw.pass_all(t)?;
                }
            }
        }

        // Everything that passed east sits west of slot t+1's own canonical
        // mark; restore the wavefront order there.
        let arrivals = sw.work.slot(t + 1).len() - sw.start.slot(t + 1).len();
        sw.sort_arrivals(t + 1, arrivals)?;
    }

    if sw.work != target {
        return Err(Error::Property(
            "the sweep finished on a different MCS than the target canonical form".into(),
        ));
    }
    Ok(sw.trace)
}

/// A degree-zero crossing of strands `k`, `k+1`. The wavefront may hold the
/// pair `(k, k+1)`; together with the canonical mark (present iff
/// `eps0`) it decides the mark east of the crossing (present iff `eps1`).
/// Every other wavefront mark passes east, chaining through the `(k, k+1)`
/// marks it meets; the composites pass along with it.
fn sweep_augmented_crossing(
    sw: &mut Sweep,
    t: usize,
    k: usize,
    eps0: bool,
    eps1: bool,
    vkk: bool,
) -> Result<()> {
    if eps0 ^ vkk != eps1 {
        return Err(Error::Property(format!(
            "slot {}: the transported diagonal pair contradicts the augmentation values",
            t
        )));
    }
    let mut guard = 0usize;
    loop {
        guard += 1;
        if guard > 10_000 {
            return Err(Error::Property(format!(
                "slot {}: the crossing loop did not terminate",
                t
            )));
        }
        let marks = sw.work.slot(t);
        let Some(p) = marks.iter().rposition(|&m| m != (k, k + 1)) else { break };
        if p == marks.len() - 1 {
            sw.push(Move::PassEast { slot: t })?;
        } else {
            // The neighbor east of the easternmost active mark is (k, k+1).
            let h = marks[p];
            if h.1 == k || h.0 == k + 1 {
                sw.push(Move::ChainExpand { slot: t, pos: p })?;
            } else {
                sw.push(Move::Commute { slot: t, pos: p })?;
            }
        }
    }
    match sw.work.slot(t).len() {
        0 | 1 => {}
        2 => sw.push(Move::CancelPair { slot: t, pos: 0 })?,
        n => {
            return Err(Error::Property(format!(
                "slot {}: {} copies of the diagonal pair survived",
                t, n
            )))
        }
    }
    if (sw.work.slot(t).len() == 1) != eps1 {
        return Err(Error::Property(format!(
            "slot {}: the surviving mark contradicts the target augmentation",
            t
        )));
    }
    Ok(())
}

/// A degree −1 crossing of strands `k`, `k+1` in the homotopy's support.
/// The pair is Maslov-adjacent here, so its exploded block realizes the
/// homotopy's contribution: inserted between the wavefront marks with upper
/// strand below `k` and the rest, the block reads the source complex on its
/// `(·, k)` column and the target complex on its `(k+1, ·)` row, which is
/// exactly what the transport recurrence adds.
fn sweep_homotopy_crossing(sw: &mut Sweep, t: usize, k: usize) -> Result<()> {
    let pos = sw.work.slot(t).iter().take_while(|&&(i, _)| i < k).count();
    sw.push(Move::Explode { slot: t, pos, strands: (k, k + 1) })?;
    sw.pass_all(t)
}

/// A right cusp at `k`: the wavefront must be consumed entirely. Marks
/// clear of the cusp pass east; marks ending on a cusp strand are absorbed;
/// a mark with exactly one end on `k` or `k+1` is removed by exploding its
/// Maslov-adjacent partner pair, whose block contains the mark's mate (the
/// cusp axiom guarantees the diagonal entry), cancelling the two, and
/// consuming the block remainder in later rounds.
fn sweep_right_cusp(sw: &mut Sweep, t: usize, k: usize) -> Result<()> {
    let mut guard = 0usize;
    while let Some(&(i, j)) = sw.work.slot(t).last() {
        guard += 1;
        if guard > 100_000 {
            return Err(Error::Property(format!(
                "slot {}: the cusp loop did not terminate",
                t
            )));
        }
        if j == k || i == k + 1 {
            sw.push(Move::CuspRemove { slot: t })?;
        } else if j < k || i > k + 1 || (i < k && j > k + 1) {
            sw.push(Move::PassEast { slot: t })?;
        } else if i == k && j > k + 1 {
            let len = sw.work.slot(t).len();
            sw.push(Move::Explode { slot: t, pos: len, strands: (k + 1, j) })?;
            let mate = sw.work.slot(t)[len..]
                .iter()
                .position(|&m| m == (k, j))
                .map(|r| len + r)
                .ok_or_else(|| {
                    Error::Property(format!(
                        "slot {}: the exploded block of ({}, {}) lacks the mate ({}, {})",
                        t,
                        k + 1,
                        j,
                        k,
                        j
                    ))
                })?;
            sw.bubble_west_and_cancel(t, mate, len - 1)?;
        } else if j == k + 1 && i < k {
            let len = sw.work.slot(t).len();
            sw.push(Move::Explode { slot: t, pos: len, strands: (i, k) })?;
            let mate = sw.work.slot(t)[len..]
                .iter()
                .position(|&m| m == (i, k + 1))
                .map(|r| len + r)
                .ok_or_else(|| {
                    Error::Property(format!(
                        "slot {}: the exploded block of ({}, {}) lacks the mate ({}, {})",
                        t,
                        i,
                        k,
                        i,
                        k + 1
                    ))
                })?;
            sw.bubble_west_and_cancel(t, mate, len - 1)?;
        } else {
            // (i, j) == (k, k+1): impossible, the cusp strands have unequal
            // Maslov potential.
            return Err(Error::Property(format!(
                "slot {}: a ({}, {}) mark sits west of the cusp of those strands",
                t, i, j
            )));
        }
    }
    Ok(())
}

/// Whether two canonical MCSs are equivalent: reads their augmentations
/// back, searches for a chain homotopy, and if one exists constructs the
/// full move trace from `a` to `b`. `Ok(None)` means no homotopy exists (the
/// two are in different classes); an error from the sweep means the
/// constructive machinery itself failed, which is a reportable defect.
pub fn are_equivalent(dga: &Dga, a: &Mcs, b: &Mcs) -> Result<Option<Vec<Applied>>> {
    let e0 = a.augmentation_of(dga)?;
    let e1 = b.augmentation_of(dga)?;
    match augment::find_homotopy(dga, &e0, &e1) {
        None => Ok(None),
        Some(h) => sweep_equivalence(dga, &e0, &e1, &h).map(Some),
    }
}

/// Replays a recorded trace from `start`, re-validating every move and
/// cross-checking the recorded catalog numbers against the re-derived ones.
pub fn replay(start: &Mcs, trace: &[Applied]) -> Result<Mcs> {
    let mut cur = start.clone();
    for ap in trace {
        let (next, got) = moves::apply(&cur, &ap.mv)?;
        if got.id != ap.id {
            return Err(Error::Property(format!(
                "recorded move {} replayed as move {}",
                ap.id, got.id
            )));
        }
        cur = next;
    }
    Ok(cur)
}

/// Partitions the augmentations into equivalence classes of their canonical
/// MCSs, each merge being established by an actual sweep (so every class is
/// constructively certified, not inferred). Returns the classes as sorted
/// index groups, ordered by their smallest member.
pub fn mcs_classes(dga: &Dga, augs: &[Augmentation]) -> Result<Vec<Vec<usize>>> {
    let n = augs.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for i in 0..n {
        for j in i + 1..n {
            if let Some(h) = augment::find_homotopy(dga, &augs[i], &augs[j]) {
                sweep_equivalence(dga, &augs[i], &augs[j], &h)?;
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut root_of: Vec<Option<usize>> = vec![None; n];
    for x in 0..n {
        let r = find(&mut parent, x);
        match root_of[r] {
            Some(g) => groups[g].push(x),
            None => {
                root_of[r] = Some(groups.len());
                groups.push(vec![x]);
            }
        }
    }
    Ok(groups)
}
