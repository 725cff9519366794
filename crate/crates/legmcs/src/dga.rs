//! The Chekanov–Eliashberg differential graded algebra of a front diagram,
//! with Z/2 coefficients.
//!
//! Generators are the crossings (`a1`, `a2`, … in left-to-right order) and
//! the right cusps (`b1`, `b2`, …) of the front. Crossings are graded by the
//! difference of Maslov potentials of their two strands, right cusps have
//! degree 1. The differential of a generator counts rigid immersed disks in
//! the Lagrangian resolution of the front with one positive corner at that
//! generator; the boundary word of each disk is read off along the disk
//! boundary starting after the positive corner.
//!
//! Disks are enumerated by sweeping westward from the positive corner. The
//! sweep state is a set of vertical *slabs*, each bounded by an upper and a
//! lower boundary thread running along strands of the front:
//!
//! * at a crossing, a thread either follows its strand or turns a convex
//!   corner there, adding the crossing to the boundary word — the upper
//!   thread may only corner from below the crossing, the lower thread only
//!   from above, and a slab hugging the crossing on both sides dies;
//! * at a right cusp (a loop of the resolution), a slab spanning the cusp
//!   may cover it, fold around it (splitting into two overlapping slabs), or
//!   pinch through the loop's crossing, which adds the cusp generator twice
//!   in a row to the word;
//! * at a left cusp, the slab between the two newborn strands caps off, two
//!   slabs meeting the cusp from above and below merge, and a slab that
//!   touches the dying strands any other way cannot continue.
//!
//! A completed history assembles its boundary word by walking the thread
//! links; histories whose threads form more than one boundary circle are
//! discarded (they bound annuli, not disks). The same word produced by two
//! different disks cancels modulo 2.

use crate::budget::{Budget, Meter};
use crate::front::{EventKind, FrontDiagram};
use crate::{Error, Result};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// Index of a generator within its [`Dga`].
pub type GenId = usize;

/// A word in the generators; the empty word is the unit of the algebra.
pub type Word = Vec<GenId>;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum GeneratorKind {
    Crossing,
    RightCusp,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub id: GenId,
    /// `a<i>` for crossings, `b<j>` for right cusps, counted left to right.
    pub name: String,
    /// Index of the event the generator sits at.
    pub event: usize,
    pub kind: GeneratorKind,
    pub degree: i64,
}

/// The Chekanov–Eliashberg algebra of a front: its generators and the full
/// differential.
#[derive(Clone, Debug)]
pub struct Dga {
    front: FrontDiagram,
    generators: Vec<Generator>,
    /// Generator sitting at each event, if any.
    event_gen: Vec<Option<GenId>>,
    /// `d[g]` is the set of boundary words of `∂g`, reduced modulo 2.
    d: Vec<BTreeSet<Word>>,
}

impl Dga {
    pub fn new(front: &FrontDiagram, budget: Budget) -> Result<Self> {
        let mut generators = Vec::new();
        let mut event_gen = vec![None; front.events().len()];
        let (mut na, mut nb) = (0usize, 0usize);
        for (idx, ev) in front.events().iter().enumerate() {
            let (kind, name) = match ev.kind {
                EventKind::Crossing => {
                    na += 1;
                    (GeneratorKind::Crossing, format!("a{}", na))
                }
                EventKind::RightCusp => {
                    nb += 1;
                    (GeneratorKind::RightCusp, format!("b{}", nb))
                }
                EventKind::LeftCusp => continue,
            };
            let id = generators.len();
            event_gen[idx] = Some(id);
            generators.push(Generator {
                id,
                name,
                event: idx,
                kind,
                degree: front.degree(idx).unwrap(),
            });
        }

        let mut meter = budget.meter();
        let mut d = Vec::with_capacity(generators.len());
        for g in &generators {
            d.push(differential_of(front, &generators, &event_gen, g, &mut meter)?);
        }
        let dga = Dga { front: front.clone(), generators, event_gen, d };
        dga.check_degrees()?;
        Ok(dga)
    }

    pub fn front(&self) -> &FrontDiagram {
        &self.front
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    /// The generator at event `idx`, if that event is a crossing or right cusp.
    pub fn generator_at_event(&self, idx: usize) -> Option<GenId> {
        self.event_gen[idx]
    }

    pub fn by_name(&self, name: &str) -> Option<GenId> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn d(&self, g: GenId) -> &BTreeSet<Word> {
        &self.d[g]
    }

    pub fn degree(&self, g: GenId) -> i64 {
        self.generators[g].degree
    }

    pub fn word_degree(&self, w: &Word) -> i64 {
        w.iter().map(|&g| self.generators[g].degree).sum()
    }

    /// Renders a word like `a1 a2 b1`; the empty word renders as `1`.
    pub fn word_name(&self, w: &Word) -> String {
        if w.is_empty() {
            "1".into()
        } else {
            w.iter().map(|&g| self.generators[g].name.as_str()).collect::<Vec<_>>().join(" ")
        }
    }

    /// Every word of `∂g` must have degree `|g| - 1`.
    fn check_degrees(&self) -> Result<()> {
        for g in &self.generators {
            for w in &self.d[g.id] {
                if self.word_degree(w) != g.degree - 1 {
                    return Err(Error::Property(format!(
                        "∂{} contains the word {:?} of degree {}, expected {}",
                        g.name,
                        self.word_name(w),
                        self.word_degree(w),
                        g.degree - 1
                    )));
                }
            }
        }
        Ok(())
    }

    /// Expands `∂(∂g)` for every generator and checks that it vanishes.
    pub fn d_squared_vanishes(&self) -> bool {
        for g in 0..self.generators.len() {
            let mut acc: BTreeMap<Word, bool> = BTreeMap::new();
            for w in &self.d[g] {
                for (j, &letter) in w.iter().enumerate() {
                    for sub in &self.d[letter] {
                        let mut expanded = Vec::with_capacity(w.len() + sub.len() - 1);
                        expanded.extend_from_slice(&w[..j]);
                        expanded.extend_from_slice(sub);
                        expanded.extend_from_slice(&w[j + 1..]);
                        *acc.entry(expanded).or_insert(false) ^= true;
                    }
                }
            }
            if acc.values().any(|&odd| odd) {
                return false;
            }
        }
        true
    }

    /// JSON form: generator list plus the differential, with words as arrays
    /// of generator names. Deterministic: generators left to right, words in
    /// index-lexicographic order.
    pub fn to_json(&self) -> serde_json::Value {
        let gens: Vec<_> = self
            .generators
            .iter()
            .map(|g| {
                serde_json::json!({
                    "id": g.name,
                    "kind": match g.kind {
                        GeneratorKind::Crossing => "crossing",
                        GeneratorKind::RightCusp => "right_cusp",
                    },
                    "degree": g.degree,
                })
            })
            .collect();
        let mut dmap = serde_json::Map::new();
        for g in &self.generators {
            let words: Vec<serde_json::Value> = self.d[g.id]
                .iter()
                .map(|w| {
                    serde_json::Value::Array(
                        w.iter()
                            .map(|&x| serde_json::Value::String(self.generators[x].name.clone()))
                            .collect(),
                    )
                })
                .collect();
            dmap.insert(g.name.clone(), serde_json::Value::Array(words));
        }
        serde_json::json!({ "generators": gens, "d": dmap })
    }
}

impl fmt::Display for Dga {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in &self.generators {
            let terms: Vec<String> = self.d[g.id].iter().map(|w| self.word_name(w)).collect();
            let rhs = if terms.is_empty() { "0".into() } else { terms.join(" + ") };
            writeln!(f, "∂{} = {}", g.name, rhs)?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// The westward sweep.

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Side {
    East,
    West,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Link {
    /// The positive corner of the disk.
    Origin,
    To(usize, Side),
}

#[derive(Clone, Debug)]
struct Thread {
    letters: Vec<GenId>,
    east: Link,
    west: Option<Link>,
}

#[derive(Clone, Copy, Debug)]
struct Slab {
    /// Strand levels of the two boundary threads, `u < l`.
    u: usize,
    l: usize,
    up: usize,
    lo: usize,
}

#[derive(Clone, Debug)]
struct State {
    slabs: Vec<Slab>,
    threads: Vec<Thread>,
}

impl State {
    fn spawn(k: usize) -> State {
        let threads = vec![
            Thread { letters: Vec::new(), east: Link::Origin, west: None },
            Thread { letters: Vec::new(), east: Link::Origin, west: None },
        ];
        State { slabs: vec![Slab { u: k, l: k + 1, up: 0, lo: 1 }], threads }
    }

    fn levels_are_distinct(&self) -> bool {
        let mut mask: u128 = 0;
        for s in &self.slabs {
            if s.u >= s.l {
                return false;
            }
            for lv in [s.u, s.l] {
                if mask >> lv & 1 == 1 {
                    return false;
                }
                mask |= 1 << lv;
            }
        }
        true
    }

    /// Walks the boundary circle from the positive corner; returns the word
    /// if the threads form a single circle.
    fn assemble(&self) -> Option<Word> {
        let mut word = Vec::new();
        let mut visited = 0usize;
        let mut cur = (0usize, Side::East);
        loop {
            visited += 1;
            if visited > self.threads.len() {
                unreachable!("boundary walk revisited a thread");
            }
            let t = &self.threads[cur.0];
            match cur.1 {
                Side::East => word.extend(t.letters.iter().copied()),
                Side::West => word.extend(t.letters.iter().rev().copied()),
            }
            let link = match cur.1 {
                Side::East => t.west.expect("open west end in a finished disk"),
                Side::West => t.east,
            };
            match link {
                Link::Origin => break,
                Link::To(t2, s2) => cur = (t2, s2),
            }
        }
        (visited == self.threads.len()).then_some(word)
    }
}

/// Per-slab outcome at one event, before combining across slabs.
#[derive(Clone, Debug)]
enum SlabMove {
    /// The slab continues as one or two slabs; new threads may be created.
    Keep(Vec<Slab>),
    /// Same, with a corner letter appended to one existing thread.
    Corner(Slab, usize),
    /// Fold at a right cusp: two slabs plus a pair of east-linked new
    /// threads, optionally both marked with the cusp letter (a pinch).
    Fold { first: Slab, second: Slab, letter: Option<GenId> },
}

fn differential_of(
    front: &FrontDiagram,
    generators: &[Generator],
    event_gen: &[Option<GenId>],
    origin: &Generator,
    meter: &mut Meter,
) -> Result<BTreeSet<Word>> {
    let mut parity: BTreeMap<Word, bool> = BTreeMap::new();
    if origin.kind == GeneratorKind::RightCusp {
        // The interior of the resolution loop: an empty boundary word.
        parity.insert(Vec::new(), true);
    }

    let k = front.events()[origin.event].level;
    let mut stack: Vec<(State, usize)> = vec![(State::spawn(k), origin.event)];

    while let Some((state, slot)) = stack.pop() {
        meter.charge(1)?;
        if state.slabs.is_empty() {
            if let Some(word) = state.assemble() {
                debug_assert_eq!(
                    word.iter().map(|&g| generators[g].degree).sum::<i64>(),
                    origin.degree - 1,
                    "inhomogeneous disk word"
                );
                *parity.entry(word).or_insert(false) ^= true;
            }
            continue;
        }
        if slot == 0 {
            continue;
        }
        let ev = front.events()[slot - 1];
        let letter = event_gen[slot - 1];
        for next in step_west(&state, ev.kind, ev.level, letter) {
            stack.push((next, slot - 1));
        }
    }

    Ok(parity.into_iter().filter_map(|(w, odd)| odd.then_some(w)).collect())
}

/// All successor states of `state` across one event, moving west.
fn step_west(state: &State, kind: EventKind, k: usize, letter: Option<GenId>) -> Vec<State> {
    match kind {
        EventKind::Crossing => {
            let letter = letter.expect("crossing without generator");
            // Options per slab; indices into state.slabs.
            let mut options: Vec<Vec<SlabMove>> = Vec::with_capacity(state.slabs.len());
            for s in &state.slabs {
                if s.u == k && s.l == k + 1 {
                    // Both threads would meet at the crossing point.
                    return Vec::new();
                }
                let swap = |i: usize| {
                    if i == k {
                        k + 1
                    } else if i == k + 1 {
                        k
                    } else {
                        i
                    }
                };
                let straight = Slab { u: swap(s.u), l: swap(s.l), up: s.up, lo: s.lo };
                let mut opts = vec![SlabMove::Keep(vec![straight])];
                // A cornering thread keeps its level and records the letter;
                // the upper thread corners from below the crossing point, the
                // lower thread from above. (At most one of the two cases can
                // hold since u < l.)
                if s.u == k + 1 {
                    opts.push(SlabMove::Corner(*s, s.up));
                }
                if s.l == k {
                    opts.push(SlabMove::Corner(*s, s.lo));
                }
                options.push(opts);
            }
            combine(state, &options, letter)
        }
        EventKind::RightCusp => {
            let letter = letter.expect("right cusp without generator");
            let pi = |i: usize| if i < k { i } else { i + 2 };
            let mut options: Vec<Vec<SlabMove>> = Vec::with_capacity(state.slabs.len());
            for s in &state.slabs {
                let cover = Slab { u: pi(s.u), l: pi(s.l), up: s.up, lo: s.lo };
                let mut opts = vec![SlabMove::Keep(vec![cover])];
                if s.u < k && s.l >= k {
                    // The slab spans the cusp: it may also fold around it or
                    // pinch through the loop crossing.
                    opts.push(SlabMove::Fold {
                        first: Slab { u: pi(s.u), l: k + 1, up: s.up, lo: usize::MAX },
                        second: Slab { u: k, l: pi(s.l), up: usize::MAX, lo: s.lo },
                        letter: None,
                    });
                    opts.push(SlabMove::Fold {
                        first: Slab { u: pi(s.u), l: k, up: s.up, lo: usize::MAX },
                        second: Slab { u: k + 1, l: pi(s.l), up: usize::MAX, lo: s.lo },
                        letter: Some(letter),
                    });
                }
                options.push(opts);
            }
            combine(state, &options, letter)
        }
        EventKind::LeftCusp => {
            let tau = |i: usize| if i < k { i } else { i - 2 };
            // Find the threads sitting on the two dying strands.
            let mut at_k: Option<(usize, bool)> = None; // (slab index, is_upper)
            let mut at_k1: Option<(usize, bool)> = None;
            for (i, s) in state.slabs.iter().enumerate() {
                if s.u == k {
                    at_k = Some((i, true));
                }
                if s.l == k {
                    at_k = Some((i, false));
                }
                if s.u == k + 1 {
                    at_k1 = Some((i, true));
                }
                if s.l == k + 1 {
                    at_k1 = Some((i, false));
                }
            }
            let mut next = state.clone();
            match (at_k, at_k1) {
                (None, None) => {}
                (Some((i, true)), Some((j, false))) if i == j => {
                    // The slab between the newborn strands caps off.
                    let s = next.slabs.remove(i);
                    next.threads[s.up].west = Some(Link::To(s.lo, Side::West));
                    next.threads[s.lo].west = Some(Link::To(s.up, Side::West));
                }
                (Some((i, false)), Some((j, true))) if i != j => {
                    // Two slabs meet the cusp from above and below: merge.
                    let a = next.slabs[i];
                    let b = next.slabs[j];
                    next.threads[a.lo].west = Some(Link::To(b.up, Side::West));
                    next.threads[b.up].west = Some(Link::To(a.lo, Side::West));
                    let merged = Slab { u: a.u, l: b.l, up: a.up, lo: b.lo };
                    let (hi, lo_idx) = if i > j { (i, j) } else { (j, i) };
                    next.slabs.remove(hi);
                    next.slabs.remove(lo_idx);
                    next.slabs.push(merged);
                }
                // A boundary thread reaches the cusp without a partner to
                // continue along: the disk cannot close up.
                _ => return Vec::new(),
            }
            for s in &mut next.slabs {
                s.u = tau(s.u);
                s.l = tau(s.l);
            }
            if !next.levels_are_distinct() {
                return Vec::new();
            }
            vec![next]
        }
    }
}

/// Expands the cartesian product of per-slab options into successor states,
/// discarding any combination whose thread levels collide. `letter` is the
/// generator of the event being crossed, recorded by `Corner` moves.
fn combine(state: &State, options: &[Vec<SlabMove>], letter: GenId) -> Vec<State> {
    let mut out = Vec::new();
    let mut choice = vec![0usize; options.len()];
    'outer: loop {
        let mut next = State { slabs: Vec::with_capacity(state.slabs.len() + 1), threads: state.threads.clone() };
        for (i, opts) in options.iter().enumerate() {
            match &opts[choice[i]] {
                SlabMove::Keep(slabs) => next.slabs.extend_from_slice(slabs),
                SlabMove::Corner(slab, thread) => {
                    next.threads[*thread].letters.push(letter);
                    next.slabs.push(*slab);
                }
                SlabMove::Fold { first, second, letter } => {
                    let n1 = next.threads.len();
                    let n2 = n1 + 1;
                    next.threads.push(Thread {
                        letters: letter.iter().copied().collect(),
                        east: Link::To(n2, Side::East),
                        west: None,
                    });
                    next.threads.push(Thread {
                        letters: letter.iter().copied().collect(),
                        east: Link::To(n1, Side::East),
                        west: None,
                    });
                    let mut f = *first;
                    f.lo = n1;
                    let mut sec = *second;
                    sec.up = n2;
                    next.slabs.push(f);
                    next.slabs.push(sec);
                }
            }
        }
        if next.levels_are_distinct() {
            out.push(next);
        }
        // Advance the mixed-radix counter.
        for i in 0..options.len() {
            choice[i] += 1;
            if choice[i] < options[i].len() {
                continue 'outer;
            }
            choice[i] = 0;
        }
        break;
    }
    out
}
