//! Rigid disks read directly off a front diagram.
//!
//! This module enumerates immersed disks whose boundary lies on the front:
//! the east boundary is either a vertical segment between two strands or the
//! west quadrant of a crossing, the rest of the boundary follows strands
//! westward, turns corners at crossings, folds through right-cusp points and
//! closes up at left cusps. Every disk is returned as an explicit
//! [`DiskBoundary`] — corner letters in counterclockwise order plus the
//! boundary polyline — so results can be rendered and audited.
//!
//! The enumeration is deliberately independent of the differential engine in
//! [`crate::dga`], which counts the same rigid objects in the Lagrangian
//! resolution. Comparing the two engines, and comparing both against the
//! slice complexes of [`crate::mcs`] and the transport recurrence
//! [`homotopy_transport`], is what the verification battery is built on:
//!
//! * slice-complex entries of a canonical MCS equal the parity of augmented
//!   half-disks over every slot,
//! * `⟨∂q, w⟩` equals the parity of front disks at `q` with corner word `w`
//!   for monomials with exactly one degree-(−1) letter,
//! * two augmentations connected by a chain homotopy differ at a crossing
//!   exactly when an odd number of homotopy disks originate there.

use crate::augment::{self, Augmentation, Homotopy};
use crate::dga::Word;
use crate::front::{EventKind, FrontDiagram};
use crate::mcs::Mcs;
use crate::{Dga, Error, Meter, Result};
use std::collections::{BTreeMap, BTreeSet};

/// Where the east boundary of an enumerated disk sits.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Origin {
    /// The west quadrant of the crossing at this event index: the disk has
    /// its positive corner there.
    Crossing { event: usize },
    /// A vertical segment in `slot` spanning strands `top < bot`.
    Segment { slot: usize, top: usize, bot: usize },
}

/// One immersed disk on the front.
#[derive(Clone, Debug)]
pub struct DiskBoundary {
    pub origin: Origin,
    /// Event indices of the cornered crossings, counterclockwise starting
    /// from the east end of the upper boundary.
    pub corners: Vec<usize>,
    /// Boundary vertices `(slot, strand level)` in the same order.
    pub path: Vec<(usize, usize)>,
}

impl DiskBoundary {
    /// The corner word as generators of the algebra.
    pub fn corner_word(&self, dga: &Dga) -> Word {
        self.corners
            .iter()
            .map(|&e| dga.generator_at_event(e).expect("corner at a crossing"))
            .collect()
    }

    pub fn to_json(&self, dga: &Dga) -> serde_json::Value {
        let corners: Vec<&str> = self
            .corner_word(dga)
            .iter()
            .map(|&g| dga.generators()[g].name.as_str())
            .collect();
        let origin = match self.origin {
            Origin::Crossing { event } => serde_json::json!({ "crossing": event }),
            Origin::Segment { slot, top, bot } => {
                serde_json::json!({ "slot": slot, "span": [top, bot] })
            }
        };
        serde_json::json!({
            "origin": origin,
            "corners": corners,
            "path": self.path.iter().map(|&(s, l)| serde_json::json!([s, l])).collect::<Vec<_>>(),
        })
    }
}

// ---------------------------------------------------------------------------
// The westward boundary walk.

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum End {
    East,
    West,
}

/// What an end of a walker is attached to.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Tie {
    /// The disk's east boundary (segment or positive corner).
    Start,
    Join(usize, End),
}

/// One boundary arc, traced westward along the strands.
#[derive(Clone, Debug)]
struct Walker {
    level: usize,
    corners: Vec<usize>,
    trail: Vec<(usize, usize)>,
    east: Tie,
    west: Option<Tie>,
}

/// A vertical sheet of the disk, bounded by two walkers.
#[derive(Clone, Copy, Debug)]
struct Strip {
    top: usize,
    bot: usize,
}

#[derive(Clone, Debug)]
struct Wavefront {
    strips: Vec<Strip>,
    walkers: Vec<Walker>,
}

impl Wavefront {
    fn spawn(front: &FrontDiagram, origin: Origin) -> Result<(Wavefront, usize)> {
        let (slot, top, bot) = match origin {
            Origin::Crossing { event } => {
                let ev = front
                    .events()
                    .get(event)
                    .ok_or_else(|| Error::InvalidMove(format!("no event {}", event)))?;
                if ev.kind != EventKind::Crossing {
                    return Err(Error::InvalidMove(format!(
                        "event {} is not a crossing",
                        event
                    )));
                }
                (event, ev.level, ev.level + 1)
            }
            Origin::Segment { slot, top, bot } => {
                if slot >= front.slots() || top == 0 || bot <= top || bot > front.strands_at(slot)
                {
                    return Err(Error::InvalidMove(format!(
                        "segment [{}, {}] does not fit in slot {}",
                        top, bot, slot
                    )));
                }
                (slot, top, bot)
            }
        };
        let mk = |level: usize| Walker {
            level,
            corners: Vec::new(),
            trail: vec![(slot, level)],
            east: Tie::Start,
            west: None,
        };
        let wf = Wavefront { strips: vec![Strip { top: 0, bot: 1 }], walkers: vec![mk(top), mk(bot)] };
        Ok((wf, slot))
    }

    /// Strand levels of the live walkers must be pairwise distinct and
    /// increasing within each strip.
    fn levels_ok(&self) -> bool {
        let mut mask: u128 = 0;
        for s in &self.strips {
            let (u, l) = (self.walkers[s.top].level, self.walkers[s.bot].level);
            if u >= l {
                return false;
            }
            for lv in [u, l] {
                if mask >> lv & 1 == 1 {
                    return false;
                }
                mask |= 1 << lv;
            }
        }
        true
    }

    /// Record the position of every live walker in `slot`.
    fn record(&mut self, slot: usize) {
        for s in &self.strips {
            for id in [s.top, s.bot] {
                let w = &mut self.walkers[id];
                w.trail.push((slot, w.level));
            }
        }
    }

    /// Walks the boundary circle from the start; `Some` iff the walkers form
    /// a single circle.
    fn assemble(&self, origin: Origin) -> Option<DiskBoundary> {
        let mut corners = Vec::new();
        let mut path = Vec::new();
        let mut visited = 0usize;
        let mut cur = (0usize, End::East);
        loop {
            visited += 1;
            assert!(visited <= self.walkers.len(), "boundary walk revisited a walker");
            let w = &self.walkers[cur.0];
            match cur.1 {
                End::East => {
                    corners.extend(w.corners.iter().copied());
                    path.extend(w.trail.iter().copied());
                }
                End::West => {
                    corners.extend(w.corners.iter().rev().copied());
                    path.extend(w.trail.iter().rev().copied());
                }
            }
            let tie = match cur.1 {
                End::East => w.west.expect("open west end in a finished disk"),
                End::West => w.east,
            };
            match tie {
                Tie::Start => break,
                Tie::Join(id, end) => cur = (id, end),
            }
        }
        (visited == self.walkers.len()).then_some(DiskBoundary { origin, corners, path })
    }
}

/// All successors of `wf` across one event, moving west into slot `slot`.
fn step_west(wf: &Wavefront, kind: EventKind, k: usize, event: usize, slot: usize) -> Vec<Wavefront> {
    match kind {
        EventKind::Crossing => {
            // Per strip: follow the strands through the crossing, or let one
            // boundary thread turn a corner at it. The upper thread can
            // corner only from level k+1, the lower only from level k; a
            // strip spanning exactly [k, k+1] would pinch shut and dies.
            #[derive(Clone, Copy)]
            enum Choice {
                Straight,
                CornerTop,
                CornerBot,
            }
            let mut options: Vec<Vec<Choice>> = Vec::with_capacity(wf.strips.len());
            for s in &wf.strips {
                let (u, l) = (wf.walkers[s.top].level, wf.walkers[s.bot].level);
                if u == k && l == k + 1 {
                    return Vec::new();
                }
                let mut opts = vec![Choice::Straight];
                if u == k + 1 {
                    opts.push(Choice::CornerTop);
                }
                if l == k {
                    opts.push(Choice::CornerBot);
                }
                options.push(opts);
            }
            let swap = |x: usize| {
                if x == k {
                    k + 1
                } else if x == k + 1 {
                    k
                } else {
                    x
                }
            };
            let mut out = Vec::new();
            let mut choice = vec![0usize; options.len()];
            'outer: loop {
                let mut next = wf.clone();
                for (i, s) in wf.strips.iter().enumerate() {
                    match options[i][choice[i]] {
                        Choice::Straight => {
                            next.walkers[s.top].level = swap(wf.walkers[s.top].level);
                            next.walkers[s.bot].level = swap(wf.walkers[s.bot].level);
                        }
                        Choice::CornerTop => next.walkers[s.top].corners.push(event),
                        Choice::CornerBot => next.walkers[s.bot].corners.push(event),
                    }
                }
                if next.levels_ok() {
                    next.record(slot);
                    out.push(next);
                }
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
        EventKind::RightCusp => {
            // Walking west, the strands k, k+1 appear. A strip whose span
            // will contain them may cover the cusp point, or fold through
            // it, splitting into two overlapping strips whose new boundary
            // threads leave the cusp point westward.
            let pi = |x: usize| if x < k { x } else { x + 2 };
            let spanning: Vec<bool> = wf
                .strips
                .iter()
                .map(|s| {
                    let (u, l) = (wf.walkers[s.top].level, wf.walkers[s.bot].level);
                    pi(u) < k && pi(l) > k + 1
                })
                .collect();
            let mut out = Vec::new();
            let n_opts: Vec<usize> = spanning.iter().map(|&s| if s { 2 } else { 1 }).collect();
            let mut choice = vec![0usize; wf.strips.len()];
            'outer: loop {
                let mut next = Wavefront { strips: Vec::new(), walkers: wf.walkers.clone() };
                for w in next.walkers.iter_mut() {
                    w.level = pi(w.level);
                }
                for (i, s) in wf.strips.iter().enumerate() {
                    if choice[i] == 0 {
                        next.strips.push(*s);
                    } else {
                        // Fold: new walkers at levels k+1 and k, joined to
                        // each other at the cusp point.
                        let n1 = next.walkers.len();
                        let n2 = n1 + 1;
                        let mk = |level: usize, other: usize| Walker {
                            level,
                            corners: Vec::new(),
                            trail: Vec::new(),
                            east: Tie::Join(other, End::East),
                            west: None,
                        };
                        next.walkers.push(mk(k + 1, n2));
                        next.walkers.push(mk(k, n1));
                        next.strips.push(Strip { top: s.top, bot: n1 });
                        next.strips.push(Strip { top: n2, bot: s.bot });
                    }
                }
                if next.levels_ok() {
                    next.record(slot);
                    out.push(next);
                }
                for i in 0..wf.strips.len() {
                    choice[i] += 1;
                    if choice[i] < n_opts[i] {
                        continue 'outer;
                    }
                    choice[i] = 0;
                }
                break;
            }
            out
        }
        EventKind::LeftCusp => {
            // Walking west, the strands k, k+1 disappear. A strip spanning
            // exactly them caps off; a thread at k meeting a thread at k+1
            // across two strips merges them; a lone thread on either strand
            // has nowhere to continue.
            let mut at_k: Option<(usize, bool)> = None; // (strip index, is_top)
            let mut at_k1: Option<(usize, bool)> = None;
            for (i, s) in wf.strips.iter().enumerate() {
                for (id, is_top) in [(s.top, true), (s.bot, false)] {
                    if wf.walkers[id].level == k {
                        at_k = Some((i, is_top));
                    }
                    if wf.walkers[id].level == k + 1 {
                        at_k1 = Some((i, is_top));
                    }
                }
            }
            let mut next = wf.clone();
            match (at_k, at_k1) {
                (None, None) => {}
                (Some((i, true)), Some((j, false))) if i == j => {
                    let s = next.strips.remove(i);
                    next.walkers[s.top].west = Some(Tie::Join(s.bot, End::West));
                    next.walkers[s.bot].west = Some(Tie::Join(s.top, End::West));
                }
                (Some((i, false)), Some((j, true))) if i != j => {
                    let a = next.strips[i];
                    let b = next.strips[j];
                    next.walkers[a.bot].west = Some(Tie::Join(b.top, End::West));
                    next.walkers[b.top].west = Some(Tie::Join(a.bot, End::West));
                    let merged = Strip { top: a.top, bot: b.bot };
                    let (hi, lo) = (i.max(j), i.min(j));
                    next.strips.remove(hi);
                    next.strips.remove(lo);
                    next.strips.push(merged);
                }
                _ => return Vec::new(),
            }
            for s in next.strips.clone() {
                for id in [s.top, s.bot] {
                    let lv = next.walkers[id].level;
                    next.walkers[id].level = if lv > k + 1 { lv - 2 } else { lv };
                }
            }
            if !next.levels_ok() {
                return Vec::new();
            }
            next.record(slot);
            vec![next]
        }
    }
}

/// Enumerates every immersed disk with the given east boundary. Corners are
/// only ever at crossings; right-cusp points can be covered or folded
/// through but never cornered.
pub fn enumerate_disks(
    front: &FrontDiagram,
    origin: Origin,
    meter: &mut Meter,
) -> Result<Vec<DiskBoundary>> {
    let (start, start_slot) = Wavefront::spawn(front, origin)?;
    let mut out = Vec::new();
    let mut stack = vec![(start, start_slot)];
    while let Some((wf, slot)) = stack.pop() {
        meter.charge(1)?;
        if wf.strips.is_empty() {
            if let Some(disk) = wf.assemble(origin) {
                out.push(disk);
            }
            continue;
        }
        if slot == 0 {
            continue;
        }
        let ev = front.events()[slot - 1];
        for next in step_west(&wf, ev.kind, ev.level, slot - 1, slot - 1) {
            stack.push((next, slot - 1));
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Class filters and parities.

/// All corners augmented by `eps` (in particular, all of degree zero).
pub fn is_augmented_half_disk(dga: &Dga, eps: &Augmentation, d: &DiskBoundary) -> bool {
    d.corner_word(dga).iter().all(|&g| eps.eval(g))
}

/// Exactly one corner carries the homotopy: a degree-(−1) crossing in the
/// support of `h`, preceded (counterclockwise) by `e0`-augmented corners and
/// followed by `e1`-augmented ones.
pub fn is_homotopy_half_disk(
    dga: &Dga,
    e0: &Augmentation,
    e1: &Augmentation,
    h: &Homotopy,
    d: &DiskBoundary,
) -> bool {
    let word = d.corner_word(dga);
    let negatives: Vec<usize> =
        (0..word.len()).filter(|&i| dga.degree(word[i]) == -1).collect();
    match negatives.as_slice() {
        [j] => {
            h.support.contains(&word[*j])
                && word[..*j].iter().all(|&g| e0.eval(g))
                && word[*j + 1..].iter().all(|&g| e1.eval(g))
        }
        _ => false,
    }
}

/// Parity of `eps`-augmented half-disks spanning `[top, bot]` in `slot`.
pub fn augmented_span_parity(
    dga: &Dga,
    eps: &Augmentation,
    slot: usize,
    top: usize,
    bot: usize,
    meter: &mut Meter,
) -> Result<bool> {
    let disks = enumerate_disks(dga.front(), Origin::Segment { slot, top, bot }, meter)?;
    Ok(disks.iter().filter(|d| is_augmented_half_disk(dga, eps, d)).count() % 2 == 1)
}

/// Parity of homotopy half-disks spanning `[top, bot]` in `slot`.
pub fn homotopy_span_parity(
    dga: &Dga,
    e0: &Augmentation,
    e1: &Augmentation,
    h: &Homotopy,
    slot: usize,
    top: usize,
    bot: usize,
    meter: &mut Meter,
) -> Result<bool> {
    let disks = enumerate_disks(dga.front(), Origin::Segment { slot, top, bot }, meter)?;
    Ok(disks.iter().filter(|d| is_homotopy_half_disk(dga, e0, e1, h, d)).count() % 2 == 1)
}

/// Counts of front disks at a crossing, keyed by their corner words.
pub fn crossing_disk_words(
    dga: &Dga,
    event: usize,
    meter: &mut Meter,
) -> Result<BTreeMap<Word, usize>> {
    let disks = enumerate_disks(dga.front(), Origin::Crossing { event }, meter)?;
    let mut words: BTreeMap<Word, usize> = BTreeMap::new();
    for d in &disks {
        *words.entry(d.corner_word(dga)).or_insert(0) += 1;
    }
    Ok(words)
}

/// Checks, at every degree-zero crossing `q`, that `e0` and `e1` disagree at
/// `q` exactly when an odd number of homotopy disks have their positive
/// corner there.
pub fn check_difference_parity(
    dga: &Dga,
    e0: &Augmentation,
    e1: &Augmentation,
    h: &Homotopy,
    meter: &mut Meter,
) -> Result<()> {
    if !augment::verify_homotopy(dga, e0, e1, h) {
        return Err(Error::Property(format!(
            "{} is not a chain homotopy between {} and {}",
            h.label(dga),
            e0.label(dga),
            e1.label(dga)
        )));
    }
    for event in dga.front().degree_zero_crossings() {
        let q = dga.generator_at_event(event).expect("crossing generator");
        let disks = enumerate_disks(dga.front(), Origin::Crossing { event }, meter)?;
        let odd =
            disks.iter().filter(|d| is_homotopy_half_disk(dga, e0, e1, h, d)).count() % 2 == 1;
        if odd != (e0.eval(q) ^ e1.eval(q)) {
            return Err(Error::Property(format!(
                "at {}: augmentations {} and {} differ iff {} but the homotopy disk \
                 count there is {}",
                dga.generators()[q].name,
                e0.label(dga),
                e1.label(dga),
                e0.eval(q) ^ e1.eval(q),
                if odd { "odd" } else { "even" },
            )));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// The transport recurrence.

/// Transports the (initially empty) matrix of homotopy half-disk parities
/// across every event of the front, using only the slice complexes of the
/// canonical MCSs of `e0` and `e1` and the values of `e0`, `e1` and `h`.
/// Entry `(i, j)` of the returned set for slot `t` predicts the parity of
/// homotopy half-disks spanning `[i, j]` there.
///
/// The recurrence doubles as a consistency check: at every degree-zero
/// crossing it confirms that the transported `(k, k+1)` entry accounts for
/// the difference between the two augmentations, and at the east end the
/// matrix must vanish.
pub fn homotopy_transport(
    dga: &Dga,
    e0: &Augmentation,
    e1: &Augmentation,
    h: &Homotopy,
) -> Result<Vec<BTreeSet<(usize, usize)>>> {
    if !augment::verify_homotopy(dga, e0, e1, h) {
        return Err(Error::Property(format!(
            "{} is not a chain homotopy between {} and {}",
            h.label(dga),
            e0.label(dga),
            e1.label(dga)
        )));
    }
    let front = dga.front();
    let da = Mcs::from_augmentation(dga, e0)?.derive()?;
    let db = Mcs::from_augmentation(dga, e1)?.derive()?;
    let mut v: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut out = vec![v.clone()];
    for (t, ev) in front.events().iter().enumerate() {
        let k = ev.level;
        let n_east = front.strands_at(t + 1);
        let mut next = BTreeSet::new();
        let set = |s: &mut BTreeSet<(usize, usize)>, i: usize, j: usize, val: bool| {
            if val {
                s.insert((i, j));
            }
        };
        match ev.kind {
            EventKind::Crossing => {
                let q = dga.generator_at_event(t).expect("crossing generator");
                let deg = dga.degree(q);
                let rho = |x: usize| {
                    if x == k {
                        k + 1
                    } else if x == k + 1 {
                        k
                    } else {
                        x
                    }
                };
                let relabeled = |v: &BTreeSet<(usize, usize)>, i: usize, j: usize| {
                    let (a, b) = (rho(i), rho(j));
                    v.contains(&(a.min(b), a.max(b)))
                };
                if deg == 0 {
                    // The transported (k, k+1) entry flips the mark.
                    let flipped = e0.eval(q) ^ v.contains(&(k, k + 1));
                    if flipped != e1.eval(q) {
                        return Err(Error::Property(format!(
                            "transport across {} predicts mark {} but the target \
                             augmentation has {}",
                            dga.generators()[q].name,
                            flipped,
                            e1.eval(q)
                        )));
                    }
                    for i in 1..=n_east {
                        for j in i + 1..=n_east {
                            let val = if (i, j) == (k, k + 1) {
                                false
                            } else if j == k {
                                v.contains(&(i, k + 1)) ^ (flipped && v.contains(&(i, k)))
                            } else if i == k + 1 {
                                v.contains(&(k, j)) ^ (e0.eval(q) && v.contains(&(k + 1, j)))
                            } else {
                                relabeled(&v, i, j)
                            };
                            set(&mut next, i, j, val);
                        }
                    }
                } else if deg == -1 && h.support.contains(&q) {
                    let ca = da.exit(t);
                    let cb = db.exit(t);
                    for i in 1..=n_east {
                        for j in i + 1..=n_east {
                            let val = if (i, j) == (k, k + 1) {
                                false
                            } else if j == k {
                                v.contains(&(i, k + 1)) ^ ca.entry(i, k)
                            } else if i == k + 1 {
                                v.contains(&(k, j)) ^ cb.entry(k + 1, j)
                            } else {
                                relabeled(&v, i, j)
                            };
                            set(&mut next, i, j, val);
                        }
                    }
                } else {
                    for &(i, j) in &v {
                        let (a, b) = (rho(i), rho(j));
                        next.insert((a.min(b), a.max(b)));
                    }
                }
            }
            EventKind::LeftCusp => {
                for &(i, j) in &v {
                    let lift = |x: usize| if x < k { x } else { x + 2 };
                    next.insert((lift(i), lift(j)));
                }
            }
            EventKind::RightCusp => {
                let ca = da.exit(t);
                let cb = db.exit(t);
                let pi = |x: usize| if x < k { x } else { x + 2 };
                for i in 1..=n_east {
                    for j in i + 1..=n_east {
                        let mut val = v.contains(&(pi(i), pi(j)));
                        if pi(i) < k && pi(j) > k + 1 {
                            val ^= v.contains(&(pi(i), k + 1)) && cb.entry(k, pi(j));
                            val ^= ca.entry(pi(i), k + 1) && v.contains(&(k, pi(j)));
                        }
                        set(&mut next, i, j, val);
                    }
                }
            }
        }
        v = next;
        out.push(v.clone());
    }
    if !v.is_empty() {
        return Err(Error::Property(format!(
            "transported matrix survives past the last event: {:?}",
            v
        )));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Budget;

    const CORPUS: [&str; 5] = [
        "L1 R1",
        "L1 L3 X2 X2 X2 R1 R1",
        "L1 X1 X1 R1",
        "L1 L2 X3 X2 X2 X2 X2 R1 R1",
        "L1 L3 X2 X3 X3 X2 X2 R1 R1",
    ];

    fn dga(word: &str) -> Dga {
        Dga::new(&FrontDiagram::from_word(word).unwrap(), Budget::default()).unwrap()
    }

    #[test]
    fn unknot_cap_is_the_only_disk_on_its_segment() {
        let front = FrontDiagram::from_word("L1 R1").unwrap();
        let mut meter = Budget::default().meter();
        let disks =
            enumerate_disks(&front, Origin::Segment { slot: 1, top: 1, bot: 2 }, &mut meter)
                .unwrap();
        assert_eq!(disks.len(), 1);
        assert!(disks[0].corners.is_empty());
        assert_eq!(disks[0].path, vec![(1, 1), (1, 2)]);
    }

    /// The front engine and the resolution engine count the same objects:
    /// for every monomial with exactly one degree-(−1) letter (all others of
    /// degree 0), its coefficient in `∂q` equals the parity of front disks
    /// at `q` with that corner word.
    #[test]
    fn front_disks_match_the_differential_on_the_corpus() {
        let mut compared = 0usize;
        for word in CORPUS {
            let dga = dga(word);
            let mut meter = Budget::default().meter();
            let shape = |w: &Word| {
                w.iter().filter(|&&g| dga.degree(g) == -1).count() == 1
                    && w.iter().all(|&g| matches!(dga.degree(g), 0 | -1))
            };
            for event in dga.front().degree_zero_crossings() {
                let q = dga.generator_at_event(event).unwrap();
                let front_words = crossing_disk_words(&dga, event, &mut meter).unwrap();
                let mut keys: BTreeSet<Word> = front_words.keys().cloned().collect();
                keys.extend(dga.d(q).iter().cloned());
                for w in keys.iter().filter(|w| shape(w)) {
                    let front_parity = front_words.get(w).copied().unwrap_or(0) % 2 == 1;
                    let algebra = dga.d(q).contains(w);
                    assert_eq!(
                        front_parity, algebra,
                        "word {} at {} of {}",
                        dga.word_name(w),
                        dga.generators()[q].name,
                        word
                    );
                    compared += 1;
                }
            }
        }
        assert!(compared > 0, "the corpus exercised no comparable monomials");
    }

    /// Slice complexes of canonical MCSs against raw disk enumeration, at
    /// the west end of every slot and for every strand pair.
    #[test]
    fn slice_complex_entries_equal_augmented_disk_parities() {
        for word in CORPUS {
            let dga = dga(word);
            let augs = augment::enumerate(&dga, augment::DEFAULT_MAX_AUG_VARS).unwrap();
            for eps in &augs {
                let derived = Mcs::from_augmentation(&dga, eps).unwrap().derive().unwrap();
                let mut meter = Budget::default().meter();
                for t in 0..dga.front().slots() {
                    let n = dga.front().strands_at(t);
                    for i in 1..=n {
                        for j in i + 1..=n {
                            let parity =
                                augmented_span_parity(&dga, eps, t, i, j, &mut meter).unwrap();
                            assert_eq!(
                                derived.enter(t).entry(i, j),
                                parity,
                                "slot {} pair ({}, {}) for {} on {}",
                                t,
                                i,
                                j,
                                eps.label(&dga),
                                word
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn slice_complex_entries_equal_disk_parities_on_sampled_fronts() {
        let mut fronts: Vec<FrontDiagram> =
            (0..60).map(|seed| crate::sample::random_front(seed, 10)).collect();
        fronts.extend(
            [5, 7, 9]
                .iter()
                .map(|&m| FrontDiagram::from_word(&crate::sample::twist_word(m)).unwrap()),
        );
        let mut checked = 0usize;
        for front in &fronts {
            let dga = Dga::new(front, Budget::default()).unwrap();
            let augs = augment::enumerate(&dga, augment::DEFAULT_MAX_AUG_VARS).unwrap();
            for eps in augs.iter().take(3) {
                let derived = Mcs::from_augmentation(&dga, eps).unwrap().derive().unwrap();
                let mut meter = Budget::default().meter();
                for t in 0..front.slots() {
                    let n = front.strands_at(t);
                    for i in 1..=n {
                        for j in i + 1..=n {
                            let parity =
                                augmented_span_parity(&dga, eps, t, i, j, &mut meter).unwrap();
                            assert_eq!(
                                derived.enter(t).entry(i, j),
                                parity,
                                "slot {} pair ({}, {}) for {} on {}",
                                t,
                                i,
                                j,
                                eps.label(&dga),
                                front.word()
                            );
                            checked += 1;
                        }
                    }
                }
            }
        }
        assert!(checked > 400, "only {} entries compared across the sample", checked);
    }

    /// Every homotopic ordered pair in the corpus: the transport recurrence
    /// agrees with raw enumeration of homotopy half-disks at every slot, and
    /// the difference parity holds at every degree-zero crossing.
    #[test]
    fn transport_matches_enumeration_and_difference_parity() {
        let mut pairs = 0usize;
        for word in CORPUS {
            let dga = dga(word);
            let augs = augment::enumerate(&dga, augment::DEFAULT_MAX_AUG_VARS).unwrap();
            for a in &augs {
                for b in &augs {
                    let Some(h) = augment::find_homotopy(&dga, a, b) else { continue };
                    pairs += 1;
                    let transported = homotopy_transport(&dga, a, b, &h).unwrap();
                    let mut meter = Budget::default().meter();
                    for t in 0..dga.front().slots() {
                        let n = dga.front().strands_at(t);
                        for i in 1..=n {
                            for j in i + 1..=n {
                                let parity =
                                    homotopy_span_parity(&dga, a, b, &h, t, i, j, &mut meter)
                                        .unwrap();
                                assert_eq!(
                                    transported[t].contains(&(i, j)),
                                    parity,
                                    "slot {} pair ({}, {}) between {} and {} on {}",
                                    t,
                                    i,
                                    j,
                                    a.label(&dga),
                                    b.label(&dga),
                                    word
                                );
                            }
                        }
                    }
                    check_difference_parity(&dga, a, b, &h, &mut meter).unwrap();
                }
            }
        }
        assert!(pairs >= 8, "only {} homotopic ordered pairs in the corpus", pairs);
    }

    #[test]
    fn transport_rejects_a_non_homotopy() {
        let dga = dga("L1 L3 X2 X3 X3 X2 X2 R1 R1");
        let augs = augment::enumerate(&dga, augment::DEFAULT_MAX_AUG_VARS).unwrap();
        assert_eq!(augs.len(), 2);
        let empty = Homotopy { support: BTreeSet::new() };
        // The two augmentations differ, so the empty homotopy fails.
        match homotopy_transport(&dga, &augs[0], &augs[1], &empty) {
            Err(Error::Property(_)) => {}
            other => panic!("expected a property violation, got {:?}", other),
        }
    }

    #[test]
    fn enumeration_respects_the_budget() {
        let front = FrontDiagram::from_word("L1 L3 X2 X2 X2 R1 R1").unwrap();
        let mut meter = Budget::new(3).meter();
        match enumerate_disks(&front, Origin::Segment { slot: 5, top: 1, bot: 4 }, &mut meter) {
            Err(Error::BudgetExceeded { limit: 3 }) => {}
            other => panic!("expected budget exhaustion, got {:?}", other),
        }
    }
}
