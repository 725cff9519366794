//! The move calculus on Morse complex sequences.
//!
//! Thirteen numbered local modifications connect equivalent MCSs. Every
//! operation here goes through [`apply`], which re-derives the whole
//! sequence afterwards (so the axioms are machine-checked, never assumed)
//! and then asserts *locality*: a legal move may change the slice complexes
//! in at most one designated slot. The [`Applied`] receipt records which
//! numbered move the operation resolved to, so a recorded trace can be
//! replayed and audited move by move.
//!
//! The catalog, in the numbering used throughout this crate:
//!
//! 1.  create or cancel two adjacent identical marks,
//! 2.  commute marks on disjoint strand intervals,
//! 3.  commute marks sharing their upper or their lower strand,
//! 4.  exchange an adjacent chained pair for the reversed pair plus their
//!     composite (and back),
//! 5.  commute marks on nested intervals,
//! 6.  commute marks on interleaved intervals,
//! 7.  pass a mark across a crossing it does not touch,
//! 8.  pass a mark whose lower strand enters the crossing,
//! 9.  pass a mark whose upper strand enters the crossing,
//! 10. absorb into / emit from a right cusp a mark ending on a cusp strand,
//! 11. pass a mark spanning a cusp across it,
//! 12. pass a mark clear of a cusp across it,
//! 13. insert or remove the exploded block of a Maslov-adjacent strand pair.
//!
//! There is deliberately no left-cusp analogue of move 10: the two variants
//! exist in the [`Move`] type but always report [`Error::ForbiddenMove`].

use super::{Derived, Mcs, TriangularComplex};
use crate::front::EventKind;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// One requested move. `slot` is the vertical strip, `pos` an index into its
/// west-to-east mark list, `strands` a pair `(k, l)` with `k < l`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum Move {
    /// Insert two identical marks `strands` at `pos` (move 1).
    InsertPair { slot: usize, pos: usize, strands: (usize, usize) },
    /// Remove the identical marks at `pos`, `pos + 1` (move 1).
    CancelPair { slot: usize, pos: usize },
    /// Swap the independent marks at `pos`, `pos + 1` (moves 2, 3, 5, 6).
    Commute { slot: usize, pos: usize },
    /// Replace the chained marks at `pos`, `pos + 1` by the reversed pair
    /// followed by their composite (move 4).
    ChainExpand { slot: usize, pos: usize },
    /// Inverse of [`Move::ChainExpand`] on the triple at `pos` (move 4).
    ChainContract { slot: usize, pos: usize },
    /// Pass the easternmost mark of `slot` east across the event there
    /// (moves 7–9 at a crossing, 11–12 at a cusp).
    PassEast { slot: usize },
    /// Pass the westernmost mark of `slot` west across the event west of it
    /// (moves 7–9 at a crossing, 11–12 at a cusp).
    PassWest { slot: usize },
    /// Absorb the easternmost mark of `slot` into the right cusp east of it;
    /// the mark must end on a cusp strand (move 10).
    CuspRemove { slot: usize },
    /// Emit `strands` from the right cusp east of `slot` (move 10).
    CuspInsert { slot: usize, strands: (usize, usize) },
    /// Documented refusal: marks are never absorbed at a left cusp.
    LeftCuspRemove { slot: usize },
    /// Documented refusal: marks are never emitted from a left cusp.
    LeftCuspInsert { slot: usize, strands: (usize, usize) },
    /// Insert, at `pos`, the block of marks read off the complex there by
    /// the Maslov-adjacent pair `strands` (move 13).
    Explode { slot: usize, pos: usize, strands: (usize, usize) },
    /// Remove that block again (move 13).
    Implode { slot: usize, pos: usize, strands: (usize, usize) },
}

/// Receipt of a successful [`apply`]: the request plus the catalog number it
/// resolved to.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Applied {
    pub id: u8,
    pub mv: Move,
}

impl Applied {
    /// The move's JSON with the catalog number injected as `"move"`.
    pub fn to_json(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self.mv).expect("moves serialize");
        v.as_object_mut()
            .expect("a move serializes to an object")
            .insert("move".into(), serde_json::json!(self.id));
        v
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Applied> {
        let id = v
            .get("move")
            .and_then(|m| m.as_u64())
            .ok_or_else(|| Error::Parse("move record lacks a \"move\" number".into()))?;
        if !(1..=13).contains(&id) {
            return Err(Error::Parse(format!("no move {} in the catalog", id)));
        }
        let mut rest = v.clone();
        if let Some(o) = rest.as_object_mut() {
            o.remove("move");
        }
        let mv: Move = serde_json::from_value(rest)
            .map_err(|e| Error::Parse(format!("bad move record: {}", e)))?;
        Ok(Applied { id: id as u8, mv })
    }
}

/// Which slice complexes a move is entitled to change.
struct Locality {
    enter: Option<usize>,
    exit: Option<usize>,
}

impl Locality {
    const NONE: Locality = Locality { enter: None, exit: None };
}

/// Applies `mv` to a valid MCS. On success the returned MCS has been fully
/// re-derived (every axiom re-checked) and compared slice by slice against
/// the original: apart from the slot the move is entitled to touch, every
/// entering and exiting complex must be bitwise unchanged. A violation of
/// either check reports [`Error::Property`] — it means the move engine
/// itself, not the caller, is wrong.
pub fn apply(mcs: &Mcs, mv: &Move) -> Result<(Mcs, Applied)> {
    let before = mcs.derive()?;
    let (next, id, allowed) = perform(mcs, &before, mv)?;
    let after = next.derive().map_err(|e| {
        Error::Property(format!("move {:?} broke the sequence axioms: {}", mv, e))
    })?;
    for t in 0..before.slots() {
        if allowed.enter != Some(t) && before.enter(t) != after.enter(t) {
            return Err(Error::Property(format!(
                "move {:?} is not local: the complex entering slot {} changed",
                mv, t
            )));
        }
        if allowed.exit != Some(t) && before.exit(t) != after.exit(t) {
            return Err(Error::Property(format!(
                "move {:?} is not local: the complex exiting slot {} changed",
                mv, t
            )));
        }
    }
    Ok((next, Applied { id, mv: *mv }))
}

/// The exploded block of the Maslov-adjacent pair `(kt, lt)` on `a`: marks
/// `(i, lt)` for each unit entry `(i, kt)` (top down), then `(kt, j)` for
/// each unit entry `(lt, j)` (bottom up). Conjugating `a` by the whole block
/// is the identity — the cross terms vanish by triangularity and the
/// quadratic term by `d² = 0` — which is what makes move 13 a move.
fn explode_block(a: &TriangularComplex, kt: usize, lt: usize) -> Vec<(usize, usize)> {
    let mut block = Vec::new();
    for i in 1..kt {
        if a.entry(i, kt) {
            block.push((i, lt));
        }
    }
    for j in (lt + 1..=a.size()).rev() {
        if a.entry(lt, j) {
            block.push((kt, j));
        }
    }
    block
}

fn invalid(msg: String) -> Error {
    Error::InvalidMove(msg)
}

/// Spanning test on the side of a cusp where the cusp strands do not exist.
fn spans_cusp_point(a: usize, b: usize, k: usize) -> bool {
    a < k && b >= k
}

/// Spanning test on the side where the cusp strands `k`, `k + 1` exist.
fn spans_cusp_pair(a: usize, b: usize, k: usize) -> bool {
    a < k && b > k + 1
}

fn perform(mcs: &Mcs, before: &Derived, mv: &Move) -> Result<(Mcs, u8, Locality)> {
    let front = mcs.front();
    let slots = mcs.slot_count();
    let check_slot = |slot: usize| -> Result<()> {
        if slot >= slots {
            return Err(invalid(format!("slot {} out of range ({} slots)", slot, slots)));
        }
        Ok(())
    };
    match *mv {
        Move::InsertPair { slot, pos, strands: (k, l) } => {
            check_slot(slot)?;
            let n = front.strands_at(slot);
            if k == 0 || l <= k || l > n {
                return Err(invalid(format!(
                    "pair ({}, {}) out of range for {} strands in slot {}",
                    k, l, n, slot
                )));
            }
            if front.mu_at(slot, k) != front.mu_at(slot, l) {
                return Err(invalid(format!(
                    "strands {} and {} in slot {} have unequal Maslov potential",
                    k, l, slot
                )));
            }
            let len = mcs.slot(slot).len();
            if pos > len {
                return Err(invalid(format!("position {} past the {} marks", pos, len)));
            }
            let mut next = mcs.clone();
            next.slots_mut()[slot].splice(pos..pos, [(k, l), (k, l)]);
            Ok((next, 1, Locality::NONE))
        }
        Move::CancelPair { slot, pos } => {
            check_slot(slot)?;
            let marks = mcs.slot(slot);
            if pos + 1 >= marks.len() {
                return Err(invalid(format!(
                    "no adjacent marks at {} among {}",
                    pos,
                    marks.len()
                )));
            }
            if marks[pos] != marks[pos + 1] {
                return Err(invalid(format!(
                    "marks {:?} and {:?} are not identical",
                    marks[pos],
                    marks[pos + 1]
                )));
            }
            let mut next = mcs.clone();
            next.slots_mut()[slot].drain(pos..pos + 2);
            Ok((next, 1, Locality::NONE))
        }
        Move::Commute { slot, pos } => {
            check_slot(slot)?;
            let marks = mcs.slot(slot);
            if pos + 1 >= marks.len() {
                return Err(invalid(format!(
                    "no adjacent marks at {} among {}",
                    pos,
                    marks.len()
                )));
            }
            let ((a, b), (c, d)) = (marks[pos], marks[pos + 1]);
            if a == d || b == c {
                return Err(invalid(format!(
                    "marks ({}, {}) and ({}, {}) are chained; they do not commute",
                    a, b, c, d
                )));
            }
            let id = if a == c || b == d {
                3
            } else if b < c || d < a {
                2
            } else if (a < c && d < b) || (c < a && b < d) {
                5
            } else {
                6
            };
            let mut next = mcs.clone();
            next.slots_mut()[slot].swap(pos, pos + 1);
            Ok((next, id, Locality::NONE))
        }
        Move::ChainExpand { slot, pos } => {
            check_slot(slot)?;
            let marks = mcs.slot(slot);
            if pos + 1 >= marks.len() {
                return Err(invalid(format!(
                    "no adjacent marks at {} among {}",
                    pos,
                    marks.len()
                )));
            }
            let (h1, h2) = (marks[pos], marks[pos + 1]);
            let comp = chain_composite(h1, h2)
                .ok_or_else(|| invalid(format!("marks {:?} and {:?} are not chained", h1, h2)))?;
            let mut next = mcs.clone();
            next.slots_mut()[slot].splice(pos..pos + 2, [h2, h1, comp]);
            Ok((next, 4, Locality::NONE))
        }
        Move::ChainContract { slot, pos } => {
            check_slot(slot)?;
            let marks = mcs.slot(slot);
            if pos + 2 >= marks.len() {
                return Err(invalid(format!(
                    "no mark triple at {} among {}",
                    pos,
                    marks.len()
                )));
            }
            let (x, y, z) = (marks[pos], marks[pos + 1], marks[pos + 2]);
            match chain_composite(y, x) {
                Some(comp) if comp == z => {}
                _ => {
                    return Err(invalid(format!(
                        "marks {:?}, {:?}, {:?} are not an expanded chain",
                        x, y, z
                    )))
                }
            }
            let mut next = mcs.clone();
            next.slots_mut()[slot].splice(pos..pos + 3, [y, x]);
            Ok((next, 4, Locality::NONE))
        }
        Move::PassEast { slot } => {
            check_slot(slot)?;
            if slot + 1 >= slots {
                return Err(invalid("no event east of the last slot".into()));
            }
            let marks = mcs.slot(slot);
            let &(a, b) = marks.last().ok_or_else(|| invalid("no mark to pass".into()))?;
            let ev = front.events()[slot];
            let k = ev.level;
            let (relabeled, id) = match ev.kind {
                EventKind::Crossing => pass_crossing(a, b, k)?,
                EventKind::RightCusp => {
                    if a == k || a == k + 1 || b == k || b == k + 1 {
                        return Err(invalid(format!(
                            "mark ({}, {}) ends on a strand dying at the right cusp",
                            a, b
                        )));
                    }
                    let shift = |x: usize| if x > k + 1 { x - 2 } else { x };
                    ((shift(a), shift(b)), if spans_cusp_pair(a, b, k) { 11 } else { 12 })
                }
                EventKind::LeftCusp => {
                    let lift = |x: usize| if x < k { x } else { x + 2 };
                    ((lift(a), lift(b)), if spans_cusp_point(a, b, k) { 11 } else { 12 })
                }
            };
            let mut next = mcs.clone();
            next.slots_mut()[slot].pop();
            next.slots_mut()[slot + 1].insert(0, relabeled);
            Ok((next, id, Locality { enter: Some(slot + 1), exit: Some(slot) }))
        }
        Move::PassWest { slot } => {
            check_slot(slot)?;
            if slot == 0 {
                return Err(invalid("no event west of the first slot".into()));
            }
            let marks = mcs.slot(slot);
            let &(a, b) = marks.first().ok_or_else(|| invalid("no mark to pass".into()))?;
            let ev = front.events()[slot - 1];
            let k = ev.level;
            let (relabeled, id) = match ev.kind {
                EventKind::Crossing => pass_crossing(a, b, k)?,
                EventKind::RightCusp => {
                    let lift = |x: usize| if x < k { x } else { x + 2 };
                    ((lift(a), lift(b)), if spans_cusp_point(a, b, k) { 11 } else { 12 })
                }
                EventKind::LeftCusp => {
                    if a == k || a == k + 1 || b == k || b == k + 1 {
                        return Err(invalid(format!(
                            "mark ({}, {}) ends on a strand born at the left cusp",
                            a, b
                        )));
                    }
                    let shift = |x: usize| if x > k + 1 { x - 2 } else { x };
                    ((shift(a), shift(b)), if spans_cusp_pair(a, b, k) { 11 } else { 12 })
                }
            };
            let mut next = mcs.clone();
            next.slots_mut()[slot].remove(0);
            next.slots_mut()[slot - 1].push(relabeled);
            Ok((next, id, Locality { enter: Some(slot), exit: Some(slot - 1) }))
        }
        Move::CuspRemove { slot } => {
            check_slot(slot)?;
            let k = right_cusp_east_of(mcs, slot)?;
            let marks = mcs.slot(slot);
            let &(a, b) = marks.last().ok_or_else(|| invalid("no mark to absorb".into()))?;
            if !(b == k && a < k || a == k + 1 && b > k + 1) {
                return Err(invalid(format!(
                    "mark ({}, {}) does not end on a strand of the cusp at {}",
                    a, b, k
                )));
            }
            let mut next = mcs.clone();
            next.slots_mut()[slot].pop();
            Ok((next, 10, Locality { enter: None, exit: Some(slot) }))
        }
        Move::CuspInsert { slot, strands: (a, b) } => {
            check_slot(slot)?;
            let k = right_cusp_east_of(mcs, slot)?;
            if !(b == k && a < k || a == k + 1 && b > k + 1) || b > front.strands_at(slot) {
                return Err(invalid(format!(
                    "mark ({}, {}) would not end on a strand of the cusp at {}",
                    a, b, k
                )));
            }
            if front.mu_at(slot, a) != front.mu_at(slot, b) {
                return Err(invalid(format!(
                    "strands {} and {} in slot {} have unequal Maslov potential",
                    a, b, slot
                )));
            }
            let mut next = mcs.clone();
            next.slots_mut()[slot].push((a, b));
            Ok((next, 10, Locality { enter: None, exit: Some(slot) }))
        }
        Move::LeftCuspRemove { .. } | Move::LeftCuspInsert { .. } => Err(Error::ForbiddenMove(
            "marks are never absorbed into or emitted from a left cusp; \
             the calculus has no such move"
                .into(),
        )),
        Move::Explode { slot, pos, strands: (kt, lt) } => {
            let block = checked_block(mcs, before, slot, pos, kt, lt)?;
            let mut next = mcs.clone();
            next.slots_mut()[slot].splice(pos..pos, block);
            Ok((next, 13, Locality::NONE))
        }
        Move::Implode { slot, pos, strands: (kt, lt) } => {
            let block = checked_block(mcs, before, slot, pos, kt, lt)?;
            let marks = mcs.slot(slot);
            if pos + block.len() > marks.len() || marks[pos..pos + block.len()] != block[..] {
                return Err(invalid(format!(
                    "marks at {} do not match the exploded block {:?} of ({}, {})",
                    pos, block, kt, lt
                )));
            }
            let mut next = mcs.clone();
            next.slots_mut()[slot].drain(pos..pos + block.len());
            Ok((next, 13, Locality::NONE))
        }
    }
}

/// Wraps [`explode_block`] in the shared range and Maslov prechecks of
/// move 13.
fn checked_block(
    mcs: &Mcs,
    before: &Derived,
    slot: usize,
    pos: usize,
    kt: usize,
    lt: usize,
) -> Result<Vec<(usize, usize)>> {
    let front = mcs.front();
    if slot >= mcs.slot_count() {
        return Err(invalid(format!("slot {} out of range", slot)));
    }
    let n = front.strands_at(slot);
    if kt == 0 || lt <= kt || lt > n {
        return Err(invalid(format!("pair ({}, {}) out of range for {} strands", kt, lt, n)));
    }
    if front.mu_at(slot, kt) != front.mu_at(slot, lt) - 1 {
        return Err(invalid(format!(
            "strands {} and {} in slot {} are not Maslov-adjacent",
            kt, lt, slot
        )));
    }
    if pos > mcs.slot(slot).len() {
        return Err(invalid(format!("position {} past the marks of slot {}", pos, slot)));
    }
    let a = mcs.complex_at(before, slot, pos)?;
    Ok(explode_block(&a, kt, lt))
}

/// The composite mark of move 4, if the pair (west, east) is chained.
fn chain_composite(west: (usize, usize), east: (usize, usize)) -> Option<(usize, usize)> {
    if west.0 == east.1 {
        Some((east.0, west.1))
    } else if west.1 == east.0 {
        Some((west.0, east.1))
    } else {
        None
    }
}

/// Relabeling and catalog number for a mark passing a crossing of strands
/// `k`, `k + 1` (either direction; the relabeling is an involution).
fn pass_crossing(a: usize, b: usize, k: usize) -> Result<((usize, usize), u8)> {
    if (a, b) == (k, k + 1) {
        return Err(invalid(format!(
            "the mark ({}, {}) cannot pass the crossing of its own strands",
            a, b
        )));
    }
    let rho = |x: usize| {
        if x == k {
            k + 1
        } else if x == k + 1 {
            k
        } else {
            x
        }
    };
    let id = if b == k || b == k + 1 {
        8
    } else if a == k || a == k + 1 {
        9
    } else {
        7
    };
    let (x, y) = (rho(a), rho(b));
    Ok(((x.min(y), x.max(y)), id))
}

fn right_cusp_east_of(mcs: &Mcs, slot: usize) -> Result<usize> {
    let events = mcs.front().events();
    if slot >= events.len() || events[slot].kind != EventKind::RightCusp {
        return Err(invalid(format!("no right cusp east of slot {}", slot)));
    }
    Ok(events[slot].level)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::augment;
    use crate::front::FrontDiagram;
    use crate::sample::{random_front, XorShift64};
    use crate::{Budget, Dga};
    use std::collections::{BTreeMap, BTreeSet};
    use std::sync::OnceLock;

    fn canonical(word: &str, pick: usize) -> (Dga, Mcs) {
        let dga = Dga::new(&FrontDiagram::from_word(word).unwrap(), Budget::default()).unwrap();
        let augs = augment::enumerate(&dga, augment::DEFAULT_MAX_AUG_VARS).unwrap();
        let mcs = Mcs::from_augmentation(&dga, &augs[pick]).unwrap();
        (dga, mcs)
    }

    fn same_marks(a: &Mcs, b: &Mcs) -> bool {
        (0..a.slot_count()).all(|t| a.slot(t) == b.slot(t))
    }

    /// Deterministic pool of valid MCSs: the canonical form of the first
    /// augmentation of every augmentable front in a fixed sample. The fixed
    /// words up front are six-strand plats chosen because they expose the
    /// strand patterns (triples and nested or spanning pairs of one Maslov
    /// potential) that no four-strand front can contain.
    fn sampled_bases() -> &'static [Mcs] {
        static BASES: OnceLock<Vec<Mcs>> = OnceLock::new();
        BASES.get_or_init(|| {
            let mut words: Vec<String> = [
                "L1 R1",
                "L1 L3 X2 X2 X2 R1 R1",
                "L1 L2 X3 X2 X2 X2 X2 R1 R1",
                "L1 L3 X2 X3 X3 X2 X2 R1 R1",
                "L1 L2 L3 X2 X1 R3 R2 R1",
                "L1 L3 L4 X3 X2 X1 X1 R2 R2 R1",
                "L1 L2 L4 X3 X1 R2 R2 R1",
                "L1 L2 L4 X3 X1 R4 R2 R1",
                "L1 L2 X3 X1 X2 R3 R1",
            ]
            .iter()
            .map(|w| w.to_string())
            .collect();
            words.extend((0..150).map(|s| random_front(s, 10).word()));
            words.extend((0..80).map(|s| random_front(s, 14).word()));
            let mut out = Vec::new();
            for word in words {
                let Ok(front) = FrontDiagram::from_word(&word) else { continue };
                let Ok(dga) = Dga::new(&front, Budget::default()) else { continue };
                let Ok(augs) = augment::enumerate(&dga, 16) else { continue };
                let Some(eps) = augs.first() else { continue };
                out.push(Mcs::from_augmentation(&dga, eps).unwrap());
            }
            out
        })
    }

    fn mu_equal_pairs(mcs: &Mcs, t: usize) -> Vec<(usize, usize)> {
        let front = mcs.front();
        let n = front.strands_at(t);
        let mut pairs = Vec::new();
        for a in 1..=n {
            for b in a + 1..=n {
                if front.mu_at(t, a) == front.mu_at(t, b) {
                    pairs.push((a, b));
                }
            }
        }
        pairs
    }

    #[test]
    fn insert_and_cancel_are_inverse_and_checked() {
        let (_, mcs) = canonical("L1 L3 X2 X2 X2 R1 R1", 0);
        let mv = Move::InsertPair { slot: 3, pos: 0, strands: (2, 3) };
        let (bigger, ap) = apply(&mcs, &mv).unwrap();
        assert_eq!(ap.id, 1);
        assert_eq!(bigger.slot(3), &[(2, 3), (2, 3)]);
        let (back, ap) = apply(&bigger, &Move::CancelPair { slot: 3, pos: 0 }).unwrap();
        assert_eq!(ap.id, 1);
        assert!(same_marks(&back, &mcs));
        // Unequal Maslov potential is rejected before anything else runs.
        match apply(&mcs, &Move::InsertPair { slot: 3, pos: 0, strands: (1, 2) }) {
            Err(Error::InvalidMove(msg)) => assert!(msg.contains("Maslov")),
            other => panic!("expected rejection, got {:?}", other),
        }
    }

    #[test]
    fn identical_marks_commute_as_move_three() {
        let (_, mcs) = canonical("L1 L3 X2 X2 X2 R1 R1", 0);
        let (two, _) =
            apply(&mcs, &Move::InsertPair { slot: 3, pos: 0, strands: (2, 3) }).unwrap();
        let (_, ap) = apply(&two, &Move::Commute { slot: 3, pos: 0 }).unwrap();
        assert_eq!(ap.id, 3);
    }

    /// Finds a slot with three strands of one Maslov potential in the
    /// sample, then checks the exchange relation there: chained marks refuse
    /// to commute, expand to the reversed pair plus their composite, and
    /// contract back.
    #[test]
    fn chained_marks_expand_and_contract() {
        for base in sampled_bases() {
            for t in 0..base.slot_count() {
                let pairs = mu_equal_pairs(base, t);
                for &(a, b) in &pairs {
                    for &(b2, c) in &pairs {
                        if b2 != b || c <= b {
                            continue;
                        }
                        let west = (a, b);
                        let east = (b, c);
                        let (one, _) =
                            apply(base, &Move::InsertPair { slot: t, pos: 0, strands: west })
                                .unwrap();
                        let (two, _) =
                            apply(&one, &Move::InsertPair { slot: t, pos: 1, strands: east })
                                .unwrap();
                        // Marks now read [west, east, east, west].
                        match apply(&two, &Move::Commute { slot: t, pos: 0 }) {
                            Err(Error::InvalidMove(msg)) => assert!(msg.contains("chained")),
                            other => panic!("chained marks must not commute: {:?}", other),
                        }
                        let (expanded, ap) =
                            apply(&two, &Move::ChainExpand { slot: t, pos: 0 }).unwrap();
                        assert_eq!(ap.id, 4);
                        assert_eq!(&expanded.slot(t)[..3], &[east, west, (a, c)]);
                        let (back, ap) =
                            apply(&expanded, &Move::ChainContract { slot: t, pos: 0 }).unwrap();
                        assert_eq!(ap.id, 4);
                        assert!(same_marks(&back, &two));
                        return;
                    }
                }
            }
        }
        panic!("no slot with three strands of one Maslov potential in the sample");
    }

    /// Ticks off the catalog numbers that need wider fronts than the fixed
    /// four-strand corpus: the commuting patterns 2, 5, 6 and the pass
    /// numbers 7, 9, 11, 12, each exercised as a genuine apply plus its
    /// inverse. The six-strand plats in the sample guarantee every number is
    /// reached.
    #[test]
    fn sampled_fronts_exercise_the_wide_catalog_numbers() {
        let mut need: BTreeSet<u8> = [2u8, 5, 6, 7, 9, 11, 12].into_iter().collect();
        for base in sampled_bases() {
            if need.is_empty() {
                break;
            }
            let front = base.front().clone();
            for t in 0..base.slot_count() {
                let pairs = mu_equal_pairs(base, t);
                // Commuting patterns within slot t.
                for &(a, b) in &pairs {
                    for &(c, d) in &pairs {
                        if (a, b) == (c, d) || a == d || b == c || a == c || b == d {
                            continue;
                        }
                        let expect = if b < c || d < a {
                            2
                        } else if (a < c && d < b) || (c < a && b < d) {
                            5
                        } else {
                            6
                        };
                        if !need.contains(&expect) {
                            continue;
                        }
                        let (one, _) =
                            apply(base, &Move::InsertPair { slot: t, pos: 0, strands: (a, b) })
                                .unwrap();
                        let (two, _) =
                            apply(&one, &Move::InsertPair { slot: t, pos: 1, strands: (c, d) })
                                .unwrap();
                        let (_, ap) = apply(&two, &Move::Commute { slot: t, pos: 0 }).unwrap();
                        assert_eq!(ap.id, expect);
                        need.remove(&expect);
                    }
                }
                // Passing east across the event east of slot t, and back.
                if t + 1 >= base.slot_count() {
                    continue;
                }
                let ev = front.events()[t];
                let k = ev.level;
                for &(a, b) in &pairs {
                    let expect = match ev.kind {
                        EventKind::Crossing => {
                            if (a, b) == (k, k + 1) {
                                continue;
                            } else if b == k || b == k + 1 {
                                8
                            } else if a == k || a == k + 1 {
                                9
                            } else {
                                7
                            }
                        }
                        EventKind::RightCusp => {
                            if a == k || a == k + 1 || b == k || b == k + 1 {
                                continue;
                            } else if spans_cusp_pair(a, b, k) {
                                11
                            } else {
                                12
                            }
                        }
                        EventKind::LeftCusp => {
                            if spans_cusp_point(a, b, k) {
                                11
                            } else {
                                12
                            }
                        }
                    };
                    if !need.contains(&expect) {
                        continue;
                    }
                    let pos = base.slot(t).len();
                    let (two, _) =
                        apply(base, &Move::InsertPair { slot: t, pos, strands: (a, b) }).unwrap();
                    let (parked, ap) = apply(&two, &Move::PassEast { slot: t }).unwrap();
                    assert_eq!(ap.id, expect);
                    let (back, ap) = apply(&parked, &Move::PassWest { slot: t + 1 }).unwrap();
                    assert_eq!(ap.id, expect);
                    assert!(same_marks(&back, &two));
                    need.remove(&expect);
                }
            }
        }
        assert!(need.is_empty(), "never sampled configurations for moves {:?}", need);
    }

    #[test]
    fn passes_resolve_crossing_numbers_on_the_corpus() {
        // Slot 4 of this front has Maslov potentials (1, 0, -1, 0): the pair
        // (2, 4) is markable and the events on both sides cross strands 3, 4.
        let (_, mcs) = canonical("L1 L3 X2 X3 X3 X2 X2 R1 R1", 0);
        let (two, _) =
            apply(&mcs, &Move::InsertPair { slot: 4, pos: 0, strands: (2, 4) }).unwrap();
        // Lower strand 4 enters the crossing: move 8, relabeling to (2, 3).
        let (parked, ap) = apply(&two, &Move::PassWest { slot: 4 }).unwrap();
        assert_eq!(ap.id, 8);
        assert_eq!(parked.slot(3).last(), Some(&(2, 3)));
        let (back, ap) = apply(&parked, &Move::PassEast { slot: 3 }).unwrap();
        assert_eq!(ap.id, 8);
        assert!(same_marks(&back, &two));
        // A (k, k+1) mark never passes the crossing of its own strands.
        let (_, trefoil) = canonical("L1 L3 X2 X2 X2 R1 R1", 0);
        assert_eq!(trefoil.slot(2), [(2, 3)]);
        match apply(&trefoil, &Move::PassEast { slot: 2 }) {
            Err(Error::InvalidMove(msg)) => assert!(msg.contains("its own strands")),
            other => panic!("expected the stuck pair, got {:?}", other),
        }
        // A mark ending on a dying strand cannot pass into a right cusp.
        let (_, t5) = canonical("L1 L3 X2 X2 X2 R1 R1", 4);
        let (with, _) =
            apply(&t5, &Move::InsertPair { slot: 5, pos: 0, strands: (2, 3) }).unwrap();
        match apply(&with, &Move::PassEast { slot: 5 }) {
            Err(Error::InvalidMove(msg)) => assert!(msg.contains("dying")),
            other => panic!("expected rejection at the cusp, got {:?}", other),
        }
    }

    #[test]
    fn cusp_absorption_round_trips() {
        let (_, mcs) = canonical("L1 L3 X2 X2 X2 R1 R1", 0);
        // Slot 5 is west of the right cusp at 1: emit (2, 3) (the pattern
        // (k + 1, j) with k = 1), then absorb it again.
        let (with, ap) = apply(&mcs, &Move::CuspInsert { slot: 5, strands: (2, 3) }).unwrap();
        assert_eq!(ap.id, 10);
        assert_eq!(with.slot(5).last(), Some(&(2, 3)));
        let (back, ap) = apply(&with, &Move::CuspRemove { slot: 5 }).unwrap();
        assert_eq!(ap.id, 10);
        assert!(same_marks(&back, &mcs));
        // No cusp east of slot 4, and no mark to absorb in slot 6.
        match apply(&mcs, &Move::CuspRemove { slot: 4 }) {
            Err(Error::InvalidMove(msg)) => assert!(msg.contains("no right cusp")),
            other => panic!("expected rejection, got {:?}", other),
        }
        match apply(&mcs, &Move::CuspRemove { slot: 6 }) {
            Err(Error::InvalidMove(msg)) => assert!(msg.contains("no mark")),
            other => panic!("expected rejection, got {:?}", other),
        }
    }

    #[test]
    fn left_cusp_absorption_is_forbidden() {
        let (_, mcs) = canonical("L1 L3 X2 X2 X2 R1 R1", 0);
        for mv in [
            Move::LeftCuspRemove { slot: 1 },
            Move::LeftCuspInsert { slot: 1, strands: (1, 2) },
        ] {
            match apply(&mcs, &mv) {
                Err(Error::ForbiddenMove(_)) => {}
                other => panic!("expected a forbidden move, got {:?}", other),
            }
        }
    }

    #[test]
    fn explode_and_implode_round_trip() {
        // Slot 4 of this front has potentials (1, 0, -1, 0); the pair (3, 4)
        // is Maslov-adjacent and the complex there has the single entry
        // (2, 3), so the exploded block is exactly [(2, 4)].
        let (_, mcs) = canonical("L1 L3 X2 X3 X3 X2 X2 R1 R1", 0);
        let mv = Move::Explode { slot: 4, pos: 0, strands: (3, 4) };
        let (with, ap) = apply(&mcs, &mv).unwrap();
        assert_eq!(ap.id, 13);
        assert_eq!(with.slot(4), &[(2, 4)]);
        let (back, ap) =
            apply(&with, &Move::Implode { slot: 4, pos: 0, strands: (3, 4) }).unwrap();
        assert_eq!(ap.id, 13);
        assert!(same_marks(&back, &mcs));
        // The Maslov-adjacency precheck.
        match apply(&mcs, &Move::Explode { slot: 4, pos: 0, strands: (2, 4) }) {
            Err(Error::InvalidMove(msg)) => assert!(msg.contains("Maslov-adjacent")),
            other => panic!("expected rejection, got {:?}", other),
        }
        // Implode demands the block to be present in full.
        match apply(&with, &Move::Implode { slot: 4, pos: 1, strands: (3, 4) }) {
            Err(Error::InvalidMove(msg)) => assert!(msg.contains("block")),
            other => panic!("expected rejection, got {:?}", other),
        }
    }

    #[test]
    fn move_records_round_trip_through_json() {
        for (id, mv) in [
            (1u8, Move::InsertPair { slot: 3, pos: 0, strands: (2, 3) }),
            (12, Move::PassEast { slot: 5 }),
            (13, Move::Explode { slot: 4, pos: 1, strands: (3, 4) }),
        ] {
            let ap = Applied { id, mv };
            let v = ap.to_json();
            assert_eq!(v.get("move").and_then(|m| m.as_u64()), Some(id as u64));
            let back = Applied::from_json(&v).unwrap();
            assert_eq!(back, ap);
        }
        assert!(Applied::from_json(&serde_json::json!({ "op": "pass_east", "slot": 0 })).is_err());
        assert!(Applied::from_json(
            &serde_json::json!({ "move": 14, "op": "pass_east", "slot": 0 })
        )
        .is_err());
    }

    /// Random moves on random valid MCSs: every application re-derives the
    /// sequence and asserts locality, so each success is a verified legal
    /// move, and a candidate passing the preconditions must never surface a
    /// property violation.
    #[test]
    fn fuzzed_moves_stay_valid_and_local() {
        let bases: Vec<Mcs> = sampled_bases()
            .iter()
            .filter(|m| (0..m.slot_count()).any(|t| !mu_equal_pairs(m, t).is_empty()))
            .cloned()
            .collect();
        let mut rng = XorShift64::new(0xfeed);
        let mut hist: BTreeMap<u8, usize> = BTreeMap::new();
        let mut states: Vec<Mcs> = bases.clone();
        let mut applied = 0usize;
        let mut attempts = 0usize;
        while applied < 2_000 {
            attempts += 1;
            assert!(attempts < 100_000, "legal moves became too rare: {:?}", hist);
            let i = rng.below(states.len());
            if states[i].handleslide_count() > 30 {
                states[i] = bases[i].clone();
            }
            let mv = match random_candidate(&mut rng, &states[i]) {
                Some(mv) => mv,
                None => continue,
            };
            match apply(&states[i], &mv) {
                Ok((next, ap)) => {
                    *hist.entry(ap.id).or_insert(0) += 1;
                    states[i] = next;
                    applied += 1;
                }
                Err(Error::InvalidMove(_)) | Err(Error::ForbiddenMove(_)) => {}
                Err(e) => panic!("move {:?} failed wrongly: {}", mv, e),
            }
        }
        for id in [1u8, 3, 7, 8, 10, 13] {
            assert!(hist.contains_key(&id), "move {} never occurred: {:?}", id, hist);
        }
    }

    /// Draws a candidate move, biased toward legality: strand pairs come
    /// from the slot's equal- or adjacent-potential lists, with a sliver of
    /// unconstrained candidates so the rejection paths get fuzzed too.
    fn random_candidate(rng: &mut XorShift64, mcs: &Mcs) -> Option<Move> {
        let front = mcs.front();
        let slot = rng.below(mcs.slot_count());
        let n = front.strands_at(slot);
        let len = mcs.slot(slot).len();
        let mut equal = Vec::new();
        let mut adjacent = Vec::new();
        for a in 1..=n {
            for b in a + 1..=n {
                let (ma, mb) = (front.mu_at(slot, a), front.mu_at(slot, b));
                if ma == mb {
                    equal.push((a, b));
                }
                if ma == mb - 1 {
                    adjacent.push((a, b));
                }
            }
        }
        let pick = |rng: &mut XorShift64, v: &[(usize, usize)]| {
            if v.is_empty() {
                None
            } else {
                Some(v[rng.below(v.len())])
            }
        };
        Some(match rng.below(16) {
            0 | 1 => Move::InsertPair { slot, pos: rng.below(len + 1), strands: pick(rng, &equal)? },
            2 if len >= 2 => Move::CancelPair { slot, pos: rng.below(len - 1) },
            3 | 4 if len >= 2 => Move::Commute { slot, pos: rng.below(len - 1) },
            5 if len >= 2 => Move::ChainExpand { slot, pos: rng.below(len - 1) },
            6 if len >= 3 => Move::ChainContract { slot, pos: rng.below(len - 2) },
            7 | 8 if len >= 1 => Move::PassEast { slot },
            9 | 10 if len >= 1 => Move::PassWest { slot },
            11 => Move::CuspRemove { slot },
            12 => Move::CuspInsert { slot, strands: pick(rng, &equal)? },
            13 => Move::Explode { slot, pos: rng.below(len + 1), strands: pick(rng, &adjacent)? },
            14 if len >= 1 => {
                Move::Implode { slot, pos: rng.below(len), strands: pick(rng, &adjacent)? }
            }
            15 => {
                if n < 2 {
                    return None;
                }
                let a = 1 + rng.below(n - 1);
                let b = a + 1 + rng.below(n - a);
                Move::InsertPair { slot, pos: rng.below(len + 1), strands: (a, b) }
            }
            _ => return None,
        })
    }
}
