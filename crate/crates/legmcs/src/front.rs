//! Front diagrams of Legendrian knots.
//!
//! A front diagram is encoded as a word of events read left to right. Each
//! event is a left cusp `L<k>`, a right cusp `R<k>` or a crossing `X<k>`,
//! where `k` is the 1-based height of the event counted from the top of the
//! diagram: a left cusp at height `k` inserts two new strands at heights `k`
//! and `k + 1`, a right cusp at height `k` joins the strands at heights `k`
//! and `k + 1`, and a crossing at height `k` exchanges them.
//!
//! Construction checks that every event acts on strands that exist, that the
//! word closes the diagram, that the curve is a single knot, and that it
//! carries a Maslov potential — equivalently, that the rotation number
//! vanishes. The potential is normalized so that the upper strand born at
//! the first event carries potential 1.
//!
//! Positions between consecutive events are called *slots*: slot `t` is the
//! vertical line just left of event `t`, and slot `N` (for a word of `N`
//! events) is right of the whole diagram. The strand at height `k` of slot
//! `t` belongs to an *arc*, a maximal piece of the front between two cusp
//! points; arcs continue through crossings and the Maslov potential is
//! constant along them.

use crate::{Error, Result};
use std::fmt;

/// Identifier of an arc of the front (a maximal cusp-free piece).
pub type ArcId = usize;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum EventKind {
    LeftCusp,
    RightCusp,
    Crossing,
}

/// One column of the front: a cusp or a crossing at a given height.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct FrontEvent {
    pub kind: EventKind,
    /// 1-based height, counted from the top of the diagram.
    pub level: usize,
}

impl fmt::Display for FrontEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.kind {
            EventKind::LeftCusp => 'L',
            EventKind::RightCusp => 'R',
            EventKind::Crossing => 'X',
        };
        write!(f, "{}{}", c, self.level)
    }
}

/// Maximum number of strands a front may have at any slot; strand sets are
/// manipulated as `u64` bitmasks throughout the crate.
pub const MAX_STRANDS: usize = 64;

/// Parses an event word such as `"L1 L3 X2 X2 X2 R1 R1"`.
pub fn parse_word(input: &str) -> Result<Vec<FrontEvent>> {
    let mut events = Vec::new();
    for (i, tok) in input.split_whitespace().enumerate() {
        let err = |msg: &str| Error::Parse(format!("token {} ({:?}): {}", i + 1, tok, msg));
        let bytes = tok.as_bytes();
        let kind = match bytes[0] {
            b'L' => EventKind::LeftCusp,
            b'R' => EventKind::RightCusp,
            b'X' => EventKind::Crossing,
            _ => return Err(err("expected 'L', 'R' or 'X' followed by a height")),
        };
        let digits = &tok[1..];
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err("height must be a decimal number"));
        }
        let level: usize = digits
            .parse()
            .map_err(|_| err("height out of range"))?;
        if level == 0 {
            return Err(err("heights are 1-based"));
        }
        events.push(FrontEvent { kind, level });
    }
    if events.is_empty() {
        return Err(Error::Parse("empty event word".into()));
    }
    Ok(events)
}

/// A validated front diagram of a Legendrian knot, with its arcs, Maslov
/// potential and generator degrees precomputed.
#[derive(Clone, Debug)]
pub struct FrontDiagram {
    events: Vec<FrontEvent>,
    /// `slot_arcs[t][k-1]` is the arc at height `k` of slot `t`.
    slot_arcs: Vec<Vec<ArcId>>,
    /// Maslov potential per arc.
    maslov: Vec<i64>,
    /// Whether each arc is traversed eastward by the chosen orientation.
    eastward: Vec<bool>,
    /// Degree of the generator at each event: right cusps have degree 1,
    /// crossings have the difference of the Maslov potentials of the two
    /// strands entering from the left (upper minus lower); `None` at left
    /// cusps.
    degrees: Vec<Option<i64>>,
    tb: i64,
}

impl FrontDiagram {
    pub fn from_word(input: &str) -> Result<Self> {
        FrontDiagram::new(parse_word(input)?)
    }

    pub fn new(events: Vec<FrontEvent>) -> Result<Self> {
        if events.is_empty() {
            return Err(Error::InvalidFront("empty event word".into()));
        }

        // Plumb the strands through the events, allocating arcs. For each
        // arc, record the partner it is joined to at each of its ends and
        // whether the arc itself is the upper one there.
        let mut slot_arcs: Vec<Vec<ArcId>> = vec![Vec::new()];
        let mut arc_count: usize = 0;
        let mut right_join_of_arc: Vec<Option<(ArcId, bool)>> = Vec::new();
        let mut left_join_of_arc: Vec<Option<(ArcId, bool)>> = Vec::new();

        for (idx, ev) in events.iter().enumerate() {
            let cur = slot_arcs.last().unwrap().clone();
            let n = cur.len();
            let k = ev.level;
            let fail = |msg: String| Error::InvalidFront(format!("event {} ({}): {}", idx + 1, ev, msg));
            let next = match ev.kind {
                EventKind::LeftCusp => {
                    if k > n + 1 {
                        return Err(fail(format!("height {} with only {} strands", k, n)));
                    }
                    if n + 2 > MAX_STRANDS {
                        return Err(Error::TooLarge(format!(
                            "more than {} strands at event {}",
                            MAX_STRANDS,
                            idx + 1
                        )));
                    }
                    let upper = arc_count;
                    let lower = arc_count + 1;
                    arc_count += 2;
                    left_join_of_arc.push(Some((lower, true)));
                    left_join_of_arc.push(Some((upper, false)));
                    right_join_of_arc.push(None);
                    right_join_of_arc.push(None);
                    let mut v = cur;
                    v.splice(k - 1..k - 1, [upper, lower]);
                    v
                }
                EventKind::RightCusp => {
                    if k + 1 > n {
                        return Err(fail(format!("height {} with only {} strands", k, n)));
                    }
                    let upper = cur[k - 1];
                    let lower = cur[k];
                    right_join_of_arc[upper] = Some((lower, true));
                    right_join_of_arc[lower] = Some((upper, false));
                    let mut v = cur;
                    v.drain(k - 1..=k);
                    v
                }
                EventKind::Crossing => {
                    if k + 1 > n {
                        return Err(fail(format!("height {} with only {} strands", k, n)));
                    }
                    let mut v = cur;
                    v.swap(k - 1, k);
                    v
                }
            };
            slot_arcs.push(next);
        }
        if !slot_arcs.last().unwrap().is_empty() {
            return Err(Error::InvalidFront(format!(
                "word leaves {} strands open",
                slot_arcs.last().unwrap().len()
            )));
        }

        // Walk the knot starting along arc 0 (the upper arc born at the first
        // event), counting downward and upward cusp passages. Passing a cusp
        // downward means entering along its upper arc.
        let mut downs: i64 = 0;
        let mut ups: i64 = 0;
        let mut eastward = vec![true; arc_count];
        let mut visited = vec![false; arc_count];
        let mut maslov = vec![0i64; arc_count];
        let mut cur: ArcId = 0;
        let mut moving_east = true;
        let mut steps = 0usize;
        loop {
            visited[cur] = true;
            eastward[cur] = moving_east;
            let (partner, entered_upper) = if moving_east {
                right_join_of_arc[cur].expect("every arc ends at a right cusp")
            } else {
                left_join_of_arc[cur].expect("every arc starts at a left cusp")
            };
            if entered_upper {
                downs += 1;
            } else {
                ups += 1;
            }
            if !visited[partner] {
                maslov[partner] = maslov[cur] + if entered_upper { -1 } else { 1 };
            }
            // After a right cusp we run the partner westward; after a left
            // cusp, eastward.
            cur = partner;
            moving_east = !moving_east;
            steps += 1;
            if cur == 0 && moving_east {
                break;
            }
            if steps > 2 * arc_count {
                unreachable!("cusp joins do not close up");
            }
        }
        let traversed = visited.iter().filter(|&&v| v).count();
        if traversed != arc_count {
            // Count the remaining components by walking each unvisited orbit.
            let mut components = 1;
            for start in 0..arc_count {
                if visited[start] {
                    continue;
                }
                components += 1;
                let mut cur = start;
                let mut moving_east = true;
                loop {
                    visited[cur] = true;
                    let (partner, _) = if moving_east {
                        right_join_of_arc[cur].unwrap()
                    } else {
                        left_join_of_arc[cur].unwrap()
                    };
                    cur = partner;
                    moving_east = !moving_east;
                    if cur == start && moving_east {
                        break;
                    }
                }
            }
            return Err(Error::MultiComponent(components));
        }
        let rotation = (downs - ups) / 2;
        if rotation != 0 {
            return Err(Error::MaslovInconsistent { rotation });
        }
        // Normalize so the upper arc of the first cusp has potential 1. The
        // walk starts there with 0, so shift everything by 1.
        for m in &mut maslov {
            *m += 1;
        }

        // Degrees and the Thurston–Bennequin number. A crossing is positive
        // exactly when its two strands are traversed in the same horizontal
        // direction.
        let mut degrees = Vec::with_capacity(events.len());
        let mut writhe: i64 = 0;
        for (idx, ev) in events.iter().enumerate() {
            degrees.push(match ev.kind {
                EventKind::LeftCusp => None,
                EventKind::RightCusp => Some(1),
                EventKind::Crossing => {
                    let upper = slot_arcs[idx][ev.level - 1];
                    let lower = slot_arcs[idx][ev.level];
                    writhe += if eastward[upper] == eastward[lower] { 1 } else { -1 };
                    Some(maslov[upper] - maslov[lower])
                }
            });
        }
        let right_cusps = events.iter().filter(|e| e.kind == EventKind::RightCusp).count() as i64;
        let tb = writhe - right_cusps;

        Ok(FrontDiagram { events, slot_arcs, maslov, eastward, degrees, tb })
    }

    pub fn events(&self) -> &[FrontEvent] {
        &self.events
    }

    /// Number of slots, one more than the number of events.
    pub fn slots(&self) -> usize {
        self.slot_arcs.len()
    }

    /// Number of strands crossing slot `t`.
    pub fn strands_at(&self, slot: usize) -> usize {
        self.slot_arcs[slot].len()
    }

    /// The arc at 1-based height `level` of slot `t`.
    pub fn arc_at(&self, slot: usize, level: usize) -> ArcId {
        self.slot_arcs[slot][level - 1]
    }

    /// Maslov potential of an arc.
    pub fn maslov(&self, arc: ArcId) -> i64 {
        self.maslov[arc]
    }

    /// Maslov potential of the strand at 1-based height `level` of slot `t`.
    pub fn mu_at(&self, slot: usize, level: usize) -> i64 {
        self.maslov[self.arc_at(slot, level)]
    }

    /// Whether the chosen orientation traverses an arc west to east.
    pub fn is_eastward(&self, arc: ArcId) -> bool {
        self.eastward[arc]
    }

    /// Degree of the generator sitting at event `idx`, if any.
    pub fn degree(&self, idx: usize) -> Option<i64> {
        self.degrees[idx]
    }

    /// Rotation number; always 0 for a successfully constructed diagram.
    pub fn rotation(&self) -> i64 {
        0
    }

    /// Thurston–Bennequin number of the knot.
    pub fn tb(&self) -> i64 {
        self.tb
    }

    /// The canonical event word.
    pub fn word(&self) -> String {
        let mut s = String::new();
        for (i, ev) in self.events.iter().enumerate() {
            if i > 0 {
                s.push(' ');
            }
            s.push_str(&ev.to_string());
        }
        s
    }

    /// Event indices of crossings whose generator has degree zero.
    pub fn degree_zero_crossings(&self) -> Vec<usize> {
        self.events
            .iter()
            .enumerate()
            .filter(|(i, e)| e.kind == EventKind::Crossing && self.degrees[*i] == Some(0))
            .map(|(i, _)| i)
            .collect()
    }
}

impl fmt::Display for FrontDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.word())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::random_front_word;
    use proptest::prelude::*;

    fn counts(d: &FrontDiagram) -> Vec<usize> {
        (0..d.slots()).map(|t| d.strands_at(t)).collect()
    }

    #[test]
    fn unknot_basics() {
        let d = FrontDiagram::from_word("L1 R1").unwrap();
        assert_eq!(counts(&d), [0, 2, 0]);
        assert_eq!(d.degree(0), None);
        assert_eq!(d.degree(1), Some(1));
        assert_eq!(d.maslov(0), 1);
        assert_eq!(d.maslov(1), 0);
        assert_eq!(d.tb(), -1);
        assert_eq!(d.word(), "L1 R1");
    }

    #[test]
    fn trefoil_counts_degrees_tb() {
        let d = FrontDiagram::from_word("L1 L3 X2 X2 X2 R1 R1").unwrap();
        assert_eq!(counts(&d), [0, 2, 4, 4, 4, 4, 2, 0]);
        let degs: Vec<_> = (0..7).map(|i| d.degree(i)).collect();
        assert_eq!(
            degs,
            [None, None, Some(0), Some(0), Some(0), Some(1), Some(1)]
        );
        assert_eq!(d.tb(), 1);
        assert_eq!(d.degree_zero_crossings(), [2, 3, 4]);
    }

    #[test]
    fn doubly_stabilized_unknot_degrees_tb() {
        let d = FrontDiagram::from_word("L1 X1 X1 R1").unwrap();
        let degs: Vec<_> = (0..4).map(|i| d.degree(i)).collect();
        assert_eq!(degs, [None, Some(1), Some(-1), Some(1)]);
        assert_eq!(d.tb(), -3);
    }

    #[test]
    fn reversed_trefoil_matches_trefoil_classically() {
        let d = FrontDiagram::from_word("L1 L2 X3 X2 X2 X2 X2 R1 R1").unwrap();
        let degs: Vec<_> = (0..9).map(|i| d.degree(i)).collect();
        assert_eq!(
            degs,
            [None, None, Some(-1), Some(0), Some(0), Some(0), Some(0), Some(1), Some(1)]
        );
        assert_eq!(d.tb(), 1);
    }

    #[test]
    fn clasp_degrees_tb() {
        let d = FrontDiagram::from_word("L1 L3 X2 X3 X3 X2 X2 R1 R1").unwrap();
        let degs: Vec<_> = (0..9).map(|i| d.degree(i)).collect();
        assert_eq!(
            degs,
            [None, None, Some(0), Some(1), Some(-1), Some(0), Some(0), Some(1), Some(1)]
        );
        assert_eq!(d.tb(), -1);
    }

    #[test]
    fn stabilized_once_has_no_potential() {
        match FrontDiagram::from_word("L1 X1 R1") {
            Err(Error::MaslovInconsistent { rotation }) => assert_eq!(rotation, -1),
            other => panic!("expected Maslov inconsistency, got {:?}", other),
        }
    }

    #[test]
    fn two_unknots_are_rejected() {
        match FrontDiagram::from_word("L1 R1 L1 R1") {
            Err(Error::MultiComponent(n)) => assert_eq!(n, 2),
            other => panic!("expected multi-component error, got {:?}", other),
        }
        match FrontDiagram::from_word("L1 L1 R1 R1") {
            Err(Error::MultiComponent(n)) => assert_eq!(n, 2),
            other => panic!("expected multi-component error, got {:?}", other),
        }
    }

    #[test]
    fn malformed_words_are_rejected() {
        assert!(matches!(FrontDiagram::from_word(""), Err(Error::Parse(_))));
        assert!(matches!(FrontDiagram::from_word("L0"), Err(Error::Parse(_))));
        assert!(matches!(FrontDiagram::from_word("L+1 R1"), Err(Error::Parse(_))));
        assert!(matches!(FrontDiagram::from_word("Q1"), Err(Error::Parse(_))));
        assert!(matches!(FrontDiagram::from_word("L1 R3"), Err(Error::InvalidFront(_))));
        assert!(matches!(FrontDiagram::from_word("X1 L1 R1"), Err(Error::InvalidFront(_))));
        assert!(matches!(FrontDiagram::from_word("L1"), Err(Error::InvalidFront(_))));
    }

    #[test]
    fn maslov_satisfies_cusp_relation_everywhere() {
        for seed in 0..200u64 {
            let word = random_front_word(seed, 14);
            let Ok(d) = FrontDiagram::from_word(&word) else { continue };
            for (idx, ev) in d.events().iter().enumerate() {
                let (slot, k) = match ev.kind {
                    EventKind::LeftCusp => (idx + 1, ev.level),
                    EventKind::RightCusp => (idx, ev.level),
                    EventKind::Crossing => continue,
                };
                assert_eq!(
                    d.mu_at(slot, k + 1),
                    d.mu_at(slot, k) - 1,
                    "cusp relation at event {} of {}",
                    idx,
                    word
                );
            }
        }
    }

    /// Reading the word right to left with cusps exchanged reflects the
    /// diagram horizontally: the same knot with reversed orientation. The
    /// reflection preserves validity, reverses strand counts, and sends the
    /// degree sequence of crossings to its reverse with signs flipped.
    #[test]
    fn horizontal_reflection_acts_as_expected() {
        let reflect = |d: &FrontDiagram| -> Vec<FrontEvent> {
            d.events()
                .iter()
                .rev()
                .map(|e| FrontEvent {
                    kind: match e.kind {
                        EventKind::LeftCusp => EventKind::RightCusp,
                        EventKind::RightCusp => EventKind::LeftCusp,
                        EventKind::Crossing => EventKind::Crossing,
                    },
                    level: e.level,
                })
                .collect()
        };
        let mut tested = 0;
        for seed in 0..300u64 {
            let word = random_front_word(seed, 12);
            let Ok(d) = FrontDiagram::from_word(&word) else { continue };
            let r = FrontDiagram::new(reflect(&d)).unwrap_or_else(|e| {
                panic!("reflection of {} invalid: {}", word, e);
            });
            let mut want = counts(&d);
            want.reverse();
            assert_eq!(counts(&r), want, "counts of reflected {}", word);
            assert_eq!(r.tb(), d.tb(), "tb of reflected {}", word);
            let fwd: Vec<i64> = (0..d.events().len())
                .filter(|&i| d.events()[i].kind == EventKind::Crossing)
                .map(|i| d.degree(i).unwrap())
                .collect();
            let bwd: Vec<i64> = (0..r.events().len())
                .filter(|&i| r.events()[i].kind == EventKind::Crossing)
                .map(|i| -r.degree(i).unwrap())
                .collect();
            let mut bwd_rev = bwd;
            bwd_rev.reverse();
            assert_eq!(fwd, bwd_rev, "degrees of reflected {}", word);
            tested += 1;
        }
        assert!(tested > 50, "sampler produced too few valid fronts");
    }

    proptest! {
        #[test]
        fn parser_accepts_exactly_canonical_words(seed in 0u64..5000, len in 2usize..16) {
            let word = random_front_word(seed, len);
            let events = parse_word(&word).unwrap();
            if let Ok(d) = FrontDiagram::new(events) {
                prop_assert_eq!(d.word(), word);
            }
        }
    }
}
