//! Morse complex sequences over a front diagram.
//!
//! A Morse complex sequence (MCS) decorates a front diagram with a finite
//! ordered collection of *handleslide marks*: vertical segments joining two
//! strands of equal Maslov potential inside a slot of the front. The data
//! determines, slice by slice, a strictly triangular chain complex on the
//! strands ([`TriangularComplex`]); the defining axioms require every slice
//! to carry such a complex, compatible with the events of the front:
//!
//! * crossing strands carry a vanishing differential entry just west of
//!   their crossing,
//! * the two strands meeting a right cusp carry a unit entry just west of
//!   the cusp, and the complex east of the cusp is the quotient by the
//!   acyclic pair they span,
//! * a left cusp extends the complex by a decoupled acyclic pair (this
//!   module implements the *simple* left-cusp discipline throughout),
//! * a handleslide between strands `k < l` conjugates by `e_k ↦ e_k + e_l`.
//!
//! All of this is checked constructively by [`Mcs::derive`], which walks the
//! front west to east and either produces every slice complex or reports the
//! first axiom violation.
//!
//! The bridge to augmentations of the Chekanov–Eliashberg algebra is the
//! *canonical form*: an MCS with at most one handleslide mark per slot,
//! placed at `(k, k+1)` immediately west of a degree-zero crossing of
//! strands `k, k+1`. [`Mcs::from_augmentation`] builds it from the set of
//! augmented crossings and [`Mcs::augmentation_of`] reads the set back.

pub mod complex;
pub mod moves;
pub mod ruling;
pub mod sweep;

pub use complex::TriangularComplex;

use crate::augment::Augmentation;
use crate::front::{EventKind, FrontDiagram};
use crate::{Dga, Error, Result};
use std::collections::BTreeSet;
use std::fmt;

/// A Morse complex sequence: a front diagram together with the ordered
/// handleslide marks of each slot (west to east within a slot).
///
/// Slot `t` is the vertical strip west of event `t`; the final slot lies
/// east of the last event. A mark `(k, l)` with `k < l` joins strands `k`
/// and `l` (1-based from the top).
#[derive(Clone, Debug)]
pub struct Mcs {
    front: FrontDiagram,
    slots: Vec<Vec<(usize, usize)>>,
}

/// The slice complexes of a valid MCS: one at each end of every slot.
#[derive(Clone, Debug)]
pub struct Derived {
    enter: Vec<TriangularComplex>,
    exit: Vec<TriangularComplex>,
}

impl Derived {
    /// The complex at the west end of slot `t`, before its handleslides.
    pub fn enter(&self, t: usize) -> &TriangularComplex {
        &self.enter[t]
    }

    /// The complex at the east end of slot `t`, feeding event `t`.
    pub fn exit(&self, t: usize) -> &TriangularComplex {
        &self.exit[t]
    }

    pub fn slots(&self) -> usize {
        self.enter.len()
    }
}

fn in_slot(t: usize, e: Error) -> Error {
    match e {
        Error::AxiomViolation(s) => Error::AxiomViolation(format!("slot {}: {}", t, s)),
        Error::InvalidMove(s) => Error::InvalidMove(format!("slot {}: {}", t, s)),
        other => other,
    }
}

impl Mcs {
    /// The MCS with no handleslide marks.
    pub fn new(front: FrontDiagram) -> Mcs {
        let slots = vec![Vec::new(); front.slots()];
        Mcs { front, slots }
    }

    pub fn front(&self) -> &FrontDiagram {
        &self.front
    }

    /// The marks of slot `t`, ordered west to east.
    pub fn slot(&self, t: usize) -> &[(usize, usize)] {
        &self.slots[t]
    }

    pub fn slot_count(&self) -> usize {
        self.slots.len()
    }

    pub fn handleslide_count(&self) -> usize {
        self.slots.iter().map(Vec::len).sum()
    }

    pub(crate) fn slots_mut(&mut self) -> &mut Vec<Vec<(usize, usize)>> {
        &mut self.slots
    }

    /// Appends a mark at the east end of a slot. The strands are checked
    /// for range and order here; Maslov compatibility is checked by
    /// [`Mcs::derive`].
    pub fn push_handleslide(&mut self, slot: usize, k: usize, l: usize) -> Result<()> {
        if slot >= self.slots.len() {
            return Err(Error::InvalidMove(format!(
                "slot {} out of range ({} slots)",
                slot,
                self.slots.len()
            )));
        }
        let n = self.front.strands_at(slot);
        if k == 0 || l <= k || l > n {
            return Err(Error::InvalidMove(format!(
                "handleslide ({}, {}) out of range for {} strands in slot {}",
                k, l, n, slot
            )));
        }
        self.slots[slot].push((k, l));
        Ok(())
    }

    /// Walks the front west to east, deriving the complex of every slice and
    /// checking all MCS axioms along the way. Returns the complexes at both
    /// ends of every slot, or the first violation.
    pub fn derive(&self) -> Result<Derived> {
        let front = &self.front;
        let events = front.events();
        let mut enter = Vec::with_capacity(front.slots());
        let mut exit = Vec::with_capacity(front.slots());
        let mut c = TriangularComplex::new(Vec::new());
        for t in 0..front.slots() {
            debug_assert_eq!(c.size(), front.strands_at(t));
            enter.push(c.clone());
            for &(k, l) in &self.slots[t] {
                c = c.handleslide(k, l).map_err(|e| in_slot(t, e))?;
            }
            exit.push(c.clone());
            if t < events.len() {
                let ev = events[t];
                c = match ev.kind {
                    EventKind::Crossing => c.crossing(ev.level),
                    EventKind::RightCusp => c.right_cusp(ev.level),
                    EventKind::LeftCusp => {
                        c.left_cusp(ev.level, front.mu_at(t + 1, ev.level))
                    }
                }
                .map_err(|e| in_slot(t, e))?;
            }
        }
        debug_assert_eq!(c.size(), 0);
        Ok(Derived { enter, exit })
    }

    /// Checks all MCS axioms.
    pub fn validate(&self) -> Result<()> {
        self.derive().map(|_| ())
    }

    /// The complex of the slice just east of the first `pos` marks of slot
    /// `t` (so `pos = 0` gives the entering complex).
    pub fn complex_at(&self, derived: &Derived, t: usize, pos: usize) -> Result<TriangularComplex> {
        let mut c = derived.enter(t).clone();
        for &(k, l) in &self.slots[t][..pos] {
            c = c.handleslide(k, l).map_err(|e| in_slot(t, e))?;
        }
        Ok(c)
    }

    /// The canonical MCS of an augmentation: one handleslide mark `(k, k+1)`
    /// immediately west of each augmented crossing of strands `k, k+1`.
    pub fn from_augmentation(dga: &Dga, eps: &Augmentation) -> Result<Mcs> {
        if !eps.is_augmentation(dga) {
            return Err(Error::Property(format!(
                "{} does not augment the algebra of {}",
                eps.label(dga),
                dga.front().word()
            )));
        }
        let mut mcs = Mcs::new(dga.front().clone());
        for &g in eps.support() {
            let gen = &dga.generators()[g];
            let k = dga.front().events()[gen.event].level;
            mcs.slots[gen.event].push((k, k + 1));
        }
        if let Err(e) = mcs.validate() {
            return Err(Error::Property(format!(
                "canonical MCS of {} fails its axioms: {}",
                eps.label(dga),
                e
            )));
        }
        Ok(mcs)
    }

    /// Reads the augmented crossings back off an MCS in canonical form. An
    /// MCS whose marks are not exactly one `(k, k+1)` west of some set of
    /// degree-zero crossings is rejected.
    pub fn augmentation_of(&self, dga: &Dga) -> Result<Augmentation> {
        if dga.front().word() != self.front.word() {
            return Err(Error::InvalidMove(format!(
                "MCS lives on {} but the algebra is over {}",
                self.front.word(),
                dga.front().word()
            )));
        }
        let mut support = BTreeSet::new();
        for (t, marks) in self.slots.iter().enumerate() {
            match marks.len() {
                0 => {}
                1 => {
                    let (k, l) = marks[0];
                    let ok = t < self.front.events().len()
                        && self.front.events()[t].kind == EventKind::Crossing
                        && self.front.events()[t].level == k
                        && l == k + 1
                        && self.front.degree(t) == Some(0);
                    if !ok {
                        return Err(Error::Property(format!(
                            "not in canonical form: slot {} carries ({}, {}) away from \
                             a degree-zero crossing",
                            t, k, l
                        )));
                    }
                    support.insert(dga.generator_at_event(t).expect("crossing generator"));
                }
                n => {
                    return Err(Error::Property(format!(
                        "not in canonical form: slot {} carries {} marks",
                        t, n
                    )));
                }
            }
        }
        let eps = Augmentation::from_support(dga, support)?;
        if !eps.is_augmentation(dga) {
            return Err(Error::Property(format!(
                "marked crossings {} of a valid MCS do not augment the algebra",
                eps.label(dga)
            )));
        }
        Ok(eps)
    }

    /// A flat JSON form: the front word plus one record per mark.
    pub fn to_json(&self) -> serde_json::Value {
        let mut marks = Vec::new();
        for (t, slot) in self.slots.iter().enumerate() {
            for (rank, &(k, l)) in slot.iter().enumerate() {
                marks.push(serde_json::json!({
                    "slot": t,
                    "rank": rank,
                    "strands": [k, l],
                }));
            }
        }
        serde_json::json!({ "front": self.front.word(), "handleslides": marks })
    }

    /// Parses the JSON form produced by [`Mcs::to_json`]. Structure and
    /// ranges are checked here; axioms are checked by [`Mcs::derive`].
    pub fn from_json(v: &serde_json::Value) -> Result<Mcs> {
        let word = v
            .get("front")
            .and_then(|w| w.as_str())
            .ok_or_else(|| Error::Parse("missing \"front\" word".into()))?;
        let front = FrontDiagram::from_word(word)?;
        let mut mcs = Mcs::new(front);
        let records = match v.get("handleslides") {
            None => &[] as &[serde_json::Value],
            Some(serde_json::Value::Array(a)) => a.as_slice(),
            Some(_) => return Err(Error::Parse("\"handleslides\" must be an array".into())),
        };
        let mut parsed = Vec::with_capacity(records.len());
        for r in records {
            let field = |name: &str| {
                r.get(name)
                    .and_then(|x| x.as_u64())
                    .map(|x| x as usize)
                    .ok_or_else(|| Error::Parse(format!("handleslide record needs \"{}\"", name)))
            };
            let slot = field("slot")?;
            let rank = field("rank")?;
            let strands = r
                .get("strands")
                .and_then(|s| s.as_array())
                .filter(|s| s.len() == 2)
                .ok_or_else(|| Error::Parse("\"strands\" must be a pair".into()))?;
            let k = strands[0].as_u64().ok_or_else(|| Error::Parse("bad strand".into()))? as usize;
            let l = strands[1].as_u64().ok_or_else(|| Error::Parse("bad strand".into()))? as usize;
            parsed.push((slot, rank, k, l));
        }
        parsed.sort();
        for window in parsed.windows(2) {
            if window[0].0 == window[1].0 && window[0].1 == window[1].1 {
                return Err(Error::Parse(format!(
                    "duplicate rank {} in slot {}",
                    window[0].1, window[0].0
                )));
            }
        }
        for &(slot, rank, k, l) in &parsed {
            if slot >= mcs.slot_count() {
                return Err(Error::Parse(format!(
                    "slot {} out of range ({} slots)",
                    slot,
                    mcs.slot_count()
                )));
            }
            if rank != mcs.slots[slot].len() {
                return Err(Error::Parse(format!(
                    "ranks of slot {} are not contiguous from 0",
                    slot
                )));
            }
            mcs.push_handleslide(slot, k, l)
                .map_err(|e| Error::Parse(format!("{}", e)))?;
        }
        Ok(mcs)
    }
}

impl PartialEq for Mcs {
    fn eq(&self, other: &Self) -> bool {
        self.front.word() == other.front.word() && self.slots == other.slots
    }
}

impl Eq for Mcs {}

impl fmt::Display for Mcs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MCS over {} with", self.front.word())?;
        if self.handleslide_count() == 0 {
            return write!(f, " no marks");
        }
        for (t, slot) in self.slots.iter().enumerate() {
            for &(k, l) in slot {
                write!(f, " [slot {}: {}-{}]", t, k, l)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::augment;
    use crate::Budget;

    fn trefoil() -> Dga {
        let front = FrontDiagram::from_word("L1 L3 X2 X2 X2 R1 R1").unwrap();
        Dga::new(&front, Budget::default()).unwrap()
    }

    #[test]
    fn markless_mcs_fails_on_the_trefoil_but_holds_on_the_unknot() {
        let front = FrontDiagram::from_word("L1 R1").unwrap();
        let mcs = Mcs::new(front);
        let derived = mcs.derive().unwrap();
        assert_eq!(derived.exit(1).entry(1, 2), true);

        // The empty support does not augment the trefoil, and the markless
        // MCS indeed violates the cusp axiom.
        let front = FrontDiagram::from_word("L1 L3 X2 X2 X2 R1 R1").unwrap();
        let mcs = Mcs::new(front);
        match mcs.validate() {
            Err(Error::AxiomViolation(_)) => {}
            other => panic!("expected a cusp axiom violation, got {:?}", other),
        }
    }

    #[test]
    fn canonical_form_round_trips_on_the_trefoil() {
        let dga = trefoil();
        let augs = augment::enumerate(&dga, augment::DEFAULT_MAX_AUG_VARS).unwrap();
        assert_eq!(augs.len(), 5);
        for eps in &augs {
            let mcs = Mcs::from_augmentation(&dga, eps).unwrap();
            assert_eq!(mcs.handleslide_count(), eps.support().len());
            let back = mcs.augmentation_of(&dga).unwrap();
            assert_eq!(back.support(), eps.support());
        }
    }

    /// Hand-derived slice complex: trefoil, augmented crossing set {a1}. The
    /// mark west of the first crossing entangles the two cusp pairs; the
    /// differential east of all three crossings was computed by hand.
    #[test]
    fn trefoil_slice_complex_matches_hand_derivation() {
        let dga = trefoil();
        let eps =
            augment::Augmentation::from_support(&dga, [dga.by_name("a1").unwrap()]).unwrap();
        let mcs = Mcs::from_augmentation(&dga, &eps).unwrap();
        let derived = mcs.derive().unwrap();
        let c = derived.exit(5); // just west of the first right cusp
        let mut entries = Vec::new();
        for i in 1..=4 {
            for j in i + 1..=4 {
                if c.entry(i, j) {
                    entries.push((i, j));
                }
            }
        }
        assert_eq!(entries, vec![(1, 2), (1, 3), (2, 4), (3, 4)]);
    }

    #[test]
    fn canonical_form_validates_on_random_fronts() {
        let mut checked = 0;
        for seed in 0..40u64 {
            let front = crate::sample::random_front(seed, 10);
            let dga = Dga::new(&front, Budget::default()).unwrap();
            let augs = augment::enumerate(&dga, augment::DEFAULT_MAX_AUG_VARS).unwrap();
            for eps in &augs {
                let mcs = Mcs::from_augmentation(&dga, eps).unwrap();
                assert_eq!(mcs.augmentation_of(&dga).unwrap().support(), eps.support());
                checked += 1;
            }
        }
        assert!(checked > 10, "only {} augmentations across the sample", checked);
    }

    #[test]
    fn non_canonical_marks_are_rejected_by_augmentation_of() {
        let dga = trefoil();
        let eps =
            augment::Augmentation::from_support(&dga, [dga.by_name("a1").unwrap()]).unwrap();
        let mut mcs = Mcs::from_augmentation(&dga, &eps).unwrap();
        // A canceling pair of marks in the next slot: still a valid MCS
        // (the two conjugations undo each other), but not canonical.
        mcs.push_handleslide(3, 2, 3).unwrap();
        mcs.push_handleslide(3, 2, 3).unwrap();
        mcs.validate().unwrap();
        match mcs.augmentation_of(&dga) {
            Err(Error::Property(msg)) => assert!(msg.contains("canonical")),
            other => panic!("expected a canonical-form rejection, got {:?}", other),
        }
    }

    #[test]
    fn json_round_trip_preserves_the_mcs() {
        let dga = trefoil();
        let augs = augment::enumerate(&dga, augment::DEFAULT_MAX_AUG_VARS).unwrap();
        for eps in &augs {
            let mcs = Mcs::from_augmentation(&dga, eps).unwrap();
            let json = mcs.to_json();
            let back = Mcs::from_json(&json).unwrap();
            assert_eq!(back, mcs);
        }
        // Corrupted ranks are rejected.
        let mcs = Mcs::from_augmentation(&dga, &augs[0]).unwrap();
        let mut json = mcs.to_json();
        json["handleslides"][0]["rank"] = serde_json::json!(7);
        assert!(Mcs::from_json(&json).is_err());
    }
}
