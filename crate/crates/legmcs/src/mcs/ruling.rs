//! Rulings read off Morse complex sequences.
//!
//! Every slice complex of a valid MCS is acyclic, so its differential
//! canonically pairs the strands (the greedy reduction implemented in
//! [`pairing`], characterized independently by corner ranks). The pairing is
//! invariant under handleslides — conjugation by an upper unipotent matrix —
//! so each slot carries one well-defined pairing, and the slot-by-slot
//! family is a *ruling* of the front: pairs follow the strands across the
//! events, every cusp is capped by its own pair, and at a crossing the
//! pairing either follows the strands (a *pass*) or stays put (a *switch*).
//! [`ruling_of`] extracts the family and machine-checks all of that;
//! [`Ruling::is_normal`] then validates the classical normality condition
//! on the switches. Because every move of the calculus changes slices at
//! most by conjugation, the ruling is invariant on equivalence classes of
//! MCSs — which the tests pin down on the corpus.

use crate::front::EventKind;
use crate::gf2::BitMatrix;
use crate::mcs::{Mcs, TriangularComplex};
use crate::{Dga, Error, Result};

/// A ruling: one strand pairing per slot, plus the crossings at which the
/// pairing switches.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Ruling {
    /// `pairings[t]` is the canonical pairing of the complex in slot `t`,
    /// sorted ascending; each strand of the slot occurs in exactly one pair.
    pub pairings: Vec<Vec<(usize, usize)>>,
    /// Event indices of the crossings where the pairing switches.
    pub switches: Vec<usize>,
}

/// The canonical strand pairing of an acyclic triangular complex: rows are
/// reduced bottom-up against already-placed pivots (XOR on conflict), and
/// each surviving row is paired with its lowest column. Errors if the
/// complex is not acyclic — a valid MCS never produces such a slice.
pub fn pairing(c: &TriangularComplex) -> Result<Vec<(usize, usize)>> {
    let n = c.size();
    let mut rows: Vec<u128> = vec![0; n + 1];
    for i in 1..=n {
        for j in i + 1..=n {
            if c.entry(i, j) {
                rows[i] |= 1u128 << j;
            }
        }
    }
    let mut owner: Vec<Option<usize>> = vec![None; n + 2];
    for i in (1..=n).rev() {
        while rows[i] != 0 {
            let j = rows[i].trailing_zeros() as usize;
            match owner[j] {
                Some(i2) => rows[i] ^= rows[i2],
                None => {
                    owner[j] = Some(i);
                    break;
                }
            }
        }
    }
    let mut pairs = Vec::with_capacity(n / 2);
    let mut seen = vec![false; n + 1];
    for j in 1..=n {
        if let Some(i) = owner[j] {
            pairs.push((i, j));
            seen[i] = true;
            seen[j] = true;
        }
    }
    if seen.iter().skip(1).any(|&s| !s) {
        return Err(Error::Property(
            "a slice complex is not acyclic; it admits no strand pairing".into(),
        ));
    }
    pairs.sort();
    Ok(pairs)
}

/// Rank of the corner submatrix of the differential with rows `a..=n` and
/// columns `1..=b`. The inclusion–exclusion of four corners characterizes
/// the canonical pairing independently of the greedy reduction.
pub fn corner_rank(c: &TriangularComplex, a: usize, b: usize) -> usize {
    let n = c.size();
    if a > n || b == 0 {
        return 0;
    }
    let mut m = BitMatrix::new(n - a + 1, b);
    for i in a..=n {
        for j in 1..=b.min(n) {
            if j > i && c.entry(i, j) {
                m.flip(i - a, j - 1);
            }
        }
    }
    m.rank()
}

/// Whether `(i, j)` is a canonical pair of `c`, decided purely by corner
/// ranks.
pub fn corner_rank_pairs(c: &TriangularComplex, i: usize, j: usize) -> bool {
    corner_rank(c, i, j) + corner_rank(c, i + 1, j - 1)
        != corner_rank(c, i + 1, j) + corner_rank(c, i, j - 1)
}

/// Reads the ruling of a valid MCS, machine-checking on the way that
/// handleslides leave the slice pairing alone and that the pairings are
/// compatible with every event (cusps capped by their own pair, crossings
/// resolving to a pass or a switch).
pub fn ruling_of(mcs: &Mcs) -> Result<Ruling> {
    let derived = mcs.derive()?;
    let front = mcs.front();
    let mut pairings = Vec::with_capacity(derived.slots());
    for t in 0..derived.slots() {
        let enter = pairing(derived.enter(t))?;
        let exit = pairing(derived.exit(t))?;
        if enter != exit {
            return Err(Error::Property(format!(
                "the handleslides of slot {} changed the slice pairing",
                t
            )));
        }
        pairings.push(enter);
    }
    let mut switches = Vec::new();
    for (t, ev) in front.events().iter().enumerate() {
        let k = ev.level;
        let west = &pairings[t];
        let east = &pairings[t + 1];
        let not_a_ruling = |why: String| {
            Error::Property(format!("the slice pairings do not rule event {}: {}", t, why))
        };
        match ev.kind {
            EventKind::LeftCusp => {
                let lift = |x: usize| if x < k { x } else { x + 2 };
                let mut expect: Vec<(usize, usize)> =
                    west.iter().map(|&(a, b)| (lift(a), lift(b))).collect();
                expect.push((k, k + 1));
                expect.sort();
                if *east != expect {
                    return Err(not_a_ruling(format!(
                        "a left cusp must add its own pair, got {:?} from {:?}",
                        east, west
                    )));
                }
            }
            EventKind::RightCusp => {
                if !west.contains(&(k, k + 1)) {
                    return Err(not_a_ruling(format!(
                        "the pairing {:?} does not cap the right cusp at {}",
                        west, k
                    )));
                }
                let shift = |x: usize| if x > k + 1 { x - 2 } else { x };
                let mut expect: Vec<(usize, usize)> = west
                    .iter()
                    .filter(|&&p| p != (k, k + 1))
                    .map(|&(a, b)| (shift(a), shift(b)))
                    .collect();
                expect.sort();
                if *east != expect {
                    return Err(not_a_ruling(format!(
                        "the pairs do not follow the strands, got {:?} from {:?}",
                        east, west
                    )));
                }
            }
            EventKind::Crossing => {
                let rho = |x: usize| {
                    if x == k {
                        k + 1
                    } else if x == k + 1 {
                        k
                    } else {
                        x
                    }
                };
                let mut pass: Vec<(usize, usize)> = west
                    .iter()
                    .map(|&(a, b)| {
                        let (x, y) = (rho(a), rho(b));
                        (x.min(y), x.max(y))
                    })
                    .collect();
                pass.sort();
                if *east == pass {
                    // The pairs follow the strands through the crossing.
                } else if east == west {
                    switches.push(t);
                } else {
                    return Err(not_a_ruling(format!(
                        "neither a pass nor a switch, got {:?} from {:?}",
                        east, west
                    )));
                }
            }
        }
    }
    Ok(Ruling { pairings, switches })
}

impl Ruling {
    /// The partner of strand `x` in the pairing of slot `t`.
    pub fn partner(&self, t: usize, x: usize) -> Option<usize> {
        self.pairings[t].iter().find_map(|&(a, b)| {
            if a == x {
                Some(b)
            } else if b == x {
                Some(a)
            } else {
                None
            }
        })
    }

    /// Validates normality: every switch happens at a crossing of degree
    /// zero, and the two switching pairs, read as strand intervals, are
    /// disjoint or nested — never interleaved.
    pub fn is_normal(&self, dga: &Dga) -> Result<()> {
        let events = dga.front().events();
        for &t in &self.switches {
            let ev = events
                .get(t)
                .ok_or_else(|| Error::Property(format!("switch at nonexistent event {}", t)))?;
            if ev.kind != EventKind::Crossing {
                return Err(Error::Property(format!(
                    "switch at event {}, which is not a crossing",
                    t
                )));
            }
            let g = dga.generator_at_event(t).ok_or_else(|| {
                Error::Property(format!("no generator at the crossing of event {}", t))
            })?;
            if dga.degree(g) != 0 {
                return Err(Error::Property(format!(
                    "switch at a crossing of degree {} (event {})",
                    dga.degree(g),
                    t
                )));
            }
            let k = ev.level;
            let a = self.partner(t, k).ok_or_else(|| {
                Error::Property(format!("strand {} is unpaired at event {}", k, t))
            })?;
            let b = self.partner(t, k + 1).ok_or_else(|| {
                Error::Property(format!("strand {} is unpaired at event {}", k + 1, t))
            })?;
            let ia = (k.min(a), k.max(a));
            let ib = ((k + 1).min(b), (k + 1).max(b));
            let disjoint = ia.1 < ib.0 || ib.1 < ia.0;
            let nested = (ia.0 <= ib.0 && ib.1 <= ia.1) || (ib.0 <= ia.0 && ia.1 <= ib.1);
            if !disjoint && !nested {
                return Err(Error::Property(format!(
                    "interleaved switch at event {}: pairs {:?} and {:?}",
                    t, ia, ib
                )));
            }
        }
        Ok(())
    }
}
