//! Augmentations of the Chekanov–Eliashberg algebra and their
//! chain-homotopy classes.
//!
//! An augmentation is an algebra map `ε` from the algebra to Z/2 with
//! `ε ∘ ∂ = 0`, supported on degree-0 generators. Two augmentations `ε`,
//! `ε'` are chain homotopic when `ε + ε' = H ∘ ∂` for a degree-1 map `H`
//! that is an `(ε, ε')`-derivation; such an `H` is determined by its values
//! on degree-(−1) generators. Finding `H` is linear algebra over Z/2, so
//! homotopy of a given pair is decided by solving that system; the solution
//! is then re-verified against the defining equation, and the relation as a
//! whole is audited for reflexivity, symmetry and transitivity before
//! classes are formed.

use crate::dga::{Dga, GenId, Word};
use crate::gf2::BitMatrix;
use crate::{Error, Result};
use std::collections::BTreeSet;

/// Hard cap on the number of degree-0 generators enumerated over.
pub const DEFAULT_MAX_AUG_VARS: usize = 24;

/// A map from generators to Z/2 supported on degree-0 generators.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Augmentation {
    support: BTreeSet<GenId>,
}

impl Augmentation {
    /// Builds the map sending exactly `support` to 1. Fails if a supported
    /// generator does not have degree 0.
    pub fn from_support(dga: &Dga, support: impl IntoIterator<Item = GenId>) -> Result<Self> {
        let support: BTreeSet<GenId> = support.into_iter().collect();
        for &g in &support {
            if dga.degree(g) != 0 {
                return Err(Error::Property(format!(
                    "augmented generator {} has degree {}, expected 0",
                    dga.generators()[g].name,
                    dga.degree(g)
                )));
            }
        }
        Ok(Augmentation { support })
    }

    pub fn support(&self) -> &BTreeSet<GenId> {
        &self.support
    }

    pub fn eval(&self, g: GenId) -> bool {
        self.support.contains(&g)
    }

    /// Value on a word: the product of the values on its letters.
    pub fn eval_word(&self, w: &Word) -> bool {
        w.iter().all(|&g| self.eval(g))
    }

    /// Whether `ε ∘ ∂ = 0` holds on every generator.
    pub fn is_augmentation(&self, dga: &Dga) -> bool {
        dga.generators()
            .iter()
            .all(|g| dga.d(g.id).iter().filter(|w| self.eval_word(w)).count() % 2 == 0)
    }

    /// Rendering such as `{a1, a3}`; the zero map renders as `{}`.
    pub fn label(&self, dga: &Dga) -> String {
        let names: Vec<&str> =
            self.support.iter().map(|&g| dga.generators()[g].name.as_str()).collect();
        format!("{{{}}}", names.join(", "))
    }
}

/// All augmentations, ordered by their support read as a bitmask over the
/// degree-0 generators (lowest mask first).
pub fn enumerate(dga: &Dga, max_vars: usize) -> Result<Vec<Augmentation>> {
    let vars: Vec<GenId> =
        dga.generators().iter().filter(|g| g.degree == 0).map(|g| g.id).collect();
    if vars.len() > max_vars {
        return Err(Error::TooLarge(format!(
            "{} degree-0 generators; enumeration is capped at {}",
            vars.len(),
            max_vars
        )));
    }
    let mut out = Vec::new();
    for mask in 0u64..1 << vars.len() {
        let support: BTreeSet<GenId> =
            vars.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &g)| g).collect();
        let a = Augmentation { support };
        if a.is_augmentation(dga) {
            out.push(a);
        }
    }
    Ok(out)
}

/// A chain homotopy certificate: the degree-(−1) generators on which `H`
/// takes the value 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homotopy {
    pub support: BTreeSet<GenId>,
}

impl Homotopy {
    /// Rendering such as `{a3}`; the zero map renders as `{}`.
    pub fn label(&self, dga: &Dga) -> String {
        let names: Vec<&str> =
            self.support.iter().map(|&g| dga.generators()[g].name.as_str()).collect();
        format!("{{{}}}", names.join(", "))
    }
}

/// The homotopy equation on one generator: `(ε + ε')(q) + Σ H-terms of ∂q`,
/// where a word `w ∈ ∂q` contributes at each position `j` with
/// `h(w_j) ∏_{i<j} ε(w_i) ∏_{i>j} ε'(w_i)`.
fn homotopy_residual(
    dga: &Dga,
    e0: &Augmentation,
    e1: &Augmentation,
    h: &Homotopy,
    q: GenId,
) -> bool {
    let mut acc = e0.eval(q) ^ e1.eval(q);
    for w in dga.d(q) {
        for (j, &p) in w.iter().enumerate() {
            if h.support.contains(&p)
                && w[..j].iter().all(|&x| e0.eval(x))
                && w[j + 1..].iter().all(|&x| e1.eval(x))
            {
                acc ^= true;
            }
        }
    }
    acc
}

/// Checks the defining equation `ε + ε' = H ∘ ∂` on every generator.
pub fn verify_homotopy(dga: &Dga, e0: &Augmentation, e1: &Augmentation, h: &Homotopy) -> bool {
    h.support.iter().all(|&p| dga.degree(p) == -1)
        && dga.generators().iter().all(|g| !homotopy_residual(dga, e0, e1, h, g.id))
}

/// Searches for a chain homotopy from `e0` to `e1` by solving the linear
/// system over Z/2. Only degree-0 generators give nontrivial equations (for
/// any other degree both sides vanish for grading reasons), and the unknowns
/// are the values of `H` on degree-(−1) generators.
pub fn find_homotopy(dga: &Dga, e0: &Augmentation, e1: &Augmentation) -> Option<Homotopy> {
    let rows: Vec<GenId> =
        dga.generators().iter().filter(|g| g.degree == 0).map(|g| g.id).collect();
    let cols: Vec<GenId> =
        dga.generators().iter().filter(|g| g.degree == -1).map(|g| g.id).collect();
    let mut m = BitMatrix::new(rows.len(), cols.len());
    let mut b = vec![false; rows.len()];
    for (ri, &q) in rows.iter().enumerate() {
        b[ri] = e0.eval(q) ^ e1.eval(q);
        for w in dga.d(q) {
            for (j, &p) in w.iter().enumerate() {
                let Some(ci) = cols.iter().position(|&c| c == p) else { continue };
                if w[..j].iter().all(|&x| e0.eval(x))
                    && w[j + 1..].iter().all(|&x| e1.eval(x))
                {
                    m.flip(ri, ci);
                }
            }
        }
    }
    let x = m.solve(&b)?;
    let support = cols.iter().zip(&x).filter(|(_, &v)| v).map(|(&c, _)| c).collect();
    Some(Homotopy { support })
}

/// Partitions `augs` into chain-homotopy classes.
///
/// Each pairwise solve is re-verified against the defining equation, and the
/// whole relation is audited to be an equivalence before classes are read
/// off. Classes are sorted by smallest member index; members are sorted.
pub fn homotopy_classes(dga: &Dga, augs: &[Augmentation]) -> Result<Vec<Vec<usize>>> {
    let n = augs.len();
    let mut rel = vec![false; n * n];
    for i in 0..n {
        for j in 0..n {
            if let Some(h) = find_homotopy(dga, &augs[i], &augs[j]) {
                if !verify_homotopy(dga, &augs[i], &augs[j], &h) {
                    return Err(Error::Property(format!(
                        "solver returned a map that is not a homotopy between {} and {}",
                        augs[i].label(dga),
                        augs[j].label(dga)
                    )));
                }
                rel[i * n + j] = true;
            }
        }
    }
    for i in 0..n {
        if !rel[i * n + i] {
            return Err(Error::Property("homotopy relation is not reflexive".into()));
        }
        for j in 0..n {
            if rel[i * n + j] != rel[j * n + i] {
                return Err(Error::Property("homotopy relation is not symmetric".into()));
            }
            for k in 0..n {
                if rel[i * n + j] && rel[j * n + k] && !rel[i * n + k] {
                    return Err(Error::Property("homotopy relation is not transitive".into()));
                }
            }
        }
    }
    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        if class_of[i] != usize::MAX {
            continue;
        }
        let c = classes.len();
        let mut members = Vec::new();
        for j in i..n {
            if rel[i * n + j] {
                class_of[j] = c;
                members.push(j);
            }
        }
        classes.push(members);
    }
    Ok(classes)
}
