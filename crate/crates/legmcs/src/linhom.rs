//! Linearized contact homology with respect to an augmentation.
//!
//! Conjugating the differential by the algebra automorphism `g ↦ g + ε(g)`
//! kills the constant part (precisely because `ε` is an augmentation) and
//! yields a length-1 part `∂₁` that squares to zero on the vector space
//! spanned by the generators. Both facts are asserted at construction, as is
//! degree homogeneity of `∂₁`. The homology dimensions per degree form the
//! Poincaré polynomial, a Legendrian isotopy invariant of the augmentation's
//! homotopy class.

use crate::augment::Augmentation;
use crate::dga::Dga;
use crate::gf2::BitMatrix;
use crate::{Error, Result};
use std::collections::BTreeMap;

/// The length-1 part of the conjugated differential, as a matrix over all
/// generators.
pub struct Linearized {
    degrees: Vec<i64>,
    /// `m[q][p] = 1` iff `p` appears in `∂₁ q`.
    m: BitMatrix,
}

/// Builds the linearized differential `∂₁` for `aug` and checks that the
/// constant part vanishes, that `∂₁` lowers degree by exactly 1, and that
/// `∂₁² = 0`.
pub fn linearize(dga: &Dga, aug: &Augmentation) -> Result<Linearized> {
    let n = dga.generators().len();
    let degrees: Vec<i64> = dga.generators().iter().map(|g| g.degree).collect();
    let mut m = BitMatrix::new(n, n);
    for g in dga.generators() {
        let mut constant = false;
        for w in dga.d(g.id) {
            // Expanding ∏(wᵢ + ε(wᵢ)): the constant term is ∏ ε(wᵢ) and the
            // coefficient of the letter at position j is ∏_{i≠j} ε(wᵢ).
            constant ^= aug.eval_word(w);
            for (j, &p) in w.iter().enumerate() {
                if w.iter().enumerate().all(|(i, &x)| i == j || aug.eval(x)) {
                    m.flip(g.id, p);
                }
            }
        }
        if constant {
            return Err(Error::Property(format!(
                "constant part of the conjugated differential survives on {}; \
                 the given map is not an augmentation",
                g.name
            )));
        }
    }
    for q in 0..n {
        for p in 0..n {
            if m.get(q, p) && degrees[p] != degrees[q] - 1 {
                return Err(Error::Property(format!(
                    "linearized differential is not homogeneous: {} (degree {}) \
                     hits {} (degree {})",
                    dga.generators()[q].name, degrees[q], dga.generators()[p].name, degrees[p]
                )));
            }
        }
    }
    // ∂₁² = 0: row i of m² is the XOR of the rows selected by row i.
    for i in 0..n {
        let mut acc = vec![false; n];
        for k in 0..n {
            if m.get(i, k) {
                for (j, a) in acc.iter_mut().enumerate() {
                    *a ^= m.get(k, j);
                }
            }
        }
        if let Some(j) = acc.iter().position(|&a| a) {
            return Err(Error::Property(format!(
                "linearized differential does not square to zero: ∂₁∂₁ {} contains {}",
                dga.generators()[i].name, dga.generators()[j].name
            )));
        }
    }
    Ok(Linearized { degrees, m })
}

impl Linearized {
    /// Whether `p` appears in `∂₁ q`.
    pub fn entry(&self, q: usize, p: usize) -> bool {
        self.m.get(q, p)
    }

    /// Rank of `∂₁` restricted to the generators of degree `d`.
    fn rank_from_degree(&self, d: i64) -> usize {
        let rows: Vec<usize> =
            (0..self.degrees.len()).filter(|&i| self.degrees[i] == d).collect();
        let cols: Vec<usize> =
            (0..self.degrees.len()).filter(|&i| self.degrees[i] == d - 1).collect();
        let mut sub = BitMatrix::new(rows.len(), cols.len());
        for (ri, &r) in rows.iter().enumerate() {
            for (ci, &c) in cols.iter().enumerate() {
                if self.m.get(r, c) {
                    sub.set(ri, ci, true);
                }
            }
        }
        sub.rank()
    }

    /// Homology dimensions per degree: `dim H_d = n_d − rank ∂₁|_d − rank ∂₁|_{d+1}`.
    /// Degrees with dimension 0 are omitted.
    pub fn poincare(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        let degrees: std::collections::BTreeSet<i64> = self.degrees.iter().copied().collect();
        for &d in &degrees {
            let n_d = self.degrees.iter().filter(|&&x| x == d).count();
            let h = n_d - self.rank_from_degree(d) - self.rank_from_degree(d + 1);
            if h > 0 {
                out.insert(d, h);
            }
        }
        out
    }
}

/// Renders a Poincaré table as a polynomial in `t`, such as `2 + t`.
pub fn poincare_polynomial_string(p: &BTreeMap<i64, usize>) -> String {
    if p.is_empty() {
        return "0".into();
    }
    let term = |d: i64, c: usize| -> String {
        let t = match d {
            0 => return c.to_string(),
            1 => "t".to_string(),
            _ => format!("t^{d}"),
        };
        if c == 1 {
            t
        } else {
            format!("{c}{t}")
        }
    };
    p.iter().map(|(&d, &c)| term(d, c)).collect::<Vec<_>>().join(" + ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::augment;
    use crate::budget::Budget;
    use crate::front::FrontDiagram;

    fn dga(word: &str) -> Dga {
        Dga::new(&FrontDiagram::from_word(word).unwrap(), Budget::default()).unwrap()
    }

    #[test]
    fn unknot_poincare_is_t() {
        let dga = dga("L1 R1");
        let augs = augment::enumerate(&dga, 24).unwrap();
        let lin = linearize(&dga, &augs[0]).unwrap();
        assert_eq!(lin.poincare(), BTreeMap::from([(1, 1)]));
        assert_eq!(poincare_polynomial_string(&lin.poincare()), "t");
    }

    #[test]
    fn trefoil_poincare_is_two_plus_t_for_every_augmentation() {
        let dga = dga("L1 L3 X2 X2 X2 R1 R1");
        let augs = augment::enumerate(&dga, 24).unwrap();
        assert_eq!(augs.len(), 5);
        for aug in &augs {
            let lin = linearize(&dga, aug).unwrap();
            assert_eq!(lin.poincare(), BTreeMap::from([(0, 2), (1, 1)]), "{}", aug.label(&dga));
            assert_eq!(poincare_polynomial_string(&lin.poincare()), "2 + t");
        }
    }

    #[test]
    fn non_augmentation_is_rejected() {
        let dga = dga("L1 L3 X2 X2 X2 R1 R1");
        // The zero map is not an augmentation of the trefoil algebra.
        let eps = augment::Augmentation::from_support(&dga, []).unwrap();
        assert!(!eps.is_augmentation(&dga));
        assert!(matches!(linearize(&dga, &eps), Err(Error::Property(_))));
    }

    #[test]
    fn poincare_polynomial_is_constant_on_homotopy_classes() {
        let mut words: Vec<String> = vec![
            "L1 L3 X2 X3 X3 X2 X2 R1 R1".into(),
            "L1 L2 X3 X2 X2 X2 X2 R1 R1".into(),
        ];
        for seed in 40..70u64 {
            words.push(crate::sample::random_front(seed, 10).word());
        }
        let mut classes_seen = 0;
        for word in &words {
            let dga = Dga::new(&FrontDiagram::from_word(word).unwrap(), Budget::default())
                .unwrap();
            if dga.generators().iter().filter(|g| g.degree == 0).count() > 10 {
                continue;
            }
            let augs = augment::enumerate(&dga, 24).unwrap();
            let classes = augment::homotopy_classes(&dga, &augs).unwrap();
            for class in &classes {
                let polys: Vec<_> = class
                    .iter()
                    .map(|&i| linearize(&dga, &augs[i]).unwrap().poincare())
                    .collect();
                assert!(
                    polys.windows(2).all(|w| w[0] == w[1]),
                    "Poincaré polynomial varies within a homotopy class on {}",
                    word
                );
                classes_seen += 1;
            }
        }
        assert!(classes_seen >= 3);
    }
}
