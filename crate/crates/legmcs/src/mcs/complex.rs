//! Triangular Z/2 chain complexes on the strands of a slice of a front.
//!
//! A slice crossing `n` strands carries a complex with one generator `e_i`
//! per strand (1-based, counted from the top), graded by the Maslov
//! potential of the strand. The differential is strictly triangular
//! "downward": `d e_i = Σ_{i<j} c_{ij} e_j`, has degree −1 with respect to
//! the grading, and squares to zero.
//!
//! The module implements the four elementary transformations such a complex
//! undergoes when the slice moves east across a feature of the front:
//! conjugation by a handleslide, relabeling through a crossing, the quotient
//! at a right cusp, and the decoupled extension at a (simple) left cusp.

use crate::{Error, Result};
use std::fmt;

/// A strictly triangular differential on the strands of one slice.
///
/// Strand indices are 1-based to match front heights. Row `i` is stored as a
/// `u64` bitmask whose bit `j-1` is `⟨d e_i, e_j⟩`; only bits with `j > i`
/// may be set. At most [`crate::front::MAX_STRANDS`] strands are supported.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TriangularComplex {
    mu: Vec<i64>,
    rows: Vec<u64>,
}

/// Bitmask of the strand indices `1..=i` (bits `0..i`).
fn mask_through(i: usize) -> u64 {
    if i >= 64 {
        u64::MAX
    } else {
        (1u64 << i) - 1
    }
}

impl TriangularComplex {
    /// The zero differential on strands with the given Maslov potentials.
    pub fn new(mu: Vec<i64>) -> Self {
        let rows = vec![0; mu.len()];
        TriangularComplex { mu, rows }
    }

    /// Number of strands.
    pub fn size(&self) -> usize {
        self.mu.len()
    }

    /// Maslov potential of strand `i` (1-based).
    pub fn mu(&self, i: usize) -> i64 {
        self.mu[i - 1]
    }

    pub fn grading(&self) -> &[i64] {
        &self.mu
    }

    /// `⟨d e_i, e_j⟩` for 1-based strands.
    pub fn entry(&self, i: usize, j: usize) -> bool {
        self.rows[i - 1] >> (j - 1) & 1 == 1
    }

    pub fn set_entry(&mut self, i: usize, j: usize, v: bool) {
        if v {
            self.rows[i - 1] |= 1 << (j - 1);
        } else {
            self.rows[i - 1] &= !(1 << (j - 1));
        }
    }

    /// The row of strand `i` as a bitmask (bit `j-1` set iff `⟨d e_i,e_j⟩=1`).
    pub fn row(&self, i: usize) -> u64 {
        self.rows[i - 1]
    }

    /// Checks triangularity, degree −1 homogeneity and `d² = 0`.
    pub fn validate(&self) -> Result<()> {
        let n = self.size();
        for i in 1..=n {
            let r = self.rows[i - 1];
            if r & mask_through(i) != 0 {
                return Err(Error::AxiomViolation(format!(
                    "differential of strand {} is not strictly triangular",
                    i
                )));
            }
            if n < 64 && r >> n != 0 {
                return Err(Error::AxiomViolation(format!(
                    "differential of strand {} mentions strands beyond {}",
                    i, n
                )));
            }
            let mut bits = r;
            let mut square = 0u64;
            while bits != 0 {
                let j = bits.trailing_zeros() as usize + 1;
                bits &= bits - 1;
                if self.mu[i - 1] != self.mu[j - 1] + 1 {
                    return Err(Error::AxiomViolation(format!(
                        "entry ({}, {}) violates degree -1: μ = {} vs {}",
                        i,
                        j,
                        self.mu[i - 1],
                        self.mu[j - 1]
                    )));
                }
                square ^= self.rows[j - 1];
            }
            if square != 0 {
                return Err(Error::AxiomViolation(format!(
                    "d² e_{} is nonzero",
                    i
                )));
            }
        }
        Ok(())
    }

    /// Conjugation by the handleslide map `e_k ↦ e_k + e_l` (`k < l`,
    /// equal Maslov potential): entrywise
    /// `d'_{ij} = d_{ij} + [i=k]·d_{lj} + [j=l]·d_{ik}`.
    pub fn handleslide(&self, k: usize, l: usize) -> Result<Self> {
        let n = self.size();
        if k == 0 || l <= k || l > n {
            return Err(Error::InvalidMove(format!(
                "handleslide ({}, {}) out of range for {} strands",
                k, l, n
            )));
        }
        if self.mu[k - 1] != self.mu[l - 1] {
            return Err(Error::AxiomViolation(format!(
                "handleslide ({}, {}) joins strands of Maslov potential {} and {}",
                k,
                l,
                self.mu[k - 1],
                self.mu[l - 1]
            )));
        }
        let mut rows = self.rows.clone();
        rows[k - 1] ^= self.rows[l - 1];
        for i in 0..n {
            if self.rows[i] >> (k - 1) & 1 == 1 {
                rows[i] ^= 1 << (l - 1);
            }
        }
        Ok(TriangularComplex { mu: self.mu.clone(), rows })
    }

    /// Relabeling through a crossing of strands `k, k+1`. Requires the
    /// crossing axiom `⟨d e_k, e_{k+1}⟩ = 0` on this (western) side.
    pub fn crossing(&self, k: usize) -> Result<Self> {
        let n = self.size();
        if k == 0 || k + 1 > n {
            return Err(Error::InvalidMove(format!(
                "crossing at {} out of range for {} strands",
                k, n
            )));
        }
        if self.entry(k, k + 1) {
            return Err(Error::AxiomViolation(format!(
                "crossing of strands {}, {}: ⟨d e_{}, e_{}⟩ must be 0 on the west side",
                k,
                k + 1,
                k,
                k + 1
            )));
        }
        let mut mu = self.mu.clone();
        mu.swap(k - 1, k);
        let mut rows = self.rows.clone();
        rows.swap(k - 1, k);
        let (lo, hi) = (1u64 << (k - 1), 1u64 << k);
        for r in rows.iter_mut() {
            let (a, b) = (*r & lo != 0, *r & hi != 0);
            if a != b {
                *r ^= lo | hi;
            }
        }
        Ok(TriangularComplex { mu, rows })
    }

    /// Quotient at a right cusp joining strands `k, k+1` on this (western)
    /// side. Requires the cusp axiom `⟨d e_k, e_{k+1}⟩ = 1`; the quotient by
    /// the acyclic subcomplex spanned by `e_k` and `d e_k` has differential
    /// `⟨d' e_i, e_j⟩ = ⟨d e_{π(i)}, e_{π(j)}⟩
    ///   + ⟨d e_{π(i)}, e_{k+1}⟩·⟨d e_k, e_{π(j)}⟩`
    /// where `π(i) = i` for `i < k` and `π(i) = i + 2` otherwise.
    pub fn right_cusp(&self, k: usize) -> Result<Self> {
        let n = self.size();
        if k == 0 || k + 1 > n {
            return Err(Error::InvalidMove(format!(
                "right cusp at {} out of range for {} strands",
                k, n
            )));
        }
        if !self.entry(k, k + 1) {
            return Err(Error::AxiomViolation(format!(
                "right cusp of strands {}, {}: ⟨d e_{}, e_{}⟩ must be 1 on the west side",
                k,
                k + 1,
                k,
                k + 1
            )));
        }
        let pi = |i: usize| if i < k { i } else { i + 2 };
        let mut mu = Vec::with_capacity(n - 2);
        let mut rows = Vec::with_capacity(n - 2);
        for i in 1..=n - 2 {
            mu.push(self.mu[pi(i) - 1]);
            let mut r = 0u64;
            for j in i + 1..=n - 2 {
                let mut v = self.entry(pi(i), pi(j));
                if self.entry(pi(i), k + 1) && self.entry(k, pi(j)) {
                    v = !v;
                }
                if v {
                    r |= 1 << (j - 1);
                }
            }
            rows.push(r);
        }
        Ok(TriangularComplex { mu, rows })
    }

    /// Extension at a simple left cusp inserting strands `k, k+1` on the
    /// eastern side, with upper Maslov potential `mu_upper`. Existing strands
    /// relabel by `τ(i) = i` for `i < k`, `i + 2` otherwise; the new pair is
    /// decoupled from them and satisfies `d e_k = e_{k+1}`.
    pub fn left_cusp(&self, k: usize, mu_upper: i64) -> Result<Self> {
        let n = self.size();
        if k == 0 || k > n + 1 {
            return Err(Error::InvalidMove(format!(
                "left cusp at {} out of range for {} strands",
                k, n
            )));
        }
        if n + 2 > 64 {
            return Err(Error::TooLarge("more than 64 strands".into()));
        }
        let tau = |i: usize| if i < k { i } else { i + 2 };
        let mut mu = vec![0; n + 2];
        let mut rows = vec![0u64; n + 2];
        mu[k - 1] = mu_upper;
        mu[k] = mu_upper - 1;
        rows[k - 1] = 1 << k; // d e_k = e_{k+1}
        for i in 1..=n {
            mu[tau(i) - 1] = self.mu[i - 1];
            let mut bits = self.rows[i - 1];
            while bits != 0 {
                let j = bits.trailing_zeros() as usize + 1;
                bits &= bits - 1;
                rows[tau(i) - 1] |= 1 << (tau(j) - 1);
            }
        }
        Ok(TriangularComplex { mu, rows })
    }
}

impl fmt::Display for TriangularComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.size();
        write!(f, "[{} strands;", n)?;
        let mut first = true;
        for i in 1..=n {
            for j in i + 1..=n {
                if self.entry(i, j) {
                    write!(f, "{} d e_{} ∋ e_{}", if first { "" } else { "," }, i, j)?;
                    first = false;
                }
            }
        }
        write!(f, "]")
    }
}
