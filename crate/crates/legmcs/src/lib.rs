//! Legendrian knot invariants computed from front diagrams.
//!
//! A Legendrian knot is described by a word of front events (left cusps,
//! right cusps and crossings, read left to right). From that word the crate
//! builds:
//!
//! * the Chekanov–Eliashberg differential graded algebra of the diagram over
//!   Z/2, graded by the Maslov potential ([`dga`]),
//! * its augmentations and their chain-homotopy classes ([`augment`]),
//! * linearized homology Poincaré polynomials ([`linhom`]),
//! * counts of rigid disk families on the front itself, both by direct
//!   enumeration and by slot-to-slot dynamic programming ([`disks`]),
//! * Morse complex sequences in handleslide form, their move calculus, and a
//!   constructive sweep that turns a chain homotopy between augmentations
//!   into a replayable sequence of moves ([`mcs`]).
//!
//! All homological algebra is over Z/2. Strand sets are manipulated as `u64`
//! bitmasks, which caps diagrams at [`front::MAX_STRANDS`] strands.

pub mod augment;
pub mod budget;
pub mod dga;
pub mod disks;
pub mod front;
pub mod gf2;
pub mod linhom;
pub mod mcs;
pub mod sample;

pub use budget::{Budget, Meter};
pub use dga::{Dga, Generator, Word};
pub use front::{FrontDiagram, FrontEvent};

use thiserror::Error;

/// Errors reported by every layer of the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// The input text is not a well-formed event word.
    #[error("parse error: {0}")]
    Parse(String),
    /// The event word does not describe a closed front diagram.
    #[error("invalid front diagram: {0}")]
    InvalidFront(String),
    /// The front closes up into more than one knot component.
    #[error("front diagram has {0} components, expected a knot")]
    MultiComponent(usize),
    /// The front has no Maslov potential (nonzero rotation number).
    #[error("no Maslov potential: rotation number is {rotation}")]
    MaslovInconsistent { rotation: i64 },
    /// A search exceeded its node budget.
    #[error("computation budget exceeded ({limit} nodes)")]
    BudgetExceeded { limit: u64 },
    /// The instance is too large for the fixed-width representations.
    #[error("problem too large: {0}")]
    TooLarge(String),
    /// A chain-complex axiom failed while deriving complexes.
    #[error("chain complex axiom violated: {0}")]
    AxiomViolation(String),
    /// A move was requested at a position where it does not apply.
    #[error("move not applicable: {0}")]
    InvalidMove(String),
    /// A move that is never legal, such as removing a lone handleslide at a
    /// left cusp.
    #[error("forbidden move: {0}")]
    ForbiddenMove(String),
    /// An internal consistency check failed; indicates a bug or an input
    /// outside the theory's hypotheses.
    #[error("property violation: {0}")]
    Property(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
