//! Command-line surface for the `legmcs` library: property-check suites,
//! the invariant report with hash-keyed persistence, and SVG rendering.
//! The acceptance tests drive the same suites the binary exposes.

pub mod checks;
pub mod report;
pub mod svg;
