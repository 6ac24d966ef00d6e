//! Validated decision of universal termination for real linear and affine
//! loops.
//!
//! Given a loop `x <- A x` (or `x <- A x + b`) guarded by an open polyhedron
//! `B x > 0` (or `B x > eta`), this crate semidecides — soundly, with
//! machine-checkable certificates — whether every starting point eventually
//! escapes the polyhedron. The procedure halts on all robust instances
//! (those whose answer survives sufficiently small perturbations of the
//! data) and honestly reports `unknown` within a finite budget otherwise.
//!
//! All numerics are validated: arbitrary-precision dyadic interval
//! arithmetic, interval Gaussian elimination, and complex root enclosures
//! with argument-principle multiplicity counts.

pub mod cli;
pub mod driver;
pub mod dyadic;
pub mod instance;
pub mod interval;
pub mod ivmatrix;
pub mod oracle;
pub mod semidecision;
pub mod spectral;
pub mod verdict;

pub use driver::{decide, verify_certificate};
pub use dyadic::{Dir, Dyadic};
pub use instance::{
    homogenise, parse_instance, serialize_instance, EntrySource, Kind, LoopInstance, ParseError,
    RationalScalar, RefinedInstance,
};
pub use interval::DyadicInterval;
pub use ivmatrix::{char_poly, interval_solve, IntervalMatrix, IntervalVector, LinAlgError};
pub use verdict::{Certificate, CoverStats, DecideStats, Formula, Outcome, Verdict};
