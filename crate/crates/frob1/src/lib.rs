//! Exact verification of the one-shifted homotopy Frobenius structure on
//! cochains of a subdivided circle, together with a floating-point replay
//! of the corresponding smooth-model integrals.
//!
//! The cohomology of the circle is a commutative Frobenius algebra whose
//! comultiplication has degree one. Lifting that structure to the cochain
//! level, subject to a locality constraint on the operations, works
//! generator by generator until genus two, where the candidate equation has
//! an obstruction equal to `-1/12 · id` on cohomology. This crate builds
//! the whole ladder with exact rational arithmetic on an `N`-cell circle
//! and certifies the obstruction, and independently reproduces `-1/12` as
//! a half-plane integral of smooth bump functions.
//!
//! Entry points:
//! * [`lifts::LiftSet`]: the explicit lift tables and homotopy equations;
//! * [`qloc::cohomology_dims`]: cohomology of the quasilocal operation
//!   complexes by exact rank;
//! * [`quad`]: the numerical integrals;
//! * [`report`]: the verification suites behind the `frob1` binary.

pub mod circle;
pub mod graded;
pub mod lifts;
pub mod linalg;
pub mod op;
pub mod qloc;
pub mod quad;
pub mod report;
pub mod symbolic;

mod book;

/// Errors distinguish bad arguments (caller misuse), contract violations
/// (precondition failures on mathematical objects), and verification
/// failures (a certified identity did not hold).
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("verification failure: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
