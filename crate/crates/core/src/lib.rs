//! Exact non-commutative algebra kernel.
//!
//! Everything here is computed over an exact coefficient ring (Gaussian
//! rationals with central Laurent parameters), so an identity "holds" exactly
//! when its residual is the zero element.
//!
//! - [`scalar`]: the coefficient ring.
//! - [`ncpoly`]: the free non-commutative polynomial algebra.
//! - [`quotient`]: oriented rewrite systems and the flat-coordinate world.
//! - [`iterant`]: iterants, permutation group-ring view of matrix algebra.
//! - [`skewdiff`]: shift-operator calculus over finite time series.
//! - [`constraints`]: symmetrizers, constraint identities, derivative tower.

pub mod constraints;
pub mod iterant;
pub mod ncpoly;
pub mod quotient;
pub mod scalar;
pub mod skewdiff;

pub use ncpoly::{Generator, NcPoly, Word};
pub use scalar::{Rational, Scalar};
