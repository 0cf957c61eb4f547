//! Exact rational and univariate-polynomial arithmetic.
//!
//! Everything in this module is exact: rationals are arbitrary-precision and
//! always reduced, polynomials are dense coefficient vectors over those
//! rationals. No operation ever touches floating point.

mod poly;
mod rational;

pub use poly::UniPoly;
pub use rational::Rational;

use thiserror::Error;

/// Errors from exact arithmetic operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("division by the zero polynomial")]
    DivisionByZeroPoly,
    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,
    #[error("expected a polynomial of degree {expected}, found degree {found:?}")]
    WrongDegree {
        expected: usize,
        found: Option<usize>,
    },
}
