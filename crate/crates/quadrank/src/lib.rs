//! Exact Mordell-Weil rank bounds for quadratic elliptic surfaces over Q.
//!
//! A quadratic elliptic surface is a family `y^2 = a3(T)x^3 + a2(T)x^2 + a1(T)x + a0(T)`
//! whose coefficients are polynomials of degree at most 2 in the parameter `T`.
//! Collecting powers of `T` instead gives the dual view `y^2 = A(x)T^2 + B(x)T + C(x)`,
//! and the rank of the surface over Q(T) is controlled by the factorization of
//! `D(x) = B(x)^2 - 4A(x)C(x)` together with the values of `A` at the rational
//! zeros of `D`.
//!
//! The crate decides the exact rank (or tight bounds) symbolically, and
//! cross-checks the answer empirically through averages of Frobenius traces
//! over the fibers modulo primes, computed with closed-form quadratic
//! character sums and an O(p) per-prime kernel.

pub mod arith;
pub mod charsum;
pub mod cli;
pub mod construct;
pub mod fixtures;
pub(crate) mod modpoly;
pub mod nagao;
pub mod qfactor;
pub mod rank;
pub mod surface;

pub use arith::{Rational, UniPoly};
pub use rank::RankReport;
pub use surface::QuadraticSurface;
