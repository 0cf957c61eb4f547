//! Exact Mordell-Weil rank bounds from the factorization of the conic
//! discriminant.
//!
//! The rational zeros of `D(x) = B^2 - 4AC` split into `S1` (where `A` takes
//! a nonzero rational square value) and `S2` (the rest). The rank over Q(T)
//! is exactly `|S1|` when `D` splits completely over Q, and otherwise lies in
//! `[|S1|, |S1| + delta]` with `delta` the number of distinct irreducible
//! factors of `D` of degree at least 2.

use crate::arith::{ArithError, Rational};
use crate::qfactor::{self, QFactorError};
use crate::surface::{QuadraticSurface, ValidationFailure};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RankError {
    #[error("surface fails validation: {0:?}")]
    InvalidSurface(Vec<ValidationFailure>),
    #[error("D(x) is identically zero or degenerate")]
    DegenerateD,
    #[error(transparent)]
    Factor(#[from] QFactorError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// Rank bounds and the data they came from. `S1` and `S2` are sets: repeated
/// rational zeros of `D` appear once.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankReport {
    #[serde(rename = "S1")]
    pub s1: Vec<Rational>,
    #[serde(rename = "S2")]
    pub s2: Vec<Rational>,
    pub delta: usize,
    pub splits_completely: bool,
    pub rank_lower: usize,
    pub rank_upper: usize,
    pub exact: bool,
}

/// Decide the rank bounds of a validated surface.
pub fn analyze(surface: &QuadraticSurface) -> Result<RankReport, RankError> {
    let report = surface.validate();
    if !report.is_valid() {
        return Err(RankError::InvalidSurface(report.failures));
    }
    let d = surface.discriminant_x();
    // validated surfaces have deg D = 6 (leading-coefficient identity), but
    // guard anyway
    if d.degree().unwrap_or(0) == 0 {
        return Err(RankError::DegenerateD);
    }

    let (a, _, _) = surface.abc();
    let mut s1 = Vec::new();
    let mut s2 = Vec::new();
    for (root, _) in surface.d_rational_roots()? {
        // A(x0) = 0 lands in S2: only nonzero square values contribute
        if a.eval(&root).is_nonzero_square() {
            s1.push(root);
        } else {
            s2.push(root);
        }
    }

    let factorization = qfactor::factor_over_q(&d)?;
    let splits_completely = factorization.splits_completely();
    let delta = qfactor::count_nonlinear_factors(&factorization);
    let rank_lower = s1.len();
    let rank_upper = rank_lower + delta;
    Ok(RankReport {
        s1,
        s2,
        delta,
        splits_completely,
        rank_lower,
        rank_upper,
        exact: splits_completely,
    })
}
