//! Exact factorization of univariate polynomials over Q, up to the degrees
//! the rank formula needs.
//!
//! Rational roots split off as linear factors; the root-free remainder is
//! factored through its primitive integer model: reduction modulo a good
//! prime, Hensel lifting to a coefficient bound, and subset recombination,
//! with the result certified by exact re-expansion.

mod modp_factor;
mod zassenhaus;

use crate::arith::{Rational, UniPoly};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Degree cap: 6 suffices for the conic discriminant, 8 gives headroom.
pub const MAX_DEGREE: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QFactorError {
    #[error("cannot factor the zero polynomial")]
    ZeroPolynomial,
    #[error("degree {0} exceeds the factorization cap of {MAX_DEGREE}")]
    DegreeTooLarge(usize),
}

/// An irreducible monic factor with its multiplicity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorPower {
    pub poly: UniPoly,
    pub mult: u32,
}

/// A complete irreducible factorization over Q:
/// `unit * prod factors[i].poly ^ factors[i].mult` equals the input exactly.
/// Factors are monic, pairwise distinct, sorted by (degree, coefficients).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorizationQ {
    pub unit: Rational,
    pub factors: Vec<FactorPower>,
}

impl FactorizationQ {
    /// Re-expand `unit * prod poly^mult`.
    pub fn expand(&self) -> UniPoly {
        let mut acc = UniPoly::constant(self.unit.clone());
        for fp in &self.factors {
            acc = &acc * &fp.poly.pow(fp.mult);
        }
        acc
    }

    /// True iff every irreducible factor is linear.
    pub fn splits_completely(&self) -> bool {
        self.factors.iter().all(|fp| fp.poly.degree() == Some(1))
    }
}

/// Complete irreducible factorization over Q of a nonzero polynomial of
/// degree at most [`MAX_DEGREE`].
pub fn factor_over_q(f: &UniPoly) -> Result<FactorizationQ, QFactorError> {
    let deg = f.degree().ok_or(QFactorError::ZeroPolynomial)?;
    if deg > MAX_DEGREE {
        return Err(QFactorError::DegreeTooLarge(deg));
    }
    let unit = f.leading_coeff().unwrap().clone();
    let mut factors: Vec<(UniPoly, u32)> = Vec::new();
    let mut work = f.monic();

    for (root, mult) in f.rational_roots().expect("nonzero by guard") {
        let lin = UniPoly::from_coeffs(vec![-&root, Rational::one()]);
        for _ in 0..mult {
            work = work.exact_div(&lin);
        }
        factors.push((lin, mult as u32));
    }

    if work.degree() > Some(0) {
        for (part, mult) in work.squarefree_decomposition().expect("nonzero by guard") {
            let (ints, _) = part.integer_model().unwrap();
            for g in zassenhaus::factor_squarefree_primitive(&ints) {
                let gq = UniPoly::from_coeffs(g.into_iter().map(Rational::from_bigint).collect());
                factors.push((gq.monic(), mult));
            }
        }
    }

    factors.sort_by(|a, b| {
        a.0.degree()
            .cmp(&b.0.degree())
            .then_with(|| a.0.coeffs().cmp(b.0.coeffs()))
    });
    // factors must be pairwise distinct; equal entries merge their powers
    let mut merged: Vec<FactorPower> = Vec::new();
    for (poly, mult) in factors {
        match merged.last_mut() {
            Some(last) if last.poly == poly => last.mult += mult,
            _ => merged.push(FactorPower { poly, mult }),
        }
    }

    let result = FactorizationQ {
        unit,
        factors: merged,
    };
    assert_eq!(result.expand(), *f, "factorization certificate failed");
    Ok(result)
}

/// Number of distinct irreducible factors of degree at least 2, ignoring
/// multiplicity.
pub fn count_nonlinear_factors(factorization: &FactorizationQ) -> usize {
    factorization
        .factors
        .iter()
        .filter(|fp| fp.poly.degree() >= Some(2))
        .count()
}
