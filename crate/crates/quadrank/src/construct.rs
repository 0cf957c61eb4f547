//! Rank-targeted construction of quadratic elliptic surfaces.
//!
//! The symmetric-node scheme fixes `D = -(x^2-d1^2)(x^2-d2^2)(x^2-d3^2)` and
//! `A = a*x(x-e)(x+e)`, interpolates `B` through `(0, d1 d2 d3)` and
//! `(+-e, +-s)` where `s^2 = -P(e)`, and recovers `C = (B^2 - D)/(4A)`,
//! which is a polynomial because `B^2 - D` vanishes at the roots of `A`.
//! The leading coefficient of `D` is -1, a nonsquare, so `a3(T)` is always
//! irreducible. Since `A` is odd, `A(-v) = -A(v)` caps the scheme at rank 3;
//! higher targets go through an asymmetric variant with freely chosen
//! `A`-roots, searched within an explicit candidate budget.

use crate::arith::{Rational, UniPoly};
use crate::rank::{self, RankReport};
use crate::surface::QuadraticSurface;
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConstructError {
    #[error("target rank {0} is outside 0..=6")]
    RankOutOfRange(u32),
    #[error(
        "budget of {budget} candidates exhausted searching rank {target} \
         (tried {tried}, best certified rank {best_rank:?}, seed {seed})"
    )]
    BudgetExhausted {
        target: u32,
        budget: u64,
        tried: u64,
        seed: u64,
        best_rank: Option<usize>,
        /// Highest-rank certified surface found along the way, if any.
        best: Option<Box<Construction>>,
    },
}

/// Inclusive integer grid for one search dimension.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SearchRange {
    pub min: i64,
    pub max: i64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConstructionParams {
    pub target_rank: u32,
    pub seed: u64,
    pub budget: u64,
    /// Grid for the offsets `d1 < d2 < d3` (and the asymmetric nodes).
    pub d_range: SearchRange,
    /// Grid for the interpolation node `e` (and the asymmetric `A`-roots).
    pub e_range: SearchRange,
    /// Scale classes tried, in order, by the deterministic base phase.
    pub a_candidates: Vec<Rational>,
}

impl ConstructionParams {
    /// Bundled defaults: base configuration `d = (2,3,5)`, `e = 1` reachable,
    /// scale classes covering ranks 0..=2 deterministically.
    pub fn new(target_rank: u32) -> Self {
        ConstructionParams {
            target_rank,
            seed: 0,
            budget: 10_000,
            d_range: SearchRange { min: 1, max: 60 },
            e_range: SearchRange { min: 1, max: 40 },
            a_candidates: [1, 2, 3, 5, 6, 10, 15, 30]
                .iter()
                .map(|&a| Rational::from_int(a))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Provenance {
    pub scheme: String,
    /// Symmetric: the three positive offsets. Asymmetric: all six nodes.
    pub d: Vec<Rational>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub e: Option<Rational>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub w: Option<Vec<Rational>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Rational>,
    pub a: Rational,
    pub beta: Rational,
    pub s: Vec<Rational>,
    pub seed: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Construction {
    pub surface: QuadraticSurface,
    pub certificate: RankReport,
    pub provenance: Provenance,
}

/// Betas tried per node candidate; 2 first to match the bundled fixtures.
const BETAS: [i64; 3] = [2, 1, 3];

/// Nonsquare leading coefficients for the asymmetric scheme.
const LAMBDAS: [i64; 6] = [-1, 2, -2, 3, -3, 5];

pub fn construct_surface(params: &ConstructionParams) -> Result<Construction, ConstructError> {
    let target = params.target_rank;
    if target > 6 {
        return Err(ConstructError::RankOutOfRange(target));
    }
    let mut search = Search {
        params,
        tried: 0,
        best: None,
    };

    if target <= 3 {
        // deterministic base phase
        let base_d = [2, 3, 5].map(Rational::from_int);
        let e = Rational::one();
        for a in &params.a_candidates {
            if let Some(found) = search.try_symmetric(&base_d, &e, a) {
                return Ok(found);
            }
        }
        // randomized symmetric phase: bucket the grid by square class so the
        // scale that makes a chosen node square is derived, not guessed
        let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
        let mut es: Vec<i64> = (params.e_range.min.max(1)..=params.e_range.max).collect();
        es.shuffle(&mut rng);
        for e_int in es {
            let e = Rational::from_int(e_int);
            let mut buckets: BTreeMap<BigInt, Vec<i64>> = BTreeMap::new();
            for v in params.d_range.min.max(1)..=params.d_range.max {
                if v == e_int {
                    continue;
                }
                let val = Rational::from_int(v * (v * v - e_int * e_int));
                if val.is_zero() {
                    continue;
                }
                buckets.entry(val.square_class()).or_default().push(v);
            }
            let mut triples: Vec<([i64; 3], BigInt)> = Vec::new();
            match target {
                3 => {
                    for (class, vs) in &buckets {
                        for i in 0..vs.len() {
                            for j in i + 1..vs.len() {
                                for k in j + 1..vs.len() {
                                    triples.push(([vs[i], vs[j], vs[k]], class.clone()));
                                }
                            }
                        }
                    }
                }
                _ => {
                    // lower targets: one bucket element plus fillers from
                    // other buckets, scale taken from (or away from) classes
                    // as needed; the base phase nearly always ends earlier
                    let all: Vec<i64> = (params.d_range.min.max(1)
                        ..=params.d_range.max.min(params.d_range.min + 12))
                        .filter(|&v| v != e_int)
                        .collect();
                    for i in 0..all.len() {
                        for j in i + 1..all.len() {
                            for k in j + 1..all.len() {
                                triples.push((
                                    [all[i], all[j], all[k]],
                                    BigInt::from(0), // class chosen below
                                ));
                            }
                        }
                    }
                }
            }
            triples.shuffle(&mut rng);
            for (tri, class) in triples {
                if search.tried >= params.budget {
                    return Err(search.exhausted());
                }
                let d = tri.map(Rational::from_int);
                let a = if target == 3 {
                    Rational::from_bigint(class)
                } else {
                    match scale_for_count(&d, &e, target) {
                        Some(a) => a,
                        None => {
                            search.tried += 1;
                            continue;
                        }
                    }
                };
                if let Some(found) = search.try_symmetric(&d, &e, &a) {
                    return Ok(found);
                }
            }
        }
        return Err(search.exhausted());
    }

    // asymmetric phase for rank >= 4
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    while search.tried < params.budget {
        if let Some(found) = search.try_asymmetric_draw(&mut rng) {
            return Ok(found);
        }
    }
    Err(search.exhausted())
}

/// Scale class giving exactly `r` squares among `a * d_i (d_i^2 - e^2)`,
/// if one exists among the node classes (or any fresh class for r = 0).
fn scale_for_count(d: &[Rational; 3], e: &Rational, r: u32) -> Option<Rational> {
    let vals: Vec<Rational> = d.iter().map(|di| di * &(&(di * di) - &(e * e))).collect();
    if vals.iter().any(|v| v.is_zero()) {
        return None;
    }
    let classes: Vec<BigInt> = vals.iter().map(|v| v.square_class()).collect();
    if r == 0 {
        for fresh in [1i64, 7, 13, 17, 19] {
            let cand = BigInt::from(fresh);
            if classes.iter().all(|c| *c != cand) {
                return Some(Rational::from_bigint(cand));
            }
        }
        return None;
    }
    for anchor in &classes {
        let count = classes.iter().filter(|c| *c == anchor).count() as u32;
        if count == r {
            return Some(Rational::from_bigint(anchor.clone()));
        }
    }
    None
}

struct Search<'a> {
    params: &'a ConstructionParams,
    tried: u64,
    best: Option<Construction>,
}

impl Search<'_> {
    fn exhausted(&mut self) -> ConstructError {
        ConstructError::BudgetExhausted {
            target: self.params.target_rank,
            budget: self.params.budget,
            tried: self.tried,
            seed: self.params.seed,
            best_rank: self.best.as_ref().map(|c| c.certificate.rank_lower),
            best: self.best.take().map(Box::new),
        }
    }

    /// Build and certify one symmetric candidate; records partial results.
    fn try_symmetric(
        &mut self,
        d: &[Rational; 3],
        e: &Rational,
        a: &Rational,
    ) -> Option<Construction> {
        self.tried += 1;
        if a.is_zero() || e.is_zero() {
            return None;
        }
        if d[0] == d[1] || d[1] == d[2] || d[0] == d[2] {
            return None;
        }
        if d.iter().any(|di| di.is_zero() || di.abs() == e.abs()) {
            return None;
        }
        // P(x) = prod (x^2 - d_i^2); need -P(e) a nonzero square
        let p_at =
            |x: &Rational| -> Rational { d.iter().map(|di| &(x * x) - &(di * di)).product() };
        let s = (-&p_at(e)).sqrt_exact().filter(|s| !s.is_zero())?;

        let d_poly = {
            let mut acc = UniPoly::constant(Rational::from_int(-1));
            for di in d {
                let factor =
                    UniPoly::from_coeffs(vec![-&(di * di), Rational::zero(), Rational::one()]);
                acc = &acc * &factor;
            }
            acc
        };
        let a_poly_base = UniPoly::from_coeffs(vec![
            Rational::zero(),
            -&(e * e),
            Rational::zero(),
            Rational::one(),
        ]);
        let a_poly = a_poly_base.scalar_mul(a);

        // sign antisymmetry of the scheme: A(-v) = -A(v) at every node
        for di in d {
            debug_assert_eq!(a_poly.eval(&-di), -&a_poly.eval(di));
        }

        let b0: Rational = d.iter().cloned().product();
        let b2 = -&(&b0 / &(e * e));
        for beta_int in BETAS {
            let beta = Rational::from_int(beta_int);
            let b1 = &(&s / e) - &(&beta * &(e * e));
            let b_poly = UniPoly::from_coeffs(vec![b0.clone(), b1, b2.clone(), beta.clone()]);
            let num = &(&b_poly * &b_poly) - &d_poly;
            let c_poly = num.exact_div(&a_poly.scalar_mul(&Rational::from_int(4)));
            let surface = QuadraticSurface::from_abc(&a_poly, &b_poly, &c_poly)
                .expect("scheme degrees are within bounds");
            debug_assert_eq!(surface.discriminant_x(), d_poly);
            if let Some(found) = self.certify(
                surface,
                &b_poly,
                Provenance {
                    scheme: "symmetric-nodes".into(),
                    d: d.to_vec(),
                    e: Some(e.clone()),
                    w: None,
                    lambda: None,
                    a: a.clone(),
                    beta,
                    s: vec![s.clone()],
                    seed: self.params.seed,
                },
            ) {
                return Some(found);
            }
        }
        None
    }

    /// One asymmetric draw: six nodes, a nonsquare leading class, three
    /// `A`-roots whose `lambda * P` values must all be squares.
    fn try_asymmetric_draw(&mut self, rng: &mut ChaCha8Rng) -> Option<Construction> {
        self.tried += 1;
        let dr = &self.params.d_range;
        let er = &self.params.e_range;
        let mut nodes: Vec<i64> = Vec::new();
        while nodes.len() < 6 {
            let v = rng.gen_range(dr.min..=dr.max) * if rng.gen_bool(0.5) { 1 } else { -1 };
            if v != 0 && !nodes.contains(&v) {
                nodes.push(v);
            }
        }
        let lambda = Rational::from_int(*LAMBDAS.choose(rng).unwrap());
        let mut roots: Vec<i64> = Vec::new();
        let mut guard = 0;
        while roots.len() < 3 && guard < 64 {
            guard += 1;
            let w = rng.gen_range(er.min..=er.max) * if rng.gen_bool(0.5) { 1 } else { -1 };
            if !nodes.contains(&w) && !roots.contains(&w) {
                roots.push(w);
            }
        }
        if roots.len() < 3 {
            return None;
        }

        let v_rat: Vec<Rational> = nodes.iter().map(|&v| Rational::from_int(v)).collect();
        let w_rat: Vec<Rational> = roots.iter().map(|&w| Rational::from_int(w)).collect();
        let p_at = |x: &Rational| -> Rational { v_rat.iter().map(|v| x - v).product() };

        let mut s_vals = Vec::with_capacity(3);
        for w in &w_rat {
            let s = (&lambda * &p_at(w)).sqrt_exact().filter(|s| !s.is_zero())?;
            s_vals.push(s);
        }

        // derive the scale from an anchor node, then demand an exact count
        let prod_at = |v: &Rational| -> Rational { w_rat.iter().map(|w| v - w).product() };
        let target = self.params.target_rank;
        let mut chosen_a: Option<Rational> = None;
        for anchor in &v_rat {
            let a = Rational::from_bigint(prod_at(anchor).square_class());
            let count = v_rat
                .iter()
                .filter(|v| (&a * &prod_at(v)).is_nonzero_square())
                .count() as u32;
            if count == target {
                chosen_a = Some(a);
                break;
            }
        }
        let a = chosen_a?;

        let d_poly = {
            let mut acc = UniPoly::constant(lambda.clone());
            for v in &v_rat {
                acc = &acc * &UniPoly::from_coeffs(vec![-v, Rational::one()]);
            }
            acc
        };
        let root_poly = {
            let mut acc = UniPoly::one();
            for w in &w_rat {
                acc = &acc * &UniPoly::from_coeffs(vec![-w, Rational::one()]);
            }
            acc
        };
        let a_poly = root_poly.scalar_mul(&a);

        for beta_int in BETAS {
            for mask in 0..8u8 {
                let beta = Rational::from_int(beta_int);
                let mut b_poly = root_poly.scalar_mul(&beta);
                for (i, (w, s)) in w_rat.iter().zip(&s_vals).enumerate() {
                    let y = if mask & (1 << i) != 0 { -s } else { s.clone() };
                    b_poly = &b_poly + &lagrange_term(&w_rat, i, w, &y);
                }
                let num = &(&b_poly * &b_poly) - &d_poly;
                let (c_poly, rem) = num
                    .div_rem(&a_poly.scalar_mul(&Rational::from_int(4)))
                    .expect("A is nonzero");
                if !rem.is_zero() || c_poly.degree() > Some(3) {
                    continue;
                }
                let Ok(surface) = QuadraticSurface::from_abc(&a_poly, &b_poly, &c_poly) else {
                    continue;
                };
                if let Some(found) = self.certify(
                    surface,
                    &b_poly,
                    Provenance {
                        scheme: "asymmetric-nodes".into(),
                        d: v_rat.clone(),
                        e: None,
                        w: Some(w_rat.clone()),
                        lambda: Some(lambda.clone()),
                        a: a.clone(),
                        beta,
                        s: s_vals.clone(),
                        seed: self.params.seed,
                    },
                ) {
                    return Some(found);
                }
            }
        }
        None
    }

    /// Post-check a built candidate: validation, `B != 0` on `S1`, and an
    /// exact certificate at the target rank. Anything certified but short of
    /// the target is kept as the best partial result.
    fn certify(
        &mut self,
        surface: QuadraticSurface,
        b_poly: &UniPoly,
        provenance: Provenance,
    ) -> Option<Construction> {
        if !surface.validate().is_valid() {
            return None;
        }
        let certificate = rank::analyze(&surface).ok()?;
        if certificate.s1.iter().any(|v| b_poly.eval(v).is_zero()) {
            return None;
        }
        let construction = Construction {
            surface,
            certificate,
            provenance,
        };
        if construction.certificate.exact
            && construction.certificate.rank_lower == self.params.target_rank as usize
        {
            return Some(construction);
        }
        if construction.certificate.exact {
            let best_rank = self.best.as_ref().map(|c| c.certificate.rank_lower);
            if best_rank.is_none_or(|b| construction.certificate.rank_lower > b) {
                self.best = Some(construction);
            }
        }
        None
    }
}

/// The Lagrange basis term through `(w_i, y)` over the node set `ws`.
fn lagrange_term(ws: &[Rational], i: usize, w_i: &Rational, y: &Rational) -> UniPoly {
    let mut num = UniPoly::constant(y.clone());
    let mut den = Rational::one();
    for (j, w) in ws.iter().enumerate() {
        if j == i {
            continue;
        }
        num = &num * &UniPoly::from_coeffs(vec![-w, Rational::one()]);
        den = &den * &(w_i - w);
    }
    num.scalar_mul(&den.recip())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn base_configuration_yields_fixtures() {
        for (r, fixture) in [
            (0u32, fixtures::w0()),
            (1, fixtures::w1()),
            (2, fixtures::w2()),
        ] {
            let c = construct_surface(&ConstructionParams::new(r)).unwrap();
            assert_eq!(c.surface, fixture, "rank {r}");
            assert!(c.certificate.exact);
            assert_eq!(c.certificate.rank_lower, r as usize);
            assert_eq!(c.provenance.scheme, "symmetric-nodes");
            assert_eq!(c.provenance.e, Some(Rational::one()));
            assert_eq!(c.provenance.beta, Rational::from_int(2));
            assert_eq!(c.provenance.s, vec![Rational::from_int(24)]);
        }
    }

    #[test]
    fn emitted_surfaces_validate_and_split() {
        for r in 0..=2u32 {
            let c = construct_surface(&ConstructionParams::new(r)).unwrap();
            assert!(c.surface.validate().is_valid());
            assert!(c.certificate.splits_completely);
            let d = c.surface.discriminant_x();
            let roots = d.rational_roots().unwrap();
            assert_eq!(roots.len(), 6);
            assert!(roots.iter().all(|(_, m)| *m == 1));
        }
    }

    #[test]
    fn rank_three_search_within_budget() {
        let params = ConstructionParams::new(3);
        match construct_surface(&params) {
            Ok(c) => {
                assert!(c.certificate.exact);
                assert_eq!(c.certificate.rank_lower, 3);
                assert!(c.surface.validate().is_valid());
            }
            Err(ConstructError::BudgetExhausted { tried, budget, .. }) => {
                assert_eq!(tried, budget);
            }
            Err(e) => panic!("unexpected error {e}"),
        }
    }

    #[test]
    fn determinism_same_seed_same_bytes() {
        let params = ConstructionParams::new(3);
        let a = construct_surface(&params);
        let b = construct_surface(&params);
        match (a, b) {
            (Ok(ca), Ok(cb)) => {
                assert_eq!(
                    serde_json::to_string(&ca).unwrap(),
                    serde_json::to_string(&cb).unwrap()
                );
            }
            (Err(ea), Err(eb)) => assert_eq!(ea.to_string(), eb.to_string()),
            _ => panic!("nondeterministic outcome"),
        }
    }

    #[test]
    fn high_rank_targets_report_budget_exhaustion_or_succeed() {
        let mut params = ConstructionParams::new(5);
        params.budget = 200; // keep the unit test fast
        match construct_surface(&params) {
            Ok(c) => {
                assert_eq!(c.certificate.rank_lower, 5);
                assert!(c.certificate.exact);
            }
            Err(ConstructError::BudgetExhausted { target, tried, .. }) => {
                assert_eq!(target, 5);
                assert!(tried >= 200);
            }
            Err(e) => panic!("unexpected error {e}"),
        }
    }

    #[test]
    fn rank_out_of_range() {
        assert!(matches!(
            construct_surface(&ConstructionParams::new(7)),
            Err(ConstructError::RankOutOfRange(7))
        ));
    }
}
