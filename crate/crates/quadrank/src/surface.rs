//! The quadratic-elliptic-surface model.
//!
//! A surface `y^2 = a3(T)x^3 + a2(T)x^2 + a1(T)x + a0(T)` with `deg a_i <= 2`
//! is stored as the 4x3 coefficient matrix of `x^i T^j`. Reading the matrix
//! by rows gives the `a_i(T)`; reading it by columns gives the dual form
//! `A(x)T^2 + B(x)T + C(x)`. Both views are used throughout: the `T`-rows
//! drive the Weierstrass reduction and the discriminant in `T`, the
//! `x`-columns drive the conic discriminant `D(x) = B^2 - 4AC` that controls
//! the rank.

use crate::arith::{ArithError, Rational, UniPoly};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("a3(T) is identically zero")]
    DegenerateLeading,
    #[error("the surface is singular: 4p(T)^3 + 27q(T)^2 vanishes identically")]
    SingularSurface,
    #[error("polynomial degree {found} exceeds {max} for {role}")]
    BadDegree {
        role: &'static str,
        found: usize,
        max: usize,
    },
}

/// Validation failure codes carried by [`ValidationReport`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ValidationFailure {
    /// `deg a3(T) != 2`.
    A3DegreeNotTwo,
    /// `disc(a3)` is a rational square (zero included), so `a3` factors.
    A3Reducible,
    /// The fiber at infinity `y^2 = A(x)` is not an elliptic curve.
    InfinityFiberSingular,
    /// The j-invariant is constant, so the family may be split.
    PossiblySplit,
    /// The explicit non-split necessities fail: `a3 = 0`, or all `a_i` are
    /// constant multiples of one squared linear polynomial.
    SplitIndicators,
}

/// Outcome of [`QuadraticSurface::validate`]; the surface is a quadratic
/// elliptic surface iff all five flags hold.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub a3_degree_ok: bool,
    pub a3_irreducible: bool,
    pub infinity_fiber_elliptic: bool,
    pub nonsplit_j_nonconstant: bool,
    pub nonsplit_paper_conditions: bool,
    pub failures: Vec<ValidationFailure>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Short Weierstrass data `y^2 = x^3 + p(T)x + q(T)` of a surface.
///
/// For a quadratic surface `deg p <= 4` and `deg q <= 6`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeierstrassModel {
    pub p_t: UniPoly,
    pub q_t: UniPoly,
}

impl WeierstrassModel {
    /// `4p^3 + 27q^2`, the discriminant of the short-model cubic up to a
    /// constant. Equals `discriminant_t` of the originating surface.
    pub fn disc_poly(&self) -> UniPoly {
        let p3 = self.p_t.pow(3).scalar_mul(&Rational::from_int(4));
        let q2 = self.q_t.pow(2).scalar_mul(&Rational::from_int(27));
        p3 + q2
    }

    /// Degree criterion for rationality of the elliptic surface: either
    /// `0 < max(3 deg p, 2 deg q) < 12`, or the maximum is 12 and the `T^12`
    /// coefficient of the discriminant is nonzero (equivalently
    /// `ord_{T=0} T^12 disc(1/T) = 0`, since the degree is at most 12).
    pub fn is_rational_surface(&self) -> Result<bool, SurfaceError> {
        let disc = self.disc_poly();
        if disc.is_zero() {
            return Err(SurfaceError::SingularSurface);
        }
        let mut m = 0usize;
        if let Some(dp) = self.p_t.degree() {
            m = m.max(3 * dp);
        }
        if let Some(dq) = self.q_t.degree() {
            m = m.max(2 * dq);
        }
        Ok(if m == 0 {
            false
        } else if m < 12 {
            true
        } else if m == 12 {
            !disc.coeff(12).is_zero()
        } else {
            false
        })
    }
}

/// A surface `y^2 = a3(T)x^3 + ... + a0(T) = A(x)T^2 + B(x)T + C(x)` held as
/// the exact 4x3 coefficient matrix `coeff[i][j]` of `x^i T^j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticSurface {
    coeff: [[Rational; 3]; 4],
}

impl QuadraticSurface {
    pub fn from_matrix(coeff: [[Rational; 3]; 4]) -> Self {
        QuadraticSurface { coeff }
    }

    /// Build from the column view `A(x)T^2 + B(x)T + C(x)`, degrees at most 3.
    pub fn from_abc(a: &UniPoly, b: &UniPoly, c: &UniPoly) -> Result<Self, SurfaceError> {
        for (poly, role) in [(a, "A(x)"), (b, "B(x)"), (c, "C(x)")] {
            if poly.degree() > Some(3) {
                return Err(SurfaceError::BadDegree {
                    role,
                    found: poly.degree().unwrap(),
                    max: 3,
                });
            }
        }
        let mut coeff: [[Rational; 3]; 4] = Default::default();
        for (i, row) in coeff.iter_mut().enumerate() {
            row[2] = a.coeff(i);
            row[1] = b.coeff(i);
            row[0] = c.coeff(i);
        }
        Ok(QuadraticSurface { coeff })
    }

    /// Build from the row view `[a_0(T), .., a_3(T)]`, degrees at most 2.
    pub fn from_t_rows(rows: &[UniPoly; 4]) -> Result<Self, SurfaceError> {
        let mut coeff: [[Rational; 3]; 4] = Default::default();
        for (i, row) in rows.iter().enumerate() {
            if row.degree() > Some(2) {
                return Err(SurfaceError::BadDegree {
                    role: "a_i(T)",
                    found: row.degree().unwrap(),
                    max: 2,
                });
            }
            for (j, slot) in coeff[i].iter_mut().enumerate() {
                *slot = row.coeff(j);
            }
        }
        Ok(QuadraticSurface { coeff })
    }

    pub fn matrix(&self) -> &[[Rational; 3]; 4] {
        &self.coeff
    }

    /// Row view: `a_i(T)` for `i = 0..=3`, indexed by the power of `x`.
    pub fn t_rows(&self) -> [UniPoly; 4] {
        std::array::from_fn(|i| UniPoly::from_coeffs(self.coeff[i].to_vec()))
    }

    /// Column view: `(A(x), B(x), C(x))`.
    pub fn abc(&self) -> (UniPoly, UniPoly, UniPoly) {
        let col =
            |j: usize| UniPoly::from_coeffs((0..4).map(|i| self.coeff[i][j].clone()).collect());
        (col(2), col(1), col(0))
    }

    /// The conic discriminant `D(x) = B(x)^2 - 4A(x)C(x)`.
    pub fn discriminant_x(&self) -> UniPoly {
        let (a, b, c) = self.abc();
        &(&b * &b) - &(&a * &c).scalar_mul(&Rational::from_int(4))
    }

    /// Reduce to `y^2 = x^3 + p(T)x + q(T)` via `x -> x/a3, y -> y/a3` and a
    /// depression shift: `p = a1 a3 - a2^2/3`, `q = a0 a3^2 - a1 a2 a3/3 + 2 a2^3/27`.
    pub fn weierstrass(&self) -> Result<WeierstrassModel, SurfaceError> {
        let [a0, a1, a2, a3] = self.t_rows();
        if a3.is_zero() {
            return Err(SurfaceError::DegenerateLeading);
        }
        let third = Rational::new(1, 3);
        let p_t = &(&a1 * &a3) - &(&a2 * &a2).scalar_mul(&third);
        let q_t = &(&(&a0 * &(&a3 * &a3)) - &(&(&a1 * &a2) * &a3).scalar_mul(&third))
            + &(&(&a2 * &a2) * &a2).scalar_mul(&Rational::new(2, 27));
        Ok(WeierstrassModel { p_t, q_t })
    }

    /// The discriminant of the surface as a polynomial in `T`:
    /// `a3^2 [-a1^2 a2^2 + 4a1^3 a3 - 18a0 a1 a2 a3 + a0 (4a2^3 + 27a0 a3^2)]`,
    /// degree at most 12.
    pub fn discriminant_t(&self) -> UniPoly {
        let [a0, a1, a2, a3] = self.t_rows();
        let a1sq = &a1 * &a1;
        let a2sq = &a2 * &a2;
        let a3sq = &a3 * &a3;
        let t1 = -&(&a1sq * &a2sq);
        let t2 = (&(&a1sq * &a1) * &a3).scalar_mul(&Rational::from_int(4));
        let t3 = (&(&(&a0 * &a1) * &a2) * &a3).scalar_mul(&Rational::from_int(-18));
        let inner = &(&a2sq * &a2).scalar_mul(&Rational::from_int(4))
            + &(&a0 * &a3sq).scalar_mul(&Rational::from_int(27));
        let t4 = &a0 * &inner;
        let bracket = &(&(&t1 + &t2) + &t3) + &t4;
        &a3sq * &bracket
    }

    /// The fiber at infinity `y^2 = A(x)` (the `T^2`-column cubic), and
    /// whether it is an elliptic curve: degree exactly 3 and squarefree.
    pub fn fiber_at_infinity(&self) -> (UniPoly, bool) {
        let (a, _, _) = self.abc();
        let elliptic =
            a.degree() == Some(3) && !a.cubic_discriminant().expect("degree checked").is_zero();
        (a, elliptic)
    }

    /// Specialize the parameter to `T = t`: the fiber cubic
    /// `a3(t)x^3 + a2(t)x^2 + a1(t)x + a0(t)` plus a singularity flag
    /// (true iff the discriminant in `T` vanishes at `t`).
    pub fn specialize(&self, t: &Rational) -> (UniPoly, bool) {
        let rows = self.t_rows();
        let cubic = UniPoly::from_coeffs(rows.iter().map(|r| r.eval(t)).collect());
        let singular = self.discriminant_t().eval(t).is_zero();
        (cubic, singular)
    }

    /// Check the defining conditions of a quadratic elliptic surface:
    /// `deg a3 = 2`, `a3` irreducible over Q, elliptic fiber at infinity,
    /// nonconstant j-invariant (a decidable sufficient condition for
    /// non-splitness), and the explicit non-split necessities.
    pub fn validate(&self) -> ValidationReport {
        let [a0, a1, a2, a3] = self.t_rows();
        let mut failures = Vec::new();

        let a3_degree_ok = a3.degree() == Some(2);
        if !a3_degree_ok {
            failures.push(ValidationFailure::A3DegreeNotTwo);
        }

        // disc(a3) a square in Q (zero included) <=> a3 factors over Q
        let disc_a3 = &(&self.coeff[3][1] * &self.coeff[3][1])
            - &(Rational::from_int(4) * &self.coeff[3][2] * &self.coeff[3][0]);
        let a3_irreducible = disc_a3.sqrt_exact().is_none();
        if !a3_irreducible {
            failures.push(ValidationFailure::A3Reducible);
        }

        let (_, infinity_fiber_elliptic) = self.fiber_at_infinity();
        if !infinity_fiber_elliptic {
            failures.push(ValidationFailure::InfinityFiberSingular);
        }

        // j is constant iff c4^3 and the discriminant are proportional; with
        // c4 = -48p and disc = -16(4p^3 + 27q^2) this reduces to
        // proportionality of p^3 and 4p^3 + 27q^2.
        let nonsplit_j_nonconstant = match self.weierstrass() {
            Ok(w) => {
                let disc = w.disc_poly();
                !disc.is_zero() && !proportional(&w.p_t.pow(3), &disc)
            }
            Err(_) => false,
        };
        if !nonsplit_j_nonconstant {
            failures.push(ValidationFailure::PossiblySplit);
        }

        // a3 not identically zero, and the a_i not all constant multiples of
        // one squared linear polynomial (constants count as squares).
        let nonsplit_paper_conditions = !a3.is_zero() && {
            let rows = [&a0, &a1, &a2, &a3];
            let nonzero: Vec<&&UniPoly> = rows.iter().filter(|r| !r.is_zero()).collect();
            let common = nonzero[0];
            let all_proportional = nonzero.iter().all(|r| proportional(r, common));
            let common_is_square_multiple = match common.degree() {
                Some(0) => true,
                Some(2) => {
                    let disc = &(&common.coeff(1) * &common.coeff(1))
                        - &(Rational::from_int(4) * common.coeff(2) * common.coeff(0));
                    disc.is_zero()
                }
                _ => false,
            };
            !(all_proportional && common_is_square_multiple)
        };
        if !nonsplit_paper_conditions {
            failures.push(ValidationFailure::SplitIndicators);
        }

        ValidationReport {
            a3_degree_ok,
            a3_irreducible,
            infinity_fiber_elliptic,
            nonsplit_j_nonconstant,
            nonsplit_paper_conditions,
            failures,
        }
    }

    /// Rescale by `u^2` with `u` the least common denominator of all entries.
    /// A square multiplier preserves every square-class quantity the rank
    /// formula reads off the surface.
    pub fn integral_model(&self) -> IntegralSurface {
        let mut u = BigInt::one();
        for row in &self.coeff {
            for entry in row {
                u = u.lcm(entry.denom());
            }
        }
        let scale = Rational::from_bigint(u);
        let sq = &scale * &scale;
        let coeff: [[Rational; 3]; 4] =
            std::array::from_fn(|i| std::array::from_fn(|j| &self.coeff[i][j] * &sq));
        IntegralSurface::new(QuadraticSurface { coeff }, scale)
    }

    /// Canonical compact JSON of the matrix schema; the byte-exact form used
    /// for file output and checkpoint hashing.
    pub fn canonical_json(&self) -> String {
        serde_json::to_string(self).expect("surface serialization cannot fail")
    }

    /// `D(x)` root data for the rank formula.
    pub(crate) fn d_rational_roots(&self) -> Result<Vec<(Rational, usize)>, ArithError> {
        self.discriminant_x().rational_roots()
    }
}

/// `u * lc(v) == v * lc(u)`; zero polynomials are proportional to anything.
fn proportional(u: &UniPoly, v: &UniPoly) -> bool {
    let lc_u = u.leading_coeff().cloned().unwrap_or_else(Rational::zero);
    let lc_v = v.leading_coeff().cloned().unwrap_or_else(Rational::zero);
    u.scalar_mul(&lc_v) == v.scalar_mul(&lc_u)
}

// ---- serde: {"coeff_matrix": [[c00,c01,c02], ...]} with rational strings ----

#[derive(Serialize, Deserialize)]
struct SurfaceSchema {
    coeff_matrix: Vec<Vec<Rational>>,
}

impl Serialize for QuadraticSurface {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let schema = SurfaceSchema {
            coeff_matrix: self.coeff.iter().map(|row| row.to_vec()).collect(),
        };
        schema.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for QuadraticSurface {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let schema = SurfaceSchema::deserialize(deserializer)?;
        if schema.coeff_matrix.len() != 4 || schema.coeff_matrix.iter().any(|r| r.len() != 3) {
            return Err(serde::de::Error::custom(
                "coeff_matrix must be 4 rows (powers of x) by 3 columns (powers of T)",
            ));
        }
        let coeff: [[Rational; 3]; 4] =
            std::array::from_fn(|i| std::array::from_fn(|j| schema.coeff_matrix[i][j].clone()));
        Ok(QuadraticSurface { coeff })
    }
}

/// A surface with integer entries, plus the integer reductions the per-prime
/// kernels sweep: the `a_i(T)` rows, the `(A, B, C)` columns, `D(x)`, and the
/// discriminant in `T`.
#[derive(Debug, Clone)]
pub struct IntegralSurface {
    surface: QuadraticSurface,
    scale: Rational,
    a_rows: [Vec<BigInt>; 4],
    abc: [Vec<BigInt>; 3],
    d_x: Vec<BigInt>,
    delta_t: Vec<BigInt>,
}

impl IntegralSurface {
    fn new(surface: QuadraticSurface, scale: Rational) -> Self {
        let to_ints = |p: &UniPoly| -> Vec<BigInt> {
            p.coeffs()
                .iter()
                .map(|c| {
                    debug_assert!(c.is_integer());
                    c.numer().clone()
                })
                .collect()
        };
        let rows = surface.t_rows();
        let (a, b, c) = surface.abc();
        let d_x = to_ints(&surface.discriminant_x());
        let delta_t = to_ints(&surface.discriminant_t());
        IntegralSurface {
            a_rows: std::array::from_fn(|i| to_ints(&rows[i])),
            abc: [to_ints(&a), to_ints(&b), to_ints(&c)],
            d_x,
            delta_t,
            surface,
            scale,
        }
    }

    pub fn surface(&self) -> &QuadraticSurface {
        &self.surface
    }

    /// The multiplier `u`: this surface equals `u^2` times the original.
    pub fn scale(&self) -> &Rational {
        &self.scale
    }

    /// `a_i(T)` coefficients, ascending, `i = 0..=3`.
    pub fn t_rows_int(&self) -> &[Vec<BigInt>; 4] {
        &self.a_rows
    }

    /// `(A, B, C)` coefficients in `x`, ascending.
    pub fn abc_int(&self) -> &[Vec<BigInt>; 3] {
        &self.abc
    }

    pub fn d_int(&self) -> &[BigInt] {
        &self.d_x
    }

    pub fn delta_t_int(&self) -> &[BigInt] {
        &self.delta_t
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn rat(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn random_surface(rng: &mut StdRng) -> QuadraticSurface {
        let coeff: [[Rational; 3]; 4] = std::array::from_fn(|_| {
            std::array::from_fn(|_| Rational::new(rng.gen_range(-9..=9), rng.gen_range(1..=4)))
        });
        QuadraticSurface::from_matrix(coeff)
    }

    #[test]
    fn views_of_g1() {
        let g1 = fixtures::g1();
        let (a, b, c) = g1.abc();
        assert_eq!(a, UniPoly::from_int_coeffs(&[0, -1, 0, 1]));
        assert_eq!(b, UniPoly::one());
        assert_eq!(c, UniPoly::from_int_coeffs(&[0, 0, 0, 1]));
        let [a0, a1, a2, a3] = g1.t_rows();
        assert_eq!(a3, UniPoly::from_int_coeffs(&[1, 0, 1]));
        assert_eq!(a2, UniPoly::zero());
        assert_eq!(a1, UniPoly::from_int_coeffs(&[0, 0, -1]));
        assert_eq!(a0, UniPoly::from_int_coeffs(&[0, 1]));
    }

    #[test]
    fn view_duality_roundtrip() {
        let mut rng = StdRng::seed_from_u64(0xd0a1);
        for _ in 0..100 {
            let s = random_surface(&mut rng);
            let (a, b, c) = s.abc();
            assert_eq!(QuadraticSurface::from_abc(&a, &b, &c).unwrap(), s);
            assert_eq!(QuadraticSurface::from_t_rows(&s.t_rows()).unwrap(), s);
        }
    }

    #[test]
    fn discriminant_x_values() {
        assert_eq!(
            fixtures::g1().discriminant_x(),
            UniPoly::from_int_coeffs(&[1, 0, 0, 0, 4, 0, -4])
        );
        assert_eq!(
            fixtures::w2().discriminant_x(),
            UniPoly::from_int_coeffs(&[900, 0, -361, 0, 38, 0, -1])
        );
        let zero_d = QuadraticSurface::from_abc(
            &UniPoly::from_int_coeffs(&[0, 0, 0, 1]),
            &UniPoly::zero(),
            &UniPoly::zero(),
        )
        .unwrap();
        assert!(zero_d.discriminant_x().is_zero());
    }

    #[test]
    fn leading_coefficient_identity() {
        // x^6-coefficient of D equals disc(a3) = c[3][1]^2 - 4 c[3][2] c[3][0]
        let mut rng = StdRng::seed_from_u64(0x1ead);
        for _ in 0..100 {
            let s = random_surface(&mut rng);
            let d = s.discriminant_x();
            let m = s.matrix();
            let disc_a3 = &(&m[3][1] * &m[3][1]) - &(rat(4) * &m[3][2] * &m[3][0]);
            assert_eq!(d.coeff(6), disc_a3);
        }
        // consequently every validated surface has deg D = 6 exactly
        for s in [
            fixtures::w0(),
            fixtures::w1(),
            fixtures::w2(),
            fixtures::g1(),
        ] {
            assert!(s.validate().is_valid());
            assert_eq!(s.discriminant_x().degree(), Some(6));
        }
    }

    #[test]
    fn weierstrass_of_g1() {
        let w = fixtures::g1().weierstrass().unwrap();
        assert_eq!(w.p_t, UniPoly::from_int_coeffs(&[0, 0, -1, 0, -1]));
        assert_eq!(w.q_t, UniPoly::from_int_coeffs(&[0, 1, 0, 2, 0, 1]));
    }

    #[test]
    fn weierstrass_constant_and_shift() {
        // a3=1, a2=0, a1=c, a0=d constants: already the short form
        let rows = [
            UniPoly::from_int_coeffs(&[7]),
            UniPoly::from_int_coeffs(&[-2]),
            UniPoly::zero(),
            UniPoly::one(),
        ];
        let s = QuadraticSurface::from_t_rows(&rows).unwrap();
        let w = s.weierstrass().unwrap();
        assert_eq!(w.p_t, UniPoly::from_int_coeffs(&[-2]));
        assert_eq!(w.q_t, UniPoly::from_int_coeffs(&[7]));

        // a3=1, a2=3, a1=0, a0=0: p = -3, q = 2
        let rows = [
            UniPoly::zero(),
            UniPoly::zero(),
            UniPoly::from_int_coeffs(&[3]),
            UniPoly::one(),
        ];
        let s = QuadraticSurface::from_t_rows(&rows).unwrap();
        let w = s.weierstrass().unwrap();
        assert_eq!(w.p_t, UniPoly::from_int_coeffs(&[-3]));
        assert_eq!(w.q_t, UniPoly::from_int_coeffs(&[2]));

        // degenerate leading row
        let s = QuadraticSurface::from_t_rows(&[
            UniPoly::one(),
            UniPoly::zero(),
            UniPoly::zero(),
            UniPoly::zero(),
        ])
        .unwrap();
        assert_eq!(s.weierstrass(), Err(SurfaceError::DegenerateLeading));
    }

    #[test]
    fn discriminant_t_of_g1() {
        let delta = fixtures::g1().discriminant_t();
        assert_eq!(delta.coeff(12), rat(-4));
        // (T^2+1)^3 (-4T^6 + 27T^4 + 27T^2)
        let expect = UniPoly::from_int_coeffs(&[1, 0, 1]).pow(3)
            * UniPoly::from_int_coeffs(&[0, 0, 27, 0, 27, 0, -4]);
        assert_eq!(delta, expect);
    }

    #[test]
    fn discriminant_t_constant_rows() {
        // rows (c3, 0, c1, 0): delta = c3^2 * 4 c1^3 c3
        let rows = [
            UniPoly::zero(),
            UniPoly::from_int_coeffs(&[-2]),
            UniPoly::zero(),
            UniPoly::from_int_coeffs(&[3]),
        ];
        let s = QuadraticSurface::from_t_rows(&rows).unwrap();
        assert_eq!(s.discriminant_t(), UniPoly::constant(rat(9 * 4 * (-8) * 3)));
    }

    #[test]
    fn discriminant_identity_with_classical_cubic() {
        // delta_T + a3^2 * disc_cubic(a3, a2, a1, a0) = 0 as polynomials
        let mut rng = StdRng::seed_from_u64(0xde17a);
        for _ in 0..100 {
            let s = random_surface(&mut rng);
            let [a0, a1, a2, a3] = s.t_rows();
            let classical = classical_cubic_disc(&a3, &a2, &a1, &a0);
            let lhs = &s.discriminant_t() + &(&(&a3 * &a3) * &classical);
            assert!(lhs.is_zero());
        }
    }

    /// 18abcd - 4b^3d + b^2c^2 - 4ac^3 - 27a^2d^2 with polynomial entries.
    fn classical_cubic_disc(a: &UniPoly, b: &UniPoly, c: &UniPoly, d: &UniPoly) -> UniPoly {
        let t1 = &(&(a * b) * c) * d;
        let t2 = &(&(b * b) * b) * d;
        let t3 = &(b * b) * &(c * c);
        let t4 = a * &(&(c * c) * c);
        let t5 = &(a * a) * &(d * d);
        t1.scalar_mul(&rat(18))
            + t2.scalar_mul(&rat(-4))
            + t3
            + t4.scalar_mul(&rat(-4))
            + t5.scalar_mul(&rat(-27))
    }

    #[test]
    fn weierstrass_route_matches_discriminant_t() {
        // 4p^3 + 27q^2 recomputes delta_T through the short model
        for s in [fixtures::w0(), fixtures::w2(), fixtures::g1()] {
            let w = s.weierstrass().unwrap();
            assert_eq!(w.disc_poly(), s.discriminant_t());
        }
    }

    #[test]
    fn fiber_at_infinity_cases() {
        let (f, e) = fixtures::g1().fiber_at_infinity();
        assert_eq!(f, UniPoly::from_int_coeffs(&[0, -1, 0, 1]));
        assert!(e);
        let (f, e) = fixtures::w2().fiber_at_infinity();
        assert_eq!(f, UniPoly::from_int_coeffs(&[0, -6, 0, 6]));
        assert!(e);
        let s = QuadraticSurface::from_abc(
            &UniPoly::from_int_coeffs(&[0, 0, 0, 1]),
            &UniPoly::zero(),
            &UniPoly::zero(),
        )
        .unwrap();
        let (f, e) = s.fiber_at_infinity();
        assert_eq!(f, UniPoly::from_int_coeffs(&[0, 0, 0, 1]));
        assert!(!e);
    }

    #[test]
    fn specialization() {
        let g1 = fixtures::g1();
        let (cubic, singular) = g1.specialize(&rat(0));
        assert_eq!(cubic, UniPoly::from_int_coeffs(&[0, 0, 0, 1]));
        assert!(singular);
        let (cubic, singular) = g1.specialize(&rat(1));
        assert_eq!(cubic, UniPoly::from_int_coeffs(&[1, -1, 0, 2]));
        assert!(!singular);
        // at t = 0 the fiber is the C-column cubic
        let w2 = fixtures::w2();
        let (cubic, _) = w2.specialize(&rat(0));
        let (_, _, c) = w2.abc();
        assert_eq!(cubic, c);
    }

    #[test]
    fn specialization_flag_matches_discriminant() {
        let mut rng = StdRng::seed_from_u64(0x5e1f);
        for _ in 0..100 {
            let s = random_surface(&mut rng);
            let t = Rational::new(rng.gen_range(-9..=9), rng.gen_range(1..=3));
            let (_, singular) = s.specialize(&t);
            assert_eq!(singular, s.discriminant_t().eval(&t).is_zero());
        }
    }

    #[test]
    fn validation_of_fixtures() {
        for s in [
            fixtures::w0(),
            fixtures::w1(),
            fixtures::w2(),
            fixtures::g1(),
        ] {
            let report = s.validate();
            assert!(report.is_valid(), "{report:?}");
        }
        // a3(T) = 6T^2 + 2T + 5/24 has disc 4 - 5 = -1: irreducible
        let m = fixtures::w2().matrix().clone();
        let disc = &(&m[3][1] * &m[3][1]) - &(rat(4) * &m[3][2] * &m[3][0]);
        assert_eq!(disc, rat(-1));
    }

    #[test]
    fn validation_rejects_split_family() {
        // a3 = T^2, everything else zero
        let s = QuadraticSurface::from_t_rows(&[
            UniPoly::zero(),
            UniPoly::zero(),
            UniPoly::zero(),
            UniPoly::from_int_coeffs(&[0, 0, 1]),
        ])
        .unwrap();
        let report = s.validate();
        assert!(report.a3_degree_ok);
        assert!(!report.a3_irreducible);
        assert!(!report.infinity_fiber_elliptic);
        assert!(!report.nonsplit_j_nonconstant);
        assert!(!report.nonsplit_paper_conditions);
        assert!(report.failures.contains(&ValidationFailure::A3Reducible));
        assert!(report
            .failures
            .contains(&ValidationFailure::InfinityFiberSingular));
        assert!(report
            .failures
            .contains(&ValidationFailure::SplitIndicators));
    }

    #[test]
    fn rationality_criterion_paths() {
        // G1 goes through the degree-12 path with T^12 coefficient -4
        let w = fixtures::g1().weierstrass().unwrap();
        assert!(w.is_rational_surface().unwrap());
        // p = T, q = 1: max(3, 2) = 3 in (0, 12)
        let w = WeierstrassModel {
            p_t: UniPoly::x(),
            q_t: UniPoly::one(),
        };
        assert!(w.is_rational_surface().unwrap());
        // constants with nonzero discriminant: max = 0 violates the lower bound
        let w = WeierstrassModel {
            p_t: UniPoly::from_int_coeffs(&[1]),
            q_t: UniPoly::from_int_coeffs(&[1]),
        };
        assert!(!w.is_rational_surface().unwrap());
        // identically singular model errors
        let w = WeierstrassModel {
            p_t: UniPoly::zero(),
            q_t: UniPoly::zero(),
        };
        assert_eq!(w.is_rational_surface(), Err(SurfaceError::SingularSurface));
    }

    #[test]
    fn validated_fixtures_are_rational_surfaces() {
        for s in [
            fixtures::w0(),
            fixtures::w1(),
            fixtures::w2(),
            fixtures::g1(),
        ] {
            assert!(s.validate().is_valid());
            assert!(s.weierstrass().unwrap().is_rational_surface().unwrap());
        }
    }

    #[test]
    fn integral_model_scales_by_square_lcd() {
        let w2 = fixtures::w2();
        let int = w2.integral_model();
        assert_eq!(int.scale(), &rat(24));
        // entries are 24^2 times the originals, all integers
        for i in 0..4 {
            for j in 0..3 {
                let entry = &int.surface().matrix()[i][j];
                assert!(entry.is_integer());
                assert_eq!(entry, &(&w2.matrix()[i][j] * &rat(576)));
            }
        }
        // already-integral surfaces pass through unchanged
        let g1 = fixtures::g1();
        let int = g1.integral_model();
        assert_eq!(int.scale(), &rat(1));
        assert_eq!(int.surface(), &g1);
        assert_eq!(int.d_int().len(), 7);
    }

    #[test]
    fn surface_json_roundtrip() {
        let w2 = fixtures::w2();
        let json = w2.canonical_json();
        let back: QuadraticSurface = serde_json::from_str(&json).unwrap();
        assert_eq!(back, w2);
        assert_eq!(back.canonical_json(), json);
        assert!(json.starts_with(r#"{"coeff_matrix":"#));
        // shape errors are rejected
        assert!(serde_json::from_str::<QuadraticSurface>(r#"{"coeff_matrix":[["1"]]}"#).is_err());
    }
}
