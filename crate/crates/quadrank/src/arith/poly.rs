//! Dense univariate polynomials over the rationals.

use super::{ArithError, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// A dense univariate polynomial with [`Rational`] coefficients.
///
/// Coefficients are stored in ascending power order; the representation is
/// canonical: the vector is empty for the zero polynomial and otherwise ends
/// in a nonzero coefficient.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly::constant(Rational::one())
    }

    /// The indeterminate.
    pub fn x() -> Self {
        UniPoly::from_coeffs(vec![Rational::zero(), Rational::one()])
    }

    pub fn constant(c: Rational) -> Self {
        UniPoly::from_coeffs(vec![c])
    }

    /// `c * x^deg`.
    pub fn monomial(c: Rational, deg: usize) -> Self {
        if c.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![Rational::zero(); deg + 1];
        coeffs[deg] = c;
        UniPoly { coeffs }
    }

    /// From ascending-power coefficients; trailing zeros are stripped.
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_int_coeffs(coeffs: &[i64]) -> Self {
        UniPoly::from_coeffs(coeffs.iter().map(|&c| Rational::from_int(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Horner evaluation.
    pub fn eval(&self, at: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = &acc * at + c;
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| Rational::from_int(i as i64) * c)
            .collect();
        UniPoly::from_coeffs(coeffs)
    }

    pub fn scalar_mul(&self, s: &Rational) -> UniPoly {
        UniPoly::from_coeffs(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn pow(&self, mut exp: u32) -> UniPoly {
        let mut base = self.clone();
        let mut acc = UniPoly::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Monic associate. Panics on zero.
    pub fn monic(&self) -> UniPoly {
        let lc = self.leading_coeff().expect("monic of zero polynomial");
        self.scalar_mul(&lc.recip())
    }

    /// Euclidean division: `self = g*q + r` with `deg r < deg g`, exact over Q.
    pub fn div_rem(&self, g: &UniPoly) -> Result<(UniPoly, UniPoly), ArithError> {
        let g_deg = g.degree().ok_or(ArithError::DivisionByZeroPoly)?;
        let f_deg = match self.degree() {
            Some(d) if d >= g_deg => d,
            _ => return Ok((UniPoly::zero(), self.clone())),
        };
        let lc_g = g.leading_coeff().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); f_deg - g_deg + 1];
        for i in (0..quot.len()).rev() {
            let q = &rem[i + g_deg] / &lc_g;
            if q.is_zero() {
                continue;
            }
            for (j, gc) in g.coeffs.iter().enumerate() {
                rem[i + j] = &rem[i + j] - &(gc * &q);
            }
            quot[i] = q;
        }
        Ok((UniPoly::from_coeffs(quot), UniPoly::from_coeffs(rem)))
    }

    /// Division known to be exact; panics on a nonzero remainder.
    pub fn exact_div(&self, g: &UniPoly) -> UniPoly {
        let (q, r) = self.div_rem(g).expect("exact_div by zero polynomial");
        assert!(r.is_zero(), "exact_div left remainder {r}");
        q
    }

    /// Monic gcd (zero if both inputs are zero).
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).unwrap();
            a = b;
            // keep coefficients small; the gcd is only defined up to a unit
            b = if r.is_zero() { r } else { r.monic() };
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    /// True iff gcd(f, f') is constant.
    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).degree() == Some(0)
    }

    /// `f / gcd(f, f')`, returned as the primitive integer model with positive
    /// leading coefficient: same roots as `f`, all with multiplicity one.
    pub fn squarefree_part(&self) -> Result<UniPoly, ArithError> {
        if self.is_zero() {
            return Err(ArithError::ZeroPolynomial);
        }
        if self.degree() == Some(0) {
            return Ok(UniPoly::one());
        }
        let g = self.gcd(&self.derivative());
        let part = self.exact_div(&g);
        let (ints, _) = part.integer_model().unwrap();
        let mut p = UniPoly::from_coeffs(ints.into_iter().map(Rational::from_bigint).collect());
        if p.leading_coeff().unwrap().is_negative() {
            p = -&p;
        }
        Ok(p)
    }

    /// Primitive integer model: coefficients `m_i` with content 1 and a scale
    /// `s` such that `self = s * m(x)`. The sign of the leading coefficient is
    /// preserved in `m`. `None` for the zero polynomial.
    pub fn integer_model(&self) -> Option<(Vec<BigInt>, Rational)> {
        if self.is_zero() {
            return None;
        }
        let mut den = BigInt::one();
        for c in &self.coeffs {
            den = den.lcm(c.denom());
        }
        let scaled: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let mut content = BigInt::zero();
        for c in &scaled {
            content = content.gcd(c);
        }
        let ints: Vec<BigInt> = scaled.iter().map(|c| c / &content).collect();
        Some((ints, Rational::new_big(content, den)))
    }

    /// Yun squarefree decomposition: pairs `(g_i, i)` with each `g_i`
    /// squarefree, pairwise coprime, and `self = lc * prod g_i^i` up to a
    /// constant (the `g_i` are monic). Multiplicity-1 trivial parts are
    /// omitted when constant.
    pub(crate) fn squarefree_decomposition(&self) -> Result<Vec<(UniPoly, u32)>, ArithError> {
        if self.is_zero() {
            return Err(ArithError::ZeroPolynomial);
        }
        let f = self.monic();
        if f.degree() == Some(0) {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        let df = f.derivative();
        let mut a = f.gcd(&df);
        let mut b = f.exact_div(&a);
        let mut c = df.exact_div(&a);
        let mut i = 1u32;
        loop {
            let d = &c - &b.derivative();
            if d.is_zero() {
                if b.degree().unwrap_or(0) > 0 {
                    out.push((b.monic(), i));
                }
                break;
            }
            a = b.gcd(&d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.monic(), i));
            }
            b = b.exact_div(&a);
            c = d.exact_div(&a);
            i += 1;
            if b.degree() == Some(0) {
                break;
            }
        }
        Ok(out)
    }

    /// All rational roots with multiplicities, ascending.
    ///
    /// Candidates come from the rational root theorem on the primitive integer
    /// model (divisors of the trailing coefficient over divisors of the
    /// leading one); each confirmed root is deflated out to count its
    /// multiplicity.
    pub fn rational_roots(&self) -> Result<Vec<(Rational, usize)>, ArithError> {
        if self.is_zero() {
            return Err(ArithError::ZeroPolynomial);
        }
        let mut roots: Vec<(Rational, usize)> = Vec::new();
        let mut f = self.clone();

        // roots at zero: trailing zero coefficients
        let k = f.coeffs.iter().take_while(|c| c.is_zero()).count();
        if k > 0 {
            roots.push((Rational::zero(), k));
            f = UniPoly::from_coeffs(f.coeffs[k..].to_vec());
        }
        if f.degree() == Some(0) {
            roots.sort_by(|a, b| a.0.cmp(&b.0));
            return Ok(roots);
        }

        let (ints, _) = f.integer_model().unwrap();
        let lead = ints.last().unwrap().abs();
        let trail = ints.first().unwrap().abs();
        let mut candidates: Vec<Rational> = Vec::new();
        for p in divisors(&trail) {
            for q in divisors(&lead) {
                if p.gcd(&q).is_one() {
                    candidates.push(Rational::new_big(p.clone(), q.clone()));
                    candidates.push(Rational::new_big(-&p, q));
                }
            }
        }
        candidates.sort();
        candidates.dedup();

        for cand in candidates {
            let mut mult = 0usize;
            let lin = UniPoly::from_coeffs(vec![-&cand, Rational::one()]);
            while f.degree() >= Some(1) && f.eval(&cand).is_zero() {
                f = f.exact_div(&lin);
                mult += 1;
            }
            if mult > 0 {
                roots.push((cand, mult));
            }
        }
        roots.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(roots)
    }

    /// Discriminant `18abcd - 4b^3d + b^2c^2 - 4ac^3 - 27a^2d^2` of a cubic
    /// `ax^3 + bx^2 + cx + d`.
    pub fn cubic_discriminant(&self) -> Result<Rational, ArithError> {
        if self.degree() != Some(3) {
            return Err(ArithError::WrongDegree {
                expected: 3,
                found: self.degree(),
            });
        }
        let (d, c, b, a) = (self.coeff(0), self.coeff(1), self.coeff(2), self.coeff(3));
        let term1 = Rational::from_int(18) * &a * &b * &c * &d;
        let term2 = Rational::from_int(-4) * &b * &b * &b * &d;
        let term3 = &b * &b * &c * &c;
        let term4 = Rational::from_int(-4) * &a * &c * &c * &c;
        let term5 = Rational::from_int(-27) * &a * &a * &d * &d;
        Ok(term1 + term2 + term3 + term4 + term5)
    }

    /// Render with a custom variable name.
    pub fn display_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts: Vec<String> = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let body = match i {
                0 => mag.to_string(),
                _ => {
                    let xp = if i == 1 {
                        var.to_string()
                    } else {
                        format!("{var}^{i}")
                    };
                    if mag.is_one() {
                        xp
                    } else {
                        format!("{mag}*{xp}")
                    }
                }
            };
            if parts.is_empty() {
                parts.push(if c.is_negative() {
                    format!("-{body}")
                } else {
                    body
                });
            } else {
                parts.push(format!(
                    "{} {body}",
                    if c.is_negative() { "-" } else { "+" }
                ));
            }
        }
        parts.join(" ")
    }
}

/// Positive divisors of `|n|` by trial division; `n` must be nonzero.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut m = n.abs();
    assert!(!m.is_zero(), "divisors of zero");
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let mut p = BigInt::from(2);
    while &p * &p <= m {
        let mut e = 0u32;
        while (&m % &p).is_zero() {
            m /= &p;
            e += 1;
        }
        if e > 0 {
            primes.push((p.clone(), e));
        }
        p += 1u32;
    }
    if !m.is_one() {
        primes.push((m, 1));
    }
    let mut out = vec![BigInt::one()];
    for (p, e) in primes {
        let base = out.clone();
        let mut pk = BigInt::one();
        for _ in 0..e {
            pk *= &p;
            out.extend(base.iter().map(|d| d * &pk));
        }
    }
    out.sort();
    out
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with("x"))
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with("x"))
    }
}

impl Add<&UniPoly> for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        UniPoly::from_coeffs(coeffs)
    }
}

impl Sub<&UniPoly> for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        UniPoly::from_coeffs(coeffs)
    }
}

impl Mul<&UniPoly> for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        UniPoly::from_coeffs(coeffs)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! binop_owned {
    ($trait:ident, $method:ident) => {
        impl $trait for UniPoly {
            type Output = UniPoly;
            fn $method(self, rhs: UniPoly) -> UniPoly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&UniPoly> for UniPoly {
            type Output = UniPoly;
            fn $method(self, rhs: &UniPoly) -> UniPoly {
                (&self).$method(rhs)
            }
        }
        impl $trait<UniPoly> for &UniPoly {
            type Output = UniPoly;
            fn $method(self, rhs: UniPoly) -> UniPoly {
                self.$method(&rhs)
            }
        }
    };
}

binop_owned!(Add, add);
binop_owned!(Sub, sub);
binop_owned!(Mul, mul);

impl Neg for UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        -&self
    }
}

impl Serialize for UniPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.coeffs.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for UniPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let coeffs = Vec::<Rational>::deserialize(deserializer)?;
        Ok(UniPoly::from_coeffs(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    // ---- div_rem ----

    #[test]
    fn div_rem_exact() {
        // (x^2 - 1) / (x - 1) = (x + 1, 0)
        let f = UniPoly::from_int_coeffs(&[-1, 0, 1]);
        let g = UniPoly::from_int_coeffs(&[-1, 1]);
        let (q, r) = f.div_rem(&g).unwrap();
        assert_eq!(q, UniPoly::from_int_coeffs(&[1, 1]));
        assert!(r.is_zero());
    }

    #[test]
    fn div_rem_monomials() {
        let f = UniPoly::from_int_coeffs(&[0, 0, 0, 1]); // x^3
        let g = UniPoly::from_int_coeffs(&[0, 0, 1]); // x^2
        let (q, r) = f.div_rem(&g).unwrap();
        assert_eq!(q, UniPoly::x());
        assert!(r.is_zero());
    }

    #[test]
    fn div_rem_fixture_numerator() {
        // (5x^6 - 120x^5 + 950x^4 - 1200x^3 - 955x^2 + 1320x) / (x^3 - x)
        let f = UniPoly::from_int_coeffs(&[0, 1320, -955, -1200, 950, -120, 5]);
        let g = UniPoly::from_int_coeffs(&[0, -1, 0, 1]);
        let (q, r) = f.div_rem(&g).unwrap();
        assert_eq!(q, UniPoly::from_int_coeffs(&[-1320, 955, -120, 5]));
        assert!(r.is_zero());
        // reconstruction oracle
        assert_eq!(&(&g * &q) + &r, f);
    }

    #[test]
    fn div_rem_by_zero() {
        let f = UniPoly::x();
        assert_eq!(
            f.div_rem(&UniPoly::zero()),
            Err(ArithError::DivisionByZeroPoly)
        );
    }

    #[test]
    fn div_rem_reconstruction_random() {
        let mut rng = StdRng::seed_from_u64(0x51a9);
        for _ in 0..1000 {
            let df = rng.gen_range(0..=8);
            let dg = rng.gen_range(0..=8);
            let f = random_poly(&mut rng, df);
            let g = random_poly(&mut rng, dg);
            if g.is_zero() {
                continue;
            }
            let (q, r) = f.div_rem(&g).unwrap();
            assert_eq!(&(&g * &q) + &r, f);
            if !r.is_zero() {
                assert!(r.degree().unwrap() < g.degree().unwrap());
            }
        }
    }

    fn random_poly(rng: &mut StdRng, deg: usize) -> UniPoly {
        let coeffs: Vec<Rational> = (0..=deg)
            .map(|_| Rational::from_int(rng.gen_range(-99..=99)))
            .collect();
        UniPoly::from_coeffs(coeffs)
    }

    // ---- squarefree_part ----

    #[test]
    fn squarefree_strips_multiplicity() {
        // (x-1)^2 (x+3) -> (x-1)(x+3) up to constant
        let f = UniPoly::from_int_coeffs(&[-1, 1]).pow(2) * UniPoly::from_int_coeffs(&[3, 1]);
        let sf = f.squarefree_part().unwrap();
        let expect = UniPoly::from_int_coeffs(&[-1, 1]) * UniPoly::from_int_coeffs(&[3, 1]);
        assert_eq!(sf.monic(), expect.monic());
    }

    #[test]
    fn squarefree_cube() {
        let f = UniPoly::from_int_coeffs(&[0, 0, 0, 1]);
        assert_eq!(f.squarefree_part().unwrap(), UniPoly::x());
    }

    #[test]
    fn squarefree_already() {
        // -x^6 + 38x^4 - 361x^2 + 900 is squarefree: gcd with derivative is constant
        let f = UniPoly::from_int_coeffs(&[900, 0, -361, 0, 38, 0, -1]);
        assert_eq!(f.gcd(&f.derivative()).degree(), Some(0));
        let sf = f.squarefree_part().unwrap();
        assert_eq!(sf.monic(), f.monic());
        assert!(f.squarefree_part().is_ok());
        assert_eq!(
            UniPoly::zero().squarefree_part(),
            Err(ArithError::ZeroPolynomial)
        );
    }

    // ---- rational_roots ----

    #[test]
    fn roots_of_fixture_discriminant() {
        let f = UniPoly::from_int_coeffs(&[900, 0, -361, 0, 38, 0, -1]);
        let roots = f.rational_roots().unwrap();
        let expect: Vec<(Rational, usize)> = [-5, -3, -2, 2, 3, 5]
            .iter()
            .map(|&r| (Rational::from_int(r), 1))
            .collect();
        assert_eq!(roots, expect);
        for (r, _) in &roots {
            assert!(f.eval(r).is_zero());
        }
    }

    #[test]
    fn roots_none() {
        let f = UniPoly::from_int_coeffs(&[-2, 0, 0, 1]); // x^3 - 2
        assert!(f.rational_roots().unwrap().is_empty());
    }

    #[test]
    fn roots_with_multiplicity_and_fraction() {
        // (x - 1/2)^2 (x + 3)
        let half = UniPoly::from_coeffs(vec![rat(-1, 2), Rational::one()]);
        let f = half.pow(2) * UniPoly::from_int_coeffs(&[3, 1]);
        let roots = f.rational_roots().unwrap();
        assert_eq!(roots, vec![(Rational::from_int(-3), 1), (rat(1, 2), 2)]);
    }

    #[test]
    fn roots_at_zero() {
        let f = UniPoly::from_int_coeffs(&[0, 0, -1, 1]); // x^2 (x - 1)
        assert_eq!(
            f.rational_roots().unwrap(),
            vec![(Rational::zero(), 2), (Rational::one(), 1)]
        );
    }

    // ---- cubic_discriminant ----

    #[test]
    fn cubic_discriminant_values() {
        assert_eq!(
            UniPoly::from_int_coeffs(&[0, -1, 0, 1])
                .cubic_discriminant()
                .unwrap(),
            Rational::from_int(4)
        );
        assert_eq!(
            UniPoly::from_int_coeffs(&[0, 0, 0, 1])
                .cubic_discriminant()
                .unwrap(),
            Rational::zero()
        );
        assert_eq!(
            UniPoly::from_int_coeffs(&[0, -6, 0, 6])
                .cubic_discriminant()
                .unwrap(),
            Rational::from_int(5184)
        );
        assert!(matches!(
            UniPoly::x().cubic_discriminant(),
            Err(ArithError::WrongDegree { .. })
        ));
    }

    #[test]
    fn discriminant_zero_iff_repeated_root() {
        let mut rng = StdRng::seed_from_u64(0xd15c);
        for _ in 0..200 {
            // planted double root: (x - a)^2 (x - b)
            let a = rng.gen_range(-9..=9);
            let b = rng.gen_range(-9..=9);
            let f = UniPoly::from_int_coeffs(&[-a, 1]).pow(2) * UniPoly::from_int_coeffs(&[-b, 1]);
            assert!(f.cubic_discriminant().unwrap().is_zero());
            // random cubic: discriminant zero iff gcd(f, f') nonconstant
            let g = UniPoly::from_coeffs(vec![
                Rational::from_int(rng.gen_range(-9..=9)),
                Rational::from_int(rng.gen_range(-9..=9)),
                Rational::from_int(rng.gen_range(-9..=9)),
                Rational::from_int(rng.gen_range(1..=9)),
            ]);
            let disc_zero = g.cubic_discriminant().unwrap().is_zero();
            let gcd_nonconst = g.gcd(&g.derivative()).degree() > Some(0);
            assert_eq!(disc_zero, gcd_nonconst);
        }
    }

    // ---- squarefree decomposition ----

    #[test]
    fn yun_decomposition() {
        // (x-1)(x+2)^2 (x-3)^3
        let f = UniPoly::from_int_coeffs(&[-1, 1])
            * UniPoly::from_int_coeffs(&[2, 1]).pow(2)
            * UniPoly::from_int_coeffs(&[-3, 1]).pow(3);
        let parts = f.squarefree_decomposition().unwrap();
        assert_eq!(parts.len(), 3);
        assert_eq!(parts[0], (UniPoly::from_int_coeffs(&[-1, 1]), 1));
        assert_eq!(parts[1], (UniPoly::from_int_coeffs(&[2, 1]), 2));
        assert_eq!(parts[2], (UniPoly::from_int_coeffs(&[-3, 1]), 3));
    }

    // ---- misc ----

    #[test]
    fn integer_model_scaling() {
        let f = UniPoly::from_coeffs(vec![rat(5, 6), rat(-1, 4)]);
        let (ints, scale) = f.integer_model().unwrap();
        assert_eq!(ints, vec![BigInt::from(10), BigInt::from(-3)]);
        assert_eq!(scale, rat(1, 12));
        let back = UniPoly::from_coeffs(ints.into_iter().map(Rational::from_bigint).collect())
            .scalar_mul(&scale);
        assert_eq!(back, f);
    }

    #[test]
    fn display_formats() {
        let f = UniPoly::from_int_coeffs(&[30, 22, -30, 2]);
        assert_eq!(f.to_string(), "2*x^3 - 30*x^2 + 22*x + 30");
        assert_eq!(UniPoly::zero().to_string(), "0");
        assert_eq!(UniPoly::from_int_coeffs(&[0, -1]).display_with("T"), "-T");
    }

    #[test]
    fn serde_roundtrip() {
        let f = UniPoly::from_coeffs(vec![rat(-55, 1), rat(30, 1), rat(1, 24)]);
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(json, r#"["-55","30","1/24"]"#);
        let back: UniPoly = serde_json::from_str(&json).unwrap();
        assert_eq!(back, f);
    }
}
