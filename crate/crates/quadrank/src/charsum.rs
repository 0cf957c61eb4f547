//! Quadratic-character kernels over prime fields.
//!
//! A [`PrimeField`] carries the full table of the quadratic character chi
//! mod p, built once by marking squares; everything downstream is O(1)
//! lookups, which is what keeps the per-prime scans linear. Closed forms for
//! quadratic sums, the cubic-sum classification, Frobenius traces and root
//! counts all live here.

use crate::arith::UniPoly;
use crate::modpoly;
use num_bigint::BigInt;
use num_integer::Integer;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharSumError {
    #[error("{0} is not an odd prime >= 5")]
    NotOddPrime(u64),
    #[error("leading coefficient vanishes mod p: not a cubic")]
    NotCubic,
    #[error("cubic has a repeated root mod p: no Frobenius trace")]
    SingularCubic,
    #[error("polynomial reduces to zero mod p")]
    ZeroReduction,
}

/// gcd(f, f') classification of a cubic mod p.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CubicCase {
    Squarefree,
    DoubleRoot,
    TripleRoot,
}

/// A prime p >= 5 with the quadratic character table chi(0..p-1):
/// chi(0) = 0, chi(square) = +1, chi(non-square) = -1.
#[derive(Debug, Clone)]
pub struct PrimeField {
    p: u64,
    chi: Vec<i8>,
}

impl PrimeField {
    /// Build the character table by marking k^2 mod p for k = 1..=(p-1)/2.
    /// Character machinery excludes 2 and 3: chi degenerates at 2 and the
    /// cubic classification needs 2 and 3 invertible.
    pub fn new(p: u64) -> Result<PrimeField, CharSumError> {
        if p < 5 || !is_prime(p) {
            return Err(CharSumError::NotOddPrime(p));
        }
        let mut chi = vec![-1i8; p as usize];
        chi[0] = 0;
        for k in 1..=(p - 1) / 2 {
            chi[(k * k % p) as usize] = 1;
        }
        Ok(PrimeField { p, chi })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// chi of a residue already reduced mod p.
    #[inline]
    pub fn chi(&self, a: u64) -> i64 {
        self.chi[a as usize] as i64
    }

    /// Legendre symbol of an arbitrary integer.
    pub fn legendre(&self, a: i64) -> i64 {
        self.chi(a.rem_euclid(self.p as i64) as u64)
    }

    /// Closed form for `sum_t chi(a t^2 + b t + c)` over all t in F_p:
    /// `p * chi(c)` when a = b = 0 (constant summand, outside the quadratic
    /// case), else `(p-1) chi(a)` when p | b^2 - 4ac, else `-chi(a)`.
    /// `chi(0) = 0` makes the a = 0, b != 0 case come out right: a full
    /// linear orbit sums to zero.
    pub fn quad_char_sum(&self, a: i64, b: i64, c: i64) -> i64 {
        let p = self.p;
        let a = a.rem_euclid(p as i64) as u64;
        let b = b.rem_euclid(p as i64) as u64;
        let c = c.rem_euclid(p as i64) as u64;
        if a == 0 && b == 0 {
            return p as i64 * self.chi(c);
        }
        let disc = (b * b % p + 4 * p - 4 * a % p * c % p) % p;
        if disc == 0 {
            (p as i64 - 1) * self.chi(a)
        } else {
            -self.chi(a)
        }
    }

    /// `sum_x chi(f(x))` for a cubic f mod p, by direct table sweep, together
    /// with the gcd(f, f') case: squarefree (the sum is minus the Frobenius
    /// trace of `y^2 = f`), double root, or triple root (the sum vanishes).
    pub fn cubic_char_sum(&self, f: &[i64; 4]) -> Result<(i64, CubicCase), CharSumError> {
        let p = self.p;
        let fp: Vec<u64> = f.iter().map(|&c| c.rem_euclid(p as i64) as u64).collect();
        if fp[3] == 0 {
            return Err(CharSumError::NotCubic);
        }
        let g = modpoly::gcd(&fp, &modpoly::derivative(&fp, p), p);
        let case = match modpoly::deg(&g) {
            Some(0) => CubicCase::Squarefree,
            Some(1) => CubicCase::DoubleRoot,
            Some(2) => CubicCase::TripleRoot,
            d => unreachable!("gcd of cubic with derivative has degree {d:?}"),
        };
        let mut sum = 0i64;
        for x in 0..p {
            sum += self.chi(modpoly::eval(&fp, x, p));
        }
        Ok((sum, case))
    }

    /// Frobenius trace `a_p = -sum_x chi(f(x))` of `y^2 = f(x)` for a
    /// squarefree cubic f mod p. Satisfies the Hasse bound `|a_p| <= 2 sqrt p`.
    pub fn frobenius_trace(&self, f: &[i64; 4]) -> Result<i64, CharSumError> {
        let (sum, case) = self.cubic_char_sum(f)?;
        if case != CubicCase::Squarefree {
            return Err(CharSumError::SingularCubic);
        }
        Ok(-sum)
    }

    /// Number of distinct roots of `m` in F_p, by table sweep. `m` is cleared
    /// to its integer form first; the reduction must not vanish identically
    /// (and p must not divide a denominator).
    pub fn count_roots(&self, m: &UniPoly) -> Result<u64, CharSumError> {
        let p = self.p;
        let pb = BigInt::from(p);
        let mut den = BigInt::from(1u32);
        for c in m.coeffs() {
            den = den.lcm(c.denom());
        }
        if (&den % &pb) == BigInt::from(0u32) {
            return Err(CharSumError::ZeroReduction);
        }
        let mut fp: Vec<u64> = m
            .coeffs()
            .iter()
            .map(|c| {
                let n = c.numer() * (&den / c.denom());
                u64::try_from(n.mod_floor(&pb)).unwrap()
            })
            .collect();
        modpoly::trim(&mut fp);
        if fp.is_empty() {
            return Err(CharSumError::ZeroReduction);
        }
        let mut count = 0u64;
        for x in 0..p {
            if modpoly::eval(&fp, x, p) == 0 {
                count += 1;
            }
        }
        Ok(count)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    #[test]
    fn table_construction() {
        let f5 = PrimeField::new(5).unwrap();
        assert_eq!(f5.legendre(2), -1);
        assert_eq!(f5.legendre(0), 0);
        assert_eq!(f5.legendre(4), 1);
        assert!(PrimeField::new(4).is_err());
        assert!(PrimeField::new(3).is_err());
        assert!(PrimeField::new(2).is_err());
    }

    #[test]
    fn table_invariants() {
        let mut rng = StdRng::seed_from_u64(0xc41);
        for p in [5u64, 7, 11, 97, 101] {
            let f = PrimeField::new(p).unwrap();
            let total: i64 = (0..p).map(|a| f.chi(a)).sum();
            assert_eq!(total, 0);
            for _ in 0..1000 {
                let a = rng.gen_range(1..p);
                let b = rng.gen_range(1..p);
                assert_eq!(f.chi(a * b % p), f.chi(a) * f.chi(b));
            }
        }
    }

    #[test]
    fn quad_sum_examples() {
        let f5 = PrimeField::new(5).unwrap();
        assert_eq!(f5.quad_char_sum(1, 0, 0), 4);
        assert_eq!(f5.quad_char_sum(1, 0, 1), -1);
        assert_eq!(f5.quad_char_sum(0, 0, 3), -5);
    }

    #[test]
    fn quad_sum_matches_sweep_small_primes() {
        for p in [5u64, 7, 11, 13] {
            let f = PrimeField::new(p).unwrap();
            for a in 0..p as i64 {
                for b in 0..p as i64 {
                    for c in 0..p as i64 {
                        let sweep: i64 = (0..p as i64)
                            .map(|t| f.legendre(a * t * t + b * t + c))
                            .sum();
                        assert_eq!(f.quad_char_sum(a, b, c), sweep, "p={p} a={a} b={b} c={c}");
                    }
                }
            }
        }
    }

    #[test]
    fn cubic_sum_cases() {
        let f5 = PrimeField::new(5).unwrap();
        assert_eq!(
            f5.cubic_char_sum(&[0, 0, 0, 1]).unwrap(),
            (0, CubicCase::TripleRoot)
        );
        assert_eq!(
            f5.cubic_char_sum(&[0, 0, 1, 1]).unwrap(),
            (-1, CubicCase::DoubleRoot)
        );
        assert_eq!(
            f5.cubic_char_sum(&[0, -1, 0, 1]).unwrap(),
            (2, CubicCase::Squarefree)
        );
        assert_eq!(
            f5.cubic_char_sum(&[1, 0, 0, 5]),
            Err(CharSumError::NotCubic)
        );
    }

    #[test]
    fn double_root_closed_form() {
        // for f = lc (x - r)^2 (x - s): sum = -chi(q(r)) with q = f/(x-r)^2
        let mut rng = StdRng::seed_from_u64(0xdb1);
        for p in [5u64, 7, 11, 13, 17] {
            let f = PrimeField::new(p).unwrap();
            for _ in 0..50 {
                let r = rng.gen_range(0..p);
                let s = rng.gen_range(0..p);
                if r == s {
                    continue;
                }
                let lc = rng.gen_range(1..p);
                let sq = modpoly::mul(&[p - r, 1], &[p - r, 1], p);
                let fp = modpoly::scalar_mul(&modpoly::mul(&sq, &[p - s, 1], p), lc, p);
                let arr = [fp[0] as i64, fp[1] as i64, fp[2] as i64, fp[3] as i64];
                let (value, case) = f.cubic_char_sum(&arr).unwrap();
                assert_eq!(case, CubicCase::DoubleRoot);
                let q = modpoly::scalar_mul(&[p - s, 1], lc, p);
                assert_eq!(value, -f.chi(modpoly::eval(&q, r, p)));
            }
        }
    }

    #[test]
    fn frobenius_trace_examples() {
        let f5 = PrimeField::new(5).unwrap();
        assert_eq!(f5.frobenius_trace(&[0, -1, 0, 1]).unwrap(), -2);
        assert_eq!(f5.frobenius_trace(&[1, 0, 0, 1]).unwrap(), 0);
        let f7 = PrimeField::new(7).unwrap();
        assert_eq!(f7.frobenius_trace(&[0, -1, 0, 1]).unwrap(), 0);
        assert_eq!(
            f5.frobenius_trace(&[0, 0, 0, 1]),
            Err(CharSumError::SingularCubic)
        );
    }

    #[test]
    fn trace_matches_point_count() {
        // independent count: tally y^2 hits per value, no character logic
        let mut rng = StdRng::seed_from_u64(0xacc7);
        for p in [5u64, 7, 11, 13, 17, 19, 23] {
            let f = PrimeField::new(p).unwrap();
            let mut sqrt_count = vec![0i64; p as usize];
            for y in 0..p {
                sqrt_count[(y * y % p) as usize] += 1;
            }
            for _ in 0..40 {
                let cubic = [
                    rng.gen_range(0..p as i64),
                    rng.gen_range(0..p as i64),
                    rng.gen_range(0..p as i64),
                    rng.gen_range(1..p as i64),
                ];
                match f.frobenius_trace(&cubic) {
                    Ok(ap) => {
                        let fp: Vec<u64> = cubic
                            .iter()
                            .map(|&c| c.rem_euclid(p as i64) as u64)
                            .collect();
                        let affine: i64 = (0..p)
                            .map(|x| sqrt_count[modpoly::eval(&fp, x, p) as usize])
                            .sum();
                        // p + 1 - #E with #E = affine + point at infinity
                        assert_eq!(ap, p as i64 + 1 - (affine + 1));
                        let hasse = 2.0 * (p as f64).sqrt();
                        assert!((ap as f64).abs() <= hasse);
                    }
                    Err(CharSumError::SingularCubic) => {}
                    Err(e) => panic!("{e}"),
                }
            }
        }
    }

    #[test]
    fn root_counts() {
        let f5 = PrimeField::new(5).unwrap();
        let f7 = PrimeField::new(7).unwrap();
        let x2p1 = UniPoly::from_int_coeffs(&[1, 0, 1]);
        assert_eq!(f5.count_roots(&x2p1).unwrap(), 2);
        assert_eq!(f7.count_roots(&x2p1).unwrap(), 0);
        let d = UniPoly::from_int_coeffs(&[900, 0, -361, 0, 38, 0, -1]);
        let f11 = PrimeField::new(11).unwrap();
        assert_eq!(f11.count_roots(&d).unwrap(), 6);
        // reductions that vanish are rejected
        assert_eq!(
            f5.count_roots(&UniPoly::from_int_coeffs(&[5, 10])),
            Err(CharSumError::ZeroReduction)
        );
        assert_eq!(
            f5.count_roots(&UniPoly::from_coeffs(vec![crate::arith::Rational::new(
                1, 5
            )])),
            Err(CharSumError::ZeroReduction)
        );
    }
}
