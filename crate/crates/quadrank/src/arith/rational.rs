//! Arbitrary-precision rationals in canonical reduced form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

/// An exact rational number.
///
/// Always stored reduced with a positive denominator; zero is uniquely `0/1`.
/// Serializes as the decimal string `"n"` or `"n/d"` with `d > 1`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Rational(BigRational::from_integer(n))
    }

    /// `numer/denom` reduced. Panics if `denom` is zero.
    pub fn new(numer: i64, denom: i64) -> Self {
        Rational(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    /// `numer/denom` reduced. Panics if `denom` is zero.
    pub fn new_big(numer: BigInt, denom: BigInt) -> Self {
        Rational(BigRational::new(numer, denom))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "Rational::recip of zero");
        Rational(self.0.recip())
    }

    pub fn pow(&self, exp: i32) -> Self {
        Rational(self.0.pow(exp))
    }

    /// Exact square root, or `None` when `self` is negative or not a perfect
    /// square of a rational.
    pub fn sqrt_exact(&self) -> Option<Rational> {
        if self.is_negative() {
            return None;
        }
        let ns = self.numer().sqrt();
        let ds = self.denom().sqrt();
        if &(&ns * &ns) == self.numer() && &(&ds * &ds) == self.denom() {
            Some(Rational::new_big(ns, ds))
        } else {
            None
        }
    }

    /// True iff `self` is nonzero and the square of a rational, i.e. positive
    /// with both (reduced) numerator and denominator perfect squares.
    pub fn is_nonzero_square(&self) -> bool {
        !self.is_zero() && self.sqrt_exact().is_some()
    }

    /// The squarefree integer `c` such that `self = c * r^2` for some rational
    /// `r`, with the sign of `self`. Panics on zero.
    pub fn square_class(&self) -> BigInt {
        assert!(!self.is_zero(), "square_class of zero");
        // numer * denom has the same class as numer/denom
        squarefree_kernel(&(self.numer() * self.denom()))
    }

    /// Best-effort conversion to `f64` (only used for diagnostics).
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

/// Squarefree part of a nonzero integer, keeping the sign.
fn squarefree_kernel(n: &BigInt) -> BigInt {
    let mut m = n.abs();
    let mut kernel = BigInt::one();
    let mut p = BigInt::from(2);
    while &p * &p <= m {
        let mut e = 0u32;
        while (&m % &p).is_zero() {
            m /= &p;
            e += 1;
        }
        if e % 2 == 1 {
            kernel *= &p;
        }
        p += 1u32;
    }
    kernel *= m; // leftover prime (or 1)
    if n.is_negative() {
        -kernel
    } else {
        kernel
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::zero()
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_bigint(n)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for Rational {
    type Err = String;

    /// Parses `"n"` or `"n/d"`, no whitespace; the result is reduced with a
    /// positive denominator.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (n_str, d_str) = match s.split_once('/') {
            Some((n, d)) => (n, d),
            None => (s, "1"),
        };
        let n = BigInt::from_str(n_str).map_err(|e| format!("bad numerator {n_str:?}: {e}"))?;
        let d = BigInt::from_str(d_str).map_err(|e| format!("bad denominator {d_str:?}: {e}"))?;
        if d.is_zero() {
            return Err(format!("zero denominator in {s:?}"));
        }
        Ok(Rational::new_big(n, d))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! binop_impl {
    ($trait:ident, $method:ident) => {
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                (&self).$method(rhs)
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                self.$method(&rhs)
            }
        }
    };
}

binop_impl!(Add, add);
binop_impl!(Sub, sub);
binop_impl!(Mul, mul);
binop_impl!(Div, div);

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        -&self
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, r| acc + r)
    }
}

impl Product for Rational {
    fn product<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::one(), |acc, r| acc * r)
    }
}
