//! Bundled reference surfaces shared by the rank, scan, and construction
//! tests.
//!
//! The three W-surfaces share `B = 2x^3 - 30x^2 + 22x + 30` and the conic
//! discriminant `D = -(x^2-4)(x^2-9)(x^2-25)`; they differ only in how the
//! scale is split between `A` and `C`, which moves roots between the square
//! and non-square classes and so realizes ranks 0, 1 and 2. `g1` is an
//! integral surface whose `D` has no rational roots at all.

use crate::arith::{Rational, UniPoly};
use crate::surface::QuadraticSurface;

fn shared_b() -> UniPoly {
    UniPoly::from_int_coeffs(&[30, 22, -30, 2])
}

fn c_kernel() -> UniPoly {
    UniPoly::from_int_coeffs(&[-1320, 955, -120, 5])
}

fn w_surface(a_scale: i64) -> QuadraticSurface {
    let a = UniPoly::from_int_coeffs(&[0, -1, 0, 1]).scalar_mul(&Rational::from_int(a_scale));
    let c = c_kernel().scalar_mul(&Rational::new(1, 4 * a_scale));
    QuadraticSurface::from_abc(&a, &shared_b(), &c).expect("fixture degrees")
}

/// Exact rank 0: `A = x^3 - x`, `C = (5x^3 - 120x^2 + 955x - 1320)/4`.
pub fn w0() -> QuadraticSurface {
    w_surface(1)
}

/// Exact rank 1 with `S1 = {5}`: `A = 30x^3 - 30x`.
pub fn w1() -> QuadraticSurface {
    w_surface(30)
}

/// Exact rank 2 with `S1 = {2, 3}`: `A = 6x^3 - 6x`.
pub fn w2() -> QuadraticSurface {
    w_surface(6)
}

/// `y^2 = (T^2+1)x^3 - T^2 x + T`: valid, with `D = -4x^6 + 4x^4 + 1`
/// free of rational roots.
pub fn g1() -> QuadraticSurface {
    let a = UniPoly::from_int_coeffs(&[0, -1, 0, 1]);
    let b = UniPoly::one();
    let c = UniPoly::from_int_coeffs(&[0, 0, 0, 1]);
    QuadraticSurface::from_abc(&a, &b, &c).expect("fixture degrees")
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `D = B^2 - 4AC` must re-expand to `-(x^2-4)(x^2-9)(x^2-25)` for every
    /// W-fixture before anything downstream trusts them.
    #[test]
    fn shared_discriminant_re_expands() {
        let expect = -&(UniPoly::from_int_coeffs(&[-4, 0, 1])
            * UniPoly::from_int_coeffs(&[-9, 0, 1])
            * UniPoly::from_int_coeffs(&[-25, 0, 1]));
        assert_eq!(
            expect,
            UniPoly::from_int_coeffs(&[900, 0, -361, 0, 38, 0, -1])
        );
        for s in [w0(), w1(), w2()] {
            assert_eq!(s.discriminant_x(), expect);
        }
    }

    #[test]
    fn w2_matches_its_stated_columns() {
        let (a, b, c) = w2().abc();
        assert_eq!(a, UniPoly::from_int_coeffs(&[0, -6, 0, 6]));
        assert_eq!(b, shared_b());
        assert_eq!(c, c_kernel().scalar_mul(&Rational::new(1, 24)));
    }

    #[test]
    fn a_values_at_roots() {
        // the square classes at +-2, +-3, +-5 that drive the three ranks
        let (a0, _, _) = w0().abc();
        let (a1, _, _) = w1().abc();
        let (a2, _, _) = w2().abc();
        let at = |p: &UniPoly, x: i64| p.eval(&Rational::from_int(x));
        assert_eq!(at(&a2, 2), Rational::from_int(36));
        assert_eq!(at(&a2, 3), Rational::from_int(144));
        assert_eq!(at(&a2, 5), Rational::from_int(720));
        assert_eq!(at(&a1, 5), Rational::from_int(3600));
        for v in [2i64, 3, 5] {
            assert_eq!(at(&a0, -v), -at(&a0, v));
        }
    }
}
