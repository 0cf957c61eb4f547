//! Factorization of monic squarefree polynomials over F_p.
//!
//! Distinct-degree splitting via Frobenius powers, then equal-degree
//! splitting with a deterministic sweep of splitter polynomials so the whole
//! pipeline is reproducible.

use crate::modpoly::{deg, divrem, gcd, monic, pow_mod, sub};

/// Monic irreducible factors of a monic squarefree `f` mod `p`, sorted by
/// (degree, coefficients).
pub fn factor_squarefree_modp(f: &[u64], p: u64) -> Vec<Vec<u64>> {
    debug_assert!(crate::modpoly::is_squarefree(f, p));
    let mut out: Vec<Vec<u64>> = Vec::new();
    let mut rem = monic(f, p);
    let mut h = divrem(&[0, 1], &rem, p).1; // x mod rem
    let mut d = 0usize;
    while let Some(rd) = deg(&rem) {
        if rd == 0 {
            break;
        }
        d += 1;
        if 2 * d > rd {
            out.push(rem.clone());
            break;
        }
        h = pow_mod(&h, p as u128, &rem, p);
        let g = gcd(&sub(&h, &[0, 1], p), &rem, p);
        if deg(&g) > Some(0) {
            out.extend(equal_degree_factor(&g, d, p));
            rem = divrem(&rem, &g, p).0;
            h = divrem(&h, &rem, p).1;
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// Split `g`, a product of distinct monic irreducibles all of degree `d`.
fn equal_degree_factor(g: &[u64], d: usize, p: u64) -> Vec<Vec<u64>> {
    if deg(g) == Some(d) {
        return vec![g.to_vec()];
    }
    let exponent = (checked_pow(p, d) - 1) / 2;
    // Sweep monic splitters of increasing degree. Some splitter of degree
    // < deg g always separates a pair of factors (CRT gives one), so the
    // sweep terminates.
    for splitter_deg in 1..deg(g).unwrap() {
        let mut coeffs = vec![0u64; splitter_deg + 1];
        coeffs[splitter_deg] = 1;
        loop {
            let w = gcd(&coeffs, g, p);
            if let Some(wd) = deg(&w) {
                if wd > 0 && wd < deg(g).unwrap() {
                    return split_on(g, &w, d, p);
                }
            }
            let t = pow_mod(&coeffs, exponent, g, p);
            let w = gcd(&sub(&t, &[1], p), g, p);
            if let Some(wd) = deg(&w) {
                if wd > 0 && wd < deg(g).unwrap() {
                    return split_on(g, &w, d, p);
                }
            }
            if !next_coeffs(&mut coeffs, p) {
                break;
            }
        }
    }
    unreachable!("equal-degree splitting exhausted all candidates");
}

fn split_on(g: &[u64], w: &[u64], d: usize, p: u64) -> Vec<Vec<u64>> {
    let (q, r) = divrem(g, w, p);
    debug_assert!(r.is_empty());
    let mut out = equal_degree_factor(w, d, p);
    out.extend(equal_degree_factor(&q, d, p));
    out
}

/// Advance the non-leading coefficients like an odometer; false when wrapped.
fn next_coeffs(coeffs: &mut [u64], p: u64) -> bool {
    let n = coeffs.len() - 1; // keep the poly monic
    for c in coeffs.iter_mut().take(n) {
        *c += 1;
        if *c < p {
            return true;
        }
        *c = 0;
    }
    false
}

fn checked_pow(p: u64, d: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..d {
        acc = acc.checked_mul(p as u128).expect("p^d overflows u128");
    }
    acc
}
