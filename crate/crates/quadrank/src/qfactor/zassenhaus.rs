//! Factorization of squarefree primitive integer polynomials: good-prime
//! reduction, Hensel lifting to a coefficient bound, and factor-subset
//! recombination certified by exact division.

use super::modp_factor::factor_squarefree_modp;
use crate::modpoly;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Irreducible factors (primitive, positive leading coefficient) of a
/// squarefree primitive `f` with `deg f >= 1`.
pub fn factor_squarefree_primitive(f: &[BigInt]) -> Vec<Vec<BigInt>> {
    let n = f.len() - 1;
    debug_assert!(n >= 1 && !f[n].is_zero());
    if n == 1 {
        return vec![sign_normalize(f.to_vec())];
    }
    let b = f[n].clone();

    // Monicize: ft(y) = b^(n-1) * f(y/b) is monic with integer coefficients,
    // and its factors map back by x -> b*x plus a primitive part.
    let mut ft: Vec<BigInt> = Vec::with_capacity(n + 1);
    for (i, c) in f.iter().enumerate() {
        ft.push(c * b.pow((n - 1 - i.min(n - 1)) as u32));
    }
    ft[n] = BigInt::one();

    let p = good_prime(f, &b);
    let f_mod_p: Vec<u64> = reduce_mod(&ft, p);
    let modular = factor_squarefree_modp(&f_mod_p, p);
    if modular.len() == 1 {
        return vec![sign_normalize(f.to_vec())];
    }

    // Landau-Mignotte style bound for monic divisors of monic ft, padded by
    // the exact-division certificate below.
    let max_abs = ft.iter().map(|c| c.abs()).max().unwrap();
    let bound = (BigInt::from(n + 1).sqrt() + 1) * (BigInt::one() << n) * max_abs;
    let mut l = 1u32;
    let mut pl = BigInt::from(p);
    while pl <= 2 * &bound {
        pl *= p;
        l += 1;
    }

    let lifted = hensel_tree(&reduce_sym(&ft, &pl), &modular, p, l, &pl);
    let tilde_factors = recombine(ft, lifted, &pl);

    // Map factors of ft back to factors of f: g(x) = primitive(gt(b*x)).
    tilde_factors
        .into_iter()
        .map(|gt| {
            let mut bp = BigInt::one();
            let scaled: Vec<BigInt> = gt
                .iter()
                .map(|c| {
                    let v = c * &bp;
                    bp *= &b;
                    v
                })
                .collect();
            sign_normalize(primitive_part(scaled))
        })
        .collect()
}

/// Smallest prime >= 5 not dividing the leading coefficient for which the
/// reduction stays squarefree.
fn good_prime(f: &[BigInt], lc: &BigInt) -> u64 {
    let mut p = 5u64;
    loop {
        if is_prime_u64(p) && !(lc % p).is_zero() {
            let fp = reduce_mod(f, p);
            if modpoly::deg(&fp) == Some(f.len() - 1) && modpoly::is_squarefree(&fp, p) {
                return p;
            }
        }
        p += 2;
    }
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn reduce_mod(f: &[BigInt], p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    let mut out: Vec<u64> = f
        .iter()
        .map(|c| {
            let r = c.mod_floor(&pb);
            u64::try_from(r).unwrap()
        })
        .collect();
    modpoly::trim(&mut out);
    out
}

// ---- BigInt polynomial helpers over Z/m (symmetric representatives) ----

/// Symmetric representative of `x` mod `m`, in (-m/2, m/2].
fn mods(x: &BigInt, m: &BigInt) -> BigInt {
    let mut r = x.mod_floor(m);
    if &(&r * 2) > m {
        r -= m;
    }
    r
}

fn reduce_sym(f: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let mut out: Vec<BigInt> = f.iter().map(|c| mods(c, m)).collect();
    ztrim(&mut out);
    out
}

fn ztrim(f: &mut Vec<BigInt>) {
    while f.last().is_some_and(|c| c.is_zero()) {
        f.pop();
    }
}

fn zmul(f: &[BigInt], g: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); f.len() + g.len() - 1];
    for (i, a) in f.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in g.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    reduce_sym(&out, m)
}

fn zadd(f: &[BigInt], g: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); f.len().max(g.len())];
    for (i, o) in out.iter_mut().enumerate() {
        let a = f.get(i).cloned().unwrap_or_else(BigInt::zero);
        let b = g.get(i).cloned().unwrap_or_else(BigInt::zero);
        *o = a + b;
    }
    reduce_sym(&out, m)
}

fn zsub(f: &[BigInt], g: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); f.len().max(g.len())];
    for (i, o) in out.iter_mut().enumerate() {
        let a = f.get(i).cloned().unwrap_or_else(BigInt::zero);
        let b = g.get(i).cloned().unwrap_or_else(BigInt::zero);
        *o = a - b;
    }
    reduce_sym(&out, m)
}

/// Division by a monic divisor over Z/m; returns (quotient, remainder).
fn zdivrem_monic(f: &[BigInt], g: &[BigInt], m: &BigInt) -> (Vec<BigInt>, Vec<BigInt>) {
    let gd = g.len() - 1;
    debug_assert!(g[gd].is_one());
    if f.len() < g.len() {
        return (Vec::new(), f.to_vec());
    }
    let mut rem: Vec<BigInt> = f.to_vec();
    let qlen = f.len() - gd;
    let mut quot = vec![BigInt::zero(); qlen];
    for i in (0..qlen).rev() {
        let q = mods(&rem[i + gd], m);
        if q.is_zero() {
            continue;
        }
        for (j, gc) in g.iter().enumerate() {
            let v = &rem[i + j] - gc * &q;
            rem[i + j] = mods(&v, m);
        }
        quot[i] = q;
    }
    ztrim(&mut rem);
    (quot, rem)
}

// ---- Hensel lifting ----

/// One quadratic Hensel step: from a factorization and Bezout pair mod p^k to
/// mod p^(2k) (capped at the target modulus).
#[allow(clippy::too_many_arguments)]
fn hensel_step(
    f: &[BigInt],
    g: &[BigInt],
    h: &[BigInt],
    s: &[BigInt],
    t: &[BigInt],
    m2: &BigInt,
) -> (Vec<BigInt>, Vec<BigInt>, Vec<BigInt>, Vec<BigInt>) {
    let e = zsub(f, &zmul(g, h, m2), m2);
    let (q, r) = zdivrem_monic(&zmul(s, &e, m2), h, m2);
    let g1 = zadd(&zadd(g, &zmul(t, &e, m2), m2), &zmul(&q, g, m2), m2);
    let h1 = zadd(h, &r, m2);
    let bezout_err = zsub(
        &zadd(&zmul(s, &g1, m2), &zmul(t, &h1, m2), m2),
        &[BigInt::one()],
        m2,
    );
    let (c, d) = zdivrem_monic(&zmul(s, &bezout_err, m2), &h1, m2);
    let s1 = zsub(s, &d, m2);
    let t1 = zsub(
        &zsub(t, &zmul(t, &bezout_err, m2), m2),
        &zmul(&c, &g1, m2),
        m2,
    );
    (g1, h1, s1, t1)
}

/// Lift the factorization `f = prod(modular)` from mod p to mod p^l by
/// recursive two-way splits. `f` must be monic; all outputs are monic mod p^l.
fn hensel_tree(
    f: &[BigInt],
    modular: &[Vec<u64>],
    p: u64,
    l: u32,
    pl: &BigInt,
) -> Vec<Vec<BigInt>> {
    if modular.len() == 1 {
        return vec![f.to_vec()];
    }
    let mid = modular.len() / 2;
    let (left, right) = modular.split_at(mid);
    let g0: Vec<u64> = left
        .iter()
        .fold(vec![1u64], |acc, m| modpoly::mul(&acc, m, p));
    let h0: Vec<u64> = right
        .iter()
        .fold(vec![1u64], |acc, m| modpoly::mul(&acc, m, p));
    let (s0, t0) = bezout_mod_p(&g0, &h0, p);

    let lift = |v: &[u64]| -> Vec<BigInt> { v.iter().map(|&c| BigInt::from(c)).collect() };
    let (mut g, mut h, mut s, mut t) = (lift(&g0), lift(&h0), lift(&s0), lift(&t0));
    let mut k = 1u32;
    while k < l {
        let k2 = (2 * k).min(l);
        let m2 = BigInt::from(p).pow(k2);
        let (g1, h1, s1, t1) = hensel_step(&reduce_sym(f, &m2), &g, &h, &s, &t, &m2);
        (g, h, s, t) = (g1, h1, s1, t1);
        k = k2;
    }
    let mut out = hensel_tree(&reduce_sym(&g, pl), left, p, l, pl);
    out.extend(hensel_tree(&reduce_sym(&h, pl), right, p, l, pl));
    out
}

/// Extended Euclid over F_p[x]: (s, t) with s*g + t*h = 1 for coprime g, h.
fn bezout_mod_p(g: &[u64], h: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let (mut r0, mut r1) = (g.to_vec(), h.to_vec());
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = modpoly::divrem(&r0, &r1, p);
        let snew = modpoly::sub(&s0, &modpoly::mul(&q, &s1, p), p);
        let tnew = modpoly::sub(&t0, &modpoly::mul(&q, &t1, p), p);
        (r0, r1) = (r1, r);
        (s0, s1) = (s1, snew);
        (t0, t1) = (t1, tnew);
    }
    debug_assert_eq!(modpoly::deg(&r0), Some(0), "inputs not coprime mod p");
    let inv = modpoly::modinv(r0[0], p);
    (
        modpoly::scalar_mul(&s0, inv, p),
        modpoly::scalar_mul(&t0, inv, p),
    )
}

// ---- Recombination ----

/// Search subsets of lifted factors whose product (in symmetric range)
/// divides `ft` exactly over Z. Emits irreducible monic integer factors.
fn recombine(mut ft: Vec<BigInt>, lifted: Vec<Vec<BigInt>>, pl: &BigInt) -> Vec<Vec<BigInt>> {
    let mut pool = lifted;
    let mut out: Vec<Vec<BigInt>> = Vec::new();
    let mut size = 1usize;
    'sizes: while 2 * size <= pool.len() {
        let mut combo = FactorCombos::new(pool.len(), size);
        while let Some(subset) = combo.next() {
            let cand = subset
                .iter()
                .fold(vec![BigInt::one()], |acc, &i| zmul(&acc, &pool[i], pl));
            if let Some(quot) = exact_divide_z(&ft, &cand) {
                out.push(cand);
                ft = quot;
                for &i in subset.iter().rev() {
                    pool.remove(i);
                }
                continue 'sizes;
            }
        }
        size += 1;
    }
    if ft.len() > 1 {
        out.push(ft);
    }
    out
}

/// Exact division over Z by a monic candidate; `None` if any step fails.
fn exact_divide_z(f: &[BigInt], g: &[BigInt]) -> Option<Vec<BigInt>> {
    if g.len() > f.len() || g.is_empty() || !g.last().unwrap().is_one() {
        return None;
    }
    let gd = g.len() - 1;
    let mut rem = f.to_vec();
    let qlen = f.len() - gd;
    let mut quot = vec![BigInt::zero(); qlen];
    for i in (0..qlen).rev() {
        let q = rem[i + gd].clone();
        for (j, gc) in g.iter().enumerate() {
            rem[i + j] -= gc * &q;
        }
        quot[i] = q;
    }
    if rem.iter().all(|c| c.is_zero()) {
        Some(quot)
    } else {
        None
    }
}

fn primitive_part(f: Vec<BigInt>) -> Vec<BigInt> {
    let mut content = BigInt::zero();
    for c in &f {
        content = content.gcd(c);
    }
    f.into_iter().map(|c| c / &content).collect()
}

fn sign_normalize(mut f: Vec<BigInt>) -> Vec<BigInt> {
    if f.last().is_some_and(|c| c.is_negative()) {
        for c in &mut f {
            *c = -&*c;
        }
    }
    f
}

/// Iterator over k-subsets of 0..n in lexicographic order.
struct FactorCombos {
    n: usize,
    idx: Vec<usize>,
    started: bool,
}

impl FactorCombos {
    fn new(n: usize, k: usize) -> Self {
        FactorCombos {
            n,
            idx: (0..k).collect(),
            started: false,
        }
    }

    fn next(&mut self) -> Option<&[usize]> {
        let k = self.idx.len();
        if k > self.n {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.idx);
        }
        let mut i = k;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if self.idx[i] < self.n - (k - i) {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                return Some(&self.idx);
            }
        }
    }
}
