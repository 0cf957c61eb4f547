//! Polynomial arithmetic over F_p, used by the factorization and
//! character-sum kernels.
//!
//! Polynomials are `Vec<u64>` in ascending power order with entries reduced
//! mod `p` and no trailing zeros. The modulus is passed explicitly; callers
//! guarantee `p` is an odd prime small enough that `(p-1)^2` fits in `u64`
//! (`p < 2^32`).

/// Strip trailing zeros in place.
pub fn trim(f: &mut Vec<u64>) {
    while f.last() == Some(&0) {
        f.pop();
    }
}

pub fn deg(f: &[u64]) -> Option<usize> {
    f.len().checked_sub(1)
}

pub fn modinv(a: u64, p: u64) -> u64 {
    // extended Euclid on signed values
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p as i128, (a % p) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    assert!(r == 1, "modinv of non-unit {a} mod {p}");
    t.rem_euclid(p as i128) as u64
}

pub fn sub(f: &[u64], g: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; f.len().max(g.len())];
    for (i, o) in out.iter_mut().enumerate() {
        let a = f.get(i).copied().unwrap_or(0);
        let b = g.get(i).copied().unwrap_or(0);
        *o = (a + p - b) % p;
    }
    trim(&mut out);
    out
}

pub fn mul(f: &[u64], g: &[u64], p: u64) -> Vec<u64> {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; f.len() + g.len() - 1];
    for (i, &a) in f.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (j, &b) in g.iter().enumerate() {
            out[i + j] = (out[i + j] + a * b) % p;
        }
    }
    trim(&mut out);
    out
}

pub fn scalar_mul(f: &[u64], s: u64, p: u64) -> Vec<u64> {
    let mut out: Vec<u64> = f.iter().map(|&c| c * s % p).collect();
    trim(&mut out);
    out
}

pub fn monic(f: &[u64], p: u64) -> Vec<u64> {
    match f.last() {
        None | Some(1) => f.to_vec(),
        Some(&lc) => scalar_mul(f, modinv(lc, p), p),
    }
}

/// `(quotient, remainder)` with `deg r < deg g`; `g` must be nonzero.
pub fn divrem(f: &[u64], g: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let gd = deg(g).expect("division by zero polynomial mod p");
    let fd = match deg(f) {
        Some(d) if d >= gd => d,
        _ => return (Vec::new(), f.to_vec()),
    };
    let lc_inv = modinv(*g.last().unwrap(), p);
    let mut rem = f.to_vec();
    let mut quot = vec![0u64; fd - gd + 1];
    for i in (0..quot.len()).rev() {
        let q = rem[i + gd] * lc_inv % p;
        if q == 0 {
            continue;
        }
        quot[i] = q;
        for (j, &gc) in g.iter().enumerate() {
            rem[i + j] = (rem[i + j] + p - gc * q % p) % p;
        }
    }
    trim(&mut rem);
    (quot, rem)
}

/// Monic gcd; zero if both inputs are zero.
pub fn gcd(f: &[u64], g: &[u64], p: u64) -> Vec<u64> {
    let mut a = f.to_vec();
    let mut b = g.to_vec();
    while !b.is_empty() {
        let (_, r) = divrem(&a, &b, p);
        a = b;
        b = r;
    }
    monic(&a, p)
}

pub fn derivative(f: &[u64], p: u64) -> Vec<u64> {
    let mut out: Vec<u64> = f
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| (i as u64 % p) * c % p)
        .collect();
    trim(&mut out);
    out
}

pub fn eval(f: &[u64], x: u64, p: u64) -> u64 {
    let mut acc = 0u64;
    for &c in f.iter().rev() {
        acc = (acc * x + c) % p;
    }
    acc
}

/// `base^exp mod (m, p)` by square and multiply.
pub fn pow_mod(base: &[u64], mut exp: u128, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = divrem(base, m, p).1;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = divrem(&mul(&acc, &b, p), m, p).1;
        }
        exp >>= 1;
        if exp > 0 {
            b = divrem(&mul(&b, &b, p), m, p).1;
        }
    }
    acc
}

pub fn is_squarefree(f: &[u64], p: u64) -> bool {
    deg(&gcd(f, &derivative(f, p), p)) == Some(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn add(f: &[u64], g: &[u64], p: u64) -> Vec<u64> {
        let mut out = vec![0u64; f.len().max(g.len())];
        for (i, o) in out.iter_mut().enumerate() {
            *o = (f.get(i).copied().unwrap_or(0) + g.get(i).copied().unwrap_or(0)) % p;
        }
        trim(&mut out);
        out
    }

    #[test]
    fn inverse() {
        for p in [5u64, 7, 97] {
            for a in 1..p {
                assert_eq!(a * modinv(a, p) % p, 1);
            }
        }
    }

    #[test]
    fn division_reconstructs() {
        let p = 13;
        let f = vec![1, 2, 3, 4, 5];
        let g = vec![7, 0, 1];
        let (q, r) = divrem(&f, &g, p);
        let back = add(&mul(&q, &g, p), &r, p);
        assert_eq!(back, f);
    }

    #[test]
    fn gcd_of_product() {
        let p = 11;
        let a = vec![1, 1]; // x + 1
        let b = vec![3, 1]; // x + 3
        let fa = mul(&a, &b, p);
        let fb = mul(&a, &[5, 1], p);
        assert_eq!(gcd(&fa, &fb, p), a);
    }

    #[test]
    fn frobenius_power() {
        // x^p = x mod (x^2 - x) trivially splits; sanity: x^5 mod x^2+1 over F_5
        let p = 5;
        let m = vec![1, 0, 1];
        let xp = pow_mod(&[0, 1], p as u128, &m, p);
        // x^2 = -1, x^4 = 1, x^5 = x -> x^5 mod (x^2+1) = x... over F_5: x^5 = x*(x^2)^2 = x
        assert_eq!(xp, vec![0, 1]);
    }

    #[test]
    fn squarefree_detection() {
        let p = 7;
        let sq = mul(&[1, 1], &[1, 1], p); // (x+1)^2
        assert!(!is_squarefree(&sq, p));
        assert!(is_squarefree(&[1, 0, 1], p)); // x^2 + 1 mod 7
    }
}
