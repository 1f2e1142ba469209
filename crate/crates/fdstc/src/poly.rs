//! Internal polynomial helpers over the rationals and over prime fields.
//!
//! Polynomials are coefficient vectors in ascending degree order. These are
//! deliberately small and allocation-happy; every caller works with degrees
//! below ten.

use num::{BigInt, BigRational, One, Signed, Zero};

pub type QPoly = Vec<BigRational>;

pub fn q_from_int(coeffs: &[i64]) -> QPoly {
    coeffs
        .iter()
        .map(|&c| BigRational::from_integer(BigInt::from(c)))
        .collect()
}

pub fn q_trim(p: &mut QPoly) {
    while p.len() > 1 && p.last().map(|c| c.is_zero()).unwrap_or(false) {
        p.pop();
    }
    if p.is_empty() {
        p.push(BigRational::zero());
    }
}

pub fn q_is_zero(p: &QPoly) -> bool {
    p.iter().all(|c| c.is_zero())
}

pub fn q_deg(p: &QPoly) -> usize {
    let mut d = p.len();
    while d > 1 && p[d - 1].is_zero() {
        d -= 1;
    }
    d - 1
}

pub fn q_add(a: &QPoly, b: &QPoly) -> QPoly {
    let n = a.len().max(b.len());
    let mut r = vec![BigRational::zero(); n];
    for (i, c) in a.iter().enumerate() {
        r[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        r[i] += c;
    }
    q_trim(&mut r);
    r
}

pub fn q_mul(a: &QPoly, b: &QPoly) -> QPoly {
    let mut r = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                r[i + j] += x * y;
            }
        }
    }
    q_trim(&mut r);
    r
}

/// Remainder of `a` modulo the monic polynomial `m`.
pub fn q_rem(a: &QPoly, m: &QPoly) -> QPoly {
    let dm = q_deg(m);
    let mut r = a.clone();
    q_trim(&mut r);
    while q_deg(&r) >= dm && !q_is_zero(&r) {
        let dr = q_deg(&r);
        let c = r[dr].clone();
        for i in 0..=dm {
            let idx = dr - dm + i;
            let sub = &c * &m[i];
            r[idx] -= sub;
        }
        q_trim(&mut r);
        if dr == 0 {
            break;
        }
    }
    r.resize(dm, BigRational::zero());
    r
}

/// Extended Euclid in Q[x]: returns (g, s, t) with s*a + t*b = g, g monic.
pub fn q_xgcd(a: &QPoly, b: &QPoly) -> (QPoly, QPoly, QPoly) {
    let zero = || vec![BigRational::zero()];
    let one = || vec![BigRational::one()];
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (one(), zero());
    let (mut t0, mut t1) = (zero(), one());
    q_trim(&mut r0);
    q_trim(&mut r1);
    while !q_is_zero(&r1) {
        let (q, r) = q_divmod(&r0, &r1);
        let ns = q_sub(&s0, &q_mul(&q, &s1));
        let nt = q_sub(&t0, &q_mul(&q, &t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = ns;
        t0 = t1;
        t1 = nt;
    }
    // normalise so gcd is monic
    let lead = r0[q_deg(&r0)].clone();
    if !lead.is_zero() && !lead.is_one() {
        let inv = lead.recip();
        for c in r0.iter_mut().chain(s0.iter_mut()).chain(t0.iter_mut()) {
            *c *= &inv;
        }
    }
    (r0, s0, t0)
}

pub fn q_sub(a: &QPoly, b: &QPoly) -> QPoly {
    let n = a.len().max(b.len());
    let mut r = vec![BigRational::zero(); n];
    for (i, c) in a.iter().enumerate() {
        r[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        r[i] -= c;
    }
    q_trim(&mut r);
    r
}

pub fn q_divmod(a: &QPoly, b: &QPoly) -> (QPoly, QPoly) {
    let db = q_deg(b);
    let lead = b[db].clone();
    let mut r = a.clone();
    q_trim(&mut r);
    if q_deg(&r) < db && q_is_zero(&r) {
        return (vec![BigRational::zero()], r);
    }
    let mut q = vec![BigRational::zero(); q_deg(&r).saturating_sub(db) + 1];
    while !q_is_zero(&r) && q_deg(&r) >= db {
        let dr = q_deg(&r);
        let c = &r[dr] / &lead;
        q[dr - db] = c.clone();
        for i in 0..=db {
            let sub = &c * &b[i];
            r[dr - db + i] -= sub;
        }
        q_trim(&mut r);
        if dr == 0 {
            break;
        }
    }
    q_trim(&mut q);
    (q, r)
}

// ---------------------------------------------------------------------------
// Polynomials over F_q, q an odd (or =2) prime fitting in u64.
// ---------------------------------------------------------------------------

pub type FqPoly = Vec<u64>;

pub fn fq_trim(p: &mut FqPoly) {
    while p.len() > 1 && *p.last().unwrap() == 0 {
        p.pop();
    }
    if p.is_empty() {
        p.push(0);
    }
}

pub fn fq_deg(p: &FqPoly) -> usize {
    let mut d = p.len();
    while d > 1 && p[d - 1] == 0 {
        d -= 1;
    }
    d - 1
}

pub fn fq_is_zero(p: &FqPoly) -> bool {
    p.iter().all(|&c| c == 0)
}

pub fn fq_mul(a: &FqPoly, b: &FqPoly, q: u64) -> FqPoly {
    let mut r = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            r[i + j] = (r[i + j] + x * y) % q;
        }
    }
    fq_trim(&mut r);
    r
}

pub fn fq_rem(a: &FqPoly, m: &FqPoly, q: u64) -> FqPoly {
    let dm = fq_deg(m);
    let lead = m[dm];
    let lead_inv = fq_inv_scalar(lead, q);
    let mut r = a.clone();
    fq_trim(&mut r);
    while fq_deg(&r) >= dm && !fq_is_zero(&r) {
        let dr = fq_deg(&r);
        let c = (r[dr] * lead_inv) % q;
        for i in 0..=dm {
            let idx = dr - dm + i;
            r[idx] = (r[idx] + q * q - (c * m[i]) % q * 1) % q;
            // guard against overflow of q*q for large q: q < 2^31 assumed
        }
        fq_trim(&mut r);
        if dr == 0 {
            break;
        }
    }
    let mut out = r;
    out.resize(dm.max(1), 0);
    fq_trim(&mut out);
    out
}

pub fn fq_mulmod(a: &FqPoly, b: &FqPoly, m: &FqPoly, q: u64) -> FqPoly {
    fq_rem(&fq_mul(a, b, q), m, q)
}

pub fn fq_powmod(a: &FqPoly, mut e: u128, m: &FqPoly, q: u64) -> FqPoly {
    let mut base = fq_rem(a, m, q);
    let mut acc = vec![1u64];
    while e > 0 {
        if e & 1 == 1 {
            acc = fq_mulmod(&acc, &base, m, q);
        }
        base = fq_mulmod(&base, &base, m, q);
        e >>= 1;
    }
    acc
}

pub fn fq_inv_scalar(a: u64, q: u64) -> u64 {
    // Fermat; q prime.
    let mut r = 1u64;
    let mut b = a % q;
    let mut e = q - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % q;
        }
        b = b * b % q;
        e >>= 1;
    }
    r
}

pub fn fq_gcd(a: &FqPoly, b: &FqPoly, q: u64) -> FqPoly {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    fq_trim(&mut r0);
    fq_trim(&mut r1);
    while !fq_is_zero(&r1) {
        let r = fq_rem(&r0, &r1, q);
        r0 = r1;
        r1 = r;
    }
    // make monic
    let d = fq_deg(&r0);
    let inv = fq_inv_scalar(r0[d], q);
    for c in r0.iter_mut() {
        *c = *c * inv % q;
    }
    r0
}

pub fn fq_div_exact(a: &FqPoly, b: &FqPoly, q: u64) -> FqPoly {
    // a = b * result exactly (used after gcd splits)
    let db = fq_deg(b);
    let lead_inv = fq_inv_scalar(b[db], q);
    let mut r = a.clone();
    fq_trim(&mut r);
    let mut out = vec![0u64; fq_deg(&r).saturating_sub(db) + 1];
    while !fq_is_zero(&r) && fq_deg(&r) >= db {
        let dr = fq_deg(&r);
        let c = r[dr] * lead_inv % q;
        out[dr - db] = c;
        for i in 0..=db {
            let idx = dr - db + i;
            r[idx] = (r[idx] + q - (c * b[i]) % q) % q;
        }
        fq_trim(&mut r);
        if dr == 0 {
            break;
        }
    }
    fq_trim(&mut out);
    out
}

/// Formal derivative mod q.
pub fn fq_deriv(a: &FqPoly, q: u64) -> FqPoly {
    if a.len() <= 1 {
        return vec![0];
    }
    let mut r: FqPoly = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| (i as u64 % q) * c % q)
        .collect();
    fq_trim(&mut r);
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_divmod_roundtrip() {
        let a = q_from_int(&[1, 0, -2, 0, 1]);
        let b = q_from_int(&[-1, 1]);
        let (q, r) = q_divmod(&a, &b);
        let back = q_add(&q_mul(&q, &b), &r);
        assert_eq!(back, {
            let mut t = a.clone();
            q_trim(&mut t);
            t
        });
    }

    #[test]
    fn xgcd_inverse_mod_minpoly() {
        // invert x+1 modulo x^3+x^2-2x-1
        let m = q_from_int(&[-1, -2, 1, 1]);
        let a = q_from_int(&[1, 1]);
        let (g, s, _t) = q_xgcd(&a, &m);
        assert_eq!(q_deg(&g), 0);
        let prod = q_rem(&q_mul(&a, &s), &m);
        let mut expected = q_from_int(&[1]);
        expected.resize(3, BigRational::zero());
        let scale = g[0].recip();
        let inv: QPoly = prod.iter().map(|c| c * &scale).collect();
        assert_eq!(inv, expected);
    }

    #[test]
    fn fq_gcd_detects_square_factor() {
        // x^2 mod 5 has gcd(f, f') = x
        let f = vec![0u64, 0, 1];
        let d = fq_deriv(&f, 5);
        let g = fq_gcd(&f, &d, 5);
        assert_eq!(fq_deg(&g), 1);
    }
}
