//! Dense univariate polynomials over the rationals, lowest degree first.
//!
//! Only what the cyclotomic kernel needs: products, division with
//! remainder and modular inversion by the extended Euclidean algorithm.

use num_rational::BigRational;
use num_traits::{One, Zero};

pub(crate) type RatPoly = Vec<BigRational>;

pub(crate) fn trim(p: &mut RatPoly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

pub(crate) fn degree(p: &[BigRational]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub(crate) fn mul(a: &[BigRational], b: &[BigRational]) -> RatPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    trim(&mut out);
    out
}

fn sub(a: &[BigRational], b: &[BigRational]) -> RatPoly {
    let n = a.len().max(b.len());
    let mut out: RatPoly = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            match b.get(i) {
                Some(y) => x - y,
                None => x,
            }
        })
        .collect();
    trim(&mut out);
    out
}

/// Quotient and remainder of `a` by a nonzero `b`.
pub(crate) fn divrem(a: &[BigRational], b: &[BigRational]) -> (RatPoly, RatPoly) {
    let db = degree(b).expect("division by the zero polynomial");
    let lead_inv = b[db].recip();
    let mut rem: RatPoly = a.to_vec();
    trim(&mut rem);
    if rem.len() <= db {
        return (Vec::new(), rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    for k in (db..rem.len()).rev() {
        if rem[k].is_zero() {
            continue;
        }
        let c = &rem[k] * &lead_inv;
        for (i, bi) in b[..=db].iter().enumerate() {
            if !bi.is_zero() {
                let t = &c * bi;
                rem[k - db + i] -= t;
            }
        }
        quot[k - db] = c;
    }
    trim(&mut rem);
    trim(&mut quot);
    (quot, rem)
}

/// Inverse of `a` modulo `m`, or `None` when they share a factor.
pub(crate) fn inverse_mod(a: &[BigRational], m: &[BigRational]) -> Option<RatPoly> {
    // Invariant: s0 * a == r0 (mod m), s1 * a == r1 (mod m).
    let mut r0: RatPoly = m.to_vec();
    let mut r1: RatPoly = divrem(a, m).1;
    let mut s0: RatPoly = Vec::new();
    let mut s1: RatPoly = vec![BigRational::one()];
    trim(&mut r0);
    while degree(&r1).is_some() {
        let (q, r) = divrem(&r0, &r1);
        let s = sub(&s0, &mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    // r0 is the gcd; invertible only when it is a nonzero constant.
    match degree(&r0) {
        Some(0) => {
            let c = r0[0].recip();
            let mut out: RatPoly = s0.iter().map(|x| x * &c).collect();
            out = divrem(&out, m).1;
            Some(out)
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn p(v: &[i64]) -> RatPoly {
        v.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect()
    }

    #[test]
    fn divrem_reconstructs() {
        let a = p(&[5, -3, 0, 2, 7]);
        let b = p(&[1, 1, 3]);
        let (q, r) = divrem(&a, &b);
        assert!(r.len() < 3);
        let mut back = mul(&q, &b);
        back.resize(a.len().max(back.len()).max(r.len()), BigRational::zero());
        for (i, ri) in r.iter().enumerate() {
            back[i] += ri;
        }
        trim(&mut back);
        assert_eq!(back, a);
    }

    #[test]
    fn inverse_mod_x2_plus_1() {
        // x * (-x) = -x^2 = 1 mod x^2 + 1
        let inv = inverse_mod(&p(&[0, 1]), &p(&[1, 0, 1])).unwrap();
        assert_eq!(inv, p(&[0, -1]));
    }

    #[test]
    fn inverse_mod_detects_common_factor() {
        // (x - 1) divides x^2 - 1
        assert!(inverse_mod(&p(&[-1, 1]), &p(&[-1, 0, 1])).is_none());
    }
}
