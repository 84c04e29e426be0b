//! Dense univariate polynomials over the rationals.
//!
//! A polynomial is a `Vec<Q>` of coefficients, lowest degree first, with no
//! trailing zeros. The zero polynomial is the empty vector.

use num_rational::BigRational;
use num_traits::{One, Zero};

pub(crate) type Q = BigRational;

pub(crate) fn trim(p: &mut Vec<Q>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

pub(crate) fn constant(c: Q) -> Vec<Q> {
    if c.is_zero() {
        Vec::new()
    } else {
        vec![c]
    }
}

pub(crate) fn is_one(p: &[Q]) -> bool {
    p.len() == 1 && p[0].is_one()
}

pub(crate) fn add(a: &[Q], b: &[Q]) -> Vec<Q> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, s) in out.iter_mut().zip(short) {
        *o += s;
    }
    trim(&mut out);
    out
}

pub(crate) fn neg(a: &[Q]) -> Vec<Q> {
    a.iter().map(|c| -c).collect()
}

pub(crate) fn sub(a: &[Q], b: &[Q]) -> Vec<Q> {
    add(a, &neg(b))
}

pub(crate) fn scale(a: &[Q], c: &Q) -> Vec<Q> {
    if c.is_zero() {
        return Vec::new();
    }
    a.iter().map(|x| x * c).collect()
}

pub(crate) fn mul(a: &[Q], b: &[Q]) -> Vec<Q> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Q::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

/// Euclidean division; `b` must be nonzero.
pub(crate) fn divrem(a: &[Q], b: &[Q]) -> (Vec<Q>, Vec<Q>) {
    assert!(!b.is_empty(), "polynomial division by zero");
    if a.len() < b.len() {
        return (Vec::new(), a.to_vec());
    }
    let mut rem = a.to_vec();
    let lead = b.last().unwrap();
    let mut quot = vec![Q::zero(); a.len() - b.len() + 1];
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let c = rem.last().unwrap() / lead;
        for (k, bk) in b.iter().enumerate() {
            rem[shift + k] -= &c * bk;
        }
        quot[shift] = c;
        // the leading coefficient cancels exactly
        rem.pop();
        trim(&mut rem);
    }
    trim(&mut quot);
    (quot, rem)
}

pub(crate) fn monic(p: &[Q]) -> Vec<Q> {
    match p.last() {
        None => Vec::new(),
        Some(lead) => {
            let inv = lead.recip();
            scale(p, &inv)
        }
    }
}

/// Monic gcd; gcd(0, 0) = 0.
pub(crate) fn gcd(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    while !y.is_empty() {
        let (_, r) = divrem(&x, &y);
        x = y;
        y = r;
    }
    monic(&x)
}

/// Returns `s` with `s * a = 1 mod m`, or `None` when `a` and `m` share a factor.
pub(crate) fn inverse_mod(a: &[Q], m: &[Q]) -> Option<Vec<Q>> {
    // extended Euclid tracking only the coefficient of `a`
    let (mut r0, mut r1) = (m.to_vec(), divrem(a, m).1);
    let (mut s0, mut s1) = (Vec::new(), constant(Q::one()));
    while !r1.is_empty() {
        let (quo, rem) = divrem(&r0, &r1);
        let s2 = sub(&s0, &mul(&quo, &s1));
        r0 = std::mem::replace(&mut r1, rem);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if r0.len() != 1 {
        return None;
    }
    let inv = r0[0].recip();
    Some(divrem(&scale(&s0, &inv), m).1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn qs(v: &[i64]) -> Vec<Q> {
        let mut p: Vec<Q> = v.iter().map(|&x| Q::from_integer(BigInt::from(x))).collect();
        trim(&mut p);
        p
    }

    #[test]
    fn division_q_squared_minus_one() {
        let (quo, rem) = divrem(&qs(&[-1, 0, 1]), &qs(&[-1, 1]));
        assert_eq!(quo, qs(&[1, 1]));
        assert!(rem.is_empty());
    }

    #[test]
    fn gcd_is_monic() {
        // (q+1)(q-1) and 2(q+1)
        let g = gcd(&qs(&[-1, 0, 1]), &qs(&[2, 2]));
        assert_eq!(g, qs(&[1, 1]));
        assert_eq!(gcd(&[], &[]), Vec::<Q>::new());
    }

    #[test]
    fn modular_inverse() {
        let m = qs(&[1, 1, 1]); // q^2 + q + 1
        let a = qs(&[0, 1]);
        let inv = inverse_mod(&a, &m).unwrap();
        let (_, r) = divrem(&mul(&a, &inv), &m);
        assert_eq!(r, qs(&[1]));
        assert!(inverse_mod(&qs(&[-1, 1]), &qs(&[-1, 0, 1])).is_none());
    }
}
