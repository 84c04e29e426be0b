//! The cyclotomic field ℚ(ζ_L) = ℚ[q]/Φ_L(q).

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::upoly::{self, Q};

/// Reduction data for one cyclotomic modulus.
#[derive(Debug)]
pub struct Cyclotomic {
    order: u32,
    phi: Vec<Q>,
    // q^k mod Φ_L for every k < max(L, 2·deg Φ_L)
    powers: Vec<Vec<Q>>,
}

impl Cyclotomic {
    pub fn new(order: u32) -> Self {
        assert!(order >= 1, "cyclotomic order must be positive");
        let phi = cyclotomic_polynomial(order);
        let degree = phi.len() - 1;
        let table_len = (order as usize).max(2 * degree).max(1);
        let mut powers = Vec::with_capacity(table_len);
        let mut cur = upoly::constant(Q::one());
        for _ in 0..table_len {
            powers.push(cur.clone());
            let mut shifted = Vec::with_capacity(cur.len() + 1);
            shifted.push(Q::zero());
            shifted.extend(cur);
            cur = upoly::divrem(&shifted, &phi).1;
        }
        Cyclotomic { order, phi, powers }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Degree of Φ_L, i.e. Euler's totient of L.
    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    pub fn modulus(&self) -> &[Q] {
        &self.phi
    }

    /// Coefficients of q^e reduced mod Φ_L.
    pub(crate) fn power(&self, e: i64) -> &[Q] {
        let k = e.rem_euclid(self.order as i64) as usize;
        &self.powers[k]
    }

    pub(crate) fn reduce(&self, mut p: Vec<Q>) -> Vec<Q> {
        let d = self.degree();
        if p.len() <= d {
            upoly::trim(&mut p);
            return p;
        }
        if p.len() > self.powers.len() {
            return upoly::divrem(&p, &self.phi).1;
        }
        let high = p.split_off(d);
        p.resize(d, Q::zero());
        for (k, c) in high.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (slot, r) in p.iter_mut().zip(&self.powers[d + k]) {
                *slot += c * r;
            }
        }
        upoly::trim(&mut p);
        p
    }

    pub(crate) fn mul(&self, a: &[Q], b: &[Q]) -> Vec<Q> {
        self.reduce(upoly::mul(a, b))
    }

    pub(crate) fn inverse(&self, a: &[Q]) -> Option<Vec<Q>> {
        upoly::inverse_mod(a, &self.phi)
    }
}

/// Φ_L as a monic integer polynomial, lowest degree first.
pub fn cyclotomic_polynomial(order: u32) -> Vec<Q> {
    let int = |v: i64| Q::from_integer(BigInt::from(v));
    let mut p = vec![Q::zero(); order as usize + 1];
    p[0] = int(-1);
    p[order as usize] = int(1);
    for d in 1..order {
        if order.is_multiple_of(d) {
            let (quo, rem) = upoly::divrem(&p, &cyclotomic_polynomial(d));
            debug_assert!(rem.is_empty());
            p = quo;
        }
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(p: &[Q]) -> Vec<i64> {
        p.iter()
            .map(|c| {
                assert!(c.is_integer());
                i64::try_from(c.to_integer()).unwrap()
            })
            .collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(ints(&cyclotomic_polynomial(1)), vec![-1, 1]);
        assert_eq!(ints(&cyclotomic_polynomial(2)), vec![1, 1]);
        assert_eq!(ints(&cyclotomic_polynomial(3)), vec![1, 1, 1]);
        assert_eq!(ints(&cyclotomic_polynomial(4)), vec![1, 0, 1]);
        assert_eq!(ints(&cyclotomic_polynomial(6)), vec![1, -1, 1]);
        assert_eq!(ints(&cyclotomic_polynomial(12)), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn power_table_wraps() {
        let c = Cyclotomic::new(5);
        assert_eq!(c.degree(), 4);
        assert_eq!(c.power(5), c.power(0));
        assert_eq!(c.power(-1), c.power(4));
        // q^4 = -1 - q - q^2 - q^3
        assert_eq!(ints(c.power(4)), vec![-1, -1, -1, -1]);
    }
}
