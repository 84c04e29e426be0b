//! The quantum torus `ℂ_q[s^±1, t^±1]` with relation `ts = q st`.
//!
//! Elements are stored in the normal-ordered basis `s^m t^n`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{join_terms, FieldMode, Scalar};

/// The two degree derivations `d_s`, `d_t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DegreeOp {
    Ds,
    Dt,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TorusElem {
    terms: BTreeMap<(i64, i64), Scalar>,
}

impl TorusElem {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Scalar::one(), 0, 0)
    }

    pub fn constant(c: Scalar) -> Self {
        Self::monomial(c, 0, 0)
    }

    /// `c · s^m t^n`.
    pub fn monomial(c: Scalar, m: i64, n: i64) -> Self {
        let mut out = Self::zero();
        out.add_term(m, n, c);
        out
    }

    pub fn s() -> Self {
        Self::monomial(Scalar::one(), 1, 0)
    }

    pub fn t() -> Self {
        Self::monomial(Scalar::one(), 0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((i64, i64), &Scalar)> {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    pub fn coeff(&self, m: i64, n: i64) -> Scalar {
        self.terms.get(&(m, n)).cloned().unwrap_or_else(Scalar::zero)
    }

    /// The constant coefficient, if the element is a multiple of 1.
    pub fn as_scalar(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: i64, n: i64, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((m, n)) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(m, n), c) in &other.terms {
            out.add_term(m, n, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        TorusElem {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        TorusElem {
            terms: self.terms.iter().map(|(k, x)| (*k, x * c)).collect(),
        }
    }

    /// Product in ℂ_q: `(s^a t^b)(s^c t^d) = q^{bc} s^{a+c} t^{b+d}`.
    pub fn mul(&self, other: &Self, field: &FieldMode) -> Self {
        let mut out = Self::zero();
        for (&(m1, n1), a) in &self.terms {
            for (&(m2, n2), b) in &other.terms {
                let c = &(a * b) * &field.qpow(n1 * m2);
                out.add_term(m1 + m2, n1 + n2, c);
            }
        }
        out
    }

    /// Applies `d_s` (scale `s^m t^n` by m) or `d_t` (scale by n).
    pub fn degree(&self, op: DegreeOp) -> Self {
        let mut out = Self::zero();
        for (&(m, n), c) in &self.terms {
            let k = match op {
                DegreeOp::Ds => m,
                DegreeOp::Dt => n,
            };
            out.add_term(m, n, c * &Scalar::from_int(k));
        }
        out
    }

    /// Inverse of a single invertible term `c s^m t^n`, which is
    /// `c^{-1} q^{mn} s^{-m} t^{-n}`.
    pub fn inverse(&self, field: &FieldMode) -> Result<Self> {
        let [((m, n), c)] = self.terms().collect::<Vec<_>>()[..] else {
            return Err(Error::Precondition(
                "only single-term torus elements are invertible".into(),
            ));
        };
        let c = &c.inv()? * &field.qpow(m * n);
        Ok(Self::monomial(c, -m, -n))
    }

    pub fn pow(&self, e: i64, field: &FieldMode) -> Result<Self> {
        let base = if e < 0 { self.inverse(field)? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base, field);
        }
        Ok(acc)
    }
}

/// `s^m*t^n` with unit exponents elided; `None` for `s^0 t^0`.
pub(crate) fn torus_monomial_str(m: i64, n: i64) -> Option<String> {
    let part = |sym: &str, e: i64| match e {
        0 => None,
        1 => Some(sym.to_string()),
        _ => Some(format!("{sym}^{e}")),
    };
    let parts: Vec<String> = [part("s", m), part("t", n)].into_iter().flatten().collect();
    if parts.is_empty() {
        None
    } else {
        Some(parts.join("*"))
    }
}

/// Prints `coef * basis`, folding unit coefficients and a unit basis.
pub(crate) fn term_str(coef: &Scalar, basis: Option<&str>) -> String {
    let (neg, mag) = coef.factor_parts();
    let sign = if neg { "-" } else { "" };
    match (mag, basis) {
        (None, None) => format!("{sign}1"),
        (Some(m), None) => format!("{sign}{m}"),
        (None, Some(b)) => format!("{sign}{b}"),
        (Some(m), Some(b)) => format!("{sign}{m}*{b}"),
    }
}

impl fmt::Display for TorusElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .terms
            .iter()
            .map(|(&(m, n), c)| term_str(c, torus_monomial_str(m, n).as_deref()));
        write!(f, "{}", join_terms(terms))
    }
}
