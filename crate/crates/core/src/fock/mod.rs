//! The polynomial module `V = ℂ[x_i(m, n) : 2 ≤ i ≤ l, (m, n) ∈ ℤ²]` and the
//! free-field operators realizing the algebra on it.

mod ops;

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::{join_terms, Scalar};
use crate::torus::term_str;
use crate::window::ExponentWindow;

pub use ops::{CommutatorReport, DegreeOperator, RepParams};

/// The variable `x_i(m, n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var {
    pub i: usize,
    pub m: i64,
    pub n: i64,
}

impl Var {
    pub const fn new(i: usize, m: i64, n: i64) -> Self {
        Var { i, m, n }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}({},{})", self.i, self.m, self.n)
    }
}

/// A monomial in the `x_i(m, n)`: factors sorted by `(i, m, n)`, each with a
/// positive multiplicity. The empty product is 1.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(vec![(v, 1)])
    }

    /// Builds a monomial from factors in any order, merging repeats.
    pub fn from_factors(factors: impl IntoIterator<Item = (Var, u32)>) -> Self {
        let mut map: BTreeMap<Var, u32> = BTreeMap::new();
        for (v, k) in factors {
            if k > 0 {
                *map.entry(v).or_default() += k;
            }
        }
        Monomial(map.into_iter().collect())
    }

    pub fn from_vars(vars: impl IntoIterator<Item = Var>) -> Self {
        Self::from_factors(vars.into_iter().map(|v| (v, 1)))
    }

    pub fn factors(&self) -> &[(Var, u32)] {
        &self.0
    }

    /// Variables with multiplicity, in canonical order.
    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.0.iter().flat_map(|&(v, k)| std::iter::repeat_n(v, k as usize))
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, k)| k).sum()
    }

    pub fn multiplicity(&self, v: &Var) -> u32 {
        self.0
            .binary_search_by(|(w, _)| w.cmp(v))
            .map_or(0, |pos| self.0[pos].1)
    }

    pub fn times_var(&self, v: Var) -> Self {
        let mut f = self.0.clone();
        match f.binary_search_by(|(w, _)| w.cmp(&v)) {
            Ok(pos) => f[pos].1 += 1,
            Err(pos) => f.insert(pos, (v, 1)),
        }
        Monomial(f)
    }

    /// Removes one occurrence of `v`; `None` if `v` does not divide.
    pub fn without_var(&self, v: &Var) -> Option<Self> {
        let pos = self.0.binary_search_by(|(w, _)| w.cmp(v)).ok()?;
        let mut f = self.0.clone();
        if f[pos].1 == 1 {
            f.remove(pos);
        } else {
            f[pos].1 -= 1;
        }
        Some(Monomial(f))
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::from_factors(self.0.iter().chain(&other.0).copied())
    }

    /// Counts of variables per index, `kvec[i - 2]` for `i = 2..=l`.
    pub fn kvec(&self, l: usize) -> Vec<u32> {
        let mut k = vec![0; l.saturating_sub(1)];
        for &(v, mult) in &self.0 {
            if (2..=l).contains(&v.i) {
                k[v.i - 2] += mult;
            }
        }
        k
    }

    /// `(Σ m, Σ n)` over the variables with multiplicity.
    pub fn total_degree_mn(&self) -> (i64, i64) {
        self.0
            .iter()
            .fold((0, 0), |(a, b), &(v, k)| (a + v.m * k as i64, b + v.n * k as i64))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(v, k)| if *k == 1 { v.to_string() } else { format!("{v}^{k}") })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// An element of V: a finite map from monomials to nonzero scalars.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly {
    terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn term(c: Scalar, m: Monomial) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(Scalar::one(), m)
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(Monomial::var(v))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.keys()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn constant_term(&self) -> Scalar {
        self.coeff(&Monomial::one())
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
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

    pub fn add_assign(&mut self, other: &Self) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn neg(&self) -> Self {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (m1, a) in &self.terms {
            for (m2, b) in &other.terms {
                out.add_term(m1.mul(m2), a * b);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Largest monomial degree, `None` for the zero polynomial.
    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn map_coeffs<E>(&self, f: impl Fn(&Scalar) -> Result<Scalar, E>) -> Result<Self, E> {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c)?);
        }
        Ok(out)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms.iter().map(|(m, c)| {
            if m.is_one() {
                term_str(c, None)
            } else {
                term_str(c, Some(&m.to_string()))
            }
        });
        write!(f, "{}", join_terms(terms))
    }
}

impl FromIterator<(Monomial, Scalar)> for Poly {
    fn from_iter<T: IntoIterator<Item = (Monomial, Scalar)>>(iter: T) -> Self {
        let mut p = Poly::zero();
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
    }
}

/// Every variable `x_i(m, n)` with `2 ≤ i ≤ l` and (m, n) in the window.
pub fn window_vars(l: usize, window: &ExponentWindow) -> Vec<Var> {
    (2..=l)
        .flat_map(|i| window.points().map(move |(m, n)| Var::new(i, m, n)))
        .collect()
}

/// All monomials of degree `min_degree..=max_degree` in the window variables,
/// in canonical order.
pub fn monomials_in_window(l: usize, window: &ExponentWindow, min_degree: u32, max_degree: u32) -> Vec<Monomial> {
    fn extend(vars: &[Var], start: usize, left: u32, cur: &mut Vec<Var>, out: &mut Vec<Monomial>) {
        if left == 0 {
            out.push(Monomial::from_vars(cur.iter().copied()));
            return;
        }
        for k in start..vars.len() {
            cur.push(vars[k]);
            extend(vars, k, left - 1, cur, out);
            cur.pop();
        }
    }
    let vars = window_vars(l, window);
    let mut out = Vec::new();
    for d in min_degree..=max_degree {
        extend(&vars, 0, d, &mut Vec::new(), &mut out);
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_canonical_order() {
        let a = Var::new(3, -1, 2);
        let b = Var::new(2, 0, 0);
        let m = Monomial::from_vars([a, b, b]);
        assert_eq!(m.factors(), &[(b, 2), (a, 1)]);
        assert_eq!(m.to_string(), "x2(0,0)^2*x3(-1,2)");
        assert_eq!(m.degree(), 3);
        assert_eq!(m.kvec(3), vec![2, 1]);
        assert_eq!(m.total_degree_mn(), (-1, 2));
    }

    #[test]
    fn remove_and_insert() {
        let v = Var::new(2, 1, 1);
        let m = Monomial::var(v).times_var(v);
        assert_eq!(m.multiplicity(&v), 2);
        assert_eq!(m.without_var(&v).unwrap(), Monomial::var(v));
        assert!(Monomial::one().without_var(&v).is_none());
    }

    #[test]
    fn window_monomial_counts() {
        let w = ExponentWindow::centered(1);
        // 9 variables: 1 + 9 + 45 monomials of degree <= 2
        assert_eq!(monomials_in_window(2, &w, 0, 2).len(), 55);
        assert_eq!(monomials_in_window(3, &w, 1, 1).len(), 18);
        assert_eq!(monomials_in_window(2, &w, 1, 0).len(), 0);
    }

    #[test]
    fn poly_cancellation() {
        let p = Poly::var(Var::new(2, 0, 0));
        assert!(p.sub(&p).is_zero());
        assert_eq!(Poly::zero().to_string(), "0");
        assert_eq!(Poly::one().to_string(), "1");
        let x = Poly::var(Var::new(2, 1, -1));
        let q = x.pow(2).scale(&Scalar::from_int(-3)).add(&Poly::one());
        assert_eq!(q.to_string(), "1 - 3*x2(1,-1)^2");
    }
}
