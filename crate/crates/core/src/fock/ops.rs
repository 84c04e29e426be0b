//! The operators `e_ij(m, n)`, `D_1`, `D_2` on V and the representation map.
//!
//! All infinite sums in the operator definitions collapse to sums over the
//! factors of each input monomial, so every application is a finite scan.

use std::collections::BTreeMap;

use super::{Monomial, Poly, Var};
use crate::eala::{AlgebraConfig, Generator, LieElem};
use crate::error::{Error, Result};
use crate::scalar::{FieldMode, Scalar};

/// `D_1` scales a monomial by its total m-degree, `D_2` by its total n-degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DegreeOperator {
    D1,
    D2,
}

/// The algebra configuration together with the highest-weight parameter μ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepParams {
    cfg: AlgebraConfig,
    mu: Scalar,
}

/// Both sides of `[φ(x), φ(y)] p = φ([x, y]) p`.
#[derive(Clone, Debug, PartialEq)]
pub struct CommutatorReport {
    pub lhs: Poly,
    pub rhs: Poly,
    pub equal: bool,
}

struct Acc(BTreeMap<Monomial, Scalar>);

impl Acc {
    fn new() -> Self {
        Acc(BTreeMap::new())
    }

    fn push(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.0.entry(m).or_insert_with(Scalar::zero);
        *slot += &c;
    }

    fn finish(self) -> Poly {
        self.0.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }
}

impl RepParams {
    pub fn new(cfg: AlgebraConfig, mu: Scalar) -> Result<Self> {
        if !cfg.field().contains(&mu) {
            return Err(Error::InvalidConfig(format!(
                "mu = {mu} is not in field {}",
                cfg.field()
            )));
        }
        Ok(RepParams { cfg, mu })
    }

    pub fn cfg(&self) -> &AlgebraConfig {
        &self.cfg
    }

    pub fn mu(&self) -> &Scalar {
        &self.mu
    }

    pub fn field(&self) -> &FieldMode {
        self.cfg.field()
    }

    pub fn l(&self) -> usize {
        self.cfg.l()
    }

    /// Same configuration with a different μ.
    pub fn with_mu(&self, mu: Scalar) -> Result<Self> {
        Self::new(self.cfg.clone(), mu)
    }

    fn q(&self, e: i64) -> Scalar {
        self.field().qpow(e)
    }

    /// `e_i1(m1, n1)`: multiplication by `x_i(m1, n1)`.
    pub fn act_ei1(&self, i: usize, m1: i64, n1: i64, p: &Poly) -> Poly {
        let v = Var::new(i, m1, n1);
        p.terms().map(|(m, c)| (m.times_var(v), c.clone())).collect()
    }

    /// `e_1i(m1, n1) = μ q^{-m1 n1} ∂/∂x_i(-m1,-n1)
    ///   - Σ_j Σ q^{n1 m' + n m1 + n m'} x_j(m1+m+m', n1+n+n') ∂/∂x_j(m,n) ∂/∂x_i(m',n')`.
    pub fn act_e1i(&self, i: usize, m1: i64, n1: i64, p: &Poly) -> Poly {
        let mut out = Acc::new();
        let mu_coeff = &self.mu * &self.q(-m1 * n1);
        let target = Var::new(i, -m1, -n1);
        for (mono, c) in p.terms() {
            if !self.mu.is_zero() {
                let k = mono.multiplicity(&target);
                if k > 0 {
                    let rest = mono.without_var(&target).unwrap();
                    out.push(rest, &(c * &mu_coeff) * &Scalar::from_int(k as i64));
                }
            }
            let factors = mono.factors();
            for &(y, ky) in factors {
                for &(z, kz) in factors.iter().filter(|(z, _)| z.i == i) {
                    // ∂_y ∂_z on y^ky z^kz: falling factorial when y = z
                    let weight = if y == z {
                        if ky < 2 {
                            continue;
                        }
                        ky as i64 * (ky as i64 - 1)
                    } else {
                        ky as i64 * kz as i64
                    };
                    let rest = mono.without_var(&y).and_then(|r| r.without_var(&z)).unwrap();
                    let new = Var::new(y.i, m1 + y.m + z.m, n1 + y.n + z.n);
                    let e = n1 * z.m + y.n * m1 + y.n * z.m;
                    let coeff = &(c * &self.q(e)) * &Scalar::from_int(-weight);
                    out.push(rest.times_var(new), coeff);
                }
            }
        }
        out.finish()
    }

    /// `e_ij(m1, n1) = Σ q^{m n1} x_i(m1+m, n1+n) ∂/∂x_j(m,n)` for `i, j ≥ 2`.
    pub fn act_eij(&self, i: usize, j: usize, m1: i64, n1: i64, p: &Poly) -> Poly {
        let mut out = Acc::new();
        for (mono, c) in p.terms() {
            for &(y, k) in mono.factors().iter().filter(|(y, _)| y.i == j) {
                let new = Var::new(i, m1 + y.m, n1 + y.n);
                let rest = mono.without_var(&y).unwrap();
                let coeff = &(c * &self.q(y.m * n1)) * &Scalar::from_int(k as i64);
                out.push(rest.times_var(new), coeff);
            }
        }
        out.finish()
    }

    /// `e_11(m1, n1) = μ δ_{(m1,n1),(0,0)} - Σ_i Σ q^{n m1} x_i(m1+m, n1+n) ∂/∂x_i(m,n)`.
    pub fn act_e11(&self, m1: i64, n1: i64, p: &Poly) -> Poly {
        let mut out = Acc::new();
        let at_origin = m1 == 0 && n1 == 0;
        for (mono, c) in p.terms() {
            if at_origin {
                out.push(mono.clone(), c * &self.mu);
            }
            for &(y, k) in mono.factors() {
                let new = Var::new(y.i, m1 + y.m, n1 + y.n);
                let rest = mono.without_var(&y).unwrap();
                let coeff = &(c * &self.q(y.n * m1)) * &Scalar::from_int(-(k as i64));
                out.push(rest.times_var(new), coeff);
            }
        }
        out.finish()
    }

    pub fn act_d(&self, which: DegreeOperator, p: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (mono, c) in p.terms() {
            let (dm, dn) = mono.total_degree_mn();
            let ev = match which {
                DegreeOperator::D1 => dm,
                DegreeOperator::D2 => dn,
            };
            out.add_term(mono.clone(), c * &Scalar::from_int(ev));
        }
        out
    }

    /// `φ(E_ij ⊗ s^m t^n) = e_ij(m, n)`, dispatched on the index pattern.
    fn act_matrix_unit(&self, i: usize, j: usize, m: i64, n: i64, p: &Poly) -> Poly {
        match (i, j) {
            (1, 1) => self.act_e11(m, n, p),
            (1, i) => self.act_e1i(i, m, n, p),
            (i, 1) => self.act_ei1(i, m, n, p),
            (i, j) => self.act_eij(i, j, m, n, p),
        }
    }

    /// φ applied to a single basis element.
    pub fn act_generator(&self, g: Generator, p: &Poly) -> Poly {
        match g {
            Generator::E { i, j, m, n } => self.act_matrix_unit(i, j, m, n, p),
            Generator::Ds => self.act_d(DegreeOperator::D1, p),
            Generator::Dt => self.act_d(DegreeOperator::D2, p),
            Generator::Cs | Generator::Ct => Poly::zero(),
        }
    }

    /// φ(x) p, linear in x. `c_s` and `c_t` act as 0.
    pub fn act(&self, x: &LieElem, p: &Poly) -> Result<Poly> {
        if x.config() != &self.cfg {
            return Err(Error::ConfigMismatch);
        }
        let mut out = Poly::zero();
        for ((i, j, m, n), c) in x.matrix_terms() {
            out.add_assign(&self.act_matrix_unit(i, j, m, n, p).scale(c));
        }
        if !x.ds().is_zero() {
            out.add_assign(&self.act_d(DegreeOperator::D1, p).scale(x.ds()));
        }
        if !x.dt().is_zero() {
            out.add_assign(&self.act_d(DegreeOperator::D2, p).scale(x.dt()));
        }
        Ok(out)
    }

    /// Compares `φ(x)φ(y)p - φ(y)φ(x)p` with `φ([x, y])p`.
    pub fn check_commutator(&self, x: &LieElem, y: &LieElem, p: &Poly) -> Result<CommutatorReport> {
        let xy = self.act(x, &self.act(y, p)?)?;
        let yx = self.act(y, &self.act(x, p)?)?;
        let lhs = xy.sub(&yx);
        let rhs = self.act(&x.bracket(y)?, p)?;
        let equal = lhs == rhs;
        Ok(CommutatorReport { lhs, rhs, equal })
    }
}
