//! The extended affine Lie algebra
//! `gl_l ⊗ ℂ_q ⊕ ℂc_s ⊕ ℂc_t ⊕ ℂd_s ⊕ ℂd_t`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{join_terms, FieldMode, Scalar};
use crate::torus::{term_str, torus_monomial_str, TorusElem};
use crate::window::ExponentWindow;

/// Matrix size and coefficient field shared by all elements of one algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraConfig {
    l: usize,
    field: FieldMode,
}

impl AlgebraConfig {
    pub fn new(l: usize, field: FieldMode) -> Result<Self> {
        if l < 2 {
            return Err(Error::InvalidConfig(format!("l must be at least 2, got {l}")));
        }
        Ok(AlgebraConfig { l, field })
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn field(&self) -> &FieldMode {
        &self.field
    }

    pub(crate) fn check_matrix_index(&self, i: usize) -> Result<()> {
        if (1..=self.l).contains(&i) {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: i as i64,
                lo: 1,
                hi: self.l as i64,
            })
        }
    }
}

/// A single basis element of the algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    /// `E_ij ⊗ s^m t^n`
    E {
        i: usize,
        j: usize,
        m: i64,
        n: i64,
    },
    Ds,
    Dt,
    Cs,
    Ct,
}

impl Generator {
    pub fn to_elem(self, cfg: &AlgebraConfig) -> Result<LieElem> {
        let mut x = LieElem::zero(cfg);
        match self {
            Generator::E { i, j, m, n } => return LieElem::e(cfg, i, j, m, n),
            Generator::Ds => x.ds = Scalar::one(),
            Generator::Dt => x.dt = Scalar::one(),
            Generator::Cs => x.cs = Scalar::one(),
            Generator::Ct => x.ct = Scalar::one(),
        }
        Ok(x)
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Generator::E { i, j, m, n } => match torus_monomial_str(m, n) {
                Some(t) => write!(f, "E[{i},{j}]*{t}"),
                None => write!(f, "E[{i},{j}]"),
            },
            Generator::Ds => write!(f, "d_s"),
            Generator::Dt => write!(f, "d_t"),
            Generator::Cs => write!(f, "c_s"),
            Generator::Ct => write!(f, "c_t"),
        }
    }
}

/// Key `(i, j, m, n)` of the basis element `E_ij ⊗ s^m t^n`.
pub type MatrixKey = (usize, usize, i64, i64);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieElem {
    cfg: AlgebraConfig,
    matrix: BTreeMap<MatrixKey, Scalar>,
    cs: Scalar,
    ct: Scalar,
    ds: Scalar,
    dt: Scalar,
}

impl LieElem {
    pub fn zero(cfg: &AlgebraConfig) -> Self {
        LieElem {
            cfg: cfg.clone(),
            matrix: BTreeMap::new(),
            cs: Scalar::zero(),
            ct: Scalar::zero(),
            ds: Scalar::zero(),
            dt: Scalar::zero(),
        }
    }

    /// `E_ij ⊗ s^m t^n`.
    pub fn e(cfg: &AlgebraConfig, i: usize, j: usize, m: i64, n: i64) -> Result<Self> {
        cfg.check_matrix_index(i)?;
        cfg.check_matrix_index(j)?;
        let mut x = Self::zero(cfg);
        x.matrix.insert((i, j, m, n), Scalar::one());
        Ok(x)
    }

    pub fn config(&self) -> &AlgebraConfig {
        &self.cfg
    }

    pub fn matrix_terms(&self) -> impl Iterator<Item = (MatrixKey, &Scalar)> {
        self.matrix.iter().map(|(k, v)| (*k, v))
    }

    pub fn matrix_coeff(&self, i: usize, j: usize, m: i64, n: i64) -> Scalar {
        self.matrix.get(&(i, j, m, n)).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn cs(&self) -> &Scalar {
        &self.cs
    }

    pub fn ct(&self) -> &Scalar {
        &self.ct
    }

    pub fn ds(&self) -> &Scalar {
        &self.ds
    }

    pub fn dt(&self) -> &Scalar {
        &self.dt
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_empty() && self.cs.is_zero() && self.ct.is_zero() && self.ds.is_zero() && self.dt.is_zero()
    }

    /// Only the `gl_l ⊗ ℂ_q` part is present.
    pub fn is_matrix_only(&self) -> bool {
        self.cs.is_zero() && self.ct.is_zero() && self.ds.is_zero() && self.dt.is_zero()
    }

    pub fn add_matrix_term(&mut self, key: MatrixKey, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.matrix.entry(key) {
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

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.cfg == other.cfg {
            Ok(())
        } else {
            Err(Error::ConfigMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (k, c) in &other.matrix {
            out.add_matrix_term(*k, c.clone());
        }
        out.cs += &other.cs;
        out.ct += &other.ct;
        out.ds += &other.ds;
        out.dt += &other.dt;
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        self.scale(&Scalar::from_int(-1))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero(&self.cfg);
        if c.is_zero() {
            return out;
        }
        out.matrix = self.matrix.iter().map(|(k, x)| (*k, x * c)).collect();
        out.cs = &self.cs * c;
        out.ct = &self.ct * c;
        out.ds = &self.ds * c;
        out.dt = &self.dt * c;
        out
    }

    /// `Σ c E_ij ⊗ (a · u)` for the matrix part `Σ E_ij ⊗ a`; with
    /// `left = true` the torus factor multiplies from the left instead.
    /// Elements with central or derivation parts only accept scalar factors.
    pub fn mul_torus(&self, u: &TorusElem, left: bool) -> Result<Self> {
        if let Some(c) = u.as_scalar() {
            return Ok(self.scale(&c));
        }
        if !self.is_matrix_only() {
            return Err(Error::Precondition(
                "central and derivation elements only take scalar multiples".into(),
            ));
        }
        let field = self.cfg.field();
        let mut out = Self::zero(&self.cfg);
        for (&(i, j, m, n), c) in &self.matrix {
            let a = TorusElem::monomial(c.clone(), m, n);
            let prod = if left { u.mul(&a, field) } else { a.mul(u, field) };
            for ((m2, n2), d) in prod.terms() {
                out.add_matrix_term((i, j, m2, n2), d.clone());
            }
        }
        Ok(out)
    }

    /// The Lie bracket, bilinear in both arguments:
    ///
    /// ```text
    /// [E_ij ⊗ s^m1 t^n1, E_kr ⊗ s^m2 t^n2]
    ///   = δ_jk q^{n1 m2} E_ir ⊗ s^{m1+m2} t^{n1+n2}
    ///   - δ_ir q^{n2 m1} E_kj ⊗ s^{m1+m2} t^{n1+n2}
    ///   + (m1 c_s + n1 c_t) q^{n1 m2} δ_jk δ_ir δ_{m1+m2,0} δ_{n1+n2,0}
    /// ```
    ///
    /// with `[d_s, E ⊗ s^m t^n] = m E ⊗ s^m t^n`, `[d_t, E ⊗ s^m t^n] = n E ⊗ s^m t^n`,
    /// and `c_s, c_t, d_s, d_t` mutually commuting.
    pub fn bracket(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let field = self.cfg.field();
        let mut out = Self::zero(&self.cfg);
        for (&(i, j, m1, n1), a) in &self.matrix {
            for (&(k, r, m2, n2), b) in &other.matrix {
                let ab = a * b;
                let (m, n) = (m1 + m2, n1 + n2);
                if j == k {
                    out.add_matrix_term((i, r, m, n), &ab * &field.qpow(n1 * m2));
                }
                if i == r {
                    out.add_matrix_term((k, j, m, n), -(&ab * &field.qpow(n2 * m1)));
                }
                if j == k && i == r && m == 0 && n == 0 {
                    let c = &ab * &field.qpow(n1 * m2);
                    out.cs += &(&c * &Scalar::from_int(m1));
                    out.ct += &(&c * &Scalar::from_int(n1));
                }
            }
        }
        // derivation actions: [d, y] from self's d-part, -[d, x] from other's
        for (&(i, j, m, n), b) in &other.matrix {
            let c = &(&self.ds * &Scalar::from_int(m)) + &(&self.dt * &Scalar::from_int(n));
            out.add_matrix_term((i, j, m, n), &c * b);
        }
        for (&(i, j, m, n), a) in &self.matrix {
            let c = &(&other.ds * &Scalar::from_int(m)) + &(&other.dt * &Scalar::from_int(n));
            out.add_matrix_term((i, j, m, n), -(&c * a));
        }
        Ok(out)
    }
}

impl fmt::Display for LieElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<String> = self
            .matrix
            .iter()
            .map(|(&(i, j, m, n), c)| {
                let basis = Generator::E { i, j, m, n }.to_string();
                term_str(c, Some(&basis))
            })
            .collect();
        for (c, name) in [
            (&self.cs, "c_s"),
            (&self.ct, "c_t"),
            (&self.ds, "d_s"),
            (&self.dt, "d_t"),
        ] {
            if !c.is_zero() {
                terms.push(term_str(c, Some(name)));
            }
        }
        write!(f, "{}", join_terms(terms))
    }
}

/// Basis of `n_+` inside the window: all `E_ij ⊗ s^m t^n` with `j > i ≥ 1`,
/// ordered lexicographically by `(i, j, m, n)`.
pub fn nilpotent_generators(cfg: &AlgebraConfig, window: &ExponentWindow) -> Vec<LieElem> {
    nilpotent_labels(cfg, window)
        .into_iter()
        .map(|g| g.to_elem(cfg).expect("indices in range"))
        .collect()
}

pub fn nilpotent_labels(cfg: &AlgebraConfig, window: &ExponentWindow) -> Vec<Generator> {
    let l = cfg.l();
    let mut out = Vec::new();
    for i in 1..=l {
        for j in i + 1..=l {
            for (m, n) in window.points() {
                out.push(Generator::E { i, j, m, n });
            }
        }
    }
    out
}

/// Every `E_ij ⊗ s^m t^n` with (m, n) in the window, followed by
/// `d_s, d_t, c_s, c_t`.
pub fn basis_generators(cfg: &AlgebraConfig, window: &ExponentWindow) -> Vec<Generator> {
    let l = cfg.l();
    let mut out = Vec::new();
    for i in 1..=l {
        for j in 1..=l {
            for (m, n) in window.points() {
                out.push(Generator::E { i, j, m, n });
            }
        }
    }
    out.extend([Generator::Ds, Generator::Dt, Generator::Cs, Generator::Ct]);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(l: usize) -> AlgebraConfig {
        AlgebraConfig::new(l, FieldMode::generic()).unwrap()
    }

    #[test]
    fn bracket_with_central_terms() {
        let c = cfg(2);
        let qi = c.field().qpow(-1);
        let x = LieElem::e(&c, 1, 2, 1, 1).unwrap();
        let y = LieElem::e(&c, 2, 1, -1, -1).unwrap();
        let z = x.bracket(&y).unwrap();
        // substituting (m1,n1) = (1,1), (m2,n2) = (-1,-1): q^{n1 m2} = q^{n2 m1} = q^-1
        assert_eq!(z.matrix_coeff(1, 1, 0, 0), qi);
        assert_eq!(z.matrix_coeff(2, 2, 0, 0), -&qi);
        assert_eq!(z.cs(), &qi);
        assert_eq!(z.ct(), &qi);
        assert_eq!(z.matrix_terms().count(), 2);
        assert_eq!(z.to_string(), "q^-1*E[1,1] - q^-1*E[2,2] + q^-1*c_s + q^-1*c_t");
    }

    #[test]
    fn central_elements_commute_with_everything() {
        let c = cfg(3);
        let cs = Generator::Cs.to_elem(&c).unwrap();
        for g in basis_generators(&c, &ExponentWindow::centered(1)) {
            let x = g.to_elem(&c).unwrap();
            assert!(cs.bracket(&x).unwrap().is_zero());
            assert!(x.bracket(&cs).unwrap().is_zero());
        }
    }

    #[test]
    fn derivation_eigenvalue() {
        let c = cfg(2);
        let ds = Generator::Ds.to_elem(&c).unwrap();
        let x = LieElem::e(&c, 1, 2, 3, 1).unwrap();
        assert_eq!(ds.bracket(&x).unwrap(), x.scale(&Scalar::from_int(3)));
        let dt = Generator::Dt.to_elem(&c).unwrap();
        assert_eq!(dt.bracket(&x).unwrap(), x);
        assert!(ds.bracket(&dt).unwrap().is_zero());
    }

    #[test]
    fn derivations_commute_on_brackets() {
        let c = cfg(2);
        let ds = Generator::Ds.to_elem(&c).unwrap();
        let dt = Generator::Dt.to_elem(&c).unwrap();
        for g in basis_generators(&c, &ExponentWindow::centered(2)) {
            let x = g.to_elem(&c).unwrap();
            let a = ds.bracket(&dt.bracket(&x).unwrap()).unwrap();
            let b = dt.bracket(&ds.bracket(&x).unwrap()).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn config_mismatch() {
        let x = LieElem::e(&cfg(2), 1, 2, 0, 0).unwrap();
        let y = LieElem::e(&cfg(3), 1, 2, 0, 0).unwrap();
        assert_eq!(x.bracket(&y), Err(Error::ConfigMismatch));
        let z = LieElem::e(
            &AlgebraConfig::new(2, FieldMode::root_of_unity(3).unwrap()).unwrap(),
            1,
            2,
            0,
            0,
        )
        .unwrap();
        assert_eq!(x.bracket(&z), Err(Error::ConfigMismatch));
        assert!(LieElem::e(&cfg(3), 5, 1, 0, 0).is_err());
        assert!(AlgebraConfig::new(1, FieldMode::generic()).is_err());
    }

    #[test]
    fn nilpotent_enumeration() {
        let g = nilpotent_labels(&cfg(2), &ExponentWindow::centered(1));
        assert_eq!(g.len(), 9);
        assert!(g.iter().all(|x| matches!(x, Generator::E { i: 1, j: 2, .. })));
        assert_eq!(
            g[0],
            Generator::E {
                i: 1,
                j: 2,
                m: -1,
                n: -1
            }
        );
        assert_eq!(g[8], Generator::E { i: 1, j: 2, m: 1, n: 1 });

        let g = nilpotent_labels(&cfg(3), &ExponentWindow::centered(0));
        assert_eq!(
            g,
            vec![
                Generator::E { i: 1, j: 2, m: 0, n: 0 },
                Generator::E { i: 1, j: 3, m: 0, n: 0 },
                Generator::E { i: 2, j: 3, m: 0, n: 0 },
            ]
        );
        assert!(nilpotent_generators(&cfg(2), &ExponentWindow::empty()).is_empty());
    }

    #[test]
    fn central_term_antisymmetry_under_deltas() {
        // the c_s coefficient of [X,Y] must be minus that of [Y,X] whenever the deltas fire
        let c = cfg(2);
        for (m1, n1) in ExponentWindow::centered(3).points() {
            let x = LieElem::e(&c, 1, 2, m1, n1).unwrap();
            let y = LieElem::e(&c, 2, 1, -m1, -n1).unwrap();
            let xy = x.bracket(&y).unwrap();
            let yx = y.bracket(&x).unwrap();
            assert_eq!(xy.cs(), &-yx.cs());
            assert_eq!(xy.ct(), &-yx.ct());
            // m1 q^{n1 m2} = -(m2 q^{n2 m1}) with m2 = -m1, n2 = -n1
            let lhs = &Scalar::from_int(m1) * &c.field().qpow(-n1 * m1);
            assert_eq!(xy.cs(), &lhs);
        }
    }
}
