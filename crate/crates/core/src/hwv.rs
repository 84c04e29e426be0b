//! Weights of monomials, truncated weight spaces, the exact search for
//! highest weight vectors, and the irreducibility report built on it.
//!
//! The algebra quantifies `n_+`-invariance over all (m, n) ∈ ℤ²; here only
//! the generators inside a finite test window are imposed. An empty
//! nullspace is therefore a certificate (those conditions are necessary),
//! while a nonzero nullspace only yields candidates.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use crate::eala::{basis_generators, nilpotent_labels, AlgebraConfig, Generator};
use crate::error::{Error, Result};
use crate::fock::{monomials_in_window, DegreeOperator, Monomial, Poly, RepParams, Var};
use crate::scalar::{Scalar, ScalarMatrix};
use crate::window::ExponentWindow;

/// Eigenvalues of a weight vector: on `E_11`, on `E_ii` (i ≥ 2), and under
/// `d_s`, `d_t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Weight {
    pub e11_val: Scalar,
    pub kvec: Vec<u32>,
    pub ds_deg: i64,
    pub dt_deg: i64,
}

pub fn weight_of(mono: &Monomial, params: &RepParams) -> Weight {
    let kvec = mono.kvec(params.l());
    let total: u32 = kvec.iter().sum();
    let (ds_deg, dt_deg) = mono.total_degree_mn();
    Weight {
        e11_val: params.mu() - &Scalar::from_int(total as i64),
        kvec,
        ds_deg,
        dt_deg,
    }
}

/// Checks `weight_of` against the operator eigenvalues directly.
pub fn weight_matches_operators(mono: &Monomial, params: &RepParams) -> bool {
    let w = weight_of(mono, params);
    let p = Poly::monomial(mono.clone());
    let scaled = |c: Scalar| p.scale(&c);
    if params.act_e11(0, 0, &p) != scaled(w.e11_val.clone()) {
        return false;
    }
    for (idx, &k) in w.kvec.iter().enumerate() {
        let i = idx + 2;
        if params.act_eij(i, i, 0, 0, &p) != scaled(Scalar::from_int(k as i64)) {
            return false;
        }
    }
    params.act_d(DegreeOperator::D1, &p) == scaled(Scalar::from_int(w.ds_deg))
        && params.act_d(DegreeOperator::D2, &p) == scaled(Scalar::from_int(w.dt_deg))
}

/// The monomials of one weight type inside a window, in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSpaceBasis {
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl WeightSpaceBasis {
    fn new(monomials: Vec<Monomial>) -> Self {
        let index = monomials.iter().enumerate().map(|(k, m)| (m.clone(), k)).collect();
        WeightSpaceBasis { monomials, index }
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }
}

/// All monomials with `kvec[i-2]` variables of index i, total degrees
/// `(ds_deg, dt_deg)`, and every variable exponent inside `window`.
pub fn enumerate_weight_space(
    kvec: &[u32],
    ds_deg: i64,
    dt_deg: i64,
    window: &ExponentWindow,
    cfg: &AlgebraConfig,
) -> Result<WeightSpaceBasis> {
    if kvec.len() != cfg.l() - 1 {
        return Err(Error::InvalidConfig(format!(
            "kvec has {} entries, expected l - 1 = {}",
            kvec.len(),
            cfg.l() - 1
        )));
    }
    let points: Vec<(i64, i64)> = window.points().collect();
    // one slot per variable: its index i and a nondecreasing point position
    let slots: Vec<usize> = kvec
        .iter()
        .enumerate()
        .flat_map(|(idx, &k)| std::iter::repeat_n(idx + 2, k as usize))
        .collect();

    struct Search<'a> {
        points: &'a [(i64, i64)],
        slots: &'a [usize],
        window: &'a ExponentWindow,
        target: (i64, i64),
        chosen: Vec<Var>,
        out: Vec<Monomial>,
    }

    impl Search<'_> {
        fn go(&mut self, slot: usize, min_pt: usize, sum: (i64, i64)) {
            let left = (self.slots.len() - slot) as i64;
            let w = self.window;
            let feasible = |s: i64, t: i64, lo: i64, hi: i64| s + left * lo <= t && t <= s + left * hi;
            if !feasible(sum.0, self.target.0, w.m_lo, w.m_hi) || !feasible(sum.1, self.target.1, w.n_lo, w.n_hi) {
                return;
            }
            if slot == self.slots.len() {
                self.out.push(Monomial::from_vars(self.chosen.iter().copied()));
                return;
            }
            let i = self.slots[slot];
            // within one index the points are chosen in nondecreasing order
            let start = if slot > 0 && self.slots[slot - 1] == i {
                min_pt
            } else {
                0
            };
            for k in start..self.points.len() {
                let (m, n) = self.points[k];
                self.chosen.push(Var::new(i, m, n));
                self.go(slot + 1, k, (sum.0 + m, sum.1 + n));
                self.chosen.pop();
            }
        }
    }

    let mut search = Search {
        points: &points,
        slots: &slots,
        window,
        target: (ds_deg, dt_deg),
        chosen: Vec::new(),
        out: Vec::new(),
    };
    if slots.is_empty() {
        if (ds_deg, dt_deg) == (0, 0) {
            search.out.push(Monomial::one());
        }
    } else if !points.is_empty() {
        search.go(0, 0, (0, 0));
    }
    let mut monos = search.out;
    monos.sort();
    monos.dedup();
    Ok(WeightSpaceBasis::new(monos))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TruncationStatus {
    /// No nonzero vector survives even the finite set of conditions.
    CertifiedEmpty,
    /// Nonzero vectors survive the tested conditions only.
    Candidate,
}

/// What a windowed search did and did not check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Truncation {
    pub support_window: ExponentWindow,
    pub test_window: ExponentWindow,
    pub generators_tested: usize,
    pub constraints: usize,
    pub status: TruncationStatus,
}

#[derive(Clone, Debug, PartialEq)]
pub struct HwvResult {
    pub support: WeightSpaceBasis,
    pub basis: Vec<Poly>,
    pub caveat: Truncation,
}

/// Exact nullspace of `v ↦ (g·v)` for `g` in the windowed `n_+` basis,
/// restricted to one weight space.
pub fn hwv_solve(
    kvec: &[u32],
    ds_deg: i64,
    dt_deg: i64,
    support_window: &ExponentWindow,
    test_window: &ExponentWindow,
    params: &RepParams,
) -> Result<HwvResult> {
    let support = enumerate_weight_space(kvec, ds_deg, dt_deg, support_window, params.cfg())?;
    let gens = nilpotent_labels(params.cfg(), test_window);

    // rows are (generator, output monomial) pairs, sorted for determinism
    let columns: Vec<Vec<(usize, Monomial, Scalar)>> = support
        .monomials()
        .par_iter()
        .map(|mono| {
            let p = Poly::monomial(mono.clone());
            gens.iter()
                .enumerate()
                .flat_map(|(gi, &g)| {
                    params
                        .act_generator(g, &p)
                        .terms()
                        .map(|(m, c)| (gi, m.clone(), c.clone()))
                        .collect::<Vec<_>>()
                })
                .collect()
        })
        .collect();
    let mut row_index: BTreeMap<(usize, Monomial), usize> = BTreeMap::new();
    for col in &columns {
        for (gi, m, _) in col {
            row_index.entry((*gi, m.clone())).or_insert(0);
        }
    }
    for (k, slot) in row_index.values_mut().enumerate() {
        *slot = k;
    }
    let mut matrix = ScalarMatrix::zeros(row_index.len(), support.len());
    for (c, col) in columns.into_iter().enumerate() {
        for (gi, m, v) in col {
            matrix.set(row_index[&(gi, m)], c, v);
        }
    }

    let basis: Vec<Poly> = matrix
        .nullspace()
        .into_iter()
        .map(|v| {
            v.into_iter()
                .zip(support.monomials())
                .map(|(c, m)| (m.clone(), c))
                .collect()
        })
        .collect();
    let status = if basis.is_empty() {
        TruncationStatus::CertifiedEmpty
    } else {
        TruncationStatus::Candidate
    };
    Ok(HwvResult {
        caveat: Truncation {
            support_window: *support_window,
            test_window: *test_window,
            generators_tested: gens.len(),
            constraints: matrix.rows(),
            status,
        },
        support,
        basis,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProbeMode {
    /// μ must be 0; checks that polynomials without constant term are closed.
    Submodule,
    /// Runs for any μ, to show the probe can detect constants.
    Control,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeViolation {
    pub generator: String,
    pub input: String,
    pub constant: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeReport {
    pub degree_cap: u32,
    pub monomials_checked: usize,
    pub generators: usize,
    pub violations: Vec<ProbeViolation>,
}

/// Applies every basis generator with exponents in `window` to every monomial
/// of degree `1..=degree_cap` in the window variables and records any output
/// with a nonzero constant term.
pub fn constant_term_probe(
    params: &RepParams,
    window: &ExponentWindow,
    degree_cap: u32,
    mode: ProbeMode,
) -> Result<ProbeReport> {
    if mode == ProbeMode::Submodule && !params.mu().is_zero() {
        return Err(Error::Precondition(format!(
            "constant term probe needs mu = 0, got {}",
            params.mu()
        )));
    }
    let gens: Vec<Generator> = basis_generators(params.cfg(), window)
        .into_iter()
        .filter(|g| !matches!(g, Generator::Cs | Generator::Ct))
        .collect();
    let monos = if degree_cap == 0 {
        Vec::new()
    } else {
        monomials_in_window(params.l(), window, 1, degree_cap)
    };
    let violations: Vec<ProbeViolation> = monos
        .par_iter()
        .flat_map_iter(|mono| {
            let p = Poly::monomial(mono.clone());
            gens.iter()
                .filter_map(|&g| {
                    let c = params.act_generator(g, &p).constant_term();
                    (!c.is_zero()).then(|| ProbeViolation {
                        generator: g.to_string(),
                        input: mono.to_string(),
                        constant: c.to_string(),
                    })
                })
                .collect::<Vec<_>>()
        })
        .collect();
    Ok(ProbeReport {
        degree_cap,
        monomials_checked: monos.len(),
        generators: gens.len(),
        violations,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportParams {
    pub l: usize,
    pub q: String,
    pub mu: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportWindows {
    pub support: String,
    pub test: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportCell {
    pub kvec: Vec<u32>,
    pub ds: i64,
    pub dt: i64,
    pub dim_support: usize,
    pub dim_nullspace: usize,
    pub basis: Vec<String>,
    /// True when the verdict for this cell does not depend on the test
    /// window: an empty nullspace, or the degree-0 cell spanned by 1.
    pub certified: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// μ ≠ 0 and 1 is the only highest weight vector found.
    IrreducibleConsistent,
    /// μ = 0, degree-one candidates exist and constants never reappear.
    ReducibleConsistent,
    /// The windowed data contradicts the expected dichotomy.
    Inconsistent,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IrreducibilityReport {
    pub params: ReportParams,
    pub windows: ReportWindows,
    pub cells: Vec<ReportCell>,
    pub verdict: Verdict,
    pub caveats: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub constant_term_probe: Option<ProbeReport>,
}

impl IrreducibilityReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// All kvecs of length `parts` summing to `total`, lexicographically descending.
fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in (0..=total).rev() {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Runs [`hwv_solve`] on every weight cell with `Σ k_i ≤ max_k` whose degree
/// totals are reachable inside the support window, and summarizes the result.
/// For μ = 0 the constant-term probe runs on the support window as well.
pub fn irreducibility_report(
    params: &RepParams,
    support_window: &ExponentWindow,
    test_window: &ExponentWindow,
    max_k: u32,
    degree_cap: u32,
) -> Result<IrreducibilityReport> {
    let w = support_window;
    let mut cells = Vec::new();
    for total in 0..=max_k {
        for kvec in compositions(total, params.l() - 1) {
            let t = total as i64;
            if total == 0 {
                cells.push((kvec, 0, 0));
                continue;
            }
            for ds in t * w.m_lo..=t * w.m_hi {
                for dt in t * w.n_lo..=t * w.n_hi {
                    cells.push((kvec.clone(), ds, dt));
                }
            }
        }
    }
    let solved: Vec<(Vec<u32>, i64, i64, HwvResult)> = cells
        .into_par_iter()
        .map(|(kvec, ds, dt)| {
            let r = hwv_solve(&kvec, ds, dt, support_window, test_window, params)?;
            Ok((kvec, ds, dt, r))
        })
        .collect::<Result<_>>()?;

    let cells: Vec<ReportCell> = solved
        .iter()
        .map(|(kvec, ds, dt, r)| {
            let degree_zero = kvec.iter().all(|&k| k == 0);
            ReportCell {
                kvec: kvec.clone(),
                ds: *ds,
                dt: *dt,
                dim_support: r.support.len(),
                dim_nullspace: r.basis.len(),
                basis: r.basis.iter().map(Poly::to_string).collect(),
                certified: r.basis.is_empty() || degree_zero,
            }
        })
        .collect();

    let is_k0 = |c: &ReportCell| c.kvec.iter().all(|&k| k == 0);
    let unit_ok = cells
        .iter()
        .filter(|c| is_k0(c))
        .all(|c| c.basis == vec![Poly::one().to_string()]);
    let mu_zero = params.mu().is_zero();
    let probe = if mu_zero {
        Some(constant_term_probe(
            params,
            support_window,
            degree_cap,
            ProbeMode::Submodule,
        )?)
    } else {
        None
    };
    let verdict = if !unit_ok {
        Verdict::Inconsistent
    } else if mu_zero {
        let candidates = cells.iter().any(|c| !is_k0(c) && c.dim_nullspace > 0);
        let closed = probe.as_ref().is_some_and(|p| p.violations.is_empty());
        if candidates && closed {
            Verdict::ReducibleConsistent
        } else {
            Verdict::Inconsistent
        }
    } else if cells.iter().all(|c| is_k0(c) || c.dim_nullspace == 0) {
        Verdict::IrreducibleConsistent
    } else {
        Verdict::Inconsistent
    };

    let mut caveats = vec![format!(
        "n_+ invariance imposed only for generators E_ij*s^m*t^n (j > i) with (m,n) in {test_window}; \
         variables restricted to {support_window}; nonzero nullspaces are candidates, empty ones are certified"
    )];
    if max_k > 0 {
        caveats.push(format!("weight types limited to k_2 + ... + k_l <= {max_k}"));
    }
    if let Some(p) = &probe {
        caveats.push(format!(
            "constant-term probe limited to degree <= {} and exponents in {support_window}",
            p.degree_cap
        ));
    }

    Ok(IrreducibilityReport {
        params: ReportParams {
            l: params.l(),
            q: params.field().to_string(),
            mu: params.mu().to_string(),
        },
        windows: ReportWindows {
            support: support_window.to_string(),
            test: test_window.to_string(),
        },
        cells,
        verdict,
        caveats,
        constant_term_probe: probe,
    })
}
