//! Exact checks of the Lie-algebra axioms and of the homomorphism property
//! `φ([x, y]) = [φ(x), φ(y)]` on V, exhaustive over windows or seeded.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::eala::{basis_generators, AlgebraConfig, Generator, LieElem};
use crate::error::Result;
use crate::fock::{monomials_in_window, Monomial, Poly, RepParams, Var};
use crate::window::ExponentWindow;

/// How the pair/triple/sample space is covered.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Sweep {
    Exhaustive,
    Sampled { seed: u64, trials: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct VerifySpec {
    /// Exponents of the variables in test monomials.
    pub sample_window: ExponentWindow,
    /// Exponents of the `E_ij ⊗ s^m t^n` generators.
    pub generator_window: ExponentWindow,
    pub degree_cap: u32,
    pub sweep: Sweep,
    /// Extra seeded Jacobi triples drawn from the generator window.
    pub jacobi_samples: usize,
}

impl VerifySpec {
    /// Exhaustive sweep with generators one step wider than the samples.
    pub fn exhaustive(sample_window: ExponentWindow, degree_cap: u32) -> Self {
        VerifySpec {
            sample_window,
            generator_window: sample_window.dilate(1),
            degree_cap,
            sweep: Sweep::Exhaustive,
            jacobi_samples: 200,
        }
    }

    pub fn sampled(window: ExponentWindow, degree_cap: u32, seed: u64, trials: usize) -> Self {
        VerifySpec {
            sample_window: window,
            generator_window: window,
            degree_cap,
            sweep: Sweep::Sampled { seed, trials },
            jacobi_samples: trials,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomFailure {
    pub elements: Vec<String>,
    pub residual: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub name: String,
    pub checked: usize,
    pub failures: Vec<AxiomFailure>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomFailure {
    pub x: String,
    pub y: String,
    pub p: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomReport {
    pub name: String,
    pub checked: usize,
    pub failures: Vec<HomFailure>,
}

impl HomReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub l: usize,
    pub q: String,
    pub mu: String,
    pub spec: VerifySpec,
    pub axioms: Vec<AxiomReport>,
    pub homomorphism: HomReport,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.axioms.iter().all(AxiomReport::passed) && self.homomorphism.passed()
    }

    pub fn failure_count(&self) -> usize {
        self.axioms.iter().map(|a| a.failures.len()).sum::<usize>() + self.homomorphism.failures.len()
    }
}

fn elem(cfg: &AlgebraConfig, g: Generator) -> LieElem {
    g.to_elem(cfg).expect("generator indices come from the config")
}

/// `[x, y] + [y, x] = 0` for every ordered pair of basis generators.
pub fn check_antisymmetry(cfg: &AlgebraConfig, window: &ExponentWindow) -> Result<AxiomReport> {
    let gens: Vec<LieElem> = basis_generators(cfg, window)
        .into_iter()
        .map(|g| elem(cfg, g))
        .collect();
    let failures: Vec<Vec<AxiomFailure>> = gens
        .par_iter()
        .map(|x| {
            let mut out = Vec::new();
            for y in &gens {
                let r = x.bracket(y)?.add(&y.bracket(x)?)?;
                if !r.is_zero() {
                    out.push(AxiomFailure {
                        elements: vec![x.to_string(), y.to_string()],
                        residual: r.to_string(),
                    });
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    Ok(AxiomReport {
        name: format!("antisymmetry exhaustive {window}"),
        checked: gens.len() * gens.len(),
        failures: failures.into_iter().flatten().collect(),
    })
}

fn jacobi_residual(x: &LieElem, y: &LieElem, z: &LieElem) -> Result<LieElem> {
    x.bracket(y)?
        .bracket(z)?
        .add(&y.bracket(z)?.bracket(x)?)?
        .add(&z.bracket(x)?.bracket(y)?)
}

fn jacobi_over(triples: Vec<[LieElem; 3]>, name: String) -> Result<AxiomReport> {
    let failures: Vec<Option<AxiomFailure>> = triples
        .par_iter()
        .map(|[x, y, z]| {
            let r = jacobi_residual(x, y, z)?;
            Ok((!r.is_zero()).then(|| AxiomFailure {
                elements: vec![x.to_string(), y.to_string(), z.to_string()],
                residual: r.to_string(),
            }))
        })
        .collect::<Result<_>>()?;
    Ok(AxiomReport {
        name,
        checked: triples.len(),
        failures: failures.into_iter().flatten().collect(),
    })
}

/// Jacobi identity on every ordered triple of basis generators.
pub fn check_jacobi_exhaustive(cfg: &AlgebraConfig, window: &ExponentWindow) -> Result<AxiomReport> {
    let gens: Vec<LieElem> = basis_generators(cfg, window)
        .into_iter()
        .map(|g| elem(cfg, g))
        .collect();
    let mut triples = Vec::with_capacity(gens.len().pow(3));
    for x in &gens {
        for y in &gens {
            for z in &gens {
                triples.push([x.clone(), y.clone(), z.clone()]);
            }
        }
    }
    jacobi_over(triples, format!("jacobi exhaustive {window}"))
}

/// Jacobi identity on `trials` seeded random generator triples.
pub fn check_jacobi_sampled(
    cfg: &AlgebraConfig,
    window: &ExponentWindow,
    seed: u64,
    trials: usize,
) -> Result<AxiomReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let triples = (0..trials)
        .map(|_| [0, 1, 2].map(|_| elem(cfg, random_generator(&mut rng, cfg.l(), window))))
        .collect();
    jacobi_over(triples, format!("jacobi sampled {window} seed {seed}"))
}

/// A basis generator: `E_ij ⊗ s^m t^n` four times out of five, otherwise one
/// of `d_s, d_t, c_s, c_t`.
pub fn random_generator(rng: &mut impl Rng, l: usize, window: &ExponentWindow) -> Generator {
    if rng.gen_bool(0.8) {
        Generator::E {
            i: rng.gen_range(1..=l),
            j: rng.gen_range(1..=l),
            m: rng.gen_range(window.m_lo..=window.m_hi),
            n: rng.gen_range(window.n_lo..=window.n_hi),
        }
    } else {
        [Generator::Ds, Generator::Dt, Generator::Cs, Generator::Ct][rng.gen_range(0..4)]
    }
}

/// A monomial of degree `0..=degree_cap` in the window variables.
pub fn random_monomial(rng: &mut impl Rng, l: usize, window: &ExponentWindow, degree_cap: u32) -> Monomial {
    let d = rng.gen_range(0..=degree_cap);
    Monomial::from_vars((0..d).map(|_| {
        Var::new(
            rng.gen_range(2..=l),
            rng.gen_range(window.m_lo..=window.m_hi),
            rng.gen_range(window.n_lo..=window.n_hi),
        )
    }))
}

/// `φ(g)` on monomials, memoized.
struct ActCache<'a> {
    params: &'a RepParams,
    memo: HashMap<(Generator, Monomial), Poly>,
}

impl<'a> ActCache<'a> {
    fn new(params: &'a RepParams) -> Self {
        ActCache {
            params,
            memo: HashMap::new(),
        }
    }

    fn generator(&mut self, g: Generator, p: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in p.terms() {
            let img = self
                .memo
                .entry((g, m.clone()))
                .or_insert_with(|| self.params.act_generator(g, &Poly::monomial(m.clone())));
            out.add_assign(&img.scale(c));
        }
        out
    }

    fn elem(&mut self, x: &LieElem, p: &Poly) -> Poly {
        let mut out = Poly::zero();
        for ((i, j, m, n), c) in x.matrix_terms() {
            out.add_assign(&self.generator(Generator::E { i, j, m, n }, p).scale(c));
        }
        for (c, g) in [(x.ds(), Generator::Ds), (x.dt(), Generator::Dt)] {
            if !c.is_zero() {
                out.add_assign(&self.generator(g, p).scale(c));
            }
        }
        out
    }
}

fn hom_failure(x: &LieElem, y: &LieElem, p: &Monomial, lhs: &Poly, rhs: &Poly) -> HomFailure {
    HomFailure {
        x: x.to_string(),
        y: y.to_string(),
        p: p.to_string(),
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
    }
}

/// Every ordered pair of basis generators in `generator_window` against every
/// monomial of degree `≤ degree_cap` in `sample_window`.
pub fn verify_homomorphism_exhaustive(
    params: &RepParams,
    generator_window: &ExponentWindow,
    sample_window: &ExponentWindow,
    degree_cap: u32,
) -> Result<HomReport> {
    let cfg = params.cfg();
    let labels = basis_generators(cfg, generator_window);
    let gens: Vec<LieElem> = labels.iter().map(|&g| elem(cfg, g)).collect();
    let brackets: Vec<Vec<LieElem>> = gens
        .par_iter()
        .map(|x| gens.iter().map(|y| x.bracket(y)).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    let monos = monomials_in_window(params.l(), sample_window, 0, degree_cap);

    let failures: Vec<Vec<HomFailure>> = monos
        .par_iter()
        .map(|mono| {
            let p = Poly::monomial(mono.clone());
            let mut cache = ActCache::new(params);
            let first: Vec<Poly> = labels.iter().map(|&g| cache.generator(g, &p)).collect();
            let mut out = Vec::new();
            for (a, &gx) in labels.iter().enumerate() {
                for (b, &gy) in labels.iter().enumerate() {
                    let lhs = cache.generator(gx, &first[b]).sub(&cache.generator(gy, &first[a]));
                    let rhs = cache.elem(&brackets[a][b], &p);
                    if lhs != rhs {
                        out.push(hom_failure(&gens[a], &gens[b], mono, &lhs, &rhs));
                    }
                }
            }
            out
        })
        .collect();
    Ok(HomReport {
        name: format!(
            "homomorphism exhaustive generators {generator_window} monomials {sample_window} degree <= {degree_cap}"
        ),
        checked: labels.len() * labels.len() * monos.len(),
        failures: failures.into_iter().flatten().collect(),
    })
}

/// `trials` seeded (x, y, p) triples; draws happen sequentially so the set
/// of trials depends only on the seed.
pub fn verify_homomorphism_sampled(
    params: &RepParams,
    generator_window: &ExponentWindow,
    sample_window: &ExponentWindow,
    degree_cap: u32,
    seed: u64,
    trials: usize,
) -> Result<HomReport> {
    let cfg = params.cfg();
    let l = cfg.l();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cases: Vec<(Generator, Generator, Monomial)> = (0..trials)
        .map(|_| {
            let x = random_generator(&mut rng, l, generator_window);
            let y = random_generator(&mut rng, l, generator_window);
            (x, y, random_monomial(&mut rng, l, sample_window, degree_cap))
        })
        .collect();
    let failures: Vec<Option<HomFailure>> = cases
        .par_iter()
        .map(|(gx, gy, mono)| {
            let (x, y) = (elem(cfg, *gx), elem(cfg, *gy));
            let r = params.check_commutator(&x, &y, &Poly::monomial(mono.clone()))?;
            Ok((!r.equal).then(|| hom_failure(&x, &y, mono, &r.lhs, &r.rhs)))
        })
        .collect::<Result<_>>()?;
    Ok(HomReport {
        name: format!(
            "homomorphism sampled generators {generator_window} monomials {sample_window} degree <= {degree_cap} seed {seed}"
        ),
        checked: trials,
        failures: failures.into_iter().flatten().collect(),
    })
}

/// The full suite: antisymmetry, Jacobi and the homomorphism check.
pub fn run_verify(params: &RepParams, spec: &VerifySpec) -> Result<VerifyReport> {
    let cfg = params.cfg();
    let mut axioms = Vec::new();
    let homomorphism = match spec.sweep {
        Sweep::Exhaustive => {
            axioms.push(check_antisymmetry(cfg, &spec.generator_window)?);
            axioms.push(check_jacobi_exhaustive(cfg, &spec.sample_window)?);
            if spec.jacobi_samples > 0 {
                axioms.push(check_jacobi_sampled(
                    cfg,
                    &spec.generator_window,
                    0,
                    spec.jacobi_samples,
                )?);
            }
            verify_homomorphism_exhaustive(params, &spec.generator_window, &spec.sample_window, spec.degree_cap)?
        }
        Sweep::Sampled { seed, trials } => {
            axioms.push(check_antisymmetry(cfg, &spec.generator_window)?);
            axioms.push(check_jacobi_sampled(
                cfg,
                &spec.generator_window,
                seed,
                spec.jacobi_samples,
            )?);
            verify_homomorphism_sampled(
                params,
                &spec.generator_window,
                &spec.sample_window,
                spec.degree_cap,
                seed,
                trials,
            )?
        }
    };
    Ok(VerifyReport {
        l: cfg.l(),
        q: cfg.field().to_string(),
        mu: params.mu().to_string(),
        spec: *spec,
        axioms,
        homomorphism,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{FieldMode, Scalar};

    fn params(l: usize) -> RepParams {
        RepParams::new(AlgebraConfig::new(l, FieldMode::generic()).unwrap(), Scalar::one()).unwrap()
    }

    #[test]
    fn antisymmetry_small() {
        let r = check_antisymmetry(params(2).cfg(), &ExponentWindow::centered(1)).unwrap();
        assert_eq!(r.checked, 40 * 40);
        assert!(r.passed());
    }

    #[test]
    fn jacobi_sampled_small() {
        let r = check_jacobi_sampled(params(3).cfg(), &ExponentWindow::centered(2), 7, 50).unwrap();
        assert_eq!(r.checked, 50);
        assert!(r.passed(), "{:?}", r.failures.first());
    }

    #[test]
    fn homomorphism_tiny_window() {
        let r = verify_homomorphism_exhaustive(
            &params(2),
            &ExponentWindow::centered(1),
            &ExponentWindow::centered(0),
            2,
        )
        .unwrap();
        assert_eq!(r.checked, 40 * 40 * 3);
        assert!(r.passed(), "{:?}", r.failures.first());
    }

    #[test]
    fn sampled_draws_depend_only_on_seed() {
        let w = ExponentWindow::centered(3);
        let draw = |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..20).map(|_| random_monomial(&mut rng, 3, &w, 3)).collect::<Vec<_>>()
        };
        assert_eq!(draw(5), draw(5));
        assert_ne!(draw(5), draw(6));
    }

    #[test]
    fn broken_operator_is_caught() {
        // a wrong bracket (x with itself scaled) must register as failures
        let p = params(2);
        let x = LieElem::e(p.cfg(), 1, 2, 0, 0).unwrap();
        let y = LieElem::e(p.cfg(), 2, 1, 0, 0).unwrap();
        let v = Poly::var(Var::new(2, 0, 0));
        let r = p.check_commutator(&x, &y, &v).unwrap();
        assert!(r.equal);
        let wrong = p.act(&x.bracket(&y).unwrap().scale(&Scalar::from_int(2)), &v).unwrap();
        assert_ne!(r.lhs, wrong);
    }
}
