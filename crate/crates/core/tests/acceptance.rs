//! One PASS/FAIL line per acceptance criterion. Runs without the libtest
//! harness so the lines always show; exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qtorus::cli;
use qtorus::fock::DegreeOperator;
use qtorus::hwv::{constant_term_probe, irreducibility_report, ProbeMode};
use qtorus::parse::{parse_lie_expr, parse_poly_expr};
use qtorus::verify::{
    check_antisymmetry, check_jacobi_exhaustive, check_jacobi_sampled, random_generator, random_monomial,
    verify_homomorphism_exhaustive, verify_homomorphism_sampled,
};
use qtorus::{AlgebraConfig, ExponentWindow, FieldMode, Monomial, Poly, RepParams, Scalar, Var};

type Outcome = Result<String, String>;
type Criterion = (&'static str, &'static str, fn() -> Outcome);

fn params(l: usize, field: FieldMode, mu: Scalar) -> RepParams {
    RepParams::new(AlgebraConfig::new(l, field).unwrap(), mu).unwrap()
}

fn field(s: &str) -> FieldMode {
    s.parse().unwrap()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ac1() -> Outcome {
    let p = params(2, FieldMode::generic(), Scalar::one());
    let r = verify_homomorphism_exhaustive(&p, &ExponentWindow::centered(2), &ExponentWindow::centered(1), 2)
        .map_err(|e| e.to_string())?;
    ensure(r.passed(), || {
        format!("{} failures, first {:?}", r.failures.len(), r.failures.first())
    })?;
    Ok(format!("{} commutator checks, 0 failures", r.checked))
}

fn ac2() -> Outcome {
    let w = ExponentWindow::centered(3);
    let mut total = 0;
    for l in [3, 4] {
        for (k, mode) in ["generic", "root:5", "rational:2/3"].into_iter().enumerate() {
            let p = params(l, field(mode), Scalar::one());
            let seed = 1000 + 10 * l as u64 + k as u64;
            let r = verify_homomorphism_sampled(&p, &w, &w, 3, seed, 1000).map_err(|e| e.to_string())?;
            ensure(r.passed(), || format!("l={l} q={mode}: {:?}", r.failures.first()))?;
            total += r.checked;
        }
    }
    Ok(format!(
        "{total} seeded trials over l=3,4 and three field modes, 0 failures"
    ))
}

fn ac3() -> Outcome {
    let mut checked = 0;
    let mut run = |r: qtorus::Result<qtorus::verify::AxiomReport>| -> Result<(), String> {
        let r = r.map_err(|e| e.to_string())?;
        ensure(r.passed(), || format!("{}: {:?}", r.name, r.failures.first()))?;
        checked += r.checked;
        Ok(())
    };
    for l in [2, 3] {
        let cfg = AlgebraConfig::new(l, FieldMode::generic()).unwrap();
        run(check_antisymmetry(&cfg, &ExponentWindow::centered(2)))?;
    }
    let cfg2 = AlgebraConfig::new(2, FieldMode::generic()).unwrap();
    run(check_jacobi_exhaustive(&cfg2, &ExponentWindow::centered(1)))?;
    for (l, mode) in [(2, "generic"), (3, "generic"), (4, "root:5"), (3, "rational:2/3")] {
        let cfg = AlgebraConfig::new(l, field(mode)).unwrap();
        run(check_jacobi_sampled(
            &cfg,
            &ExponentWindow::centered(2),
            31 + l as u64,
            200,
        ))?;
    }
    Ok(format!("{checked} antisymmetry and Jacobi checks, 0 failures"))
}

fn report_setup(mu: i64) -> Result<qtorus::hwv::IrreducibilityReport, String> {
    let p = params(2, FieldMode::generic(), Scalar::from_int(mu));
    irreducibility_report(&p, &ExponentWindow::centered(1), &ExponentWindow::centered(2), 2, 3)
        .map_err(|e| e.to_string())
}

fn ac4() -> Outcome {
    let r = report_setup(1)?;
    let mut cells = 0;
    for c in &r.cells {
        if c.kvec == [0] {
            ensure(c.basis == ["1"], || format!("k=0 basis {:?}", c.basis))?;
        } else {
            ensure(c.dim_nullspace == 0, || {
                format!("cell {:?} ({},{}) has nullspace {:?}", c.kvec, c.ds, c.dt, c.basis)
            })?;
            cells += 1;
        }
    }
    ensure(cells > 0, || "no k >= 1 cells".into())?;
    Ok(format!(
        "{cells} cells with k >= 1 all have empty nullspace; k=0 basis is {{1}}"
    ))
}

fn ac5() -> Outcome {
    let r = report_setup(0)?;
    let mut k1 = 0;
    for c in r.cells.iter().filter(|c| c.kvec == [1]) {
        ensure(c.dim_nullspace == c.dim_support, || {
            format!("k=1 cell ({},{}): {} of {}", c.ds, c.dt, c.dim_nullspace, c.dim_support)
        })?;
        k1 += c.dim_support;
    }
    ensure(k1 == 9, || format!("expected 9 degree-one monomials, got {k1}"))?;
    let p = params(2, FieldMode::generic(), Scalar::zero());
    let probe =
        constant_term_probe(&p, &ExponentWindow::centered(1), 3, ProbeMode::Submodule).map_err(|e| e.to_string())?;
    ensure(probe.violations.is_empty(), || {
        format!("probe violation {:?}", probe.violations.first())
    })?;
    Ok(format!(
        "all 9 degree-one monomials are candidates; probe checked {} monomials x {} generators, 0 violations",
        probe.monomials_checked, probe.generators
    ))
}

/// `∂/∂v` computed from the variable list of each monomial.
fn deriv(p: &Poly, v: Var) -> Poly {
    let mut out = Poly::zero();
    for (m, c) in p.terms() {
        let vars: Vec<Var> = m.vars().collect();
        let k = vars.iter().filter(|w| **w == v).count() as i64;
        if k == 0 {
            continue;
        }
        let pos = vars.iter().position(|w| *w == v).unwrap();
        let rest = Monomial::from_vars(vars.iter().enumerate().filter(|(j, _)| *j != pos).map(|(_, w)| *w));
        out.add_term(rest, c * &Scalar::from_int(k));
    }
    out
}

/// `e_12(a, b)` for l = 2 composed from multiplications and derivatives.
fn e12_oracle(a: i64, b: i64, p: &Poly, mu: &Scalar, f: &FieldMode) -> Poly {
    let support: Vec<Var> = {
        let mut v: Vec<Var> = p.monomials().flat_map(|m| m.vars()).collect();
        v.sort();
        v.dedup();
        v
    };
    let mut out = deriv(p, Var::new(2, -a, -b)).scale(&(mu * &f.qpow(-a * b)));
    for &y in &support {
        for &z in &support {
            let dd = deriv(&deriv(p, z), y);
            let shifted = Poly::var(Var::new(2, a + y.m + z.m, b + y.n + z.n));
            let w = f.qpow(b * z.m + y.n * a + y.n * z.m);
            out = out.sub(&shifted.mul(&dd).scale(&w));
        }
    }
    out
}

fn ac6() -> Outcome {
    let g = FieldMode::generic();
    for mu in [
        Scalar::one(),
        Scalar::from_rational(BigRational::new(BigInt::from(-5), BigInt::from(3))),
    ] {
        let p = params(2, g.clone(), mu.clone());
        let got = p.act_e1i(2, -1, -1, &Poly::var(Var::new(2, 1, 1)));
        ensure(got == Poly::constant(&mu * &g.qpow(-1)), || {
            format!("e12(-1,-1) x2(1,1) = {got}")
        })?;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(606);
    let mu = Scalar::from_int(7);
    let p3 = params(3, g.clone(), mu.clone());
    let w = ExponentWindow::centered(3);
    for _ in 0..50 {
        let m = random_monomial(&mut rng, 3, &w, 4);
        let v = Poly::monomial(m.clone());
        let d = m.degree() as i64;
        ensure(p3.act_e11(0, 0, &v) == v.scale(&(&mu - &Scalar::from_int(d))), || {
            format!("e11 eigenvalue on {m}")
        })?;
        let (sm, sn) = m.vars().fold((0, 0), |(a, b), x| (a + x.m, b + x.n));
        ensure(
            p3.act_d(DegreeOperator::D1, &v) == v.scale(&Scalar::from_int(sm)),
            || format!("D1 on {m}"),
        )?;
        ensure(
            p3.act_d(DegreeOperator::D2, &v) == v.scale(&Scalar::from_int(sn)),
            || format!("D2 on {m}"),
        )?;
    }

    let p2 = params(2, g.clone(), mu.clone());
    for case in 0..20 {
        let a = rng.gen_range(-3..=3);
        let b = rng.gen_range(-3..=3);
        let (m, n) = (rng.gen_range(-3..=3), rng.gen_range(-3..=3));
        // every fourth case forces the μ-term to fire
        let (m1, n1) = if case % 4 == 0 {
            (-a, -b)
        } else {
            (rng.gen_range(-3..=3), rng.gen_range(-3..=3))
        };
        let p1 = Var::new(2, m1, n1);
        let p2v = Var::new(2, m - m1, n - n1);
        let v = Poly::monomial(Monomial::from_vars([p1, p2v]));
        let target = Monomial::var(Var::new(2, m + a, n + b));

        let oracle = e12_oracle(a, b, &v, &mu, &g);
        let direct = p2.act_e1i(2, a, b, &v);
        ensure(oracle == direct, || {
            format!("oracle {oracle} vs operator {direct} on {v}")
        })?;

        let (ca, cb) = (Var::new(2, -a, -b), Var::new(2, m + a, n + b));
        let hits = [(p1, p2v), (p2v, p1)]
            .iter()
            .filter(|(x, y)| *x == ca && *y == cb)
            .count() as i64;
        let formula = &(&(&mu * &g.qpow(-a * b)) * &Scalar::from_int(hits))
            - &(&g.qpow(b * (m - m1) + a * n1 + n1 * (m - m1)) + &g.qpow(b * m1 + a * (n - n1) + m1 * (n - n1)));
        ensure(direct.coeff(&target) == formula, || {
            format!(
                "coefficient {} vs formula {formula} at (a,b)=({a},{b}) p={v}",
                direct.coeff(&target)
            )
        })?;
    }
    Ok("e12(-1,-1)x2(1,1) = mu q^-1; e11, D1, D2 eigenvalues on 50 monomials; 20 degree-two coefficients match the oracle".into())
}

fn ac7() -> Outcome {
    let g = FieldMode::generic();
    let targets = [field("root:4"), field("rational:3")];
    let mut rng = ChaCha8Rng::seed_from_u64(707);
    let w = ExponentWindow::centered(2);
    let mu_r = BigRational::new(BigInt::from(2), BigInt::from(5));
    for case in 0..200 {
        let l = 2 + case % 3;
        let gen = random_generator(&mut rng, l, &w);
        let kx = rng.gen_range(-3..=3);
        let terms: Vec<(Monomial, i64, i64)> = (0..rng.gen_range(1..=3))
            .map(|_| {
                (
                    random_monomial(&mut rng, l, &w, 3),
                    rng.gen_range(-4..=4),
                    rng.gen_range(-3..=3),
                )
            })
            .collect();
        let build = |f: &FieldMode| {
            let p = params(l, f.clone(), Scalar::from_rational(mu_r.clone()));
            let x = gen.to_elem(p.cfg()).unwrap().scale(&f.qpow(kx));
            let v: Poly = terms
                .iter()
                .map(|(m, c, e)| (m.clone(), &Scalar::from_int(*c) * &f.qpow(*e)))
                .collect();
            let out = p.act(&x, &v).unwrap();
            (out, format!("{x} on {v}"))
        };
        let (generic, what) = build(&g);
        for t in &targets {
            let spec = generic.map_coeffs(|c| c.specialize(t)).map_err(|e| e.to_string())?;
            let (native, _) = build(t);
            ensure(spec == native, || {
                format!("{t}: {what}: specialized {spec} vs native {native}")
            })?;
        }
    }
    Ok("200 seeded actions agree after specializing to root:4 and rational:3".into())
}

fn random_scalar_src(rng: &mut impl Rng) -> String {
    let a = rng.gen_range(-5..=5);
    let b = rng.gen_range(1..=4);
    let k = rng.gen_range(-3..=3);
    let c = rng.gen_range(2..=5);
    let j = rng.gen_range(1..=3);
    match rng.gen_range(0..6) {
        0 => a.to_string(),
        1 => format!("{a}/{b}"),
        2 => format!("q^{k}"),
        3 => format!("({a} + {b}*q^{k})"),
        4 => format!("({a}*q - {b})/({c} + q^{j})"),
        _ => format!("-q^{k}/{b}"),
    }
}

fn random_lie_src(rng: &mut impl Rng, l: usize) -> String {
    let terms: Vec<String> = (0..rng.gen_range(1..=4))
        .map(|_| {
            let c = random_scalar_src(rng);
            match rng.gen_range(0..6) {
                0 => format!("{c}*c_s"),
                1 => format!("{c}*d_t"),
                2 => format!(
                    "t^{}*E[{},{}]*s",
                    rng.gen_range(-2..=2),
                    rng.gen_range(1..=l),
                    rng.gen_range(1..=l)
                ),
                _ => format!(
                    "{c}*E[{},{}]*s^{}*t^{}",
                    rng.gen_range(1..=l),
                    rng.gen_range(1..=l),
                    rng.gen_range(-3..=3),
                    rng.gen_range(-3..=3)
                ),
            }
        })
        .collect();
    terms.join(if rng.gen_bool(0.5) { " + " } else { " - " })
}

fn random_poly_src(rng: &mut impl Rng, l: usize) -> String {
    let terms: Vec<String> = (0..rng.gen_range(1..=4))
        .map(|_| {
            let vars: Vec<String> = (0..rng.gen_range(0..=3))
                .map(|_| {
                    let v = format!(
                        "x{}({},{})",
                        rng.gen_range(2..=l),
                        rng.gen_range(-2..=2),
                        rng.gen_range(-2..=2)
                    );
                    if rng.gen_bool(0.3) {
                        format!("{v}^2")
                    } else {
                        v
                    }
                })
                .collect();
            let c = random_scalar_src(rng);
            if vars.is_empty() {
                c
            } else {
                format!("{c}*{}", vars.join("*"))
            }
        })
        .collect();
    terms.join(" + ")
}

fn ac8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(808);
    let modes = ["generic", "root:5", "rational:2/3"];
    for k in 0..100 {
        let cfg = AlgebraConfig::new(3, field(modes[k % 3])).unwrap();
        if k % 2 == 0 {
            let src = random_lie_src(&mut rng, 3);
            let x = parse_lie_expr(&src, &cfg).map_err(|e| format!("{src}: {e}"))?;
            let printed = x.to_string();
            let y = parse_lie_expr(&printed, &cfg).map_err(|e| format!("{printed}: {e}"))?;
            ensure(x == y && y.to_string() == printed, || {
                format!("round trip of {src} via {printed}")
            })?;
        } else {
            let src = random_poly_src(&mut rng, 3);
            let x = parse_poly_expr(&src, &cfg).map_err(|e| format!("{src}: {e}"))?;
            let printed = x.to_string();
            let y = parse_poly_expr(&printed, &cfg).map_err(|e| format!("{printed}: {e}"))?;
            ensure(x == y && y.to_string() == printed, || {
                format!("round trip of {src} via {printed}")
            })?;
        }
    }
    let args = [
        "qtorus", "report", "--mu", "0", "--max-k", "2", "--seed", "17", "--format", "json",
    ];
    let a = cli::run(args);
    let b = cli::run(args);
    ensure(a.code == 0 && !a.stdout.is_empty(), || {
        format!("report exited {}: {}", a.code, a.stderr)
    })?;
    ensure(a.stdout == b.stdout, || "report JSON differs between runs".into())?;
    Ok(format!(
        "100 seeded expressions round-trip; report JSON identical across runs ({} bytes)",
        a.stdout.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("AC1", "homomorphism, exhaustive l=2", ac1),
        ("AC2", "homomorphism, randomized l=3,4", ac2),
        ("AC3", "antisymmetry and Jacobi", ac3),
        ("AC4", "mu=1: no highest weight vectors beyond 1", ac4),
        ("AC5", "mu=0: degree-one candidates and closed submodule", ac5),
        ("AC6", "pointwise identities", ac6),
        ("AC7", "specialization consistency", ac7),
        ("AC8", "determinism and round-trip", ac8),
    ];
    let mut failed = 0;
    for (id, name, f) in criteria {
        let start = Instant::now();
        let r = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match r {
            Ok(detail) => println!("{id} PASS  {name}: {detail} [{secs:.1}s]"),
            Err(why) => {
                failed += 1;
                println!("{id} FAIL  {name}: {why} [{secs:.1}s]");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 8 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
