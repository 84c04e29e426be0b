//! Command-line front end. Everything here returns strings and exit codes;
//! only `main` touches stdout, stderr and files.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::eala::AlgebraConfig;
use crate::error::{Error, Result};
use crate::fock::RepParams;
use crate::hwv::{hwv_solve, irreducibility_report, IrreducibilityReport, Truncation, Verdict};
use crate::parse::{parse_lie_expr, parse_poly_expr, parse_scalar};
use crate::scalar::FieldMode;
use crate::verify::{run_verify, VerifyReport, VerifySpec};
use crate::window::ExponentWindow;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "qtorus",
    version,
    about = "Exact free-field realization of gl_l over a quantum torus"
)]
pub struct Cli {
    #[command(flatten)]
    pub config: CliConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Debug, Args)]
pub struct CliConfig {
    /// Matrix size l (at least 2)
    #[arg(long, global = true, default_value_t = 2)]
    pub l: usize,
    /// generic, root:L or rational:P/Q
    #[arg(long, global = true, default_value = "generic")]
    pub q: FieldMode,
    /// Highest weight parameter, any scalar expression
    #[arg(long, global = true, default_value = "1", allow_hyphen_values = true)]
    pub mu: String,
    /// Variable exponent window, LO:HI or MLO:MHI,NLO:NHI
    #[arg(long, global = true, default_value = "-1:1", allow_hyphen_values = true)]
    pub window: ExponentWindow,
    /// Generator exponent window; defaults to the window grown by 1
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub test_window: Option<ExponentWindow>,
    #[arg(long, global = true, default_value_t = 2)]
    pub max_k: u32,
    #[arg(long, global = true, default_value_t = 2)]
    pub degree_cap: u32,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Random trials instead of the exhaustive sweep (verify only)
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the output here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the bracket axioms and the homomorphism property
    Verify,
    /// Apply an algebra element to a polynomial
    Act { lie: String, poly: String },
    /// Bracket of two algebra elements
    Bracket { x: String, y: String },
    /// Highest weight vector search in one weight space
    Hwv {
        /// k_2,...,k_l
        #[arg(long, value_delimiter = ',')]
        kvec: Vec<u32>,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        ds: i64,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        dt: i64,
    },
    /// Run the search over all small weight spaces and summarize
    Report,
}

impl CliConfig {
    pub fn params(&self) -> Result<RepParams> {
        if self.window.is_empty() {
            return Err(Error::InvalidConfig("window is empty".into()));
        }
        let cfg = AlgebraConfig::new(self.l, self.q.clone())?;
        let mu = parse_scalar(&self.mu, cfg.field())?;
        RepParams::new(cfg, mu)
    }

    pub fn test_window(&self) -> ExponentWindow {
        self.test_window.unwrap_or_else(|| self.window.dilate(1))
    }

    pub fn verify_spec(&self) -> VerifySpec {
        match self.samples {
            Some(trials) => VerifySpec {
                generator_window: self.test_window.unwrap_or(self.window),
                ..VerifySpec::sampled(self.window, self.degree_cap, self.seed, trials)
            },
            None => VerifySpec {
                generator_window: self.test_window(),
                jacobi_samples: 200,
                ..VerifySpec::exhaustive(self.window, self.degree_cap)
            },
        }
    }
}

/// Result of one invocation: exit code plus the text for stdout or stderr.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
    pub out_file: Option<PathBuf>,
}

impl Outcome {
    fn usage(msg: String) -> Self {
        Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: msg,
            out_file: None,
        }
    }
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

pub fn cmd_verify(params: &RepParams, spec: &VerifySpec) -> Result<VerifyReport> {
    run_verify(params, spec)
}

pub fn render_verify(r: &VerifyReport, format: Format) -> String {
    if format == Format::Json {
        return json(r);
    }
    let mut out = format!("l={} q={} mu={}\n", r.l, r.q, r.mu);
    for a in &r.axioms {
        out += &format!("{}: {} checked, {} failures\n", a.name, a.checked, a.failures.len());
        for f in &a.failures {
            out += &format!("  FAIL {} -> {}\n", f.elements.join(" ; "), f.residual);
        }
    }
    let h = &r.homomorphism;
    out += &format!("{}: {} checked, {} failures\n", h.name, h.checked, h.failures.len());
    for f in &h.failures {
        out += &format!(
            "  FAIL x={} y={} p={}\n    lhs={}\n    rhs={}\n",
            f.x, f.y, f.p, f.lhs, f.rhs
        );
    }
    out += if r.passed() { "PASS\n" } else { "FAIL\n" };
    out
}

pub fn cmd_act(params: &RepParams, lie: &str, poly: &str) -> Result<String> {
    let x = parse_lie_expr(lie, params.cfg())?;
    let p = parse_poly_expr(poly, params.cfg())?;
    Ok(params.act(&x, &p)?.to_string())
}

pub fn cmd_bracket(cfg: &AlgebraConfig, x: &str, y: &str) -> Result<String> {
    let x = parse_lie_expr(x, cfg)?;
    let y = parse_lie_expr(y, cfg)?;
    Ok(x.bracket(&y)?.to_string())
}

#[derive(Clone, Debug, Serialize)]
pub struct HwvOutput {
    pub kvec: Vec<u32>,
    pub ds: i64,
    pub dt: i64,
    pub dim_support: usize,
    pub basis: Vec<String>,
    pub caveat: Truncation,
}

pub fn cmd_hwv(
    params: &RepParams,
    kvec: &[u32],
    ds: i64,
    dt: i64,
    support: &ExponentWindow,
    test: &ExponentWindow,
) -> Result<HwvOutput> {
    let r = hwv_solve(kvec, ds, dt, support, test, params)?;
    Ok(HwvOutput {
        kvec: kvec.to_vec(),
        ds,
        dt,
        dim_support: r.support.len(),
        basis: r.basis.iter().map(ToString::to_string).collect(),
        caveat: r.caveat,
    })
}

pub fn render_hwv(h: &HwvOutput, format: Format) -> String {
    if format == Format::Json {
        return json(h);
    }
    let mut out = format!(
        "kvec={:?} ds={} dt={} dim_support={} dim_nullspace={} status={:?}\n",
        h.kvec,
        h.ds,
        h.dt,
        h.dim_support,
        h.basis.len(),
        h.caveat.status
    );
    for b in &h.basis {
        out += &format!("  {b}\n");
    }
    out
}

pub fn cmd_report(
    params: &RepParams,
    support: &ExponentWindow,
    test: &ExponentWindow,
    max_k: u32,
    degree_cap: u32,
) -> Result<IrreducibilityReport> {
    irreducibility_report(params, support, test, max_k, degree_cap)
}

pub fn render_report(r: &IrreducibilityReport, format: Format) -> String {
    if format == Format::Json {
        return r.to_json() + "\n";
    }
    let mut out = format!(
        "l={} q={} mu={} support={} test={}\n",
        r.params.l, r.params.q, r.params.mu, r.windows.support, r.windows.test
    );
    for c in &r.cells {
        out += &format!(
            "kvec={:?} ds={} dt={} dim_support={} dim_nullspace={}{}\n",
            c.kvec,
            c.ds,
            c.dt,
            c.dim_support,
            c.dim_nullspace,
            if c.certified { " certified" } else { " candidate" }
        );
    }
    if let Some(p) = &r.constant_term_probe {
        out += &format!(
            "constant-term probe: {} monomials, {} generators, {} violations\n",
            p.monomials_checked,
            p.generators,
            p.violations.len()
        );
    }
    for c in &r.caveats {
        out += &format!("caveat: {c}\n");
    }
    out += &format!(
        "verdict: {}\n",
        serde_json::to_value(r.verdict).expect("enum").as_str().unwrap_or("")
    );
    out
}

fn execute(cli: &Cli) -> Result<(i32, String)> {
    let c = &cli.config;
    let params = c.params()?;
    let fmt = c.format;
    Ok(match &cli.command {
        Command::Verify => {
            let r = cmd_verify(&params, &c.verify_spec())?;
            let code = if r.passed() { EXIT_OK } else { EXIT_FAILURE };
            (code, render_verify(&r, fmt))
        }
        Command::Act { lie, poly } => {
            let p = cmd_act(&params, lie, poly)?;
            let text = match fmt {
                Format::Text => p + "\n",
                Format::Json => json(&serde_json::json!({ "result": p })),
            };
            (EXIT_OK, text)
        }
        Command::Bracket { x, y } => {
            let b = cmd_bracket(params.cfg(), x, y)?;
            let text = match fmt {
                Format::Text => b + "\n",
                Format::Json => json(&serde_json::json!({ "result": b })),
            };
            (EXIT_OK, text)
        }
        Command::Hwv { kvec, ds, dt } => {
            let h = cmd_hwv(&params, kvec, *ds, *dt, &c.window, &c.test_window())?;
            (EXIT_OK, render_hwv(&h, fmt))
        }
        Command::Report => {
            let r = cmd_report(&params, &c.window, &c.test_window(), c.max_k, c.degree_cap)?;
            let code = if r.verdict == Verdict::Inconsistent {
                EXIT_FAILURE
            } else {
                EXIT_OK
            };
            (code, render_report(&r, fmt))
        }
    })
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                    out_file: None,
                }
            } else {
                Outcome::usage(text)
            };
        }
    };
    match execute(&cli) {
        Ok((code, text)) => Outcome {
            code,
            stdout: text,
            stderr: String::new(),
            out_file: cli.config.out.clone(),
        },
        Err(e) => Outcome::usage(format!("error: {e}\n")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Outcome {
        run(std::iter::once("qtorus").chain(args.iter().copied()))
    }

    #[test]
    fn act_command() {
        let o = run_args(&["act", "E[2,1]*s*t + E[2,2]", "x2(0,0)"]);
        assert_eq!(o.code, 0);
        assert_eq!(o.stdout, "x2(0,0) + x2(0,0)*x2(1,1)\n");
    }

    #[test]
    fn bracket_command() {
        let o = run_args(&["bracket", "E[1,2]*s*t", "E[2,1]*s^-1*t^-1"]);
        assert_eq!(o.stdout, "q^-1*E[1,1] - q^-1*E[2,2] + q^-1*c_s + q^-1*c_t\n");
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run_args(&["act", "E[3,1]", "1"]).code, 2);
        assert_eq!(run_args(&["act", "E[1,", "1"]).code, 2);
        assert_eq!(run_args(&["--q", "rational:0", "verify"]).code, 2);
        assert_eq!(run_args(&["--l", "1", "verify"]).code, 2);
        assert_eq!(run_args(&["--window", "2:1", "report"]).code, 2);
        assert_eq!(run_args(&["frobnicate"]).code, 2);
        assert_eq!(run_args(&["--help"]).code, 0);
    }

    #[test]
    fn negative_window_values() {
        let o = run_args(&[
            "hwv",
            "--kvec",
            "1",
            "--ds",
            "-1",
            "--window",
            "-1:1",
            "--test-window",
            "-2:2",
        ]);
        assert_eq!(o.code, 0, "{}", o.stderr);
        assert!(o.stdout.contains("dim_nullspace=0"));
    }

    #[test]
    fn small_sampled_verify_passes() {
        let o = run_args(&[
            "verify",
            "--l",
            "3",
            "--samples",
            "30",
            "--seed",
            "4",
            "--window",
            "-2:2",
        ]);
        assert_eq!(o.code, 0, "{}", o.stdout);
        assert!(o.stdout.ends_with("PASS\n"));
    }

    #[test]
    fn report_json_is_stable() {
        let args = ["report", "--max-k", "1", "--mu", "0", "--format", "json"];
        let a = run_args(&args);
        let b = run_args(&args);
        assert_eq!(a.code, 0, "{}", a.stderr);
        assert_eq!(a.stdout, b.stdout);
        assert!(a.stdout.contains("\"verdict\": \"reducible_consistent\""));
    }
}
