//! Command-line front end: subcommands with flag or JSON input, CSV and JSON output.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::Error;
use crate::kernel::quadrature::{gauss_laguerre, AdaptiveQuadrature, DEFAULT_NODES, MAX_NODES};
use crate::kernel::wfun::{k_theta, w_theta, W_SERIES_TOL};
use crate::ndim::RadialProblem;
use crate::operator::delta::{apply_phi, exp_delta_decomposed, exp_delta_series};
use crate::poly::ComplexPoly;
use crate::semigroup::{exp_integral_adaptive, solve_cauchy, InitialData, Profile};
use crate::series::TaylorSeries;
use crate::verify::{
    coefficient_ode_oracle, norm_bound_suite, trotter_convergence, zero_preservation_suite, ZeroSuiteConfig,
    CLASS_TOL,
};

/// Environment variable capping the adaptive quadrature size.
pub const MAX_QUAD_ENV: &str = "DS_MAX_QUAD";

pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "deltaop", version, about = "Operational calculus of (θ+ωz)D + zD²")]
pub struct Cli {
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Apply a polynomial symbol: φ(Δ_{θ,ω})f.
    Apply(ApplyArgs),
    /// Semigroup exp(aΔ_{θ,ω})f by series, decomposition or integral.
    Exp(ExpArgs),
    /// Solve ∂f/∂t = Δ_{θ,ω}f with f(0,z) = e^{−εz}h(z).
    Solve(SolveArgs),
    /// Solve the isotropic N-dimensional drift-diffusion problem.
    #[command(name = "solve-nd")]
    SolveNd(SolveNdArgs),
    /// Evaluate w_θ(ξ) or K_θ(z,s).
    Kernel(KernelArgs),
    /// Dump a generalized Gauss–Laguerre rule as JSON.
    Quad(QuadArgs),
    /// Run a verification suite; exit code 1 on any asserted violation.
    Verify(VerifyArgs),
    /// Run a JSON job file {"command", "params", "output_path", "precision"}.
    Run(RunArgs),
}

/// Failure of a CLI invocation with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn parse(msg: impl std::fmt::Display) -> Self {
        Self { code: EXIT_PARSE, message: format!("parse error: {msg}") }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Self { code: EXIT_PRECONDITION, message: e.to_string() }
    }
}

/// Rendered result of a command.
#[derive(Debug)]
pub struct Output {
    pub body: String,
    pub summary: String,
    /// Asserted violations found by `verify`.
    pub violations: usize,
}

// ---------- input formats ----------

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(untagged)]
enum Coeff {
    Real(f64),
    Pair([f64; 2]),
}

/// Coefficients as a JSON array of reals or `[re, im]` pairs.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(from = "Vec<Coeff>")]
pub struct CoeffList(pub Vec<Complex64>);

impl From<Vec<Coeff>> for CoeffList {
    fn from(v: Vec<Coeff>) -> Self {
        CoeffList(
            v.into_iter()
                .map(|c| match c {
                    Coeff::Real(x) => Complex64::new(x, 0.0),
                    Coeff::Pair([re, im]) => Complex64::new(re, im),
                })
                .collect(),
        )
    }
}

impl CoeffList {
    fn poly(&self) -> ComplexPoly<f64> {
        ComplexPoly::new(self.0.clone())
    }
}

/// The factor `h`: a bare coefficient list, `{"coeffs": …}` or `{"derivs": …, "bound_b": …}`.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum ProfileInput {
    Coeffs(CoeffList),
    Poly(ComplexPoly<f64>),
    Series(TaylorSeries<f64>),
}

impl ProfileInput {
    fn profile(&self) -> Profile {
        match self {
            ProfileInput::Coeffs(c) => Profile::Poly(c.poly()),
            ProfileInput::Poly(p) => Profile::Poly(p.clone()),
            ProfileInput::Series(s) => Profile::Series(s.clone()),
        }
    }
}

/// A single value or a list of values.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum OneOrMany {
    One(f64),
    Many(Vec<f64>),
}

impl OneOrMany {
    fn values(&self) -> Vec<f64> {
        match self {
            OneOrMany::One(x) => vec![*x],
            OneOrMany::Many(v) => v.clone(),
        }
    }
}

fn json_value<T: for<'de> Deserialize<'de>>(s: &str) -> Result<T, String> {
    serde_json::from_str(s).map_err(|e| e.to_string())
}

/// Complex sample points written as `[[re, im], …]`.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(transparent)]
pub struct Points(pub Vec<[f64; 2]>);

impl Points {
    fn complex(&self) -> Vec<Complex64> {
        self.0.iter().map(|&[re, im]| Complex64::new(re, im)).collect()
    }
}

/// `[x₁,…,x_N]` or `[[x₁,…],[…]]`.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum PointsInput {
    One(Vec<f64>),
    Many(Vec<Vec<f64>>),
}

impl PointsInput {
    fn points(&self) -> Vec<Vec<f64>> {
        match self {
            PointsInput::One(x) => vec![x.clone()],
            PointsInput::Many(v) => v.clone(),
        }
    }
}

// ---------- output formatting ----------

fn fmt_complex_list(v: &[Complex64]) -> String {
    if v.iter().all(|c| c.im == 0.0) {
        let items: Vec<String> = v.iter().map(|c| format!("{}", c.re)).collect();
        format!("[{}]", items.join(","))
    } else {
        let items: Vec<String> = v.iter().map(|c| format!("[{},{}]", c.re, c.im)).collect();
        format!("[{}]", items.join(","))
    }
}

fn fmt_poly(p: &ComplexPoly<f64>) -> String {
    if p.is_zero() {
        "[0]".to_string()
    } else {
        fmt_complex_list(p.coeffs())
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("report types serialize")
}

fn quadrature(theta: f64, max_nodes: usize) -> Result<AdaptiveQuadrature, Failure> {
    let max = max_nodes.clamp(1, MAX_NODES);
    Ok(AdaptiveQuadrature::with_sizes(theta, DEFAULT_NODES.min(max), max)?)
}

/// `DS_MAX_QUAD` if set and valid, otherwise the largest supported size.
pub fn max_quad_from_env() -> Result<usize, Failure> {
    match std::env::var(MAX_QUAD_ENV) {
        Ok(v) => v.trim().parse::<usize>().map_err(|_| Failure::parse(format!("{MAX_QUAD_ENV} = {v:?}"))),
        Err(_) => Ok(MAX_NODES),
    }
}

// ---------- commands ----------

#[derive(Debug, Clone, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ApplyArgs {
    /// Symbol coefficients, e.g. '[1,1]' or '[[1,0],[0,1]]'.
    #[arg(long, value_parser = json_value::<CoeffList>)]
    pub phi: CoeffList,
    /// Polynomial coefficients, lowest degree first.
    #[arg(long, value_parser = json_value::<CoeffList>)]
    pub f: CoeffList,
    #[arg(long)]
    pub theta: f64,
    #[arg(long)]
    pub omega: f64,
}

fn check_theta(theta: f64) -> Result<(), Failure> {
    if theta >= 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("theta must be >= 0, got {theta}")).into())
    }
}

fn run_apply(a: &ApplyArgs) -> Result<Output, Failure> {
    check_theta(a.theta)?;
    let out = apply_phi(&a.phi.poly(), &a.f.poly(), a.theta, a.omega);
    Ok(Output { body: fmt_poly(&out), summary: format!("apply: degree {:?}", out.degree()), violations: 0 })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    /// Truncated power series of the exponential.
    Series,
    /// Dilation composed with exp(γΔ_θ).
    #[default]
    Dec,
    /// Kernel integral (θ > 0; needs sample points).
    Int,
}

#[derive(Debug, Clone, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpArgs {
    #[arg(long, value_parser = json_value::<CoeffList>)]
    pub f: CoeffList,
    #[arg(long)]
    pub theta: f64,
    #[arg(long)]
    pub omega: f64,
    #[arg(long)]
    pub a: f64,
    #[arg(long, value_enum, default_value_t = Route::Dec)]
    #[serde(default)]
    pub route: Route,
    /// Sample points '[[re,im],...]'; output becomes CSV z,f(z).
    #[arg(long = "z", value_parser = json_value::<Points>)]
    #[serde(default)]
    pub z_samples: Option<Points>,
}

fn csv_samples(header: &str, rows: impl Iterator<Item = (String, Complex64)>) -> String {
    let mut s = format!("{header}\n");
    for (prefix, v) in rows {
        writeln!(s, "{prefix},{},{}", v.re, v.im).unwrap();
    }
    s
}

fn run_exp(a: &ExpArgs, max_quad: usize) -> Result<Output, Failure> {
    check_theta(a.theta)?;
    if !(a.a >= 0.0) {
        return Err(Error::Domain(format!("semigroup time must be >= 0, got {}", a.a)).into());
    }
    let f = a.f.poly();
    let zs = a.z_samples.as_ref().map(Points::complex);
    let coeffs = match a.route {
        Route::Dec => Some(exp_delta_decomposed(&f, a.theta, a.omega, a.a)),
        Route::Series => {
            let s = exp_delta_series(&f, a.theta, a.omega, a.a);
            if !s.converged {
                log::warn!("series route stopped after {} terms without converging", s.terms);
            }
            Some(s.value)
        }
        Route::Int => None,
    };
    match (coeffs, zs) {
        (Some(p), None) => Ok(Output { body: fmt_poly(&p), summary: format!("exp: route {:?}", a.route), violations: 0 }),
        (Some(p), Some(zs)) => {
            let rows = zs.iter().map(|z| (format!("{},{}", z.re, z.im), p.eval(*z)));
            Ok(Output { body: csv_samples("re(z),im(z),re(f),im(f)", rows), summary: format!("exp: {} samples", zs.len()), violations: 0 })
        }
        (None, None) => Err(Error::Domain("the integral route needs sample points (--z)".into()).into()),
        (None, Some(zs)) => {
            let q = quadrature(a.theta, max_quad)?;
            let mut vals = Vec::with_capacity(zs.len());
            for &z in &zs {
                vals.push(exp_integral_adaptive(|x| f.eval(Complex64::new(x, 0.0)), a.omega, a.a, &q, z)?.value);
            }
            let rows = zs.iter().zip(vals).map(|(z, v)| (format!("{},{}", z.re, z.im), v));
            Ok(Output { body: csv_samples("re(z),im(z),re(f),im(f)", rows), summary: format!("exp: {} samples by quadrature", zs.len()), violations: 0 })
        }
    }
}

#[derive(Debug, Clone, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolveArgs {
    #[arg(long)]
    pub theta: f64,
    #[arg(long)]
    pub omega: f64,
    /// One or more times, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    #[serde(deserialize_with = "one_or_many")]
    pub t: Vec<f64>,
    #[arg(long, default_value_t = 0.0)]
    #[serde(default)]
    pub epsilon: f64,
    /// Factor h: coefficient list, {"coeffs":…} or {"derivs":…,"bound_b":…}.
    #[arg(long, value_parser = json_value::<ProfileInput>)]
    pub h: ProfileInput,
    /// Sample points '[[re,im],...]'.
    #[arg(long = "z", value_parser = json_value::<Points>)]
    pub z_samples: Points,
}

fn one_or_many<'de, D: serde::Deserializer<'de>>(d: D) -> Result<Vec<f64>, D::Error> {
    Ok(OneOrMany::deserialize(d)?.values())
}

fn run_solve(a: &SolveArgs, max_quad: usize) -> Result<Output, Failure> {
    let data = InitialData::new(a.epsilon, a.h.profile())?;
    let zs = a.z_samples.complex();
    let quad = match (&data.h, a.theta > 0.0) {
        (Profile::Function(_), true) => Some(quadrature(a.theta, max_quad)?),
        _ => None,
    };
    let mut body = String::from("t,re(z),im(z),re(f),im(f)\n");
    for &t in &a.t {
        let vals = solve_cauchy(&data, a.theta, a.omega, t, &zs, quad.as_ref())?;
        for (z, v) in zs.iter().zip(vals) {
            writeln!(body, "{t},{},{},{},{}", z.re, z.im, v.re, v.im).unwrap();
        }
    }
    Ok(Output { body, summary: format!("solve: {} times x {} points", a.t.len(), zs.len()), violations: 0 })
}

#[derive(Debug, Clone, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolveNdArgs {
    /// Space dimension N.
    #[arg(long = "N")]
    #[serde(rename = "N")]
    pub dim_n: usize,
    /// Radial drift coefficient d (d ≥ −N).
    #[arg(long, allow_hyphen_values = true)]
    pub d: f64,
    /// Linear drift coefficient b.
    #[arg(long, allow_hyphen_values = true)]
    pub b: f64,
    #[arg(long, value_delimiter = ',', required = true)]
    #[serde(deserialize_with = "one_or_many")]
    pub t: Vec<f64>,
    #[arg(long, default_value_t = 0.0)]
    #[serde(default)]
    pub epsilon: f64,
    /// Factor h of the radial data G(x) = e^{−ε(x,x)}h((x,x)).
    #[arg(long, value_parser = json_value::<ProfileInput>)]
    pub h: ProfileInput,
    /// One point '[x1,...,xN]' or several '[[...],[...]]'.
    #[arg(long = "x", value_parser = json_value::<PointsInput>)]
    pub x_samples: PointsInput,
}

fn run_solve_nd(a: &SolveNdArgs) -> Result<Output, Failure> {
    let prob = RadialProblem::new(a.dim_n, a.d, a.b, InitialData::new(a.epsilon, a.h.profile())?)?;
    let xs = a.x_samples.points();
    let mut header = String::from("t");
    for i in 1..=a.dim_n {
        write!(header, ",x{i}").unwrap();
    }
    header.push_str(",re(F),im(F)\n");
    let mut body = header;
    for &t in &a.t {
        let vals = crate::ndim::solve_cauchy_nd(&prob, t, &xs)?;
        for (x, v) in xs.iter().zip(vals) {
            let coords: Vec<String> = x.iter().map(|c| c.to_string()).collect();
            writeln!(body, "{t},{},{},{}", coords.join(","), v.re, v.im).unwrap();
        }
    }
    Ok(Output { body, summary: format!("solve-nd: {} times x {} points", a.t.len(), xs.len()), violations: 0 })
}

#[derive(Debug, Clone, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KernelArgs {
    #[arg(long)]
    pub theta: f64,
    /// Evaluate w_θ at this point '[re,im]'.
    #[arg(long, value_parser = json_value::<[f64; 2]>)]
    #[serde(default)]
    pub xi: Option<[f64; 2]>,
    /// Evaluate K_θ(z, s) at this z '[re,im]' (requires --s).
    #[arg(long, value_parser = json_value::<[f64; 2]>, requires = "s")]
    #[serde(default)]
    pub z: Option<[f64; 2]>,
    #[arg(long)]
    #[serde(default)]
    pub s: Option<f64>,
    /// Relative stopping tolerance of the w_θ series.
    #[arg(long, default_value_t = W_SERIES_TOL)]
    #[serde(default = "default_w_tol")]
    pub tol: f64,
}

fn default_w_tol() -> f64 {
    W_SERIES_TOL
}

fn run_kernel(a: &KernelArgs) -> Result<Output, Failure> {
    let mut out = serde_json::Map::new();
    out.insert("theta".into(), json!(a.theta));
    if let Some([re, im]) = a.xi {
        let w = w_theta(a.theta, Complex64::new(re, im), a.tol)?;
        out.insert("w".into(), json!([w.re, w.im]));
    }
    if let (Some([re, im]), Some(s)) = (a.z, a.s) {
        let k = k_theta(a.theta, Complex64::new(re, im), s)?;
        out.insert("k".into(), json!([k.re, k.im]));
    }
    if out.len() == 1 {
        return Err(Failure::parse("kernel needs --xi or --z with --s"));
    }
    Ok(Output { body: to_json(&out), summary: "kernel: evaluated".into(), violations: 0 })
}

#[derive(Debug, Clone, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadArgs {
    #[arg(long)]
    pub theta: f64,
    /// Number of nodes (at most 256).
    #[arg(long, default_value_t = DEFAULT_NODES)]
    pub n: usize,
}

fn run_quad(a: &QuadArgs) -> Result<Output, Failure> {
    let rule = gauss_laguerre(a.theta, a.n)?;
    Ok(Output { body: to_json(&rule), summary: format!("quad: {} nodes", rule.len()), violations: 0 })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Zeros,
    Trotter,
    Ode,
    Norm,
    All,
}

#[derive(Debug, Clone, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
    #[arg(long, default_value_t = 0)]
    #[serde(default)]
    pub seed: u64,
    /// Randomized trials per configuration (cases for the norm suite).
    #[arg(long, default_value_t = 200)]
    #[serde(default = "default_trials")]
    pub trials: usize,
    /// Tolerance on imaginary and positive real parts of roots.
    #[arg(long, default_value_t = CLASS_TOL)]
    #[serde(default = "default_class_tol")]
    pub tol: f64,
}

fn default_trials() -> usize {
    200
}

fn default_class_tol() -> f64 {
    CLASS_TOL
}

fn run_verify(a: &VerifyArgs) -> Result<Output, Failure> {
    let mut report = serde_json::Map::new();
    let mut violations = 0;
    let mut summary = Vec::new();
    let want = |s: Suite| a.suite == s || a.suite == Suite::All;
    if want(Suite::Zeros) {
        let cfg = ZeroSuiteConfig { seed: a.seed, trials: a.trials, tol: a.tol, ..Default::default() };
        let r = zero_preservation_suite(&cfg);
        violations += r.asserted_violations;
        summary.push(format!("zeros {} asserted / {} exploratory violations", r.asserted_violations, r.exploratory_violations));
        report.insert("zeros".into(), serde_json::to_value(&r).expect("serializable"));
    }
    if want(Suite::Trotter) {
        let f = ComplexPoly::from_real(&[0.0, 0.0, 0.0, 1.0]);
        let ns = [4, 16, 64];
        let errs = trotter_convergence(&f, 1.0, 1.0, 1.0, &ns);
        let ratios: Vec<f64> = errs.windows(2).map(|w| w[1] / w[0]).collect();
        let bad = ratios.iter().filter(|r| (**r - 0.25).abs() > 0.3 * 0.25).count();
        violations += bad;
        summary.push(format!("trotter ratios {ratios:?}"));
        report.insert("trotter".into(), json!({"f": [0, 0, 0, 1], "theta": 1, "omega": 1, "a": 1, "ns": ns, "errors": errs, "ratios": ratios}));
    }
    if want(Suite::Ode) {
        let mut worst: f64 = 0.0;
        for &theta in &[0.5, 1.0, 2.5] {
            for &omega in &[-0.5, 0.0, 0.7] {
                for &t in &[0.1, 1.0] {
                    let g = ComplexPoly::from_real(&[1.0, -0.5, 0.25, 0.1, -0.05]);
                    let exact = exp_delta_decomposed(&g, theta, omega, t);
                    let ode = coefficient_ode_oracle(&g, theta, omega, t, 2000)?;
                    worst = worst.max(ode.max_coeff_diff(&exact) / exact.max_abs_coeff());
                }
            }
        }
        if worst > 1e-7 {
            violations += 1;
        }
        summary.push(format!("ode worst relative error {worst:e}"));
        report.insert("ode".into(), json!({"worst_relative_error": worst}));
    }
    if want(Suite::Norm) {
        let r = norm_bound_suite(a.seed, a.trials.clamp(1, 100), (-0.5, 0.7))?;
        let failed = r.cases.len() - r.passed;
        violations += failed;
        summary.push(format!("norm {}/{} within bound", r.passed, r.cases.len()));
        report.insert("norm".into(), serde_json::to_value(&r).expect("serializable"));
    }
    report.insert("asserted_violations".into(), json!(violations));
    Ok(Output { body: to_json(&report), summary: format!("verify: {}", summary.join("; ")), violations })
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    /// Job file.
    #[arg(long)]
    pub job: PathBuf,
}

/// Tolerance overrides of a job file.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Precision {
    /// Root tolerance of the zero-preservation suite.
    #[serde(default)]
    pub class_tol: Option<f64>,
    /// Series tolerance of w_θ.
    #[serde(default)]
    pub w_tol: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum JobCommand {
    Apply,
    Exp,
    Solve,
    SolveNd,
    Kernel,
    Quad,
    Verify,
}

/// A complete job read from JSON; unknown fields are rejected.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub command: JobCommand,
    pub params: serde_json::Value,
    #[serde(default)]
    pub output_path: Option<PathBuf>,
    #[serde(default)]
    pub precision: Precision,
}

fn params<T: for<'de> Deserialize<'de>>(v: &serde_json::Value) -> Result<T, Failure> {
    T::deserialize(v).map_err(Failure::parse)
}

/// Parses a job file's contents into a command and an output path.
pub fn parse_job(text: &str) -> Result<(Command, Option<PathBuf>), Failure> {
    let job: JobSpec = serde_json::from_str(text).map_err(Failure::parse)?;
    let p = &job.params;
    let cmd = match job.command {
        JobCommand::Apply => Command::Apply(params(p)?),
        JobCommand::Exp => Command::Exp(params(p)?),
        JobCommand::Solve => Command::Solve(params(p)?),
        JobCommand::SolveNd => Command::SolveNd(params(p)?),
        JobCommand::Kernel => {
            let mut k: KernelArgs = params(p)?;
            if let Some(tol) = job.precision.w_tol {
                k.tol = tol;
            }
            Command::Kernel(k)
        }
        JobCommand::Quad => Command::Quad(params(p)?),
        JobCommand::Verify => {
            let mut v: VerifyArgs = params(p)?;
            if let Some(tol) = job.precision.class_tol {
                v.tol = tol;
            }
            Command::Verify(v)
        }
    };
    Ok((cmd, job.output_path))
}

/// Executes one command.
pub fn execute(cmd: &Command) -> Result<Output, Failure> {
    let max_quad = max_quad_from_env()?;
    match cmd {
        Command::Apply(a) => run_apply(a),
        Command::Exp(a) => run_exp(a, max_quad),
        Command::Solve(a) => run_solve(a, max_quad),
        Command::SolveNd(a) => run_solve_nd(a),
        Command::Kernel(a) => run_kernel(a),
        Command::Quad(a) => run_quad(a),
        Command::Verify(a) => run_verify(a),
        Command::Run(r) => {
            let text = std::fs::read_to_string(&r.job).map_err(|e| Failure::parse(format!("{}: {e}", r.job.display())))?;
            let (inner, _) = parse_job(&text)?;
            execute(&inner)
        }
    }
}

fn write_output(path: Option<&Path>, body: &str) -> Result<(), Failure> {
    let text = if body.ends_with('\n') { body.to_string() } else { format!("{body}\n") };
    match path {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| Failure { code: EXIT_PRECONDITION, message: format!("cannot write {}: {e}", p.display()) }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Runs the parsed command line and returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    let job_output = match &cli.command {
        Command::Run(r) => match std::fs::read_to_string(&r.job).map_err(|e| Failure::parse(format!("{}: {e}", r.job.display()))).and_then(|t| parse_job(&t)) {
            Ok((_, out)) => out,
            Err(f) => {
                eprintln!("{}", f.message);
                return f.code;
            }
        },
        _ => None,
    };
    let result = execute(&cli.command).and_then(|out| {
        write_output(cli.output.as_deref().or(job_output.as_deref()), &out.body)?;
        Ok(out)
    });
    match result {
        Ok(out) => {
            eprintln!("{}", out.summary);
            if out.violations > 0 {
                EXIT_VIOLATION
            } else {
                0
            }
        }
        Err(f) => {
            eprintln!("{}", f.message);
            f.code
        }
    }
}
