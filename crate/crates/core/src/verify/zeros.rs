//! Membership in `𝒫⁺` (real nonpositive zeros only) and the randomized
//! zero-preservation suite.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::operator::delta::{apply_phi, exp_delta_decomposed};
use crate::poly::ComplexPoly;
use crate::verify::roots::roots;

/// Default tolerance on imaginary and positive real parts of roots.
pub const CLASS_TOL: f64 = 1e-7;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZeroReport {
    #[serde(with = "crate::json::complex_vec")]
    pub roots: Vec<Complex64>,
    pub max_imag: f64,
    /// Largest real part; `None` when there are no roots.
    pub max_real_part: Option<f64>,
    pub in_class: bool,
    pub tolerance: f64,
    /// The polynomial was constant (possibly zero).
    pub degenerate: bool,
}

pub fn laguerre_class_check(p: &ComplexPoly<f64>, tol: f64) -> ZeroReport {
    let rs = roots(p);
    let max_imag = rs.iter().map(|r| r.im.abs()).fold(0.0, f64::max);
    let max_real_part = rs.iter().map(|r| r.re).reduce(f64::max);
    let in_class = max_imag <= tol && max_real_part.is_none_or(|m| m <= tol);
    ZeroReport {
        degenerate: p.degree().is_none_or(|d| d == 0),
        roots: rs,
        max_imag,
        max_real_part,
        in_class,
        tolerance: tol,
    }
}

/// Which symbol a configuration applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SymbolKind {
    /// Random `φ ∈ 𝒫⁺` applied through `φ(Δ_{θ,ω})`.
    General,
    /// `exp(aΔ_{θ,ω})`.
    Exponential,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZeroSuiteConfig {
    pub seed: u64,
    pub trials: usize,
    pub deg_max: usize,
    pub thetas: Vec<f64>,
    pub omegas: Vec<f64>,
    pub a_values: Vec<f64>,
    pub tol: f64,
}

impl Default for ZeroSuiteConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            trials: 200,
            deg_max: 8,
            thetas: vec![0.0, 0.5, 1.0, 2.5],
            omegas: vec![-1.0, -0.3, 0.0, 0.3, 1.0],
            a_values: vec![0.1, 1.0],
            tol: CLASS_TOL,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    /// Seed of the per-trial generator; [`trial_inputs`] rebuilds the inputs.
    pub seed: u64,
    pub max_imag: f64,
    pub max_real_part: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConfigOutcome {
    pub kind: SymbolKind,
    pub theta: f64,
    pub omega: f64,
    pub a: Option<f64>,
    pub trials: usize,
    pub violations: Vec<Violation>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZeroSuiteReport {
    pub config: ZeroSuiteConfig,
    /// Configurations where preservation is proven: general symbols with
    /// `ω ≥ 0`, and the exponential symbol for every `ω`.
    pub asserted: Vec<ConfigOutcome>,
    /// General symbols with `ω < 0`, reported without any claim.
    pub exploratory: Vec<ConfigOutcome>,
    pub asserted_violations: usize,
    pub exploratory_violations: usize,
}

/// `C·∏(z + rⱼ)` with `rⱼ` uniform on `[0, 5]` and `C` uniform on `[0.5, 2]`.
pub fn random_p_plus(rng: &mut impl Rng, degree: usize) -> ComplexPoly<f64> {
    let lead = rng.random_range(0.5..2.0);
    let roots: Vec<Complex64> = (0..degree).map(|_| Complex64::new(-rng.random_range(0.0..5.0), 0.0)).collect();
    ComplexPoly::from_roots(Complex64::new(lead, 0.0), &roots)
}

/// The `(φ, f)` pair drawn for a trial seed: `deg φ ∈ [0, deg_max]`, `deg f ∈ [1, deg_max]`.
pub fn trial_inputs(seed: u64, deg_max: usize) -> (ComplexPoly<f64>, ComplexPoly<f64>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dphi = rng.random_range(0..=deg_max);
    let df = rng.random_range(1..=deg_max.max(1));
    let phi = random_p_plus(&mut rng, dphi);
    let f = random_p_plus(&mut rng, df);
    (phi, f)
}

fn trial_seed(base: u64, config: usize, trial: usize) -> u64 {
    base.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ ((config as u64) << 32) ^ trial as u64
}

fn run_config(cfg: &ZeroSuiteConfig, index: usize, kind: SymbolKind, theta: f64, omega: f64, a: Option<f64>) -> ConfigOutcome {
    let violations = (0..cfg.trials)
        .into_par_iter()
        .filter_map(|trial| {
            let seed = trial_seed(cfg.seed, index, trial);
            let (phi, f) = trial_inputs(seed, cfg.deg_max);
            let out = match kind {
                SymbolKind::General => apply_phi(&phi, &f, theta, omega),
                SymbolKind::Exponential => exp_delta_decomposed(&f, theta, omega, a.unwrap_or(1.0)),
            };
            let report = laguerre_class_check(&out, cfg.tol);
            (!report.in_class).then_some(Violation {
                seed,
                max_imag: report.max_imag,
                max_real_part: report.max_real_part,
            })
        })
        .collect();
    ConfigOutcome { kind, theta, omega, a, trials: cfg.trials, violations }
}

/// Runs every `(θ, ω)` with a random symbol and every `(θ, ω, a)` with the
/// exponential symbol. Output is independent of thread scheduling.
pub fn zero_preservation_suite(cfg: &ZeroSuiteConfig) -> ZeroSuiteReport {
    let mut asserted = Vec::new();
    let mut exploratory = Vec::new();
    let mut index = 0;
    for &theta in &cfg.thetas {
        for &omega in &cfg.omegas {
            let out = run_config(cfg, index, SymbolKind::General, theta, omega, None);
            index += 1;
            if omega >= 0.0 {
                asserted.push(out);
            } else {
                exploratory.push(out);
            }
            for &a in &cfg.a_values {
                asserted.push(run_config(cfg, index, SymbolKind::Exponential, theta, omega, Some(a)));
                index += 1;
            }
        }
    }
    let count = |v: &[ConfigOutcome]| v.iter().map(|c| c.violations.len()).sum();
    ZeroSuiteReport {
        asserted_violations: count(&asserted),
        exploratory_violations: count(&exploratory),
        config: cfg.clone(),
        asserted,
        exploratory,
    }
}
