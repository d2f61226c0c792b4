//! Monitor for `‖φ(Δ_{θ,ω})f‖_c ≤ (1 − bγ(a,ω))^{−θ}‖φ‖_a‖f‖_b`, `c = c(b)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::operator::delta::apply_phi;
use crate::params::{c_of_b, gamma_factor};
use crate::poly::ComplexPoly;
use crate::series::{norm_b, TaylorSeries};
use crate::verify::zeros::random_p_plus;

/// Relative slack allowed for round-off.
pub const BOUND_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NormBound {
    pub lhs: f64,
    pub rhs: f64,
    pub c: f64,
    pub ok: bool,
}

fn poly_norm(p: &ComplexPoly<f64>, b: f64) -> Result<f64> {
    Ok(norm_b(&TaylorSeries::from_poly(p, p.coeffs().len()), b)?.value)
}

pub fn norm_bound_check(
    phi: &ComplexPoly<f64>,
    f: &ComplexPoly<f64>,
    theta: f64,
    omega: f64,
    a: f64,
    b: f64,
) -> Result<NormBound> {
    if !(a > 0.0 && b > 0.0) {
        return Err(Error::Domain(format!("growth parameters must be positive, got a = {a}, b = {b}")));
    }
    let c = c_of_b(a, omega, b)?;
    let lhs = poly_norm(&apply_phi(phi, f, theta, omega), c)?;
    let rhs = (1.0 - b * gamma_factor(a, omega)).powf(-theta) * poly_norm(phi, a)? * poly_norm(f, b)?;
    Ok(NormBound { lhs, rhs, c, ok: lhs <= rhs * (1.0 + BOUND_SLACK) })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NormCase {
    pub seed: u64,
    pub theta: f64,
    pub omega: f64,
    pub a: f64,
    pub b: f64,
    pub result: NormBound,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NormSuiteReport {
    pub cases: Vec<NormCase>,
    pub passed: usize,
}

/// Random admissible cases: `θ ∈ [0,3]`, `ω` uniform on `omega_range`,
/// `a ∈ (0, 1]`, `b` a uniform fraction of `1/γ(a,ω)`, and `φ, f ∈ 𝒫⁺` of
/// degree at most 8 with roots in `[−5, 0]`.
pub fn norm_bound_suite(seed: u64, cases: usize, omega_range: (f64, f64)) -> Result<NormSuiteReport> {
    let mut out = Vec::with_capacity(cases);
    for i in 0..cases {
        let case_seed = seed.wrapping_mul(0x2545_F491_4F6C_DD1D) ^ i as u64;
        let mut rng = ChaCha8Rng::seed_from_u64(case_seed);
        let theta = rng.random_range(0.0..3.0);
        let omega = if omega_range.0 < omega_range.1 { rng.random_range(omega_range.0..omega_range.1) } else { omega_range.0 };
        let a = rng.random_range(0.05..1.0);
        let b = rng.random_range(0.05..0.95) / gamma_factor(a, omega);
        let dphi = rng.random_range(0..=8);
        let df = rng.random_range(0..=8);
        let phi = random_p_plus(&mut rng, dphi);
        let f = random_p_plus(&mut rng, df);
        let result = norm_bound_check(&phi, &f, theta, omega, a, b)?;
        out.push(NormCase { seed: case_seed, theta, omega, a, b, result });
    }
    let passed = out.iter().filter(|c| c.result.ok).count();
    Ok(NormSuiteReport { cases: out, passed })
}
