//! Isotropic drift-diffusion in `ℝᴺ`,
//! `∂F/∂t = ΔF + (d/(x,x) + b)(x,∇F)`, reduced to the one-dimensional
//! semigroup in the radial variable `z = (x,x)`.
//!
//! For `F(x) = f((x,x))` the right side equals `4(Δ_{θ,ω}f)((x,x))` with
//! `θ = (N+d)/2` and `ω = b/2`, so `F(t,x) = [exp(4tΔ_{θ,ω})f]((x,x))`.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::kernel::quadrature::AdaptiveQuadrature;
use crate::kernel::wfun::ln_k_theta;
use crate::operator::delta::apply_delta;
use crate::params::{gamma_factor, nu};
use crate::poly::ComplexPoly;
use crate::semigroup::{solve_cauchy, InitialData, Profile};

/// One-dimensional parameters of the radial reduction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lift {
    pub theta: f64,
    pub omega: f64,
}

impl Lift {
    /// One-dimensional semigroup time for physical time `t`.
    pub fn time(&self, t: f64) -> f64 {
        4.0 * t
    }
}

pub fn lift_params(n: usize, d: f64, b: f64) -> Result<Lift> {
    if n == 0 {
        return Err(Error::Domain("dimension N must be positive".into()));
    }
    if !(d >= -(n as f64)) {
        return Err(Error::Domain(format!("drift d = {d} must satisfy d >= -N = -{n}")));
    }
    Ok(Lift { theta: (n as f64 + d) / 2.0, omega: b / 2.0 })
}

fn dot(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum()
}

/// `|LHS − RHS|` for `F(x) = f((x,x))`: the left side applies the
/// `N`-dimensional operator coordinate by coordinate, the right side is
/// `4(Δ_{θ,ω}f)((x,x))`.
pub fn radial_identity_check(f: &ComplexPoly<f64>, n: usize, d: f64, b: f64, x: &[f64]) -> Result<f64> {
    let lift = lift_params(n, d, b)?;
    if x.len() != n {
        return Err(Error::Domain(format!("point has {} coordinates, expected {n}", x.len())));
    }
    let r = dot(x);
    if r == 0.0 && d != 0.0 {
        return Err(Error::Domain("x = 0 is singular for the drift d/(x,x)".into()));
    }
    let z = Complex64::new(r, 0.0);
    let f1 = f.derivative();
    let d1 = f1.eval(z);
    let d2 = f1.derivative().eval(z);
    // ∂ᵢF = 2xᵢf′, ∂ᵢ²F = 2f′ + 4xᵢ²f″
    let mut laplacian = Complex64::new(0.0, 0.0);
    let mut radial = Complex64::new(0.0, 0.0);
    for &xi in x {
        laplacian += 2.0 * d1 + 4.0 * xi * xi * d2;
        radial += xi * (2.0 * xi * d1);
    }
    let drift = if r == 0.0 { b } else { d / r + b };
    let lhs = laplacian + drift * radial;
    let rhs = 4.0 * apply_delta(f, lift.theta, lift.omega).eval(z);
    Ok((lhs - rhs).norm())
}

/// `∂F/∂t = ΔF + (d/(x,x) + b)(x,∇F)` with radial data `G(x) = e^{−ε(x,x)}h((x,x))`.
#[derive(Debug, Clone)]
pub struct RadialProblem {
    pub dim_n: usize,
    pub drift_d: f64,
    pub drift_b: f64,
    pub data: InitialData,
}

impl RadialProblem {
    pub fn new(dim_n: usize, drift_d: f64, drift_b: f64, data: InitialData) -> Result<Self> {
        lift_params(dim_n, drift_d, drift_b)?;
        Ok(Self { dim_n, drift_d, drift_b, data })
    }

    pub fn lift(&self) -> Lift {
        lift_params(self.dim_n, self.drift_d, self.drift_b).expect("validated at construction")
    }

    fn radii(&self, xs: &[Vec<f64>]) -> Result<Vec<Complex64>> {
        xs.iter()
            .map(|x| {
                if x.len() != self.dim_n {
                    Err(Error::Domain(format!("point has {} coordinates, expected {}", x.len(), self.dim_n)))
                } else {
                    Ok(Complex64::new(dot(x), 0.0))
                }
            })
            .collect()
    }
}

/// `F(t,x)` at each point through the lifted one-dimensional solver.
pub fn solve_cauchy_nd(prob: &RadialProblem, t: f64, xs: &[Vec<f64>]) -> Result<Vec<Complex64>> {
    let lift = prob.lift();
    let zs = prob.radii(xs)?;
    solve_cauchy(&prob.data, lift.theta, lift.omega, lift.time(t), &zs, None)
}

/// `F(t,x)` from the kernel form with the decay folded into the measure:
/// `(1+εγ)^{−θ}∫K_θ(ν(x,x), s/(1+εγ))h(γs/(1+εγ))s^{θ−1}e^{−s}ds`,
/// with `γ`, `ν` taken at `(a, ω) = (4t, b/2)`. Needs `θ > 0`.
pub fn solve_cauchy_nd_kernel(
    prob: &RadialProblem,
    t: f64,
    xs: &[Vec<f64>],
    quad: &AdaptiveQuadrature,
) -> Result<Vec<Complex64>> {
    let lift = prob.lift();
    if !(lift.theta > 0.0) {
        return Err(Error::UseDecompositionPath { theta: lift.theta });
    }
    if quad.theta() != lift.theta {
        return Err(Error::Domain(format!("quadrature built for theta = {}, requested {}", quad.theta(), lift.theta)));
    }
    if !(t > 0.0) {
        return Err(Error::Domain(format!("time t must be positive, got {t}")));
    }
    let a = lift.time(t);
    let gamma = gamma_factor(a, lift.omega);
    let nu = nu(a, lift.omega)?;
    let stretch = 1.0 + prob.data.epsilon * gamma;
    let pre = stretch.powf(-lift.theta);
    let h = &prob.data.h;
    let zs = prob.radii(xs)?;
    zs.par_iter()
        .map(|&r| {
            let out = quad.integrate_terms(|s, lw| {
                let s_in = s / stretch;
                Ok(match ln_k_theta(lift.theta, nu * r, s_in)? {
                    // K_θ(νr, s/(1+εγ)) = e^{−νr}w_θ(νrs/(1+εγ))
                    Some(l) => (l + lw).exp() * h.eval(Complex64::new(gamma * s_in, 0.0)),
                    None => Complex64::new(0.0, 0.0),
                })
            })?;
            Ok(pre * out.value)
        })
        .collect()
}

/// Convenience constructor for polynomial radial data `h`.
pub fn radial_poly(dim_n: usize, d: f64, b: f64, epsilon: f64, h: ComplexPoly<f64>) -> Result<RadialProblem> {
    RadialProblem::new(dim_n, d, b, InitialData::new(epsilon, Profile::Poly(h))?)
}
