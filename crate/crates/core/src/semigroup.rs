//! The semigroup `exp(aΔ_{θ,ω})` as an integral operator, its action on
//! exponentially shifted data `e^{uz}g(z)`, and the Cauchy problem
//! `∂f/∂t = Δ_{θ,ω}f`, `f(0,·) = e^{−εz}h`.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernel::quadrature::{AdaptiveQuadrature, Integral, QuadratureRule};
use crate::kernel::wfun::ln_k_theta;
use crate::operator::delta::{exp_theta, Dilate};
use crate::params::{gamma_factor, nu};
use crate::poly::ComplexPoly;
use crate::series::{norm_b, TaylorSeries, DEFAULT_ORDER};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// A function that can only be evaluated pointwise.
pub type Evaluable = Arc<dyn Fn(Complex64) -> Complex64 + Send + Sync>;

/// The factor `h` of initial data `g = e^{−εz}h`.
#[derive(Clone)]
pub enum Profile {
    Poly(ComplexPoly<f64>),
    Series(TaylorSeries<f64>),
    Function(Evaluable),
}

impl fmt::Debug for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Profile::Poly(p) => f.debug_tuple("Poly").field(p).finish(),
            Profile::Series(s) => f.debug_tuple("Series").field(s).finish(),
            Profile::Function(_) => f.write_str("Function(..)"),
        }
    }
}

impl Profile {
    pub fn eval(&self, z: Complex64) -> Complex64 {
        match self {
            Profile::Poly(p) => p.eval(z),
            Profile::Series(s) => s.eval(z),
            Profile::Function(h) => h(z),
        }
    }
}

/// Initial data `g(z) = e^{−εz}h(z)` with `ε ≥ 0`.
#[derive(Debug, Clone)]
pub struct InitialData {
    pub epsilon: f64,
    pub h: Profile,
}

impl InitialData {
    pub fn new(epsilon: f64, h: Profile) -> Result<Self> {
        if !(epsilon >= 0.0) || !epsilon.is_finite() {
            return Err(Error::Domain(format!("decay rate epsilon must be finite and >= 0, got {epsilon}")));
        }
        Ok(Self { epsilon, h })
    }

    pub fn poly(epsilon: f64, h: ComplexPoly<f64>) -> Result<Self> {
        Self::new(epsilon, Profile::Poly(h))
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        (-self.epsilon * z).exp() * self.h.eval(z)
    }
}

/// Scalars of the shift formula
/// `exp(aΔ_{θ,ω})[e^{uz}g] = P·exp(ρz)·[exp(τΔ_θ)g](λz)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ShiftResult {
    /// `P = (1 − uγ)^{−θ}`.
    pub prefactor: f64,
    /// `ρ = u·e^{aω}/(1 − uγ)`.
    pub new_rate: f64,
    /// `λ = e^{aω}/(1 − uγ)²`.
    pub inner_scale: f64,
    /// `τ = γ/(1 − uγ)`.
    pub inner_time: f64,
}

/// Computes [`ShiftResult`], requiring `1 − u·γ(a,ω) > 0`.
pub fn shift_parameters(u: f64, theta: f64, omega: f64, a: f64) -> Result<ShiftResult> {
    let gamma = gamma_factor(a, omega);
    let base = 1.0 - u * gamma;
    if !(base > 0.0) {
        return Err(Error::ShiftCondition { quantity: "1 - u*gamma_factor(a, omega)", value: base });
    }
    let growth = (a * omega).exp();
    Ok(ShiftResult {
        prefactor: base.powf(-theta),
        new_rate: u * growth / base,
        inner_scale: growth / (base * base),
        inner_time: gamma / base,
    })
}

/// Data on which `exp(τΔ_θ)` followed by a dilation can be carried out exactly
/// (polynomials) or on the stored truncation (Taylor data).
pub trait Evolve: Sized {
    /// Declared growth bound `b` (zero for polynomials).
    fn growth_bound(&self) -> Option<f64>;
    /// `z ↦ [exp(τΔ_θ)self](λz)`.
    fn evolve(&self, tau: f64, theta: f64, lambda: f64) -> Self;
    fn eval_at(&self, z: Complex64) -> Complex64;
    fn taylor(&self, order: usize) -> TaylorSeries<f64>;
}

impl Evolve for ComplexPoly<f64> {
    fn growth_bound(&self) -> Option<f64> {
        Some(0.0)
    }

    fn evolve(&self, tau: f64, theta: f64, lambda: f64) -> Self {
        exp_theta(self, tau, theta).dilate(lambda)
    }

    fn eval_at(&self, z: Complex64) -> Complex64 {
        self.eval(z)
    }

    fn taylor(&self, order: usize) -> TaylorSeries<f64> {
        TaylorSeries::from_poly(self, order.max(self.coeffs().len()))
    }
}

impl Evolve for TaylorSeries<f64> {
    fn growth_bound(&self) -> Option<f64> {
        self.bound_b
    }

    fn evolve(&self, tau: f64, theta: f64, lambda: f64) -> Self {
        let evolved = exp_theta(&self.to_poly(), tau, theta).dilate(lambda);
        let mut out = TaylorSeries::from_poly(&evolved, self.order());
        // exp(τΔ_θ) maps ℬ_b into ℬ_{b/(1−bτ)}
        out.bound_b = self
            .bound_b
            .filter(|&b| b * tau < 1.0)
            .map(|b| lambda.abs() * b / (1.0 - b * tau));
        out
    }

    fn eval_at(&self, z: Complex64) -> Complex64 {
        self.eval(z)
    }

    fn taylor(&self, _order: usize) -> TaylorSeries<f64> {
        self.clone()
    }
}

/// `P·e^{ρz}·h(z)`, the outcome of [`exp_shifted`].
#[derive(Debug, Clone, PartialEq)]
pub struct Shifted<F> {
    pub shift: ShiftResult,
    pub h: F,
}

impl<F: Evolve> Shifted<F> {
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.shift.prefactor * (self.shift.new_rate * z).exp() * self.h.eval_at(z)
    }

    /// Taylor data of the full product `P·e^{ρz}·h`.
    pub fn taylor(&self, order: usize) -> TaylorSeries<f64> {
        let h = self.h.taylor(order);
        let e = TaylorSeries::exponential(Complex64::new(self.shift.prefactor, 0.0), self.shift.new_rate, h.order());
        e.product(&h)
    }
}

/// `exp(aΔ_{θ,ω})[e^{uz}g(z)]` in closed form.
///
/// Requires `1 − uγ > 0` and, for `g` with declared bound `b`, `bγ < 1 − uγ`.
pub fn exp_shifted<F: Evolve>(g: &F, u: f64, theta: f64, omega: f64, a: f64) -> Result<Shifted<F>> {
    if !(theta >= 0.0) {
        return Err(Error::Domain(format!("theta must be >= 0, got {theta}")));
    }
    if !(a >= 0.0) {
        return Err(Error::Domain(format!("semigroup time must be >= 0, got {a}")));
    }
    let shift = shift_parameters(u, theta, omega, a)?;
    if let Some(b) = g.growth_bound() {
        let gamma = gamma_factor(a, omega);
        let slack = 1.0 - u * gamma - b * gamma;
        if !(slack > 0.0) {
            return Err(Error::ShiftCondition { quantity: "1 - (u + b)*gamma_factor(a, omega)", value: slack });
        }
    }
    let h = g.evolve(shift.inner_time, theta, shift.inner_scale);
    Ok(Shifted { shift, h })
}

fn kernel_term(
    theta: f64,
    nu_z: Complex64,
    scale: f64,
    f: &impl Fn(f64) -> Complex64,
    s: f64,
    log_weight: f64,
) -> Result<Complex64> {
    Ok(match ln_k_theta(theta, nu_z, s)? {
        Some(l) => (l + log_weight).exp() * f(scale * s),
        None => ZERO,
    })
}

fn integral_setup(theta: f64, omega: f64, a: f64) -> Result<(f64, f64)> {
    if !(theta > 0.0) {
        return Err(Error::UseDecompositionPath { theta });
    }
    Ok((nu(a, omega)?, gamma_factor(a, omega)))
}

/// `∫₀^∞ K_θ(νz, s) f(γs) s^{θ−1}e^{−s} ds` on a fixed rule, with
/// `ν = ω/(1−e^{−aω})` and `γ = ω⁻¹(e^{aω}−1)`.
pub fn exp_integral(
    f: impl Fn(f64) -> Complex64,
    theta: f64,
    omega: f64,
    a: f64,
    rule: &QuadratureRule,
    z: Complex64,
) -> Result<Complex64> {
    let (nu, gamma) = integral_setup(theta, omega, a)?;
    if rule.theta != theta {
        return Err(Error::Domain(format!("rule built for theta = {}, requested {theta}", rule.theta)));
    }
    rule.integrate_terms(|s, lw| kernel_term(theta, nu * z, gamma, &f, s, lw))
}

/// [`exp_integral`] with rule doubling until two sizes agree.
pub fn exp_integral_adaptive(
    f: impl Fn(f64) -> Complex64,
    omega: f64,
    a: f64,
    quad: &AdaptiveQuadrature,
    z: Complex64,
) -> Result<Integral> {
    let theta = quad.theta();
    let (nu, gamma) = integral_setup(theta, omega, a)?;
    let out = quad.integrate_terms(|s, lw| kernel_term(theta, nu * z, gamma, &f, s, lw))?;
    if !out.converged {
        log::warn!("quadrature did not stabilize at z = {z} with {} nodes", out.nodes_used);
    }
    Ok(out)
}

/// Taylor data of `h` from its values on the circle `|z| = r`
/// (trapezoidal Cauchy integral with `2·order` points). Coefficients at the
/// round-off floor are set to zero, because `exp(τΔ_θ)` amplifies high-order
/// noise enormously.
pub fn taylor_from_function(h: &(dyn Fn(Complex64) -> Complex64 + Sync), order: usize, radius: f64) -> TaylorSeries<f64> {
    let n = (2 * order).max(64);
    let samples: Vec<Complex64> = (0..n)
        .map(|j| h(Complex64::from_polar(radius, 2.0 * PI * j as f64 / n as f64)))
        .collect();
    let peak = samples.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let floor = 64.0 * f64::EPSILON * peak;
    let mut derivs = Vec::with_capacity(order);
    let mut fact = 1.0;
    let mut rk = 1.0;
    for k in 0..order {
        if k > 0 {
            fact *= k as f64;
            rk *= radius;
        }
        let mean: Complex64 = samples
            .iter()
            .enumerate()
            .map(|(j, v)| v * Complex64::from_polar(1.0, -2.0 * PI * ((j * k) % n) as f64 / n as f64))
            .sum::<Complex64>()
            / n as f64;
        derivs.push(if mean.norm() <= floor { ZERO } else { mean / rk * fact });
    }
    TaylorSeries::new(derivs)
}

/// Closed-form solution of the Cauchy problem.
#[derive(Debug, Clone, PartialEq)]
pub enum CauchySolution {
    Poly(Shifted<ComplexPoly<f64>>),
    Series(Shifted<TaylorSeries<f64>>),
}

impl CauchySolution {
    pub fn eval(&self, z: Complex64) -> Complex64 {
        match self {
            CauchySolution::Poly(s) => s.eval(z),
            CauchySolution::Series(s) => s.eval(z),
        }
    }

    pub fn shift(&self) -> ShiftResult {
        match self {
            CauchySolution::Poly(s) => s.shift,
            CauchySolution::Series(s) => s.shift,
        }
    }

    pub fn taylor(&self, order: usize) -> TaylorSeries<f64> {
        match self {
            CauchySolution::Poly(s) => s.taylor(order),
            CauchySolution::Series(s) => s.taylor(order),
        }
    }
}

/// Largest `t` with `(b − ε)·γ(t, ω) < 1`, or `∞` if every `t` qualifies.
pub fn max_admissible_time(epsilon: f64, b: f64, omega: f64) -> f64 {
    let excess = b - epsilon;
    if excess <= 0.0 {
        return f64::INFINITY;
    }
    let x = omega / excess;
    if x <= -1.0 {
        f64::INFINITY
    } else if omega.abs() < 1e-12 {
        (1.0 - x / 2.0) / excess
    } else {
        x.ln_1p() / omega
    }
}

fn check_time(t: f64) -> Result<()> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::Domain(format!("time t must be positive and finite, got {t}")));
    }
    Ok(())
}

fn admissible<T>(r: Result<T>, g: &InitialData, b: Option<f64>, omega: f64, t: f64) -> Result<T> {
    r.map_err(|e| match e {
        Error::ShiftCondition { .. } => Error::AdmissibleTime {
            t,
            max_t: max_admissible_time(g.epsilon, b.unwrap_or(0.0), omega),
        },
        other => other,
    })
}

/// Solution `f(t,·) = exp(tΔ_{θ,ω})g` in closed form, through the shift
/// formula with `u = −ε`. Function data are first converted to Taylor data.
pub fn evolve_cauchy(g: &InitialData, theta: f64, omega: f64, t: f64) -> Result<CauchySolution> {
    check_time(t)?;
    let u = -g.epsilon;
    match &g.h {
        Profile::Poly(p) => {
            admissible(exp_shifted(p, u, theta, omega, t), g, Some(0.0), omega, t).map(CauchySolution::Poly)
        }
        Profile::Series(s) => {
            admissible(exp_shifted(s, u, theta, omega, t), g, s.bound_b, omega, t).map(CauchySolution::Series)
        }
        Profile::Function(h) => {
            let s = taylor_from_function(h.as_ref(), DEFAULT_ORDER, 1.0);
            admissible(exp_shifted(&s, u, theta, omega, t), g, None, omega, t).map(CauchySolution::Series)
        }
    }
}

/// Samples of the solution of `∂f/∂t = (θ+ωz)∂f/∂z + z∂²f/∂z²`, `f(0,·) = g`.
///
/// Polynomial and Taylor data go through the closed form. Evaluable data use
/// the kernel integral when `θ > 0` (`quad` defaults to the standard ladder)
/// and Taylor extraction when `θ = 0`.
pub fn solve_cauchy(
    g: &InitialData,
    theta: f64,
    omega: f64,
    t: f64,
    zs: &[Complex64],
    quad: Option<&AdaptiveQuadrature>,
) -> Result<Vec<Complex64>> {
    check_time(t)?;
    if !(theta >= 0.0) {
        return Err(Error::Domain(format!("theta must be >= 0, got {theta}")));
    }
    if let (Profile::Function(h), true) = (&g.h, theta > 0.0) {
        let owned;
        let quad = match quad {
            Some(q) => q,
            None => {
                owned = AdaptiveQuadrature::new(theta)?;
                &owned
            }
        };
        if quad.theta() != theta {
            return Err(Error::Domain(format!("quadrature built for theta = {}, requested {theta}", quad.theta())));
        }
        let eps = g.epsilon;
        let data = |x: f64| (-eps * x).exp() * h(Complex64::new(x, 0.0));
        return zs
            .par_iter()
            .map(|&z| exp_integral_adaptive(data, omega, t, quad, z).map(|i| i.value))
            .collect();
    }
    let sol = evolve_cauchy(g, theta, omega, t)?;
    Ok(zs.par_iter().map(|&z| sol.eval(z)).collect())
}

/// Norms `‖f(t,·)‖_b` of the solution along a sequence of times.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecayProfile {
    pub times: Vec<f64>,
    pub norms: Vec<f64>,
    /// Whether the norm supremum sat in the tail of the stored coefficients.
    pub possibly_divergent: Vec<bool>,
    /// False for `ε = 0`, where no decay is asserted.
    pub decay_claim_applies: bool,
}

impl DecayProfile {
    pub fn strictly_decreasing(&self) -> bool {
        self.norms.windows(2).all(|w| w[1] < w[0])
    }
}

/// `‖f(t,·)‖_b` computed from the truncated Taylor data of the closed-form solution.
pub fn decay_profile(g: &InitialData, theta: f64, omega: f64, ts: &[f64], b: f64) -> Result<DecayProfile> {
    if !(b > g.epsilon) {
        return Err(Error::Domain(format!("norm parameter b = {b} must exceed epsilon = {}", g.epsilon)));
    }
    if ts.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::Domain("times must be strictly increasing".into()));
    }
    let decay_claim_applies = g.epsilon > 0.0;
    if !decay_claim_applies {
        log::info!("epsilon = 0: no decay is claimed, profile is informational");
    }
    let (mut norms, mut flags) = (Vec::with_capacity(ts.len()), Vec::with_capacity(ts.len()));
    for &t in ts {
        let data = evolve_cauchy(g, theta, omega, t)?.taylor(DEFAULT_ORDER);
        let n = norm_b(&data, b)?;
        norms.push(n.value);
        flags.push(n.possibly_divergent);
    }
    Ok(DecayProfile { times: ts.to_vec(), norms, possibly_divergent: flags, decay_claim_applies })
}
