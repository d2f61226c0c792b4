//! Operational calculus for `Δ_{θ,ω} = (θ+ωz)D + zD²` on entire functions of one
//! complex variable.
//!
//! Polynomials are acted on exactly through coefficient rules; entire functions of
//! exponential type are carried as truncated Taylor series with a declared growth
//! bound. The semigroup `exp(aΔ_{θ,ω})` is available three ways (power series,
//! dilation plus `exp(γΔ_θ)`, and a kernel integral against `s^{θ−1}e^{−s}ds`),
//! and the Cauchy problem `∂f/∂t = Δ_{θ,ω}f` is solved for data `e^{−εz}h(z)` and
//! for isotropic drift-diffusion in `ℝ^N`.
//!
//! Most algebra is generic over [`scalar::Scalar`]; the aliases below fix `f64`.

// Negated comparisons reject NaN along with out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod json;
pub mod kernel;
pub mod laguerre;
pub mod ndim;
pub mod operator;
pub mod params;
pub mod poly;
pub mod scalar;
pub mod semigroup;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
pub use ndim::{lift_params, solve_cauchy_nd, Lift, RadialProblem};
pub use operator::{apply_delta, apply_phi, exp_delta_decomposed, exp_delta_series, kappa};
pub use params::{c_of_b, gamma_factor, nu};
pub use semigroup::{decay_profile, evolve_cauchy, exp_shifted, solve_cauchy, InitialData, Profile};

/// Polynomial with `f64` complex coefficients.
pub type Poly = poly::ComplexPoly<f64>;
/// Truncated Taylor series with `f64` complex data.
pub type Series = series::TaylorSeries<f64>;
/// Laguerre–Pólya canonical form over `f64`.
pub type Laguerre = laguerre::LaguerreForm<f64>;
/// Operator parameters `(θ, ω)` with a symbol, over `f64`.
pub type Spec = params::OperatorSpec<f64>;
