//! Scalar parameter formulas shared by the semigroup, bounds and solvers.
//!
//! Every expression containing `ω⁻¹(e^{aω}−1)` switches to its Taylor
//! expansion in `aω` when `|aω| < 1e-6`, so all formulas are continuous
//! across `ω = 0`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::ComplexPoly;
use crate::scalar::Scalar;
use crate::series::TaylorSeries;

/// Below this `|aω|` the series branch is used.
pub const SMALL_AOMEGA: f64 = 1e-6;

/// `ω⁻¹(e^{aω}−1)`, equal to `a` at `ω = 0`.
pub fn gamma_factor<T: Scalar>(a: T, omega: T) -> T {
    let x = a * omega;
    if x.abs() < T::of(SMALL_AOMEGA) {
        // a·(e^x − 1)/x
        a * (T::one() + x * (T::of(0.5) + x * (T::one() / T::of(6.0) + x / T::of(24.0))))
    } else {
        x.exp_m1() / omega
    }
}

/// Range-space growth bound `c(b) = b·e^{aω}/(1 − b·ω⁻¹(e^{aω}−1))`.
pub fn c_of_b<T: Scalar>(a: T, omega: T, b: T) -> Result<T> {
    let product = b * gamma_factor(a, omega);
    if !(product < T::one()) {
        return Err(Error::Contractivity { product: product.to_f64_lossy() });
    }
    Ok(b * (a * omega).exp() / (T::one() - product))
}

/// `ν(a, ω) = ω·e^{aω}/(e^{aω}−1)`, equal to `1/a` at `ω = 0`.
pub fn nu<T: Scalar>(a: T, omega: T) -> Result<T> {
    if !(a > T::zero()) {
        return Err(Error::Domain(format!("nu requires a > 0, got {a}")));
    }
    let x = a * omega;
    if x.abs() < T::of(SMALL_AOMEGA) {
        // x/(1 − e^{−x}) = 1 + x/2 + x²/12 + O(x⁴)
        Ok((T::one() + x * (T::of(0.5) + x / T::of(12.0))) / a)
    } else {
        Ok(omega / -(-x).exp_m1())
    }
}

/// Symbol `φ` of the calculus `φ(Δ_{θ,ω})`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", bound = "T: Scalar")]
pub enum Symbol<T: Scalar> {
    Poly(ComplexPoly<T>),
    Series(TaylorSeries<T>),
}

/// Parameters `(θ, ω, a)` of `Δ_{θ,ω}` and its semigroup `exp(aΔ_{θ,ω})`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, bound = "T: Scalar")]
pub struct OperatorSpec<T: Scalar> {
    pub theta: T,
    pub omega: T,
    pub time_a: T,
    #[serde(default)]
    pub symbol_phi: Option<Symbol<T>>,
}

impl<T: Scalar> OperatorSpec<T> {
    pub fn new(theta: T, omega: T, time_a: T) -> Result<Self> {
        if !(theta >= T::zero()) {
            return Err(Error::Domain(format!("theta must be >= 0, got {theta}")));
        }
        if !(time_a >= T::zero()) {
            return Err(Error::Domain(format!("semigroup time must be >= 0, got {time_a}")));
        }
        Ok(Self { theta, omega, time_a, symbol_phi: None })
    }

    pub fn with_symbol(mut self, phi: Symbol<T>) -> Self {
        self.symbol_phi = Some(phi);
        self
    }

    pub fn gamma_factor(&self) -> T {
        gamma_factor(self.time_a, self.omega)
    }
}
