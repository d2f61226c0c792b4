//! Product representation `C·zᵐ·e^{αz}·∏(1+βⱼz)` of Laguerre-type entire functions.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::json::complex;
use crate::poly::ComplexPoly;
use crate::scalar::{creal, Scalar};
use crate::series::TaylorSeries;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LaguerreClass {
    /// `α ≥ 0`; `α = 0` is additionally in `ℒ₀`.
    Plus,
    /// `α < 0`
    Minus,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, bound = "T: Scalar", try_from = "RawForm<T>")]
pub struct LaguerreForm<T: Scalar> {
    #[serde(rename = "C", with = "complex")]
    scale_c: Complex<T>,
    #[serde(rename = "m")]
    zero_order_m: usize,
    #[serde(rename = "alpha")]
    exp_rate_alpha: T,
    betas: Vec<T>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields, bound = "T: Scalar")]
struct RawForm<T: Scalar> {
    #[serde(rename = "C", with = "complex")]
    c: Complex<T>,
    m: usize,
    alpha: T,
    betas: Vec<T>,
}

impl<T: Scalar> TryFrom<RawForm<T>> for LaguerreForm<T> {
    type Error = Error;

    fn try_from(r: RawForm<T>) -> Result<Self> {
        Self::new(r.c, r.m, r.alpha, r.betas)
    }
}

impl<T: Scalar> LaguerreForm<T> {
    /// `betas` must be nonnegative; they are stored sorted nonincreasing.
    pub fn new(scale_c: Complex<T>, zero_order_m: usize, exp_rate_alpha: T, mut betas: Vec<T>) -> Result<Self> {
        if let Some(b) = betas.iter().find(|b| !(**b >= T::zero())) {
            return Err(Error::Domain(format!("betas must be nonnegative, got {b}")));
        }
        if !exp_rate_alpha.is_finite() {
            return Err(Error::Domain("alpha must be finite".into()));
        }
        betas.sort_by(|a, b| b.partial_cmp(a).expect("betas are not NaN"));
        Ok(Self { scale_c, zero_order_m, exp_rate_alpha, betas })
    }

    pub fn scale_c(&self) -> Complex<T> {
        self.scale_c
    }

    pub fn zero_order_m(&self) -> usize {
        self.zero_order_m
    }

    pub fn exp_rate_alpha(&self) -> T {
        self.exp_rate_alpha
    }

    pub fn betas(&self) -> &[T] {
        &self.betas
    }

    pub fn class(&self) -> LaguerreClass {
        if self.exp_rate_alpha >= T::zero() {
            LaguerreClass::Plus
        } else {
            LaguerreClass::Minus
        }
    }

    pub fn is_l0(&self) -> bool {
        self.exp_rate_alpha == T::zero()
    }

    /// The polynomial factor `C·zᵐ·∏(1+βⱼz)`.
    pub fn polynomial_part(&self) -> ComplexPoly<T> {
        let one = creal(T::one());
        let base = &ComplexPoly::constant(self.scale_c) * &ComplexPoly::monomial(self.zero_order_m);
        self.betas
            .iter()
            .fold(base, |acc, &b| &acc * &ComplexPoly::new(vec![one, creal(b)]))
    }
}

/// Taylor data of the product form, truncated to `order` coefficients.
///
/// When `order ≤ m` every stored coefficient vanishes; the zero series is
/// returned and a warning is logged.
pub fn laguerre_to_taylor<T: Scalar>(g: &LaguerreForm<T>, order: usize) -> TaylorSeries<T> {
    if order <= g.zero_order_m {
        log::warn!(
            "truncation order {order} does not reach the zero of order {} at the origin; returning the zero series",
            g.zero_order_m
        );
        return TaylorSeries::zero(order);
    }
    let poly = TaylorSeries::from_poly(&g.polynomial_part(), order);
    let exp = TaylorSeries::exponential(creal(T::one()), g.exp_rate_alpha, order);
    let mut out = poly.product(&exp);
    let beta_sum = g.betas.iter().fold(T::zero(), |s, &b| s + b);
    out.bound_b = Some(g.exp_rate_alpha.abs() + beta_sum);
    out
}
