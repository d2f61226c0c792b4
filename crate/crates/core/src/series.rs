//! Truncated Taylor data of entire functions and the growth norms `‖f‖_b`.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::json::complex_vec;
use crate::poly::ComplexPoly;
use crate::scalar::{czero, creal, Scalar};

/// Default truncation length for series built from closed forms.
pub const DEFAULT_ORDER: usize = 64;

/// Taylor data `derivs[k] = f⁽ᵏ⁾(0)` of an entire function, truncated after
/// `derivs.len()` terms, with an optional declared growth bound `b`
/// (the function is claimed to lie in `ℬ_b`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, bound = "T: Scalar")]
pub struct TaylorSeries<T: Scalar> {
    #[serde(with = "complex_vec")]
    pub derivs: Vec<Complex<T>>,
    pub bound_b: Option<T>,
}

/// Result of [`norm_b`]. `value` is the supremum over the stored indices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormEstimate<T> {
    pub value: T,
    pub argmax: usize,
    /// The supremum is still attained in the last 10% of stored indices, so
    /// the true norm may be larger or infinite.
    pub possibly_divergent: bool,
}

impl<T: Scalar> TaylorSeries<T> {
    pub fn new(derivs: Vec<Complex<T>>) -> Self {
        Self { derivs, bound_b: None }
    }

    pub fn with_bound(mut self, b: T) -> Self {
        self.bound_b = Some(b);
        self
    }

    pub fn zero(order: usize) -> Self {
        Self::new(vec![czero(); order])
    }

    /// Truncation length.
    pub fn order(&self) -> usize {
        self.derivs.len()
    }

    /// Lifts `p` with `derivs[k] = k!·coeffs[k]`, zero padded (or truncated) to `order`.
    pub fn from_poly(p: &ComplexPoly<T>, order: usize) -> Self {
        let mut fact = T::one();
        let derivs = (0..order)
            .map(|k| {
                if k > 0 {
                    fact = fact * T::of_usize(k);
                }
                p.coeff(k) * fact
            })
            .collect();
        Self::new(derivs)
    }

    /// Taylor polynomial `Σ derivs[k]/k!·zᵏ`.
    pub fn to_poly(&self) -> ComplexPoly<T> {
        let mut fact = T::one();
        ComplexPoly::new(
            self.derivs
                .iter()
                .enumerate()
                .map(|(k, &d)| {
                    if k > 0 {
                        fact = fact * T::of_usize(k);
                    }
                    d / fact
                })
                .collect(),
        )
    }

    /// `c·e^{αz}`: every derivative is `c·αᵏ`. Declared bound `|α|`.
    pub fn exponential(c: Complex<T>, alpha: T, order: usize) -> Self {
        let mut pow = T::one();
        let derivs = (0..order)
            .map(|k| {
                if k > 0 {
                    pow = pow * alpha;
                }
                c * pow
            })
            .collect();
        Self { derivs, bound_b: Some(alpha.abs()) }
    }

    /// Evaluates the truncated Taylor polynomial at `z`.
    pub fn eval(&self, z: Complex<T>) -> Complex<T> {
        let mut term = creal(T::one());
        let mut acc = czero();
        for (k, &d) in self.derivs.iter().enumerate() {
            if k > 0 {
                term = term * z / T::of_usize(k);
            }
            acc = acc + d * term;
        }
        acc
    }

    /// Leibniz product truncated to the shorter order.
    pub fn product(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut derivs = vec![czero(); order];
        let mut binom = vec![T::one(); order];
        for (n, out) in derivs.iter_mut().enumerate() {
            // binom holds row n of Pascal's triangle
            if n > 0 {
                for k in (1..n).rev() {
                    binom[k] = binom[k] + binom[k - 1];
                }
                binom[n] = T::one();
            }
            *out = (0..=n).fold(czero(), |acc, k| {
                acc + self.derivs[k] * other.derivs[n - k] * binom[k]
            });
        }
        let bound_b = match (self.bound_b, other.bound_b) {
            (Some(a), Some(b)) => Some(a + b),
            _ => None,
        };
        Self { derivs, bound_b }
    }

    /// Ratio-test style estimate of the exponential type `limsup |f⁽ᵏ⁾(0)|^{1/k}`,
    /// taken as the largest `|derivs[k]|^{1/k}` over the last quarter of stored
    /// indices. A heuristic only: membership in `𝒜_a` cannot be decided from
    /// finitely many coefficients.
    pub fn growth_estimate(&self) -> Option<T> {
        let n = self.order();
        if n < 4 {
            return None;
        }
        let est = (n - n / 4..n)
            .filter(|&k| k > 0)
            .map(|k| self.derivs[k].norm().powf(T::one() / T::of_usize(k)))
            .fold(T::zero(), T::max);
        Some(est)
    }

    /// Heuristic membership test for `𝒜_a`: the estimated type does not exceed `a`
    /// (with 5% slack for finite-order bias).
    pub fn likely_in_a(&self, a: T) -> bool {
        self.growth_estimate().is_some_and(|g| g <= a * T::of(1.05) + T::epsilon())
    }
}

/// `‖f‖_b = sup_k b⁻ᵏ|f⁽ᵏ⁾(0)|` over the stored coefficients.
pub fn norm_b<T: Scalar>(f: &TaylorSeries<T>, b: T) -> Result<NormEstimate<T>> {
    if !(b > T::zero()) {
        return Err(Error::Domain(format!("norm_b requires b > 0, got {b}")));
    }
    let inv_b = b.recip();
    let mut scale = T::one();
    let mut best = T::zero();
    let mut argmax = 0;
    for (k, d) in f.derivs.iter().enumerate() {
        if k > 0 {
            scale = scale * inv_b;
        }
        let v = d.norm() * scale;
        if v > best {
            best = v;
            argmax = k;
        }
    }
    let n = f.order();
    let tail_start = n - n.div_ceil(10);
    Ok(NormEstimate {
        value: best,
        argmax,
        possibly_divergent: best > T::zero() && argmax >= tail_start,
    })
}
