//! Dense complex polynomials.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::json::complex_vec;
use crate::scalar::{czero, creal, Scalar};

/// Polynomial `Σ coeffs[m]·zᵐ` with complex coefficients.
///
/// The coefficient vector is kept trimmed: the last stored coefficient is
/// nonzero, and the zero polynomial stores nothing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, bound = "T: Scalar")]
#[serde(from = "RawPoly<T>")]
pub struct ComplexPoly<T: Scalar> {
    #[serde(with = "complex_vec")]
    coeffs: Vec<Complex<T>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields, bound = "T: Scalar")]
struct RawPoly<T: Scalar> {
    #[serde(with = "complex_vec")]
    coeffs: Vec<Complex<T>>,
}

impl<T: Scalar> From<RawPoly<T>> for ComplexPoly<T> {
    fn from(raw: RawPoly<T>) -> Self {
        Self::new(raw.coeffs)
    }
}

impl<T: Scalar> ComplexPoly<T> {
    pub fn new(mut coeffs: Vec<Complex<T>>) -> Self {
        while coeffs.last().is_some_and(|c| c.re == T::zero() && c.im == T::zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_real(coeffs: &[T]) -> Self {
        Self::new(coeffs.iter().map(|&c| creal(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(creal(T::one()))
    }

    pub fn constant(c: Complex<T>) -> Self {
        Self::new(vec![c])
    }

    /// `zᵐ`
    pub fn monomial(m: usize) -> Self {
        let mut coeffs = vec![czero(); m + 1];
        coeffs[m] = creal(T::one());
        Self { coeffs }
    }

    /// `c·∏(z − rⱼ)`
    pub fn from_roots(c: Complex<T>, roots: &[Complex<T>]) -> Self {
        roots.iter().fold(Self::constant(c), |acc, &r| {
            &acc * &Self::new(vec![-r, creal(T::one())])
        })
    }

    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex<T>> {
        self.coeffs
    }

    /// Coefficient of `zᵐ`, zero beyond the degree.
    pub fn coeff(&self, m: usize) -> Complex<T> {
        self.coeffs.get(m).copied().unwrap_or_else(czero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, z: Complex<T>) -> Complex<T> {
        self.coeffs.iter().rev().fold(czero(), |acc, &c| acc * z + c)
    }

    /// Term-by-term evaluation with explicit powers.
    pub fn eval_naive(&self, z: Complex<T>) -> Complex<T> {
        let mut pow = creal(T::one());
        let mut acc = czero();
        for &c in &self.coeffs {
            acc = acc + c * pow;
            pow = pow * z;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(m, &c)| c * T::of_usize(m))
                .collect(),
        )
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Self::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    /// Largest coefficient modulus.
    pub fn max_abs_coeff(&self) -> T {
        self.coeffs.iter().fold(T::zero(), |m, c| m.max(c.norm()))
    }

    /// `max_m |self_m − other_m|`
    pub fn max_coeff_diff(&self, other: &Self) -> T {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n).fold(T::zero(), |acc, m| acc.max((self.coeff(m) - other.coeff(m)).norm()))
    }

    pub fn map_scalar<U: Scalar>(&self, f: impl Fn(T) -> U) -> ComplexPoly<U> {
        ComplexPoly::new(self.coeffs.iter().map(|c| Complex::new(f(c.re), f(c.im))).collect())
    }
}

impl<T: Scalar> Add for &ComplexPoly<T> {
    type Output = ComplexPoly<T>;

    fn add(self, rhs: Self) -> ComplexPoly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ComplexPoly::new((0..n).map(|m| self.coeff(m) + rhs.coeff(m)).collect())
    }
}

impl<T: Scalar> Sub for &ComplexPoly<T> {
    type Output = ComplexPoly<T>;

    fn sub(self, rhs: Self) -> ComplexPoly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ComplexPoly::new((0..n).map(|m| self.coeff(m) - rhs.coeff(m)).collect())
    }
}

impl<T: Scalar> Neg for &ComplexPoly<T> {
    type Output = ComplexPoly<T>;

    fn neg(self) -> ComplexPoly<T> {
        ComplexPoly::new(self.coeffs.iter().map(|&c| -c).collect())
    }
}

impl<T: Scalar> Mul for &ComplexPoly<T> {
    type Output = ComplexPoly<T>;

    fn mul(self, rhs: Self) -> ComplexPoly<T> {
        if self.is_zero() || rhs.is_zero() {
            return ComplexPoly::zero();
        }
        let mut out = vec![czero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j] + a * b;
            }
        }
        ComplexPoly::new(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use proptest::prelude::*;

    #[test]
    fn trims_trailing_zeros() {
        let p = ComplexPoly::<f64>::from_real(&[1.0, 2.0, 0.0, 0.0]);
        assert_eq!(p.degree(), Some(1));
        assert!(ComplexPoly::<f64>::from_real(&[0.0, 0.0]).is_zero());
        assert_eq!(ComplexPoly::<f64>::zero().degree(), None);
    }

    #[test]
    fn from_roots_expands() {
        let p = ComplexPoly::<f64>::from_roots(
            Complex64::new(1.0, 0.0),
            &[Complex64::new(-1.0, 0.0), Complex64::new(-2.0, 0.0)],
        );
        assert_eq!(p, ComplexPoly::from_real(&[2.0, 3.0, 1.0]));
    }

    #[test]
    fn derivative_of_cubic() {
        let p = ComplexPoly::<f64>::from_real(&[1.0, 1.0, 1.0, 1.0]);
        assert_eq!(p.derivative(), ComplexPoly::from_real(&[1.0, 2.0, 3.0]));
    }

    #[test]
    fn works_in_single_precision() {
        let p = ComplexPoly::<f32>::from_real(&[1.0, -3.0, 2.0]);
        assert_eq!(p.eval(Complex::new(1.0, 0.0)), Complex::new(0.0, 0.0));
    }

    #[test]
    fn json_shape() {
        let p = ComplexPoly::<f64>::from_real(&[1.0, 0.5]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"coeffs":[[1.0,0.0],[0.5,0.0]]}"#);
        let back: ComplexPoly<f64> = serde_json::from_str(r#"{"coeffs":[[1,0],[0.5,0],[0,0]]}"#).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<ComplexPoly<f64>>(r#"{"coeffs":[],"x":1}"#).is_err());
    }

    fn arb_poly() -> impl Strategy<Value = ComplexPoly<f64>> {
        prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 0..=65)
            .prop_map(|v| ComplexPoly::new(v.into_iter().map(|(a, b)| Complex64::new(a, b)).collect()))
    }

    proptest! {
        #[test]
        fn horner_matches_naive(p in arb_poly(), r in 0.0..10.0f64, phi in 0.0..std::f64::consts::TAU) {
            let z = Complex64::from_polar(r, phi);
            let h = p.eval(z);
            let n = p.eval_naive(z);
            // scale by the sum of term magnitudes: cancellation makes a pure relative test meaningless
            let scale: f64 = p.coeffs().iter().enumerate().map(|(m, c)| c.norm() * r.powi(m as i32)).sum();
            prop_assert!((h - n).norm() <= 1e-12 * scale.max(f64::MIN_POSITIVE));
        }

        #[test]
        fn json_round_trip(p in arb_poly()) {
            let s = serde_json::to_string(&p).unwrap();
            let back: ComplexPoly<f64> = serde_json::from_str(&s).unwrap();
            prop_assert_eq!(back, p);
        }
    }
}
