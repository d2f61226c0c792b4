//! Exact action of `Δ_{θ,ω} = (θ+ωz)D + zD²` on polynomials.

use num_complex::Complex;

use crate::params::gamma_factor;
use crate::poly::ComplexPoly;
use crate::scalar::{czero, creal, Scalar};
use crate::series::TaylorSeries;

/// Relative size below which a term of the exponential series counts as negligible.
pub const SERIES_REL_TOL: f64 = 1e-14;
/// Hard cap on the number of terms of the exponential series.
pub const SERIES_MAX_TERMS: usize = 128;

/// One application of `Δ_{θ,ω}`: `zᵐ ↦ m(θ+m−1)zᵐ⁻¹ + ωm·zᵐ`.
pub fn apply_delta<T: Scalar>(f: &ComplexPoly<T>, theta: T, omega: T) -> ComplexPoly<T> {
    let c = f.coeffs();
    let n = c.len();
    let out = (0..n)
        .map(|j| {
            let mj = T::of_usize(j);
            let lower = if j + 1 < n {
                let m = T::of_usize(j + 1);
                c[j + 1] * (m * (theta + mj))
            } else {
                czero()
            };
            lower + c[j] * (omega * mj)
        })
        .collect();
    ComplexPoly::new(out)
}

/// `Δ_{θ,ω}` on Taylor data: `(Δf)⁽ᵏ⁾(0) = (θ+k)f⁽ᵏ⁺¹⁾(0) + ωk·f⁽ᵏ⁾(0)`.
/// The result is one term shorter since the top derivative is unknown.
pub fn apply_delta_taylor<T: Scalar>(f: &TaylorSeries<T>, theta: T, omega: T) -> TaylorSeries<T> {
    let d = &f.derivs;
    let derivs = (0..d.len().saturating_sub(1))
        .map(|k| {
            let kk = T::of_usize(k);
            d[k + 1] * (theta + kk) + d[k] * (omega * kk)
        })
        .collect();
    TaylorSeries::new(derivs)
}

/// `ln q_θ^{(m,k)}` where `Δ_θᵏ zᵐ = q_θ^{(m,k)} zᵐ⁻ᵏ`, or `None` when the coefficient vanishes.
///
/// Uses `q_θ^{(m,k)} = γ_θ(m)/γ_θ(m−k) = ∏_{j=m−k+1}^{m} j(θ+j−1)`, which also
/// realizes the `1/Γ(0) = 0` convention at `θ = 0`.
pub fn ln_q_coeff<T: Scalar>(theta: T, m: usize, k: usize) -> Option<T> {
    if k > m {
        return None;
    }
    let mut acc = T::zero();
    for j in (m - k + 1)..=m {
        let factor = T::of_usize(j) * (theta + T::of_usize(j - 1));
        if factor == T::zero() {
            return None;
        }
        acc = acc + factor.ln();
    }
    Some(acc)
}

/// `q_θ^{(m,k)}`: zero for `k > m`, otherwise `γ_θ(m)/γ_θ(m−k)`.
pub fn q_coeff<T: Scalar>(theta: T, m: usize, k: usize) -> T {
    ln_q_coeff(theta, m, k).map_or(T::zero(), T::exp)
}

/// `Σ_{k≥0} φ⁽ᵏ⁾(0)/k!·Δ_{θ,ω}ᵏ f` for a polynomial symbol; the sum is finite.
pub fn apply_phi<T: Scalar>(phi: &ComplexPoly<T>, f: &ComplexPoly<T>, theta: T, omega: T) -> ComplexPoly<T> {
    let mut acc = ComplexPoly::zero();
    let mut power = f.clone();
    for (k, &c) in phi.coeffs().iter().enumerate() {
        if k > 0 {
            power = apply_delta(&power, theta, omega);
            if power.is_zero() {
                break;
            }
        }
        acc = &acc + &power.scale(c);
    }
    acc
}

/// `exp(λ'·zD)` with `λ = e^{λ'}`: substitution `f(z) ↦ f(λz)`.
///
/// Any real `λ` is accepted, including nonpositive ones.
pub trait Dilate<T: Scalar>: Sized {
    fn dilate(&self, lambda: T) -> Self;
}

fn scale_powers<T: Scalar>(c: &[Complex<T>], lambda: T) -> Vec<Complex<T>> {
    let mut pow = T::one();
    c.iter()
        .enumerate()
        .map(|(m, &x)| {
            if m > 0 {
                pow = pow * lambda;
            }
            x * pow
        })
        .collect()
}

impl<T: Scalar> Dilate<T> for ComplexPoly<T> {
    fn dilate(&self, lambda: T) -> Self {
        ComplexPoly::new(scale_powers(self.coeffs(), lambda))
    }
}

impl<T: Scalar> Dilate<T> for TaylorSeries<T> {
    fn dilate(&self, lambda: T) -> Self {
        TaylorSeries {
            derivs: scale_powers(&self.derivs, lambda),
            bound_b: self.bound_b.map(|b| b * lambda.abs()),
        }
    }
}

pub fn dilate<T: Scalar, F: Dilate<T>>(f: &F, lambda: T) -> F {
    f.dilate(lambda)
}

/// `exp(τΔ_θ)f = Σ_m f_m Σ_{k≤m} τᵏ/k!·q_θ^{(m,k)} zᵐ⁻ᵏ`, exact for any real `τ`.
pub fn exp_theta<T: Scalar>(f: &ComplexPoly<T>, tau: T, theta: T) -> ComplexPoly<T> {
    let c = f.coeffs();
    let mut out = vec![czero(); c.len()];
    for (m, &cm) in c.iter().enumerate() {
        if cm == czero() {
            continue;
        }
        // t_k = τᵏ/k!·q_θ^{(m,k)} via t_k = t_{k−1}·τ/k·(m−k+1)(θ+m−k)
        let mut t = T::one();
        out[m] = out[m] + cm;
        for k in 1..=m {
            let j = m - k + 1;
            t = t * tau / T::of_usize(k) * T::of_usize(j) * (theta + T::of_usize(j - 1));
            if t == T::zero() {
                break;
            }
            out[m - k] = out[m - k] + cm * t;
        }
    }
    ComplexPoly::new(out)
}

/// `exp(aΔ_{θ,ω})f` through the factorization
/// `exp(aωzD)·exp(ω⁻¹(e^{aω}−1)Δ_θ)`. Valid for every real `a` on polynomials.
pub fn exp_delta_decomposed<T: Scalar>(f: &ComplexPoly<T>, theta: T, omega: T, a: T) -> ComplexPoly<T> {
    let g = exp_theta(f, gamma_factor(a, omega), theta);
    g.dilate((a * omega).exp())
}

/// Outcome of summing `Σ aᵏ/k!·Δᵏ f` term by term.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesSum<T: Scalar> {
    pub value: ComplexPoly<T>,
    pub terms: usize,
    /// False when the term cap was reached before the tail became negligible.
    pub converged: bool,
}

/// `exp(aΔ_{θ,ω})f` summed directly from the power series of the symbol.
///
/// Stops once two consecutive terms fall below `1e-14` of the partial sum
/// (coefficient max norm), or after 128 terms.
pub fn exp_delta_series<T: Scalar>(f: &ComplexPoly<T>, theta: T, omega: T, a: T) -> SeriesSum<T> {
    let tol = T::of(SERIES_REL_TOL);
    let mut acc = f.clone();
    let mut term = f.clone();
    let mut small_run = 0;
    for k in 1..SERIES_MAX_TERMS {
        term = apply_delta(&term, theta, omega).scale(creal(a / T::of_usize(k)));
        if term.is_zero() {
            return SeriesSum { value: acc, terms: k, converged: true };
        }
        acc = &acc + &term;
        if term.max_abs_coeff() < tol * acc.max_abs_coeff() {
            small_run += 1;
            if small_run == 2 {
                return SeriesSum { value: acc, terms: k + 1, converged: true };
            }
        } else {
            small_run = 0;
        }
    }
    SeriesSum { value: acc, terms: SERIES_MAX_TERMS, converged: false }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use proptest::prelude::*;
    use std::f64::consts::E;

    fn p(c: &[f64]) -> ComplexPoly<f64> {
        ComplexPoly::from_real(c)
    }

    fn close(a: &ComplexPoly<f64>, b: &ComplexPoly<f64>, rel: f64) -> bool {
        a.max_coeff_diff(b) <= rel * a.max_abs_coeff().max(b.max_abs_coeff()).max(1e-300)
    }

    #[test]
    fn delta_examples() {
        assert!(apply_delta(&p(&[1.0]), 2.0, 3.0).is_zero());
        assert_eq!(apply_delta(&p(&[0.0, 1.0]), 2.0, 3.0), p(&[2.0, 3.0]));
        assert_eq!(apply_delta(&p(&[0.0, 0.0, 1.0]), 2.0, 1.0), p(&[0.0, 6.0, 2.0]));
    }

    #[test]
    fn delta_degree_accounting() {
        let f = p(&[1.0, 2.0, 3.0]);
        assert_eq!(apply_delta(&f, 1.5, 0.0).degree(), Some(1));
        assert_eq!(apply_delta(&f, 1.5, -0.3).degree(), Some(2));
    }

    #[test]
    fn taylor_delta_matches_polynomial_delta() {
        let f = p(&[0.5, -1.0, 2.0, 0.25, 3.0]);
        let lhs = apply_delta_taylor(&TaylorSeries::from_poly(&f, 6), 1.3, -0.4).to_poly();
        assert!(close(&lhs, &apply_delta(&f, 1.3, -0.4), 1e-14));
    }

    #[test]
    fn q_examples() {
        assert!((q_coeff(1.0f64, 3, 2) - 36.0).abs() < 1e-12);
        assert_eq!(q_coeff(0.7, 2, 3), 0.0);
        assert!((q_coeff(2.0f64, 1, 1) - 2.0).abs() < 1e-15);
        assert_eq!(q_coeff(5.0, 4, 0), 1.0);
        // θ = 0: Δ₀ z = 0, so q₀^{(m,m)} vanishes
        assert_eq!(q_coeff(0.0, 3, 3), 0.0);
        assert!(q_coeff(0.0, 3, 2) > 0.0);
    }

    #[test]
    fn q_matches_repeated_delta() {
        for &theta in &[0.0, 0.5, 2.0] {
            for m in 0..7 {
                let mut f = ComplexPoly::<f64>::monomial(m);
                for k in 0..=m + 1 {
                    let expect = q_coeff(theta, m, k);
                    let got = if k <= m { f.coeff(m - k).re } else { f.max_abs_coeff() };
                    assert!((got - expect).abs() <= 1e-12 * expect.max(1.0), "θ={theta} m={m} k={k}");
                    f = apply_delta(&f, theta, 0.0);
                }
            }
        }
    }

    #[test]
    fn phi_examples() {
        let f = p(&[0.0, 0.0, 1.0]);
        assert_eq!(apply_phi(&p(&[1.0]), &f, 2.0, 1.0), f);
        assert_eq!(apply_phi(&p(&[0.0, 1.0]), &f, 2.0, 1.0), p(&[0.0, 6.0, 2.0]));
        assert!(apply_phi(&p(&[0.0, 0.0, 1.0]), &p(&[0.0, 1.0]), 1.0, 0.0).is_zero());
        assert_eq!(apply_phi(&p(&[1.0, 1.0]), &f, 2.0, 1.0), p(&[0.0, 6.0, 3.0]));
    }

    #[test]
    fn dilate_examples() {
        assert_eq!(p(&[0.0, 0.0, 1.0]).dilate(2.0), p(&[0.0, 0.0, 4.0]));
        assert_eq!(p(&[1.0, 1.0]).dilate(E), p(&[1.0, E]));
        let f = p(&[3.0, -1.0, 2.0]);
        assert_eq!(dilate(&f, 1.0), f);
        let s = TaylorSeries::from_poly(&f, 4).dilate(-2.0);
        assert_eq!(s.to_poly(), p(&[3.0, 2.0, 8.0]));
    }

    #[test]
    fn decomposed_examples() {
        assert_eq!(exp_delta_decomposed(&p(&[1.0]), 1.3, 0.4, 0.9), p(&[1.0]));
        let (theta, omega, a) = (1.5f64, 0.8f64, 0.6f64);
        let e = (a * omega).exp();
        let got = exp_delta_decomposed(&p(&[0.0, 1.0]), theta, omega, a);
        assert!(close(&got, &p(&[theta * (e - 1.0) / omega, e]), 1e-14));
        let got0 = exp_delta_decomposed(&p(&[0.0, 1.0]), 2.0, 0.0, 0.25);
        assert!(close(&got0, &p(&[0.5, 1.0]), 1e-15));
    }

    #[test]
    fn series_path_for_monomial_z() {
        let (theta, omega, a) = (1.5f64, 0.8f64, 0.6f64);
        let s = exp_delta_series(&p(&[0.0, 1.0]), theta, omega, a);
        assert!(s.converged);
        let d = exp_delta_decomposed(&p(&[0.0, 1.0]), theta, omega, a);
        assert!(close(&s.value, &d, 1e-13));
    }

    #[test]
    fn decomposed_generic_f32() {
        let f = ComplexPoly::<f32>::from_real(&[0.0, 1.0]);
        let g = exp_delta_decomposed(&f, 1.0, 0.0, 0.5);
        assert!((g.coeff(0).re - 0.5).abs() < 1e-6);
    }

    fn arb_poly(max_deg: usize) -> impl Strategy<Value = ComplexPoly<f64>> {
        prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 1..=max_deg + 1)
            .prop_map(|v| ComplexPoly::new(v.into_iter().map(|(a, b)| Complex64::new(a, b)).collect()))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn decomposition_matches_series(
            f in arb_poly(10),
            theta in 0.0..3.0f64,
            omega in -1.0..1.0f64,
            a in 0.0..2.0f64,
        ) {
            let s = exp_delta_series(&f, theta, omega, a);
            prop_assert!(s.converged);
            let d = exp_delta_decomposed(&f, theta, omega, a);
            prop_assert!(close(&s.value, &d, 1e-9), "diff {}", s.value.max_coeff_diff(&d));
        }

        #[test]
        fn semigroup_law(
            f in arb_poly(8),
            theta in 0.0..3.0f64,
            omega in -1.0..1.0f64,
            a1 in 0.0..1.5f64,
            a2 in 0.0..1.5f64,
        ) {
            let two = exp_delta_decomposed(&exp_delta_decomposed(&f, theta, omega, a2), theta, omega, a1);
            let one = exp_delta_decomposed(&f, theta, omega, a1 + a2);
            prop_assert!(close(&two, &one, 1e-9));
        }

        #[test]
        fn degree_preserved(f in arb_poly(8), theta in 0.0..3.0f64, omega in -1.0..1.0f64, a in 0.0..2.0f64) {
            prop_assert_eq!(exp_delta_decomposed(&f, theta, omega, a).degree(), f.degree());
        }
    }
}
