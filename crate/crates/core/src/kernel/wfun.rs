//! The entire function `w_θ(ξ) = Σ ξᵏ/(k!Γ(θ+k))` and the kernel
//! `K_θ(z,s) = e^{−z}w_θ(zs)`.
//!
//! For `|ξ| ≤ 100` the power series is summed directly. Beyond that the
//! identity `w_θ(ξ) = (x/2)^{1−θ}·I_{θ−1}(x)`, `x = 2√ξ`, is combined with the
//! full large-argument expansion of `I_ν`, evaluated in log space so that the
//! `e^{2√ξ}` growth never overflows.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::kernel::gamma::recip_gamma;

/// Default relative stopping tolerance of the power series.
pub const W_SERIES_TOL: f64 = 1e-17;
/// `|ξ|` above which the asymptotic expansion is used.
pub const W_ASYMPTOTIC_ABS: f64 = 100.0;
const MAX_TERMS: usize = 1_000_000;

fn check_args(theta: f64, xi: Complex64) -> Result<()> {
    if !(theta >= 0.0) || !theta.is_finite() {
        return Err(Error::Domain(format!("w_theta requires theta >= 0, got {theta}")));
    }
    if !xi.re.is_finite() || !xi.im.is_finite() {
        return Err(Error::NonConvergence(format!("w_theta argument is not finite: {xi}")));
    }
    Ok(())
}

/// Direct summation with `t_{k+1} = t_k·ξ/((k+1)(θ+k))`, started at the first
/// nonzero term (`k = 1` when `θ = 0`).
fn w_series(theta: f64, xi: Complex64, tol: f64) -> Result<Complex64> {
    let k0 = usize::from(theta == 0.0);
    let mut term = if k0 == 0 { Complex64::new(recip_gamma(theta), 0.0) } else { xi };
    let mut sum = term;
    let abs_xi = xi.norm();
    for k in k0..MAX_TERMS {
        let denom = (k + 1) as f64 * (theta + k as f64);
        term = term * xi / denom;
        sum += term;
        if abs_xi < denom && term.norm() <= tol * sum.norm() {
            return Ok(sum);
        }
        if term.norm() == 0.0 {
            return Ok(sum);
        }
    }
    Err(Error::NonConvergence(format!("w_theta series exceeded {MAX_TERMS} terms at xi = {xi}")))
}

/// `Σ (∓1)ᵏ a_k(ν)/xᵏ` with `a_k(ν) = ∏_{j≤k}(4ν²−(2j−1)²)/(k!8ᵏ)`, truncated at
/// the smallest term.
fn hankel_sums(nu: f64, x: Complex64) -> (Complex64, Complex64) {
    let mu = 4.0 * nu * nu;
    let mut term = Complex64::new(1.0, 0.0);
    let mut alt = term;
    let mut plain = term;
    let mut last = f64::INFINITY;
    for k in 1..200 {
        let j = (2 * k - 1) as f64;
        term = term * (mu - j * j) / (k as f64 * 8.0 * x);
        let mag = term.norm();
        if mag > last {
            break;
        }
        last = mag;
        if k % 2 == 1 {
            alt -= term;
        } else {
            alt += term;
        }
        plain += term;
        if mag < 1e-18 * alt.norm().min(plain.norm()) {
            break;
        }
    }
    (alt, plain)
}

fn ln_w_asymptotic(theta: f64, xi: Complex64) -> Complex64 {
    let nu = theta - 1.0;
    let x = 2.0 * xi.sqrt();
    let (dominant, recessive) = hankel_sums(nu, x);
    let mut inner = dominant;
    // e^{−x} branch matters only off the positive real axis
    if xi.im != 0.0 || xi.re < 0.0 {
        let sign = if x.arg() >= 0.0 { 1.0 } else { -1.0 };
        let i = Complex64::new(0.0, 1.0);
        let coupling = i * sign * (i * sign * nu * std::f64::consts::PI).exp();
        inner += coupling * (-2.0 * x).exp() * recessive;
    }
    -nu * (x / 2.0).ln() + x - 0.5 * (2.0 * std::f64::consts::PI * x).ln() + inner.ln()
}

/// `w_θ(ξ)` with relative series tolerance `tol`.
pub fn w_theta(theta: f64, xi: Complex64, tol: f64) -> Result<Complex64> {
    check_args(theta, xi)?;
    if xi == Complex64::new(0.0, 0.0) {
        return Ok(Complex64::new(recip_gamma(theta), 0.0));
    }
    if xi.norm() > W_ASYMPTOTIC_ABS {
        Ok(ln_w_asymptotic(theta, xi).exp())
    } else {
        w_series(theta, xi, tol)
    }
}

/// Principal-branch `ln w_θ(ξ)` for `ξ ≠ 0`; finite where `w_θ` itself would overflow.
pub fn ln_w_theta(theta: f64, xi: Complex64) -> Result<Complex64> {
    check_args(theta, xi)?;
    if xi.norm() > W_ASYMPTOTIC_ABS {
        Ok(ln_w_asymptotic(theta, xi))
    } else {
        Ok(w_series(theta, xi, W_SERIES_TOL)?.ln())
    }
}

/// `ln K_θ(z,s) = −z + ln w_θ(zs)`; `None` when `K_θ(z,s) = 0` exactly.
pub fn ln_k_theta(theta: f64, z: Complex64, s: f64) -> Result<Option<Complex64>> {
    let xi = z * s;
    if xi == Complex64::new(0.0, 0.0) {
        check_args(theta, xi)?;
        let r = recip_gamma(theta);
        return Ok((r != 0.0).then(|| Complex64::new(r.ln(), 0.0) - z));
    }
    Ok(Some(ln_w_theta(theta, xi)? - z))
}

/// `K_θ(z,s) = e^{−z}·w_θ(zs)`.
pub fn k_theta(theta: f64, z: Complex64, s: f64) -> Result<Complex64> {
    Ok(ln_k_theta(theta, z, s)?.map_or(Complex64::new(0.0, 0.0), |l| l.exp()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::gamma::gamma_theta;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn w_examples() {
        assert_eq!(w_theta(1.0, c(0.0), W_SERIES_TOL).unwrap(), c(1.0));
        assert_eq!(w_theta(0.0, c(0.0), W_SERIES_TOL).unwrap(), c(0.0));
        // 30-term oracle Σ 1/(k!)²
        let mut oracle = 0.0;
        let mut fact = 1.0;
        for k in 0..30 {
            if k > 0 {
                fact *= k as f64;
            }
            oracle += 1.0 / (fact * fact);
        }
        let w = w_theta(1.0, c(1.0), W_SERIES_TOL).unwrap();
        assert!((w.re - oracle).abs() < 1e-15);
        assert!((w.re - 2.279_585_3).abs() < 1e-7);
    }

    #[test]
    fn theta_zero_starts_at_first_term() {
        // w₀(ξ) = ξ·w₂(ξ)
        for xi in [c(0.3), c(5.0), Complex64::new(-2.0, 1.0)] {
            let w0 = w_theta(0.0, xi, W_SERIES_TOL).unwrap();
            let w2 = w_theta(2.0, xi, W_SERIES_TOL).unwrap();
            assert!(rel(w0, xi * w2) < 1e-14);
        }
    }

    #[test]
    fn recurrence_matches_gamma_division() {
        for &theta in &[0.5, 1.0, 2.5, 3.7] {
            let xi = 1.7f64;
            let mut term = recip_gamma(theta);
            for k in 0..20 {
                let direct = xi.powi(k as i32) / gamma_theta(theta, k);
                assert!(((term - direct) / direct).abs() < 1e-12, "θ={theta} k={k}");
                term *= xi / ((k + 1) as f64 * (theta + k as f64));
            }
        }
    }

    #[test]
    fn asymptotic_agrees_with_series_in_overlap() {
        for &theta in &[0.0, 0.5, 1.0, 2.5, 3.7] {
            for &r in &[101.0, 150.0, 300.0] {
                for &phi in &[0.0, 0.4, 1.2, 2.0, 3.0, std::f64::consts::PI, -0.7, -2.5] {
                    let xi = Complex64::from_polar(r, phi);
                    let series = w_series(theta, xi, W_SERIES_TOL).unwrap();
                    let asym = ln_w_asymptotic(theta, xi).exp();
                    // the series loses ~e^{2√|ξ|}/|w| to cancellation off the positive axis
                    let cancel = (2.0 * r.sqrt()).exp() / series.norm();
                    let tol = 1e-13 * cancel.max(1.0);
                    assert!(rel(asym, series) < tol.max(1e-12), "θ={theta} ξ={xi}: {asym} vs {series}");
                }
            }
        }
    }

    #[test]
    fn large_argument_stays_finite_in_log_space() {
        let l = ln_w_theta(1.5, c(1e6)).unwrap();
        assert!((l.re - 2000.0).abs() < 20.0);
        assert!(l.im.abs() < 1e-12);
        let k = k_theta(1.5, c(100.0), 100.0).unwrap();
        assert!(k.is_finite() && k.re > 0.0);
    }

    #[test]
    fn kernel_examples() {
        assert!(rel(k_theta(1.0, c(0.0), 3.0).unwrap(), c(1.0)) < 1e-15);
        assert!(rel(k_theta(1.0, c(1.0), 0.0).unwrap(), c((-1.0f64).exp())) < 1e-15);
        assert!((k_theta(1.0, c(1.0), 0.0).unwrap().re - 0.367879).abs() < 1e-6);
        assert_eq!(k_theta(0.0, c(1.0), 0.0).unwrap(), c(0.0));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(w_theta(1.0, Complex64::new(f64::NAN, 0.0), 1e-15), Err(Error::NonConvergence(_))));
        assert!(matches!(w_theta(-1.0, c(1.0), 1e-15), Err(Error::Domain(_))));
    }
}
