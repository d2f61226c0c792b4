//! Classical RK4 on the coefficient system of `∂f/∂t = Δ_{θ,ω}f`:
//! `dc_m/dt = (m+1)(θ+m)c_{m+1} + ωm·c_m`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::poly::ComplexPoly;

fn rhs(c: &[Complex64], theta: f64, omega: f64, out: &mut [Complex64]) {
    let n = c.len();
    for m in 0..n {
        let mf = m as f64;
        let up = if m + 1 < n { c[m + 1] * ((mf + 1.0) * (theta + mf)) } else { Complex64::new(0.0, 0.0) };
        out[m] = up + c[m] * (omega * mf);
    }
}

/// Integrates the coefficients of `g` from `0` to `t` in `steps` RK4 steps.
pub fn coefficient_ode_oracle(g: &ComplexPoly<f64>, theta: f64, omega: f64, t: f64, steps: usize) -> Result<ComplexPoly<f64>> {
    if steps < 100 {
        return Err(Error::Domain(format!("at least 100 steps required, got {steps}")));
    }
    let h = t / steps as f64;
    let mut c = g.coeffs().to_vec();
    let n = c.len();
    let zero = Complex64::new(0.0, 0.0);
    let (mut k1, mut k2, mut k3, mut k4, mut tmp) = (vec![zero; n], vec![zero; n], vec![zero; n], vec![zero; n], vec![zero; n]);
    for _ in 0..steps {
        rhs(&c, theta, omega, &mut k1);
        for i in 0..n {
            tmp[i] = c[i] + k1[i] * (h / 2.0);
        }
        rhs(&tmp, theta, omega, &mut k2);
        for i in 0..n {
            tmp[i] = c[i] + k2[i] * (h / 2.0);
        }
        rhs(&tmp, theta, omega, &mut k3);
        for i in 0..n {
            tmp[i] = c[i] + k3[i] * h;
        }
        rhs(&tmp, theta, omega, &mut k4);
        for i in 0..n {
            c[i] += (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]) * (h / 6.0);
        }
    }
    Ok(ComplexPoly::new(c))
}
