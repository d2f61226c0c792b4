//! Trotter–Kato splitting of `exp(aΔ_{θ,ω})` into `exp(aΔ_θ)` and the dilation group `exp(aωzD)`.

use crate::operator::delta::{exp_delta_decomposed, exp_theta, Dilate};
use crate::poly::ComplexPoly;

/// `(exp(a/n·Δ_θ)·exp(aω/n·zD))ⁿ f`, the dilation acting first in each factor.
pub fn trotter_product(f: &ComplexPoly<f64>, theta: f64, omega: f64, a: f64, n: usize) -> ComplexPoly<f64> {
    let step = a / n as f64;
    let lambda = (step * omega).exp();
    let mut g = f.clone();
    for _ in 0..n {
        g = exp_theta(&g.dilate(lambda), step, theta);
    }
    g
}

/// Maximum coefficient deviation of the `n`-fold product from `exp(aΔ_{θ,ω})f`, for each `n`.
pub fn trotter_convergence(f: &ComplexPoly<f64>, theta: f64, omega: f64, a: f64, ns: &[usize]) -> Vec<f64> {
    let exact = exp_delta_decomposed(f, theta, omega, a);
    ns.iter().map(|&n| trotter_product(f, theta, omega, a, n).max_coeff_diff(&exact)).collect()
}
