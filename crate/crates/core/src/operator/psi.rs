//! Weights of the `n`-step alternating product `(exp(aΔ_θ/n)·exp(aωzD/n))ⁿ`.
//!
//! Applied to `zᵐ` the product equals
//! `Σ_k aᵏ·q_θ^{(m,k)}·(e^{aω}z)^{m−k}·Ψ_n(k, aω)`, and `Ψ_n → Ψ_∞` as `n → ∞`.

/// `(e^{b/n}−1)`-safe ratio `e^{b/n}(e^b−1)/(n(e^{b/n}−1))`, equal to 1 at `b = 0`.
fn geometric_mean_ratio(n: usize, b: f64) -> f64 {
    if b == 0.0 {
        return 1.0;
    }
    let h = b / n as f64;
    h.exp() * b.exp_m1() / (n as f64 * h.exp_m1())
}

fn inv_factorial(k: usize) -> f64 {
    (1..=k).fold(1.0, |acc, j| acc / j as f64)
}

/// `Ψ_n(k,b) = (1/k!)·(e^{b/n}(e^b−1)/(n(e^{b/n}−1)))ᵏ`.
pub fn psi(n: usize, k: usize, b: f64) -> f64 {
    assert!(n > 0, "psi requires n >= 1");
    inv_factorial(k) * geometric_mean_ratio(n, b).powi(k as i32)
}

/// `lim_{n→∞} Ψ_n(k,b) = (1/k!)·((e^b−1)/b)ᵏ`.
pub fn psi_limit(k: usize, b: f64) -> f64 {
    let ratio = if b.abs() < 1e-8 { 1.0 + b / 2.0 } else { b.exp_m1() / b };
    inv_factorial(k) * ratio.powi(k as i32)
}
