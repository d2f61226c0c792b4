//! Helpers shared by the integration and acceptance tests.
#![allow(dead_code)]

use deltaop::poly::ComplexPoly;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const THETAS: [f64; 3] = [0.5, 1.0, 2.5];
pub const OMEGAS: [f64; 3] = [-0.5, 0.0, 0.7];
pub const TIMES: [f64; 2] = [0.1, 1.0];

pub fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

pub fn p(v: &[f64]) -> ComplexPoly<f64> {
    ComplexPoly::from_real(v)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rel(a: Complex64, b: Complex64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).norm() / b.norm()
    }
}

/// Real coefficients uniform on `[−1, 1]`, degree in `[0, 8]`, nonzero leading term.
pub fn random_poly(rng: &mut impl Rng) -> ComplexPoly<f64> {
    let deg = rng.random_range(0..=8);
    let mut v: Vec<f64> = (0..=deg).map(|_| rng.random_range(-1.0..1.0)).collect();
    v[deg] = if v[deg] < 0.0 { v[deg] - 0.1 } else { v[deg] + 0.1 };
    p(&v)
}

/// Points with `|z| ≤ 3` and `|arg z| ≤ π/4`.
pub fn sector_points(rng: &mut impl Rng, count: usize) -> Vec<Complex64> {
    (0..count)
        .map(|_| Complex64::from_polar(rng.random_range(0.0..3.0), rng.random_range(-0.25..0.25) * std::f64::consts::PI))
        .collect()
}

/// `I_ν(x)` by its power series, with `Γ` taken from statrs.
pub fn bessel_i(nu: f64, x: f64) -> f64 {
    let half = x / 2.0;
    let mut sum = 0.0;
    let mut k = 0usize;
    loop {
        let ln_term = (2 * k) as f64 * half.ln() + nu * half.ln()
            - statrs::function::gamma::ln_gamma(k as f64 + 1.0)
            - statrs::function::gamma::ln_gamma(k as f64 + nu + 1.0);
        let term = ln_term.exp();
        sum += term;
        if k > 5 && term < 1e-18 * sum {
            return sum;
        }
        k += 1;
    }
}

/// Central difference of `f` in its first argument.
pub fn time_derivative(f: impl Fn(f64) -> Complex64, t: f64, dt: f64) -> Complex64 {
    (f(t + dt) - f(t - dt)) / (2.0 * dt)
}
