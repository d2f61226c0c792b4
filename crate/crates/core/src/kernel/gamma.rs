//! Gamma function, its reciprocal and logarithm (Lanczos, g = 7).

use std::f64::consts::PI;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];
const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

fn lanczos_sum(x: f64) -> f64 {
    // x is the shifted argument Γ(x+1)
    LANCZOS[1..]
        .iter()
        .enumerate()
        .fold(LANCZOS[0], |acc, (i, &c)| acc + c / (x + (i + 1) as f64))
}

/// `sin(πx)` with exact argument reduction, so it vanishes at every integer.
pub fn sin_pi(x: f64) -> f64 {
    let r = x - 2.0 * (x / 2.0).round();
    if r == 0.0 || r.abs() == 1.0 {
        return 0.0;
    }
    if r > 0.5 {
        (PI * (1.0 - r)).sin()
    } else if r < -0.5 {
        -(PI * (1.0 + r)).sin()
    } else {
        (PI * r).sin()
    }
}

/// `Γ(x)` for `x ≥ 0.5`, split power to stay finite up to `x ≈ 171.6`.
fn gamma_right(x: f64) -> f64 {
    let y = x - 1.0;
    let t = y + LANCZOS_G + 0.5;
    let half = t.powf((y + 0.5) / 2.0);
    (2.0 * PI).sqrt() * half * (half * (-t).exp()) * lanczos_sum(y)
}

/// `(n−1)!` for integer `1 ≤ n ≤ 171`, which is exactly representable up to `n = 23`
/// and correctly rounded beyond.
fn integer_gamma(x: f64) -> Option<f64> {
    ((1.0..=171.0).contains(&x) && x == x.floor()).then(|| (2..x as usize).map(|j| j as f64).product())
}

/// `Γ(x)`; `±∞` at the poles `x ∈ {0, −1, −2, …}`.
pub fn gamma(x: f64) -> f64 {
    if x <= 0.0 && x == x.floor() {
        return f64::INFINITY;
    }
    if let Some(v) = integer_gamma(x) {
        return v;
    }
    if x < 0.5 {
        PI / (sin_pi(x) * gamma_right(1.0 - x))
    } else {
        gamma_right(x)
    }
}

/// `1/Γ(x)`, an entire function: exactly zero at `x ∈ {0, −1, −2, …}`.
pub fn recip_gamma(x: f64) -> f64 {
    if x <= 0.0 && x == x.floor() {
        return 0.0;
    }
    if let Some(v) = integer_gamma(x) {
        return 1.0 / v;
    }
    if x < 0.5 {
        gamma_right(1.0 - x) * sin_pi(x) / PI
    } else if x < 171.0 {
        1.0 / gamma_right(x)
    } else {
        (-ln_gamma(x)).exp()
    }
}

/// `ln|Γ(x)|`; `+∞` at the poles.
pub fn ln_gamma(x: f64) -> f64 {
    if x <= 0.0 && x == x.floor() {
        return f64::INFINITY;
    }
    if x < 0.5 {
        return PI.ln() - sin_pi(x).abs().ln() - ln_gamma(1.0 - x);
    }
    let y = x - 1.0;
    let t = y + LANCZOS_G + 0.5;
    LN_SQRT_2PI + (y + 0.5) * t.ln() - t + lanczos_sum(y).ln()
}

fn ln_factorial(m: usize) -> f64 {
    if m < 2 {
        0.0
    } else {
        ln_gamma(m as f64 + 1.0)
    }
}

/// `ln γ_θ(m) = ln(m!·Γ(θ+m))`, `+∞` at `θ = m = 0`.
pub fn ln_gamma_theta(theta: f64, m: usize) -> f64 {
    ln_factorial(m) + ln_gamma(theta + m as f64)
}

/// `γ_θ(m) = m!·Γ(θ+m)`; `+∞` at `θ = m = 0` and once the value overflows.
pub fn gamma_theta(theta: f64, m: usize) -> f64 {
    let x = theta + m as f64;
    if x == 0.0 {
        return f64::INFINITY;
    }
    if m <= 170 && x < 171.0 {
        let fact: f64 = (2..=m).map(|j| j as f64).product();
        let v = fact * gamma(x);
        if v.is_finite() {
            return v;
        }
    }
    ln_gamma_theta(theta, m).exp()
}
