//! Coefficient calculus `κ_n(k,m,θ,ω) = [Dⁿ Δ_{θ,ω}ᵏ zᵐ]_{z=0}` and the series
//! form of `φ(Δ_{θ,ω})f`.

use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::operator::delta::{apply_delta, ln_q_coeff};
use crate::params::gamma_factor;
use crate::poly::ComplexPoly;
use crate::series::TaylorSeries;

fn binomial_big(n: usize, k: usize) -> BigUint {
    (0..k).fold(BigUint::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// `α_p^{(s)} = Σ_k C(p,k)(−1)ᵏ(p−k)ˢ` with `0⁰ = 1`, exactly.
///
/// Equals `p!·S(s,p)` (Stirling numbers of the second kind): zero for `s < p`,
/// positive for `s ≥ p`.
pub fn alpha_big(p: usize, s: usize) -> BigUint {
    let mut acc = BigInt::zero();
    for k in 0..=p {
        let term = BigInt::from(binomial_big(p, k)) * BigInt::from(BigUint::from(p - k).pow(s as u32));
        if k % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc.to_biguint().expect("alternating sum is a nonnegative finite difference")
}

/// [`alpha_big`] narrowed to `u64`.
pub fn alpha(p: usize, s: usize) -> Result<u64> {
    alpha_big(p, s)
        .to_u64()
        .ok_or_else(|| Error::Overflow(format!("alpha({p}, {s}) exceeds 64 bits")))
}

fn ln_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        x.to_f64().expect("BigUint converts to f64").ln()
    } else {
        let shift = bits - 64;
        (x >> shift).to_f64().expect("64-bit value").ln() + shift as f64 * std::f64::consts::LN_2
    }
}

fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|j| (j as f64).ln()).sum()
}

/// Closed-form `κ_n(k,m,θ,ω)`; zero when `m < n`.
///
/// `κ = n!/(m−n)!·q_θ^{(m,m−n)}·ω^{k+n−m}·Σ_{l=m−n}^{k} C(k,l)·n^{k−l}·α_{m−n}^{(l)}`.
/// The integer sum is exact; the remaining factors are combined in log
/// magnitude with a separate sign. At `ω = 0` only `k = m−n` survives.
pub fn kappa(n: usize, k: usize, m: usize, theta: f64, omega: f64) -> f64 {
    if m < n {
        return 0.0;
    }
    let p = m - n;
    if k < p {
        return 0.0;
    }
    let sum = (p..=k).fold(BigUint::zero(), |acc, l| {
        acc + binomial_big(k, l) * BigUint::from(n).pow((k - l) as u32) * alpha_big(p, l)
    });
    kappa_from_sum(n, k, m, theta, omega, &sum)
}

fn kappa_from_sum(n: usize, k: usize, m: usize, theta: f64, omega: f64, sum: &BigUint) -> f64 {
    let p = m - n;
    let e = k - p;
    if sum.is_zero() || (omega == 0.0 && e > 0) {
        return 0.0;
    }
    let Some(ln_q) = ln_q_coeff(theta, m, p) else {
        return 0.0;
    };
    let ln_omega = if e > 0 { e as f64 * omega.abs().ln() } else { 0.0 };
    let mag = (ln_factorial(n) - ln_factorial(p) + ln_q + ln_omega + ln_big(sum)).exp();
    if omega < 0.0 && e % 2 == 1 {
        -mag
    } else {
        mag
    }
}

/// Independent evaluation of `κ_n(k,m,θ,ω)`: apply `Δ_{θ,ω}` to `zᵐ` `k` times,
/// then read off `n!` times the coefficient of `zⁿ`.
pub fn kappa_bruteforce(n: usize, k: usize, m: usize, theta: f64, omega: f64) -> f64 {
    let mut f = ComplexPoly::<f64>::monomial(m);
    for _ in 0..k {
        f = apply_delta(&f, theta, omega);
    }
    let n_fact: f64 = (1..=n).map(|j| j as f64).product();
    f.coeff(n).re * n_fact
}

/// Read-only cache of `κ_n(k,m,θ,ω)` for `n, k, m < capacity`.
#[derive(Debug, Clone)]
pub struct KappaTable {
    theta: f64,
    omega: f64,
    capacity: usize,
    entries: Vec<f64>,
}

impl KappaTable {
    pub fn new(theta: f64, omega: f64, capacity: usize) -> Self {
        let alphas: Vec<Vec<BigUint>> = (0..capacity)
            .map(|p| (0..capacity).map(|s| alpha_big(p, s)).collect())
            .collect();
        let binoms: Vec<Vec<BigUint>> = (0..capacity)
            .map(|k| (0..=k).map(|l| binomial_big(k, l)).collect())
            .collect();
        let mut entries = vec![0.0; capacity * capacity * capacity];
        for n in 0..capacity {
            let powers: Vec<BigUint> = (0..capacity).map(|e| BigUint::from(n).pow(e as u32)).collect();
            for m in n..capacity {
                let p = m - n;
                for k in p..capacity {
                    let sum = (p..=k).fold(BigUint::zero(), |acc, l| {
                        acc + &binoms[k][l] * &powers[k - l] * &alphas[p][l]
                    });
                    entries[(n * capacity + k) * capacity + m] = kappa_from_sum(n, k, m, theta, omega, &sum);
                }
            }
        }
        Self { theta, omega, capacity, entries }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn get(&self, n: usize, k: usize, m: usize) -> Result<f64> {
        let cap = self.capacity;
        if n >= cap || k >= cap || m >= cap {
            return Err(Error::Capacity { requested: n.max(k).max(m) + 1, capacity: cap });
        }
        Ok(self.entries[(n * cap + k) * cap + m])
    }
}

/// Result of the coefficient-space evaluation of `φ(Δ_{θ,ω})f`.
#[derive(Debug, Clone)]
pub struct SeriesApplication {
    pub series: TaylorSeries<f64>,
    /// Largest contribution to any output coefficient from the last retained
    /// index of `φ` or `f`, relative to that coefficient's magnitude.
    pub tail_estimate: f64,
    /// `Some(b·ω⁻¹(e^{aω}−1) < 1)` when both inputs declare growth bounds.
    pub contractive: Option<bool>,
}

/// `(φ(Δ_{θ,ω})f)⁽ⁿ⁾(0) = Σ_{k,m<trunc} φ⁽ᵏ⁾(0)/k!·f⁽ᵐ⁾(0)/m!·κ_n(k,m,θ,ω)` for `n < trunc`.
pub fn apply_phi_series(
    phi: &TaylorSeries<f64>,
    f: &TaylorSeries<f64>,
    table: &KappaTable,
    trunc: usize,
) -> Result<SeriesApplication> {
    if trunc > table.capacity() {
        return Err(Error::Capacity { requested: trunc, capacity: table.capacity() });
    }
    let contractive = match (phi.bound_b, f.bound_b) {
        (Some(a), Some(b)) => {
            let ok = b * gamma_factor(a, table.omega()) < 1.0;
            if !ok {
                log::warn!("contractivity condition fails for declared bounds a = {a}, b = {b}");
            }
            Some(ok)
        }
        _ => None,
    };
    let normalized = |s: &TaylorSeries<f64>| -> Vec<Complex64> {
        let mut fact = 1.0;
        (0..trunc)
            .map(|k| {
                if k > 0 {
                    fact *= k as f64;
                }
                s.derivs.get(k).copied().unwrap_or_default() / fact
            })
            .collect()
    };
    let pk = normalized(phi);
    let fm = normalized(f);
    let mut derivs = vec![Complex64::new(0.0, 0.0); trunc];
    let mut tail_estimate: f64 = 0.0;
    for (n, out) in derivs.iter_mut().enumerate() {
        let mut tail = 0.0;
        for (k, &a) in pk.iter().enumerate() {
            if a == Complex64::new(0.0, 0.0) {
                continue;
            }
            for (m, &b) in fm.iter().enumerate().skip(n) {
                let term = a * b * table.get(n, k, m)?;
                *out += term;
                if k + 1 == trunc || m + 1 == trunc {
                    tail += term.norm();
                }
            }
        }
        if tail > 0.0 {
            tail_estimate = tail_estimate.max(tail / out.norm().max(f64::MIN_POSITIVE));
        }
    }
    let bound_b = match (phi.bound_b, f.bound_b) {
        (Some(a), Some(b)) if contractive == Some(true) => {
            crate::params::c_of_b(a, table.omega(), b).ok()
        }
        _ => None,
    };
    Ok(SeriesApplication { series: TaylorSeries { derivs, bound_b }, tail_estimate, contractive })
}
