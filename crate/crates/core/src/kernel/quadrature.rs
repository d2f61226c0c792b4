//! Generalized Gauss–Laguerre rules for the measure `s^{θ−1}e^{−s}ds` on `(0, ∞)`.
//!
//! Nodes are the eigenvalues of the Jacobi matrix (diagonal `2k+θ`, squared
//! off-diagonal `k(k+θ−1)`), polished by Newton steps on the three-term
//! recurrence. Weights come from the Christoffel function evaluated with a
//! running log scale, so the tiny weights of the outermost nodes keep full
//! relative accuracy.

use std::sync::OnceLock;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::gamma::ln_gamma;

pub const MAX_NODES: usize = 256;
pub const DEFAULT_NODES: usize = 64;
/// Relative agreement required between successive rules of the doubling ladder.
pub const ADAPTIVE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, from = "RawRule")]
pub struct QuadratureRule {
    pub theta: f64,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    #[serde(skip)]
    log_weights: Vec<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRule {
    theta: f64,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl From<RawRule> for QuadratureRule {
    fn from(r: RawRule) -> Self {
        let log_weights = r.weights.iter().map(|w| w.ln()).collect();
        Self { theta: r.theta, nodes: r.nodes, weights: r.weights, log_weights }
    }
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `ln wᵢ`, accurate even where `wᵢ` underflows.
    pub fn log_weights(&self) -> &[f64] {
        &self.log_weights
    }

    /// `Σ wᵢ·f(sᵢ)`.
    pub fn integrate(&self, f: impl Fn(f64) -> Complex64) -> Complex64 {
        self.nodes.iter().zip(&self.weights).map(|(&s, &w)| f(s) * w).sum()
    }

    /// `Σ g(sᵢ, ln wᵢ)`: the integrand receives the log weight so it can fold
    /// the weight into its own log-space evaluation.
    pub fn integrate_terms(&self, g: impl Fn(f64, f64) -> Result<Complex64>) -> Result<Complex64> {
        let mut acc = Complex64::new(0.0, 0.0);
        for (&s, &lw) in self.nodes.iter().zip(&self.log_weights) {
            acc += g(s, lw)?;
        }
        Ok(acc)
    }

    /// `Σ exp(ln wᵢ + g(sᵢ))` for integrands supplied as logarithms, `None` meaning zero.
    pub fn integrate_log(&self, g: impl Fn(f64) -> Result<Option<Complex64>>) -> Result<Complex64> {
        self.integrate_terms(|s, lw| Ok(g(s)?.map_or(Complex64::new(0.0, 0.0), |l| (l + lw).exp())))
    }
}

/// Monic recurrence value and derivative ratio `P_n(x)/P_n'(x)`.
fn newton_ratio(theta: f64, n: usize, x: f64) -> f64 {
    let (mut p_prev, mut p) = (0.0, 1.0);
    let (mut d_prev, mut d) = (0.0, 0.0);
    for k in 0..n {
        let a = 2.0 * k as f64 + theta;
        let b = k as f64 * (k as f64 + theta - 1.0);
        let p_next = (x - a) * p - b * p_prev;
        let d_next = p + (x - a) * d - b * d_prev;
        p_prev = p;
        p = p_next;
        d_prev = d;
        d = d_next;
        let scale = p.abs().max(d.abs());
        if scale > 1e150 {
            p /= scale;
            p_prev /= scale;
            d /= scale;
            d_prev /= scale;
        }
    }
    p / d
}

/// `ln wᵢ = −ln Σ_{k<n} p̂_k(x)²` with orthonormal `p̂_k`.
fn christoffel_log_weight(theta: f64, n: usize, x: f64, ln_mu0: f64) -> f64 {
    let mut p_prev = 0.0;
    let mut p = 1.0;
    let mut log_scale = -0.5 * ln_mu0;
    let mut sum = 1.0;
    for k in 0..n.saturating_sub(1) {
        let a = 2.0 * k as f64 + theta;
        let sb = (k as f64 * (k as f64 + theta - 1.0)).max(0.0).sqrt();
        let sb_next = ((k + 1) as f64 * (k as f64 + theta)).sqrt();
        let next = ((x - a) * p - sb * p_prev) / sb_next;
        p_prev = p;
        p = next;
        if p.abs() > 1e100 {
            p *= 1e-100;
            p_prev *= 1e-100;
            sum *= 1e-200;
            log_scale += 100.0 * std::f64::consts::LN_10;
        }
        sum += p * p;
    }
    -(sum.ln() + 2.0 * log_scale)
}

/// `n`-point rule, exact for polynomials of degree `≤ 2n−1` against `s^{θ−1}e^{−s}`.
pub fn gauss_laguerre(theta: f64, n: usize) -> Result<QuadratureRule> {
    if !(theta > 0.0) {
        return Err(Error::UseDecompositionPath { theta });
    }
    if n == 0 || n > MAX_NODES {
        return Err(Error::Domain(format!("quadrature size must be in 1..={MAX_NODES}, got {n}")));
    }
    let jacobi = DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            2.0 * i as f64 + theta
        } else if i.abs_diff(j) == 1 {
            let k = i.max(j) as f64;
            (k * (k + theta - 1.0)).sqrt()
        } else {
            0.0
        }
    });
    let mut nodes: Vec<f64> = jacobi.symmetric_eigenvalues().iter().copied().collect();
    nodes.sort_by(f64::total_cmp);
    for x in nodes.iter_mut() {
        for _ in 0..3 {
            let step = newton_ratio(theta, n, *x);
            if !step.is_finite() {
                break;
            }
            *x -= step;
        }
    }
    let ln_mu0 = ln_gamma(theta);
    let log_weights: Vec<f64> = nodes.iter().map(|&x| christoffel_log_weight(theta, n, x, ln_mu0)).collect();
    let weights = log_weights.iter().map(|l| l.exp()).collect();
    Ok(QuadratureRule { theta, nodes, weights, log_weights })
}

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: Complex64,
    pub nodes_used: usize,
    /// Two successive rules agreed to [`ADAPTIVE_TOL`].
    pub converged: bool,
}

/// Doubling ladder `n₀, 2n₀, …, n_max` of rules for a fixed `θ`, built lazily.
#[derive(Debug)]
pub struct AdaptiveQuadrature {
    theta: f64,
    sizes: Vec<usize>,
    rules: Vec<OnceLock<QuadratureRule>>,
}

impl AdaptiveQuadrature {
    pub fn new(theta: f64) -> Result<Self> {
        Self::with_sizes(theta, DEFAULT_NODES, MAX_NODES)
    }

    pub fn with_sizes(theta: f64, start: usize, max: usize) -> Result<Self> {
        if !(theta > 0.0) {
            return Err(Error::UseDecompositionPath { theta });
        }
        let max = max.min(MAX_NODES);
        if start == 0 || start > max {
            return Err(Error::Domain(format!("invalid quadrature ladder {start}..={max}")));
        }
        let mut sizes = vec![start];
        while sizes.last().is_some_and(|&n| 2 * n <= max) {
            sizes.push(2 * sizes.last().unwrap());
        }
        let rules = sizes.iter().map(|_| OnceLock::new()).collect();
        Ok(Self { theta, sizes, rules })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn rule(&self, level: usize) -> &QuadratureRule {
        self.rules[level].get_or_init(|| {
            gauss_laguerre(self.theta, self.sizes[level]).expect("ladder sizes are validated")
        })
    }

    /// Largest rule size on the ladder.
    pub fn max_nodes(&self) -> usize {
        *self.sizes.last().unwrap()
    }

    /// Doubles the rule until two successive values agree to [`ADAPTIVE_TOL`].
    pub fn integrate_log(&self, g: impl Fn(f64) -> Result<Option<Complex64>>) -> Result<Integral> {
        self.integrate_terms(|s, lw| Ok(g(s)?.map_or(Complex64::new(0.0, 0.0), |l| (l + lw).exp())))
    }

    /// Adaptive version of [`QuadratureRule::integrate_terms`].
    pub fn integrate_terms(&self, g: impl Fn(f64, f64) -> Result<Complex64>) -> Result<Integral> {
        let mut prev = self.rule(0).integrate_terms(&g)?;
        if self.sizes.len() == 1 {
            return Ok(Integral { value: prev, nodes_used: self.sizes[0], converged: false });
        }
        for level in 1..self.sizes.len() {
            let cur = self.rule(level).integrate_terms(&g)?;
            if (cur - prev).norm() <= ADAPTIVE_TOL * cur.norm() {
                return Ok(Integral { value: cur, nodes_used: self.sizes[level], converged: true });
            }
            prev = cur;
        }
        Ok(Integral { value: prev, nodes_used: *self.sizes.last().unwrap(), converged: false })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use statrs::function::gamma::{gamma, ln_gamma as ln_gamma_ref};

    #[test]
    fn single_point_rule() {
        let r = gauss_laguerre(1.0, 1).unwrap();
        assert!((r.nodes[0] - 1.0).abs() < 1e-15);
        assert!((r.weights[0] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn third_moment() {
        let r = gauss_laguerre(2.5, 24).unwrap();
        let m3 = r.integrate(|s| Complex64::new(s.powi(3), 0.0)).re;
        assert!(((m3 - gamma(5.5)) / gamma(5.5)).abs() < 1e-12);
        assert!((m3 - 52.3428).abs() < 1e-4);
    }

    #[test]
    fn exact_for_degree_2n_minus_1() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let theta = 1.5;
        let r = gauss_laguerre(theta, 8).unwrap();
        let coeffs: Vec<f64> = (0..16).map(|_| rng.random_range(-1.0..1.0)).collect();
        let oracle: f64 = coeffs.iter().enumerate().map(|(k, c)| c * gamma(theta + k as f64)).sum();
        let scale: f64 = coeffs.iter().enumerate().map(|(k, c)| c.abs() * gamma(theta + k as f64)).sum();
        let got = r
            .integrate(|s| Complex64::new(coeffs.iter().rev().fold(0.0, |acc, c| acc * s + c), 0.0))
            .re;
        assert!((got - oracle).abs() < 1e-11 * scale, "{got} vs {oracle}");
    }

    #[test]
    fn all_moments_up_to_n_64() {
        for &theta in &[0.3, 1.0, 2.5, 7.0] {
            for &n in &[4, 16, 64] {
                let r = gauss_laguerre(theta, n).unwrap();
                for k in 0..2 * n {
                    let ln_m = r
                        .nodes
                        .iter()
                        .zip(r.log_weights())
                        .map(|(x, lw)| lw + k as f64 * x.ln())
                        .fold(f64::NEG_INFINITY, f64::max);
                    // sum relative to the largest term, in log space
                    let sum: f64 = r
                        .nodes
                        .iter()
                        .zip(r.log_weights())
                        .map(|(x, lw)| (lw + k as f64 * x.ln() - ln_m).exp())
                        .sum();
                    let got = ln_m + sum.ln();
                    let expect = ln_gamma_ref(theta + k as f64);
                    assert!((got - expect).abs() < 1e-10, "θ={theta} n={n} k={k}: {got} vs {expect}");
                }
            }
        }
    }

    #[test]
    fn nodes_increasing_and_weights_positive() {
        for &n in &[1, 2, 33, 128] {
            let r = gauss_laguerre(0.7, n).unwrap();
            assert!(r.nodes[0] > 0.0);
            assert!(r.nodes.windows(2).all(|w| w[0] < w[1]));
            assert!(r.weights.iter().all(|&w| w > 0.0));
        }
        let big = gauss_laguerre(2.0, 256).unwrap();
        assert!(big.log_weights().iter().all(|l| l.is_finite()));
    }

    #[test]
    fn rejects_nonpositive_theta() {
        assert!(matches!(gauss_laguerre(0.0, 8), Err(Error::UseDecompositionPath { .. })));
        assert!(gauss_laguerre(1.0, 0).is_err());
        assert!(gauss_laguerre(1.0, 257).is_err());
    }

    #[test]
    fn json_round_trip() {
        let r = gauss_laguerre(1.25, 5).unwrap();
        let s = serde_json::to_string(&r).unwrap();
        assert!(s.starts_with(r#"{"theta":1.25,"nodes":["#));
        let back: QuadratureRule = serde_json::from_str(&s).unwrap();
        assert_eq!(back.nodes, r.nodes);
        assert_eq!(back.weights, r.weights);
    }

    #[test]
    fn adaptive_ladder() {
        let q = AdaptiveQuadrature::new(1.0).unwrap();
        let v = q.integrate_log(|s| Ok(Some(Complex64::new((1.0 + s).ln(), 0.0)))).unwrap();
        // ∫ (1+s) e^{−s} ds = 2
        assert!((v.value.re - 2.0).abs() < 1e-12);
        assert!(v.converged);
        assert_eq!(v.nodes_used, 128);
    }
}
