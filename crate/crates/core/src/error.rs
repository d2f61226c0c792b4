use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    /// `b·ω⁻¹(e^{aω}−1) < 1` does not hold.
    #[error("contractivity condition failed: b·gamma_factor(a, ω) = {product} ≥ 1")]
    Contractivity { product: f64 },

    #[error("shift condition failed: {quantity} = {value}")]
    ShiftCondition { quantity: &'static str, value: f64 },

    #[error("shift condition failed for t = {t}: maximal admissible time is {max_t}")]
    AdmissibleTime { t: f64, max_t: f64 },

    #[error("truncation {requested} exceeds kappa table capacity {capacity}")]
    Capacity { requested: usize, capacity: usize },

    #[error("theta = {theta} has no quadrature rule; use the decomposition path")]
    UseDecompositionPath { theta: f64 },

    #[error("integer overflow computing {0}")]
    Overflow(String),

    #[error("evaluation did not converge: {0}")]
    NonConvergence(String),
}
