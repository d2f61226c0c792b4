//! The operator `Δ_{θ,ω}`, its powers, symbol calculus and exponential.

pub mod delta;
pub mod kappa;
pub mod psi;

pub use delta::{
    apply_delta, apply_delta_taylor, apply_phi, dilate, exp_delta_decomposed, exp_delta_series, exp_theta, ln_q_coeff,
    q_coeff, Dilate, SeriesSum,
};
pub use kappa::{alpha, alpha_big, apply_phi_series, kappa, kappa_bruteforce, KappaTable, SeriesApplication};
pub use psi::{psi, psi_limit};
