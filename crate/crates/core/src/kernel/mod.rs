//! Special functions behind the integral form of the semigroup.

pub mod gamma;
pub mod quadrature;
pub mod wfun;

pub use gamma::{gamma, gamma_theta, ln_gamma, ln_gamma_theta, recip_gamma};
pub use quadrature::{gauss_laguerre, AdaptiveQuadrature, Integral, QuadratureRule};
pub use wfun::{k_theta, ln_k_theta, ln_w_theta, w_theta};
