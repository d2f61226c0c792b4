//! Independent oracles and empirical checks of the structural results.

pub mod norm_bound;
pub mod ode;
pub mod roots;
pub mod trotter;
pub mod zeros;

pub use norm_bound::{norm_bound_check, norm_bound_suite, NormBound, NormCase, NormSuiteReport};
pub use ode::coefficient_ode_oracle;
pub use roots::{relative_residual, roots, try_roots};
pub use trotter::{trotter_convergence, trotter_product};
pub use zeros::{
    laguerre_class_check, random_p_plus, trial_inputs, zero_preservation_suite, ConfigOutcome, SymbolKind,
    Violation, ZeroReport, ZeroSuiteConfig, ZeroSuiteReport, CLASS_TOL,
};
