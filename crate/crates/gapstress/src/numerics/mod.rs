//! Shared numerical infrastructure: compensated summation, adaptive and
//! fixed quadrature with analytic tail models, Euler-Maclaurin summation
//! with a rigorous remainder bound, truncation selection, and the
//! continuum integrands behind the gap-constant asymptotics.

pub mod euler_maclaurin;
pub mod integrands;
pub mod quadrature;
pub mod sum;
pub mod truncation;

pub use euler_maclaurin::{euler_maclaurin_sum, EmInput};
pub use integrands::{eta, k_integrand, k_integrand_limit, s_tilde};
pub use quadrature::{
    adaptive_quadrature, composite_simpson, integrate_to_infinity, QuadratureResult, TailModel,
};
pub use sum::{compensated_sum, CompensatedSum};
pub use truncation::{truncation_select, TermModel, Truncation, TruncationPlan, DEFAULT_MAX_TERMS};
