//! The exact series solution: amplitude constants, coefficient tables,
//! interior stress components, boundary closed forms, the pressure-harmonic
//! route, and the compatibility checks on the underlying stress functions.

pub mod airy;
pub mod boundary;
pub mod coefficients;
pub mod constants;
pub mod field;
pub mod psi;

pub use airy::{airy_mode_residual, biharmonic_fd_residual, h_log_h};
pub use boundary::{boundary_hoop_total, q_series, sigma1_boundary_tt};
pub use coefficients::CoefficientTable;
pub use constants::{constant_k, constant_p};
pub use field::{sigma1_components, total_stress, Sigma1Components};
pub use psi::{pressure, psi_collected, psi_def, sigma1_zz_via_psi};
