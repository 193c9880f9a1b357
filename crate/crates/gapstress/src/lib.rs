//! Stress concentration between two nearly touching circular holes.
//!
//! An infinite elastic plane carries two traction-free circular holes of
//! radius `r` separated by a gap `eps`, under unit hydrostatic tension at
//! infinity. This crate evaluates the exact solution of that problem and the
//! closed-form objects that describe its blow-up as `eps -> 0`:
//!
//! - [`geometry`]: the bipolar coordinate system adapted to the two holes,
//!   with `eps` resolved exactly even at `eps = 1e-15`.
//! - [`exact`]: the amplitude constant `K`, the series coefficients, the
//!   interior stress field, boundary closed forms, and an independent
//!   regrouping of the series used as a cross-check.
//! - [`asymptotic`]: the slow functions `v`, `w` and their generating
//!   series, the gap integral behind the blow-up constant, and the explicit
//!   rank-one singular tensor that captures the `eps^{-1/2}` growth.
//! - [`numerics`]: compensated summation, quadrature with analytic tails,
//!   Euler-Maclaurin summation, and truncation-length selection.
//!
//! Everything is evaluated in scaled form: series terms are products of
//! bounded factors and explicit exponentials with nonpositive exponents, so
//! no intermediate overflows or underflows even when the printed constants
//! reach `1e6` and beyond.
//!
//! # Example
//!
//! ```
//! use gapstress::{GapGeometry, CartesianPoint, Truncation};
//! use gapstress::exact::{CoefficientTable, total_stress};
//!
//! let geom = GapGeometry::new(1.0, 1e-3).unwrap();
//! let table = CoefficientTable::build(geom.boundary_coordinate(), &Truncation::new(1e-10)).unwrap();
//! let sigma = total_stress(&geom, &table, CartesianPoint::new(0.0, 0.0)).unwrap();
//! assert!(sigma.c22 > 50.0); // large tension across the gap center
//! ```

pub mod asymptotic;
pub mod error;
pub mod exact;
pub mod geometry;
pub mod numerics;
pub mod tensor;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use geometry::{BipolarPoint, CartesianPoint, Frame, GapGeometry, Region, Vec2};
pub use numerics::{Truncation, DEFAULT_MAX_TERMS};
pub use tensor::{FrameTag, SymmetricTensor2};
