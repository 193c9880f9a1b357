use thiserror::Error;

/// Unified error type for geometry, series, and quadrature failures.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A constructor argument violated its precondition.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The requested point coincides with a coordinate focus, where the
    /// bipolar map and the dipole fields are singular.
    #[error("singular point: ({x}, {y}) is a coordinate focus")]
    SingularPoint { x: f64, y: f64 },

    /// Bipolar coordinates (0, 0) map to the point at infinity; the metric
    /// factor h = cosh(zeta) - cos(theta) fell below the configured floor.
    #[error("point at infinity: h = {h:.3e} below floor {floor:.3e}")]
    PointAtInfinity { h: f64, floor: f64 },

    /// Series evaluation requested outside the exterior closure |zeta| <= s.
    #[error("out of region: |zeta| = {zeta_abs:.6e} exceeds s = {s:.6e}")]
    OutOfRegion { zeta_abs: f64, s: f64 },

    /// A series could not reach the requested tail tolerance within the
    /// term cap; carries the best rigorous tail bound achieved.
    #[error("truncation failure: tail bound {tail_bound:.3e} > tol {tol:.3e} at cap {max_terms}")]
    Truncation {
        tail_bound: f64,
        tol: f64,
        max_terms: usize,
    },

    /// Adaptive quadrature could not reach the requested tolerance.
    #[error("quadrature failure: error estimate {estimate:.3e} > tol {tol:.3e}")]
    Quadrature { estimate: f64, tol: f64 },

    /// The K-denominator degenerated (geometry too extreme for f64).
    #[error("degenerate geometry: K denominator {denominator:.3e} too small")]
    DegenerateGeometry { denominator: f64 },

    /// A complex series argument left its convergence domain.
    #[error("domain error: {0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
