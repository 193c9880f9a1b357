//! Closed form of the hoop stress on the hole boundaries.
//!
//! On `zeta = +-s` the full angular dependence collapses into a single
//! cosine series `q(s, theta)` with positive coefficients
//! `q_n = sinh(ns) / (sinh(2ns) + n sinh(2s))`, giving
//! `sigma_thetatheta^total = 2 K sinh(s) h(s, theta) (1 + 4 q(s, theta))`.
//! The series part alone is that value minus the unit background.

use crate::error::{Error, Result};
use crate::exact::coefficients::CoefficientTable;
use crate::numerics::truncation::{truncation_select, TermModel, Truncation};
use crate::numerics::CompensatedSum;

/// Cadence at which the angular rotation recurrence is refreshed.
const REFRESH: usize = 128;

/// Boundary series `q(s, theta) = sum_{n>=1} q_n cos(n theta)` with
/// `q_n = sinh(ns) / (sinh(2ns) + n sinh(2s))`, evaluated in scaled form
/// `q_n = e^{-ns}(1 - e^{-2ns}) / (1 - e^{-4ns} + 2 n sinh(2s) e^{-2ns})`.
pub fn q_series(s: f64, theta: f64, trunc: &Truncation) -> Result<f64> {
    if !(s > 0.0) || !s.is_finite() {
        return Err(Error::InvalidArgument(
            "q_series requires finite s > 0".into(),
        ));
    }
    let plan = truncation_select(s, *trunc, TermModel::QSeries)?;
    let sh2 = (2.0 * s).sinh();
    let (sint, cost) = theta.sin_cos();
    let mut cn = cost;
    let mut sn = sint;
    let mut acc = CompensatedSum::new();
    for n in 1..=plan.terms {
        let nf = n as f64;
        if n > 1 && n % REFRESH == 0 {
            cn = (nf * theta).cos();
            sn = (nf * theta).sin();
        }
        let e1 = (-nf * s).exp();
        let e2 = e1 * e1;
        let qn = e1 * (1.0 - e2) / 2.0 / ((1.0 - e2 * e2) / 2.0 + nf * sh2 * e2);
        acc.add(qn * cn);
        let c_next = cn * cost - sn * sint;
        sn = sn * cost + cn * sint;
        cn = c_next;
    }
    Ok(acc.total())
}

/// Total hoop stress on the hole boundary:
/// `2 K sinh(s) (cosh s - cos theta) (1 + 4 q(s, theta))`.
///
/// This includes the unit background; it is O(1) in theta near the far side
/// (theta = pi) and blows up like K s near the gap (theta -> 0).
pub fn boundary_hoop_total(
    table: &CoefficientTable,
    theta: f64,
    trunc: &Truncation,
) -> Result<f64> {
    let s = table.s();
    let q = q_series(s, theta, trunc)?;
    let h = s.cosh() - theta.cos();
    Ok(2.0 * table.k() * s.sinh() * h * (1.0 + 4.0 * q))
}

/// Series part of the boundary hoop stress: the closed form minus the unit
/// background. Matches the (theta,theta) component of the interior series
/// evaluated on zeta = +-s.
pub fn sigma1_boundary_tt(table: &CoefficientTable, theta: f64, trunc: &Truncation) -> Result<f64> {
    Ok(boundary_hoop_total(table, theta, trunc)? - 1.0)
}
