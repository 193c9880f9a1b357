//! Coefficient table for the stress series.
//!
//! The n-th stress-function mode carries two coefficients `A_n`, `B_n` that
//! decay like `e^{-2ns}`. The table stores the slowly varying scaled values
//! `A_n e^{2ns}` and `B_n e^{2ns}`; series evaluation pairs them with
//! pre-scaled hyperbolics so no intermediate quantity leaves f64 range.
//!
//! The first mode is special: its second basis function is a constant, and
//! the closure of the boundary conditions fixes the constant coefficient to
//! `B_1 = (K/2) tanh(s) cosh(2s) - 1` rather than the generic formula.

use crate::error::{Error, Result};
use crate::exact::constants::constant_k;
use crate::numerics::truncation::{truncation_select, TermModel, Truncation};

/// Frozen coefficient table for one geometry (one value of `s`).
#[derive(Debug, Clone)]
pub struct CoefficientTable {
    s: f64,
    k: f64,
    b1: f64,
    a: Vec<f64>,
    b: Vec<f64>,
    tail_bound: f64,
}

/// Slowly varying parts of the generic coefficients:
/// `a_n = (2(1-e^{-2ns}) + 4n e^{-s} sinh s) / (n(n+1) d_n)` and
/// `b_n = (2(1-e^{-2ns}) + 4n e^{+s} sinh s) / (n(n-1) d_n)` with
/// `d_n = 1 - e^{-4ns} + 2n sinh(2s) e^{-2ns}`; `b_1` is not defined by
/// this family and is returned as 0.
fn slow_parts(n: f64, s: f64) -> (f64, f64) {
    let e2 = (-2.0 * n * s).exp();
    let d = 1.0 - e2 * e2 + 2.0 * n * (2.0 * s).sinh() * e2;
    let a = (2.0 * (1.0 - e2) + 4.0 * n * (-s).exp() * s.sinh()) / (n * (n + 1.0) * d);
    let b = if n >= 2.0 {
        (2.0 * (1.0 - e2) + 4.0 * n * s.exp() * s.sinh()) / (n * (n - 1.0) * d)
    } else {
        0.0
    };
    (a, b)
}

/// Envelope tail bound of the component series beyond mode `n`:
/// `|A_N cosh((N+1)z)| + |B_N cosh((N-1)z)|` on `|z| <= s`, written with
/// every exponential negative, times the largest polynomial weight among the
/// three component series, summed geometrically. Infinite while the
/// geometric ratio has not dropped below 1.
fn series_tail(k: f64, s: f64, n: usize) -> f64 {
    let nf = n as f64;
    let ch = s.cosh();
    let (an, bn) = slow_parts(nf, s);
    let phi_env = k
        * (an * ((-(nf - 1.0) * s).exp() + (-(3.0 * nf + 1.0) * s).exp())
            + bn * ((-(nf + 1.0) * s).exp() + (-(3.0 * nf - 1.0) * s).exp()))
        / 2.0;
    let env = ((ch + 1.0) * nf * nf + 2.0 * nf + 1.0 + ch) * phi_env;
    let rho = (-s).exp() * (1.0 + 2.0 / nf);
    if rho >= 1.0 {
        f64::INFINITY
    } else {
        env * rho / (1.0 - rho)
    }
}

impl CoefficientTable {
    /// Builds the table: seeds the length from the generic term model, then
    /// verifies (and if needed extends) it against the envelope of the
    /// actual computed coefficients so the reported tail bound is honest.
    pub fn build(s: f64, trunc: &Truncation) -> Result<Self> {
        if !(s > 0.0) || !s.is_finite() {
            return Err(Error::InvalidArgument(
                "CoefficientTable requires finite s > 0".into(),
            ));
        }
        let k = constant_k(s, trunc)?;
        let plan = truncation_select(s, *trunc, TermModel::FieldSeries)?;
        let mut n = plan.terms.max(4);
        let mut tail = f64::INFINITY;
        for _ in 0..60 {
            tail = series_tail(k, s, n);
            if tail.is_infinite() {
                n *= 2;
                continue;
            }
            if tail <= trunc.tol {
                break;
            }
            n += (((tail / trunc.tol).max(2.0).ln()) / s).ceil() as usize + 16;
            if n > trunc.max_terms {
                return Err(Error::Truncation {
                    tail_bound: tail,
                    tol: trunc.tol,
                    max_terms: trunc.max_terms,
                });
            }
        }
        if !(tail <= trunc.tol) {
            return Err(Error::Truncation {
                tail_bound: tail,
                tol: trunc.tol,
                max_terms: trunc.max_terms,
            });
        }
        Ok(Self::assemble(s, k, n, tail))
    }

    /// Builds the table with an explicit mode count, for convergence studies.
    ///
    /// The tail bound is computed for the requested length and reported, not
    /// enforced; `trunc` governs only the accuracy of the amplitude factor K
    /// and the term cap.
    pub fn build_with_terms(s: f64, terms: usize, trunc: &Truncation) -> Result<Self> {
        if !(s > 0.0) || !s.is_finite() {
            return Err(Error::InvalidArgument(
                "CoefficientTable requires finite s > 0".into(),
            ));
        }
        if terms < 4 {
            return Err(Error::InvalidArgument(
                "CoefficientTable needs at least 4 modes".into(),
            ));
        }
        if terms > trunc.max_terms {
            return Err(Error::Truncation {
                tail_bound: f64::NAN,
                tol: trunc.tol,
                max_terms: trunc.max_terms,
            });
        }
        let k = constant_k(s, trunc)?;
        let tail = series_tail(k, s, terms);
        Ok(Self::assemble(s, k, terms, tail))
    }

    fn assemble(s: f64, k: f64, n: usize, tail: f64) -> Self {
        let mut a = Vec::with_capacity(n);
        let mut b = Vec::with_capacity(n);
        for m in 1..=n {
            let (am, bm) = slow_parts(m as f64, s);
            a.push(k * am);
            b.push(-k * bm);
        }
        let b1 = k / 2.0 * s.tanh() * (2.0 * s).cosh() - 1.0;
        Self {
            s,
            k,
            b1,
            a,
            b,
            tail_bound: tail,
        }
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    /// The amplitude factor K.
    pub fn k(&self) -> f64 {
        self.k
    }

    /// Constant coefficient of the first mode (not of the generic family).
    pub fn b1(&self) -> f64 {
        self.b1
    }

    /// Number of modes in the table.
    pub fn terms(&self) -> usize {
        self.a.len()
    }

    /// Rigorous bound on the dropped tail of any of the component series.
    pub fn tail_bound(&self) -> f64 {
        self.tail_bound
    }

    /// `A_n e^{2ns}` for n in 1..=terms().
    pub fn a_scaled(&self, n: usize) -> f64 {
        self.a[n - 1]
    }

    /// `B_n e^{2ns}` for n in 2..=terms(); the n = 1 slot is the constant
    /// mode and lives in [`Self::b1`].
    pub fn b_scaled(&self, n: usize) -> f64 {
        debug_assert!(n >= 2);
        self.b[n - 1]
    }

    /// Plain `A_n` (underflows to 0 for n >> 1/s; prefer the scaled form).
    pub fn coefficient_a(&self, n: usize) -> f64 {
        self.a[n - 1] * (-2.0 * n as f64 * self.s).exp()
    }

    /// Plain `B_n` for n >= 2.
    pub fn coefficient_b(&self, n: usize) -> f64 {
        assert!(n >= 2, "B_1 is the constant mode; use b1()");
        self.b[n - 1] * (-2.0 * n as f64 * self.s).exp()
    }
}
