use crate::error::{Error, Result};

/// Default hard cap on series terms; the CLI can raise it via the
/// GAPSTRESS_MAX_TERMS environment variable.
pub const DEFAULT_MAX_TERMS: usize = 2_000_000;

/// Term-decay models for the three series families in this crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TermModel {
    /// Field coefficient series: terms bounded by C*n*e^{-ns} on |zeta| <= s.
    FieldSeries,
    /// Boundary q-series: terms bounded by e^{-ns}.
    QSeries,
    /// Gap-constant series: terms bounded by n^{-3}.
    PSeries,
}

/// Requested truncation budget.
#[derive(Debug, Clone, Copy)]
pub struct Truncation {
    pub tol: f64,
    pub max_terms: usize,
}

impl Truncation {
    pub fn new(tol: f64) -> Self {
        Self {
            tol,
            max_terms: DEFAULT_MAX_TERMS,
        }
    }

    pub fn with_cap(tol: f64, max_terms: usize) -> Self {
        Self { tol, max_terms }
    }
}

impl Default for Truncation {
    fn default() -> Self {
        Self::new(1e-10)
    }
}

/// Selected truncation: term count plus the rigorous model tail bound.
#[derive(Debug, Clone, Copy)]
pub struct TruncationPlan {
    pub terms: usize,
    pub tail_bound: f64,
}

/// Picks a term count N whose model tail bound meets `trunc.tol`.
///
/// FieldSeries: N solves the fixed point N = ceil((ln(1/tol) + ln N)/s) + 8,
/// and the reported bound is the geometric envelope N e^{-Ns} rho/(1 - rho)
/// with rho = e^{-s}(1 + 2/N). Coefficient tables re-verify this against
/// the actual computed coefficients and extend if needed.
///
/// QSeries: tail of sum e^{-ns} from N+1 on: e^{-(N+1)s}/(1 - e^{-s}).
///
/// PSeries: tail of sum n^{-3} from N+1 on, bounded by 1/(2N^2).
pub fn truncation_select(s: f64, trunc: Truncation, model: TermModel) -> Result<TruncationPlan> {
    assert!(s > 0.0 && trunc.tol > 0.0);
    let tol = trunc.tol;
    let plan = match model {
        TermModel::FieldSeries => {
            let mut n = 2usize;
            for _ in 0..8 {
                let target = ((1.0 / tol).ln() + (n.max(2) as f64).ln()) / s;
                n = target.ceil() as usize + 8;
            }
            let rho = (-s).exp() * (1.0 + 2.0 / n as f64);
            let tail = if rho < 1.0 {
                n as f64 * (-(n as f64) * s).exp() * rho / (1.0 - rho)
            } else {
                f64::INFINITY
            };
            TruncationPlan {
                terms: n,
                tail_bound: tail,
            }
        }
        TermModel::QSeries => {
            let n = (((1.0 / (tol * (1.0 - (-s).exp()))).ln()) / s).ceil() as usize;
            let n = n.max(2);
            let tail = (-((n + 1) as f64) * s).exp() / (1.0 - (-s).exp());
            TruncationPlan {
                terms: n,
                tail_bound: tail,
            }
        }
        TermModel::PSeries => {
            let n = (1.0 / (2.0 * tol)).sqrt().ceil() as usize;
            let n = n.max(2);
            let tail = 1.0 / (2.0 * (n as f64) * (n as f64));
            TruncationPlan {
                terms: n,
                tail_bound: tail,
            }
        }
    };
    if plan.terms > trunc.max_terms {
        return Err(Error::Truncation {
            tail_bound: plan.tail_bound,
            tol,
            max_terms: trunc.max_terms,
        });
    }
    Ok(plan)
}
