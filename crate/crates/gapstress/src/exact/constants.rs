//! Scalar amplitude constants of the exact solution.
//!
//! `K` multiplies every coefficient of the stress series and diverges like
//! `1 / (c s^2)` as the gap closes; `P` is the series constant inside its
//! denominator. Both are evaluated from terms written so that every
//! exponential appears as `e^{-2ns}`, keeping all intermediates O(1).

use crate::error::{Error, Result};
use crate::numerics::truncation::{truncation_select, TermModel, Truncation};
use crate::numerics::CompensatedSum;

/// Series constant
/// `P(s) = sum_{n>=2} e^{-2ns} ((1-e^{-2ns})/2 + n (n sinh s + cosh s) sinh s)
///         / (n (n^2-1) ((1-e^{-4ns})/2 + n sinh(2s) e^{-2ns}))`.
///
/// Terms are positive, bounded by `n^{-3}`, and eventually decay like
/// `e^{-2ns}`; P increases to 1/8 as s -> 0.
pub fn constant_p(s: f64, trunc: &Truncation) -> Result<f64> {
    if !(s > 0.0) || !s.is_finite() {
        return Err(Error::InvalidArgument(
            "constant_p requires finite s > 0".into(),
        ));
    }
    let plan = truncation_select(s, *trunc, TermModel::PSeries)?;
    let (sh, ch) = (s.sinh(), s.cosh());
    let sh2 = (2.0 * s).sinh();
    // Once terms drop this far below the budget, the remaining (decreasing)
    // tail is negligible next to the model bound already charged.
    let cut = trunc.tol / plan.terms as f64 * 1e-3;
    let mut acc = CompensatedSum::new();
    for n in 2..=plan.terms {
        let nf = n as f64;
        let e2 = (-2.0 * nf * s).exp();
        let num = e2 * ((1.0 - e2) / 2.0 + nf * (nf * sh + ch) * sh);
        let den = nf * (nf * nf - 1.0) * ((1.0 - e2 * e2) / 2.0 + nf * sh2 * e2);
        let t = num / den;
        acc.add(t);
        if t < cut && n > 10 {
            break;
        }
    }
    Ok(acc.total())
}

/// Stress amplitude factor `K(s) = 1 / (1/2 + tanh(s) sinh^2(s) - 4 P(s))`.
///
/// The denominator equals `1/(2K)` and tends to 0 like `c s^2` as the gap
/// closes; a non-positive value (possible only through rounding at extreme
/// arguments) is reported as degenerate geometry rather than returned.
pub fn constant_k(s: f64, trunc: &Truncation) -> Result<f64> {
    let p = constant_p(s, trunc)?;
    let den = 0.5 + s.tanh() * s.sinh() * s.sinh() - 4.0 * p;
    if !(den > 0.0) {
        return Err(Error::DegenerateGeometry { denominator: den });
    }
    Ok(1.0 / den)
}
