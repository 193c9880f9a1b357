//! Slowly varying coefficient functions, their generating series, and the
//! closed-form singular field that captures the narrow-gap blow-up.
//!
//! The exact stress coefficients sampled at `x = n s` are values of two smooth
//! functions `v`, `w` of a continuous argument (see [`V`], [`W`]). Summing
//! them against powers of `z = e^{zeta + i theta}` produces the generating
//! series [`series_L`] and its symmetrizations [`series_m_plus`] /
//! [`series_m_minus`]; replacing the coefficients by their `x -> 0` limits
//! collapses each series to the geometric closed form [`leading_l`]. That
//! collapse is what turns the exact series into the rank-one singular tensor
//! [`sigma_star`].

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::{BipolarPoint, CartesianPoint, GapGeometry};
use crate::numerics::integrands::{eta, k_integrand_limit, s_tilde};
use crate::numerics::quadrature::{integrate_to_infinity, TailModel};
use crate::numerics::truncation::{truncation_select, TermModel, Truncation};
use crate::numerics::CompensatedSum;
use crate::tensor::{FrameTag, SymmetricTensor2};

/// Refresh cadence for incrementally updated powers of `z`.
const POWER_REFRESH: usize = 128;

/// Argument below which `v` and `w` switch to their Taylor expansions.
const SMALL_X: f64 = 1e-4;

/// A smooth function of `x > 0` (with parameter `s`) whose samples at
/// `x = n s` are series coefficients.
///
/// `eval_scaled` returns `f(x) * e^{2x}`; the series routines multiply it by
/// pre-scaled powers so no intermediate overflows even when `x` is large.
/// `limit` is `f(0+)`, the value that drives the leading-order closed form.
pub struct SlowFunction {
    pub eval: fn(f64, f64) -> f64,
    pub eval_scaled: fn(f64, f64) -> f64,
    pub limit: fn(f64) -> f64,
}

/// Coefficient function whose limit at `0+` is exactly 1.
pub const V: SlowFunction = SlowFunction {
    eval: eval_v,
    eval_scaled: eval_v_scaled,
    limit: v_limit,
};

/// Coefficient function whose limit at `0+` is `1 / (1 + eta(s))`.
pub const W: SlowFunction = SlowFunction {
    eval: eval_w,
    eval_scaled: eval_w_scaled,
    limit: w_limit,
};

/// `v(x) = (2 e^{-x} sinh x + 2 eta x) / (sinh 2x + 2 eta x)` with
/// `eta = eta(s)`.
pub fn eval_v(x: f64, s: f64) -> f64 {
    if x < SMALL_X {
        return v_taylor(x, s);
    }
    eval_v_scaled(x, s) * (-2.0 * x).exp()
}

/// `v(x) e^{2x}`, computed without large exponentials:
/// `2 ((1 - e^{-2x}) + 2 eta x) / d(x)` with
/// `d(x) = 1 - e^{-4x} + 4 eta x e^{-2x}`.
pub fn eval_v_scaled(x: f64, s: f64) -> f64 {
    if x < SMALL_X {
        return v_taylor(x, s) * (2.0 * x).exp();
    }
    let et = eta(s);
    let e2 = (-2.0 * x).exp();
    let d = 1.0 - e2 * e2 + 4.0 * et * x * e2;
    2.0 * ((1.0 - e2) + 2.0 * et * x) / d
}

/// `w(x) = 2x / (sinh 2x + 2 eta x)`.
pub fn eval_w(x: f64, s: f64) -> f64 {
    if x < SMALL_X {
        return w_taylor(x, s);
    }
    eval_w_scaled(x, s) * (-2.0 * x).exp()
}

/// `w(x) e^{2x} = 4x / d(x)` with `d` as in [`eval_v_scaled`].
pub fn eval_w_scaled(x: f64, s: f64) -> f64 {
    if x < SMALL_X {
        return w_taylor(x, s) * (2.0 * x).exp();
    }
    let et = eta(s);
    let e2 = (-2.0 * x).exp();
    let d = 1.0 - e2 * e2 + 4.0 * et * x * e2;
    4.0 * x / d
}

/// `lim_{x -> 0+} v(x)`: numerator and denominator are both
/// `2 (1 + eta) x + O(x^2)`, so the limit is exactly 1.
pub fn v_limit(_s: f64) -> f64 {
    1.0
}

/// `lim_{x -> 0+} w(x) = 1 / (1 + eta(s))`.
pub fn w_limit(s: f64) -> f64 {
    1.0 / (1.0 + eta(s))
}

/// Taylor expansion of `v` about 0; with `A = 2 (1 + eta)`:
/// `v = 1 - (2/A) x + (8/(3A^2) - 2/(3A)) x^3 + O(x^5)` (even-order terms
/// through x^4 vanish).
fn v_taylor(x: f64, s: f64) -> f64 {
    let a = 2.0 * (1.0 + eta(s));
    1.0 - (2.0 / a) * x + (8.0 / (3.0 * a * a) - 2.0 / (3.0 * a)) * x * x * x
}

/// Taylor expansion of `w` about 0; with `A = 2 (1 + eta)`:
/// `w = 2/A - (8/(3A^2)) x^2 + (2/A)(16/(9A^2) - 4/(15A)) x^4 + O(x^6)`
/// (odd-order terms vanish).
fn w_taylor(x: f64, s: f64) -> f64 {
    let a = 2.0 * (1.0 + eta(s));
    let x2 = x * x;
    2.0 / a - (8.0 / (3.0 * a * a)) * x2
        + (2.0 / a) * (16.0 / (9.0 * a * a) - 4.0 / (15.0 * a)) * x2 * x2
}

/// `L[f](z) = sum_{n >= 1} f(n s) z^n` for `|z| <= e^s`.
///
/// Internally sums `f~(n s) (z e^{-2s})^n` where `f~ = f e^{2x}` stays of
/// moderate size, so the scaled power has modulus at most `e^{-n s}` and the
/// series converges geometrically throughout the closed domain.
pub fn series_l(f: &SlowFunction, s: f64, z: Complex64, trunc: &Truncation) -> Result<Complex64> {
    if !(s > 0.0) || !z.is_finite() {
        return Err(Error::InvalidArgument(
            "series_l requires s > 0 and finite z".into(),
        ));
    }
    let r = z.norm();
    if r > s.exp() * (1.0 + 1e-12) {
        return Err(Error::Domain(format!(
            "series_l: |z| = {r:.6e} exceeds the convergence radius e^s = {:.6e}",
            s.exp()
        )));
    }
    let plan = truncation_select(s, *trunc, TermModel::FieldSeries)?;
    let zt = z * (-2.0 * s).exp();
    let mut re = CompensatedSum::new();
    let mut im = CompensatedSum::new();
    let mut pw = zt;
    for n in 1..=plan.terms {
        if n % POWER_REFRESH == 0 {
            pw = zt.powu(n as u32);
        }
        let c = (f.eval_scaled)(n as f64 * s, s);
        re.add(c * pw.re);
        im.add(c * pw.im);
        pw *= zt;
    }
    Ok(Complex64::new(re.total(), im.total()))
}

/// Closed form obtained by freezing `f` at its limit:
/// `f(0+) z~ / (1 - z~)` with `z~ = z e^{-2s}`.
///
/// Diverges only at `z = e^{2s}`, which lies outside the closed series
/// domain `|z| <= e^s`; an argument within floating-point reach of the pole
/// is rejected.
pub fn leading_l(f: &SlowFunction, s: f64, z: Complex64) -> Result<Complex64> {
    if !(s > 0.0) || !z.is_finite() {
        return Err(Error::InvalidArgument(
            "leading_l requires s > 0 and finite z".into(),
        ));
    }
    let zt = z * (-2.0 * s).exp();
    let denom = Complex64::new(1.0, 0.0) - zt;
    if denom.norm() < 1e-14 {
        return Err(Error::Domain(
            "leading_l: z is at the geometric-series pole e^{2s}".into(),
        ));
    }
    Ok((f.limit)(s) * zt / denom)
}

/// `M+[f](zeta, theta) = (L[f](e^{zeta + i theta}) + L[f](e^{-zeta + i theta})) / 2`.
///
/// Even in `zeta`; defined on the closed gap region `|zeta| <= s`.
pub fn series_m_plus(
    f: &SlowFunction,
    s: f64,
    b: BipolarPoint,
    trunc: &Truncation,
) -> Result<Complex64> {
    let (lp, lm) = m_pair(f, s, b, trunc)?;
    Ok((lp + lm) * 0.5)
}

/// `M-[f](zeta, theta) = (L[f](e^{zeta + i theta}) - L[f](e^{-zeta + i theta})) / 2`.
///
/// Odd in `zeta`; vanishes identically on the mid-line `zeta = 0`.
pub fn series_m_minus(
    f: &SlowFunction,
    s: f64,
    b: BipolarPoint,
    trunc: &Truncation,
) -> Result<Complex64> {
    if b.zeta == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let (lp, lm) = m_pair(f, s, b, trunc)?;
    Ok((lp - lm) * 0.5)
}

fn m_pair(
    f: &SlowFunction,
    s: f64,
    b: BipolarPoint,
    trunc: &Truncation,
) -> Result<(Complex64, Complex64)> {
    if b.zeta.abs() > s * (1.0 + 1e-12) {
        return Err(Error::OutOfRegion {
            zeta_abs: b.zeta.abs(),
            s,
        });
    }
    let zp = Complex64::new(b.zeta, b.theta).exp();
    let zm = Complex64::new(-b.zeta, b.theta).exp();
    Ok((series_l(f, s, zp, trunc)?, series_l(f, s, zm, trunc)?))
}

/// Upper cutoff beyond which the gap integrand tail is modelled analytically.
/// The integrand equals `1/(2x^3)` up to corrections of order `e^{-2x}`, so
/// at `x = 40` the model error is astronomically below f64 resolution.
const I0_CUTOFF: f64 = 40.0;

/// `integral_0^inf f0(x) dx` where
/// `f0(x) = (sinh^2 x - x^2) / (x^3 (sinh 2x + 2x))`.
///
/// Evaluated by adaptive Gauss-Kronrod on `[0, cutoff]` plus the exact
/// inverse-cubic tail; the estimate is validated against an independent
/// composite Simpson rule sharing no nodes with the adaptive grid.
pub fn gap_integral_with_cutoff(tol: f64, cutoff: f64) -> Result<f64> {
    if !(tol > 0.0) || !(cutoff > 1.0) {
        return Err(Error::InvalidArgument(
            "gap_integral requires tol > 0 and cutoff > 1".into(),
        ));
    }
    let f = k_integrand_limit;
    let main = integrate_to_infinity(f, 0.0, cutoff, tol, TailModel::InverseCubic)?;
    // Independent rule: composite Simpson with enough panels that its
    // O(h^4) error sits well below the requested tolerance.
    let panels = 2 * ((cutoff / 0.005).ceil() as usize).max(4000);
    let check = crate::numerics::quadrature::composite_simpson(f, 0.0, cutoff, panels)
        + TailModel::InverseCubic.tail_term(f(cutoff), cutoff);
    if (main.value - check).abs() > (1e4 * tol).max(1e-12) {
        return Err(Error::Quadrature {
            estimate: (main.value - check).abs(),
            tol,
        });
    }
    Ok(main.value)
}

/// [`gap_integral_with_cutoff`] at the default cutoff.
pub fn gap_integral(tol: f64) -> Result<f64> {
    gap_integral_with_cutoff(tol, I0_CUTOFF)
}

/// One quarter of the gap integral: the constant in the literature-standard
/// normalization of the singular tensor.
pub fn i0_constant(tol: f64) -> Result<f64> {
    Ok(0.25 * gap_integral(tol)?)
}

/// Four times the gap integral.
///
/// This is the unique constant `c` with `K(s) c s^2 -> 1` as the gap closes
/// (`K` is the exact stress-amplitude factor), hence the constant that makes
/// the blow-up laws quantitatively consistent with the exact solution. It
/// equals 16 times [`i0_constant`].
pub fn blowup_constant(tol: f64) -> Result<f64> {
    Ok(4.0 * gap_integral(tol)?)
}

/// Leading-order closed form of the boundary correction series:
/// `q(s, theta) ~ -(1/8) (e^{-s} - cos theta) / (cosh s - cos theta)`.
pub fn q_asymptotic(s: f64, theta: f64) -> f64 {
    -0.125 * ((-s).exp() - theta.cos()) / (s.cosh() - theta.cos())
}

/// Explicit singular tensor at a Cartesian point.
///
/// With `d_i` the displacements from the two foci,
/// `v = d_1/|d_1|^2 - d_2/|d_2|^2` and `w` its quarter-turn counterpart, the
/// tensor is the rank-one form `(r / i0) |v| w^ (x) w^`. It captures the
/// full blow-up of the exact field as the gap closes; `i0` is the
/// normalization constant. Pass [`blowup_constant`] for quantitative
/// agreement with the exact field ([`i0_constant`] keeps the
/// literature-standard scale instead).
pub fn sigma_star(geom: &GapGeometry, p: CartesianPoint, i0: f64) -> Result<SymmetricTensor2> {
    if !(i0 > 0.0) {
        return Err(Error::InvalidArgument(
            "sigma_star requires a positive normalization constant".into(),
        ));
    }
    let (grad_zeta, _grad_theta, frame) = geom.frame_and_gradients(p)?;
    let coef = geom.radius() / i0 * grad_zeta.norm();
    Ok(SymmetricTensor2::rank_one(
        coef,
        frame.e_theta,
        FrameTag::Cartesian,
    ))
}

/// Leading-order stress in local bipolar axes:
/// `(1 / (i0 s)) h(zeta, theta)` in the theta-theta slot and zero elsewhere.
///
/// Rotating this to Cartesian axes with the local frame reproduces
/// [`sigma_star`] up to relative error of order `s`.
pub fn sigma_leading_bipolar(
    geom: &GapGeometry,
    b: BipolarPoint,
    i0: f64,
) -> Result<SymmetricTensor2> {
    if !(i0 > 0.0) {
        return Err(Error::InvalidArgument(
            "sigma_leading_bipolar requires a positive normalization constant".into(),
        ));
    }
    let h = b.zeta.cosh() - b.theta.cos();
    let coef = h / (i0 * geom.boundary_coordinate());
    Ok(SymmetricTensor2::new(
        0.0,
        0.0,
        coef,
        FrameTag::BipolarLocal,
    ))
}

/// `s~ = sinh^2(s) / s`, re-exported next to the functions that consume it.
pub fn s_tilde_factor(s: f64) -> f64 {
    s_tilde(s)
}
