//! The pressure-harmonic route to the (zeta,zeta) stress component.
//!
//! Collecting the (zeta,zeta) series by angular harmonics produces a
//! low-harmonic "pressure" part plus a tail of combinations
//! `psi_n = (n+1)(n+2) phi_{n+1} - 2(n^2-1) cosh(zeta) phi_n
//!          + (n-1)(n-2) phi_{n-1} - 2 sinh(zeta) phi_n'`.
//! For n >= 3 the psi_n collapse, through the slow-function form of the
//! coefficients, into an explicit expression in `v` and `w` alone (no
//! coefficient table). The two lowest harmonics do not collapse: the
//! constant mode's coefficient is fixed by boundary closure rather than the
//! generic formula, and its contribution cancels from psi_n only once the
//! prefactor (n-1)(n-2) vanishes identically, i.e. from n = 3 on.

use crate::error::{Error, Result};
use crate::exact::coefficients::CoefficientTable;
use crate::geometry::BipolarPoint;
use crate::numerics::integrands::s_tilde;
use crate::numerics::CompensatedSum;
use crate::{asymptotic, exact::field::REGION_SLACK};

/// Mode stress function and its zeta-derivative:
/// `phi_n = A_n cosh((n+1) zeta) + B_n cosh((n-1) zeta)` (with the constant
/// mode `B_1` for n = 1), evaluated through scaled exponentials.
fn phi_pair(table: &CoefficientTable, n: usize, zeta: f64) -> (f64, f64) {
    if n == 0 {
        return (0.0, 0.0);
    }
    let s = table.s();
    let nf = n as f64;
    let an = table.a_scaled(n);
    let ep = ((nf + 1.0) * zeta - 2.0 * nf * s).exp();
    let em = (-(nf + 1.0) * zeta - 2.0 * nf * s).exp();
    let cp = 0.5 * (ep + em);
    let sp = 0.5 * (ep - em);
    if n == 1 {
        return (an * cp + table.b1(), 2.0 * an * sp);
    }
    let bn = table.b_scaled(n);
    let fp = ((nf - 1.0) * zeta - 2.0 * nf * s).exp();
    let fm = (-(nf - 1.0) * zeta - 2.0 * nf * s).exp();
    let cm = 0.5 * (fp + fm);
    let sm = 0.5 * (fp - fm);
    (
        an * cp + bn * cm,
        (nf + 1.0) * an * sp + (nf - 1.0) * bn * sm,
    )
}

/// `psi_n` from the coefficient table (valid for all n >= 1).
pub fn psi_def(table: &CoefficientTable, n: usize, zeta: f64) -> Result<f64> {
    if n < 1 || n + 1 > table.terms() {
        return Err(Error::InvalidArgument(format!(
            "psi_def needs 1 <= n <= terms-1 = {}, got {n}",
            table.terms() - 1
        )));
    }
    let nf = n as f64;
    let (php, _) = phi_pair(table, n + 1, zeta);
    let (ph, dph) = phi_pair(table, n, zeta);
    let (phm, _) = phi_pair(table, n - 1, zeta);
    Ok((nf + 1.0) * (nf + 2.0) * php - 2.0 * (nf * nf - 1.0) * zeta.cosh() * ph
        + (nf - 1.0) * (nf - 2.0) * phm
        - 2.0 * zeta.sinh() * dph)
}

/// `psi_n` for n >= 3 in collapsed form, from the slow functions alone:
///
/// `psi_n / K = 2 (v_{n+1} - v_{n-1}) sinh^2(zeta) cosh(n zeta)
///   - 2 s~ (w_{n+1} - 2 w_n + w_{n-1}) cosh^2(zeta) cosh(n zeta)
///   + [(v_{n+1} - 2 v_n + v_{n-1}) - s~ (w_{n+1} - w_{n-1})] sinh(2 zeta) sinh(n zeta)
///   - (2/n) [(v_{n+1} - 2 v_n + v_{n-1}) + s~ (w_{n+1} - w_{n-1})] cosh(n zeta)`
///
/// with `v_m = v(m s)`, `w_m = w(m s)`, `s~ = sinh^2(s)/s`. At n = 2 the
/// collapsed expression differs from the true psi_2 by the constant
/// `K (v_1 + s~ w_1)` (the non-generic constant mode), so it is rejected.
pub fn psi_collected(table: &CoefficientTable, n: usize, zeta: f64) -> Result<f64> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!(
            "psi_collected is valid only for n >= 3, got {n}"
        )));
    }
    let s = table.s();
    let st = s_tilde(s);
    let nf = n as f64;
    let vp = asymptotic::eval_v((nf + 1.0) * s, s);
    let v0 = asymptotic::eval_v(nf * s, s);
    let vm = asymptotic::eval_v((nf - 1.0) * s, s);
    let wp = asymptotic::eval_w((nf + 1.0) * s, s);
    let w0 = asymptotic::eval_w(nf * s, s);
    let wm = asymptotic::eval_w((nf - 1.0) * s, s);
    let (shz, chz) = (zeta.sinh(), zeta.cosh());
    let (cnz, snz) = ((nf * zeta).cosh(), (nf * zeta).sinh());
    let t1 = 2.0 * (vp - vm) * shz * shz * cnz;
    let t2 = -2.0 * st * (wp - 2.0 * w0 + wm) * chz * chz * cnz;
    let t3 = ((vp - 2.0 * v0 + vm) - st * (wp - wm)) * (2.0 * zeta).sinh() * snz;
    let t4 = -(2.0 / nf) * ((vp - 2.0 * v0 + vm) + st * (wp - wm)) * cnz;
    Ok(table.k() * (t1 + t2 + t3 + t4))
}

/// Low-harmonic part of the (zeta,zeta) series:
/// `p = -head/2 + phi_1 + (psi_1 cos(theta) + psi_2 cos(2 theta)) / 2`
/// where `head = K (cosh 2 zeta - 2 cosh zeta cos theta + cos 2 theta)`.
///
/// Individually its pieces are O(K); their sum stays O(1) on the whole
/// region, which is what makes the psi route numerically viable.
pub fn pressure(table: &CoefficientTable, b: BipolarPoint) -> Result<f64> {
    let k = table.k();
    let head = k
        * ((2.0 * b.zeta).cosh() - 2.0 * b.zeta.cosh() * b.theta.cos() + (2.0 * b.theta).cos());
    let (phi1, _) = phi_pair(table, 1, b.zeta);
    let psi1 = psi_def(table, 1, b.zeta)?;
    let psi2 = psi_def(table, 2, b.zeta)?;
    Ok(-0.5 * head + phi1 + 0.5 * (psi1 * b.theta.cos() + psi2 * (2.0 * b.theta).cos()))
}

/// The (zeta,zeta) series component via the pressure-harmonic route:
/// `p + (1/2) sum_{n>=3} psi_n cos(n theta)`.
///
/// Independent regrouping of the same series as the direct component
/// evaluation; the two agree to the table tolerance.
pub fn sigma1_zz_via_psi(table: &CoefficientTable, b: BipolarPoint) -> Result<f64> {
    let s = table.s();
    if b.zeta.abs() > s + REGION_SLACK {
        return Err(Error::OutOfRegion {
            zeta_abs: b.zeta.abs(),
            s,
        });
    }
    let p = pressure(table, b)?;
    let mut acc = CompensatedSum::new();
    for n in 3..table.terms() {
        let psi = psi_def(table, n, b.zeta)?;
        acc.add(0.5 * psi * (n as f64 * b.theta).cos());
    }
    Ok(p + acc.total())
}
