//! Continuum integrands behind the gap-constant asymptotics.
//!
//! The series part of 1/K has terms that, sampled at x = n*s, follow a
//! smooth integrand `k_integrand(x, s)`; its s -> 0 limit
//! `k_integrand_limit(x)` is what the blow-up constant integrates.

/// eta(s) = sinh(2s)/(2s), the slowly varying denominator weight.
pub fn eta(s: f64) -> f64 {
    if s.abs() < 1e-8 {
        // sinh(2s)/(2s) = 1 + (2s)^2/6 + ...
        1.0 + 2.0 * s * s / 3.0
    } else {
        (2.0 * s).sinh() / (2.0 * s)
    }
}

/// s_tilde = sinh(s)^2 / s.
pub fn s_tilde(s: f64) -> f64 {
    s.sinh().powi(2) / s
}

/// Limit integrand f0(x) = (sinh^2 x - x^2) / (x^3 (sinh 2x + 2x)),
/// extended continuously by f0(0+) = 1/12.
///
/// Near zero the numerator cancels to O(x^4); a series form keeps full
/// relative accuracy there. For large x a scaled form avoids overflow and
/// exposes the exact 1/(2x^3) tail.
pub fn k_integrand_limit(x: f64) -> f64 {
    assert!(x >= 0.0);
    if x < 0.30 {
        // Both numerator and denominator carry x^4, which cancels exactly:
        // sinh^2 x - x^2    = x^4 [1/3 + 2x^2/45 + x^4/315 + ...]
        // x^3 (sinh 2x+2x)  = x^4 [4 + 4x^2/3 + 4x^4/15 + ...]
        // Truncation at the seam x = 0.30 is below 3e-16 relative.
        let x2 = x * x;
        let num = 1.0 / 3.0
            + x2 * (2.0 / 45.0
                + x2 * (1.0 / 315.0
                    + x2 * (2.0 / 14175.0
                        + x2 * (2.0 / 467775.0
                            + x2 * (4.0 / 42567525.0 + x2 * (1.0 / 638512875.0))))));
        let den = 4.0
            + x2 * (4.0 / 3.0
                + x2 * (4.0 / 15.0
                    + x2 * (8.0 / 315.0
                        + x2 * (4.0 / 2835.0
                            + x2 * (8.0 / 155925.0 + x2 * (8.0 / 6081075.0))))));
        num / den
    } else if x < 20.0 {
        let sh = x.sinh();
        (sh * sh - x * x) / (x.powi(3) * ((2.0 * x).sinh() + 2.0 * x))
    } else {
        // Multiply through by e^{-2x}: exact in f64, no overflow.
        let e2 = (-2.0 * x).exp();
        let num = (1.0 - e2) * (1.0 - e2) / 4.0 - x * x * e2;
        let den = x.powi(3) * ((1.0 - e2 * e2) / 2.0 + 2.0 * x * e2);
        num / den
    }
}

/// Finite-s integrand f(x; s) = (sinh^2 x - (sinh^2 s / s^2) x^2)
/// / (x (x^2 - s^2) (sinh 2x + 2 eta(s) x)), defined for x > s.
///
/// The numerator factors as x (x^2 - s^2) G(x, s) (sinh x + (sinh s / s) x)
/// with G an everywhere-positive double series; the factored form is used
/// below x = 3 where the subtraction would otherwise cancel.
pub fn k_integrand(x: f64, s: f64) -> f64 {
    assert!(x > s && s > 0.0);
    let c = s.sinh() / s;
    if x <= 3.0 {
        // G(x,s) = sum_{k>=1} [sum_{j=0}^{k-1} x^{2j} s^{2(k-1-j)}] / (2k+1)!
        let x2 = x * x;
        let s2 = s * s;
        let mut g = 0.0f64;
        let mut factorial = 6.0f64; // (2k+1)! at k = 1
        for k in 1..30usize {
            if k > 1 {
                let m = 2 * k;
                factorial *= (m * (m + 1)) as f64;
            }
            let mut inner = 0.0f64;
            let mut xp = 1.0f64;
            let mut sp = s2.powi(k as i32 - 1);
            let s2r = if s2 > 0.0 { 1.0 / s2 } else { 0.0 };
            for _ in 0..k {
                inner += xp * sp;
                xp *= x2;
                sp *= s2r;
            }
            let term = inner / factorial;
            g += term;
            if term < 1e-18 * g {
                break;
            }
        }
        g * (x.sinh() + c * x) / ((2.0 * x).sinh() + 2.0 * eta(s) * x)
    } else {
        let e2 = (-2.0 * x).exp();
        let num = (1.0 - e2) * (1.0 - e2) / 4.0 - c * c * x * x * e2;
        let den = x * (x * x - s * s) * ((1.0 - e2 * e2) / 2.0 + 2.0 * eta(s) * x * e2);
        num / den
    }
}
