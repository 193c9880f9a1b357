//! Compatibility checks on the stress functions behind the series.
//!
//! In the gap coordinates, a stress function of the form
//! `cosh(m zeta) cos(n theta)` is biharmonic exactly when the integer symbol
//! `(n^2 - m^2)^2 - 2 (n^2 + m^2) + 1` vanishes, which happens precisely at
//! `m = n +- 1` - the two exponents the series uses for every harmonic. The
//! remaining non-polynomial building block, `h log h` with
//! `h = cosh(zeta) - cos(theta)`, is checked by finite differences against
//! the constant-coefficient form of the biharmonic operator:
//! `d^4/dtheta^4 + 2 d^4/dzeta^2 dtheta^2 + d^4/dzeta^4
//!  + 2 d^2/dtheta^2 - 2 d^2/dzeta^2 + 1`.

/// The biharmonic symbol on `cosh(m zeta) cos(n theta)`, in exact integer
/// arithmetic.
fn mode_symbol(n: i128, m: i128) -> i128 {
    let d = n * n - m * m;
    d * d - 2 * (n * n + m * m) + 1
}

/// Sum of the absolute symbol values for the two exponents `m = n +- 1`
/// carried by harmonic `n`. Exactly zero for every `n >= 1`.
pub fn airy_mode_residual(n: u32) -> f64 {
    let n = i128::from(n);
    (mode_symbol(n, n + 1).unsigned_abs() + mode_symbol(n, n - 1).unsigned_abs()) as f64
}

/// `h log h`, the one ingredient of the stress function that is not a pure
/// harmonic mode.
pub fn h_log_h(zeta: f64, theta: f64) -> f64 {
    let h = zeta.cosh() - theta.cos();
    h * h.ln()
}

/// Relative finite-difference residual of the biharmonic operator on `f`
/// at `(zeta, theta)`, from a centered 5x5 stencil with spacing `delta`.
///
/// Returns `|operator f| / scale` where `scale` is the largest fourth-order
/// term, so a genuine solution reads as roundoff-plus-truncation (about
/// `1e-4` at `delta = 1e-3` for `h log h`) while a non-solution reads O(1).
pub fn biharmonic_fd_residual(
    f: &dyn Fn(f64, f64) -> f64,
    zeta: f64,
    theta: f64,
    delta: f64,
) -> f64 {
    assert!(delta > 0.0, "stencil spacing must be positive");
    let mut grid = [[0.0f64; 5]; 5];
    for (i, row) in grid.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = f(
                zeta + (i as f64 - 2.0) * delta,
                theta + (j as f64 - 2.0) * delta,
            );
        }
    }
    let d4 = delta.powi(4);
    let d2 = delta * delta;
    // Pure fourth derivatives along the center row / column.
    let d4z =
        (grid[0][2] - 4.0 * grid[1][2] + 6.0 * grid[2][2] - 4.0 * grid[3][2] + grid[4][2]) / d4;
    let d4t =
        (grid[2][0] - 4.0 * grid[2][1] + 6.0 * grid[2][2] - 4.0 * grid[2][3] + grid[2][4]) / d4;
    // Mixed fourth derivative: product of 1D second-difference stencils on
    // the inner 3x3 block.
    let w = [1.0, -2.0, 1.0];
    let mut d2z2t = 0.0;
    for (i, wz) in w.iter().enumerate() {
        for (j, wt) in w.iter().enumerate() {
            d2z2t += wz * wt * grid[i + 1][j + 1];
        }
    }
    d2z2t /= d4;
    let d2z = (grid[1][2] - 2.0 * grid[2][2] + grid[3][2]) / d2;
    let d2t = (grid[2][1] - 2.0 * grid[2][2] + grid[2][3]) / d2;
    let resid = d4t + 2.0 * d2z2t + d4z + 2.0 * d2t - 2.0 * d2z + grid[2][2];
    let scale = d4t.abs().max(d4z.abs()).max(2.0 * d2z2t.abs());
    resid.abs() / scale
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_series_mode_is_exactly_biharmonic() {
        for n in 1..=200u32 {
            assert_eq!(airy_mode_residual(n), 0.0, "n = {n}");
        }
    }

    #[test]
    fn neighboring_exponents_are_not_biharmonic() {
        for n in 1..=50i128 {
            assert_eq!(mode_symbol(n, n), 1 - 4 * n * n);
            assert_ne!(mode_symbol(n, n + 2), 0, "n = {n}");
            if n >= 3 {
                assert_ne!(mode_symbol(n, n - 2), 0, "n = {n}");
            }
        }
    }

    #[test]
    fn h_log_h_passes_the_finite_difference_check() {
        // Residuals at delta = 1e-3 sit between 1e-6 and 5e-5 at these
        // points; 1e-4 leaves room for roundoff in the fourth differences.
        let pts = [(0.03, 0.45), (0.05, 0.7), (0.02, 1.0), (0.04, 0.3)];
        for &(zeta, theta) in &pts {
            let r = biharmonic_fd_residual(&h_log_h, zeta, theta, 1e-3);
            assert!(r <= 1e-4, "({zeta},{theta}): residual {r:e}");
        }
    }

    #[test]
    fn an_exact_mode_passes_the_finite_difference_check() {
        let f = |zeta: f64, theta: f64| (2.0 * zeta).cosh() * theta.cos();
        let r = biharmonic_fd_residual(&f, 0.04, 0.6, 1e-3);
        assert!(r <= 1e-4, "residual {r:e}");
    }

    #[test]
    fn a_non_biharmonic_function_fails_the_check() {
        // cosh(zeta/2) cos(2 theta) has symbol magnitude 6.5625; the
        // relative residual must come out O(1).
        let f = |zeta: f64, theta: f64| (0.5 * zeta).cosh() * (2.0 * theta).cos();
        let r = biharmonic_fd_residual(&f, 0.03, 0.45, 1e-3);
        assert!(r >= 0.05, "residual {r:e}");
    }
}
