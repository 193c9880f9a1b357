use crate::error::{Error, Result};

/// Result of a quadrature run: value, a conservative error estimate, and
/// the number of integrand evaluations spent.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

/// Analytic tail model for integrals over [cutoff, infinity).
///
/// Every integrand in this crate has a known simple tail, so a fixed cutoff
/// plus a closed-form tail term replaces variable transformations:
/// `ExpDecay { rate }` models f ~ c*exp(-rate*x), `InverseCubic` models
/// f ~ c/x^3 (tail integral = f(cutoff)*cutoff/2).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TailModel {
    None,
    ExpDecay { rate: f64 },
    InverseCubic,
}

impl TailModel {
    /// Closed-form tail integral over [cutoff, infinity) for the model
    /// matched to the integrand value at the cutoff.
    pub fn tail_term(&self, f_at_cutoff: f64, cutoff: f64) -> f64 {
        match self {
            TailModel::None => 0.0,
            TailModel::ExpDecay { rate } => f_at_cutoff / rate,
            TailModel::InverseCubic => f_at_cutoff * cutoff / 2.0,
        }
    }
}

// 15-point Kronrod extension of 7-point Gauss: abscissae (positive half),
// Kronrod weights, and embedded Gauss weights.
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// One Gauss-Kronrod 7/15 panel: returns (kronrod value, |kronrod - gauss|).
fn gk15_panel<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for j in 0..7 {
        let dx = half * XGK[j];
        let fsum = f(c - dx) + f(c + dx);
        kronrod += WGK[j] * fsum;
        if j % 2 == 1 {
            gauss += WG[j / 2] * fsum;
        }
    }
    kronrod *= half;
    gauss *= half;
    (kronrod, (kronrod - gauss).abs())
}

/// Adaptive Gauss-Kronrod quadrature on a finite interval.
///
/// Splits the worst interval until the summed |K15 - G7| estimate meets
/// `tol`. The estimate is conservative for smooth integrands because the
/// Kronrod value is far more accurate than the Gauss value it is compared
/// against.
pub fn adaptive_quadrature<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    tol: f64,
) -> Result<QuadratureResult> {
    const MAX_INTERVALS: usize = 4096;
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::InvalidArgument(format!(
            "bad quadrature interval [{lo}, {hi}]"
        )));
    }
    if tol <= 0.0 {
        return Err(Error::InvalidArgument("tol must be positive".into()));
    }

    struct Interval {
        a: f64,
        b: f64,
        value: f64,
        err: f64,
    }
    let (value, err) = gk15_panel(&f, lo, hi);
    let mut intervals = vec![Interval {
        a: lo,
        b: hi,
        value,
        err,
    }];
    let mut evaluations = 15usize;

    loop {
        let total_err: f64 = intervals.iter().map(|iv| iv.err).sum();
        if total_err <= tol {
            let total: f64 = intervals.iter().map(|iv| iv.value).sum();
            return Ok(QuadratureResult {
                value: total,
                error_estimate: total_err,
                evaluations,
            });
        }
        if intervals.len() >= MAX_INTERVALS {
            return Err(Error::Quadrature {
                estimate: total_err,
                tol,
            });
        }
        // Split the interval with the largest error estimate.
        let worst = intervals
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.err.total_cmp(&y.1.err))
            .map(|(i, _)| i)
            .unwrap();
        let Interval { a, b, .. } = intervals.swap_remove(worst);
        let mid = 0.5 * (a + b);
        let (v1, e1) = gk15_panel(&f, a, mid);
        let (v2, e2) = gk15_panel(&f, mid, b);
        evaluations += 30;
        intervals.push(Interval {
            a,
            b: mid,
            value: v1,
            err: e1,
        });
        intervals.push(Interval {
            a: mid,
            b,
            value: v2,
            err: e2,
        });
    }
}

/// Fixed composite Simpson rule with `panels` uniform panels.
///
/// Deliberately shares no nodes or weights with the Gauss-Kronrod route so
/// the two can serve as independent cross-checks of golden constants.
pub fn composite_simpson<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, panels: usize) -> f64 {
    // `panels` counts uniform subintervals; Simpson needs it even.
    assert!(panels >= 2 && panels % 2 == 0 && lo < hi);
    let h = (hi - lo) / panels as f64;
    let mut acc = crate::numerics::sum::CompensatedSum::new();
    acc.add(f(lo));
    acc.add(f(hi));
    for i in 1..panels {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc.add(w * f(lo + i as f64 * h));
    }
    acc.total() * h / 3.0
}

/// Integral over [lo, infinity): adaptive quadrature up to `cutoff`, then a
/// closed-form tail term from the supplied model.
///
/// The returned error estimate covers only the finite part; the tail model
/// is exact for integrands matching it and its residual must be argued (or
/// tested) per integrand.
pub fn integrate_to_infinity<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    cutoff: f64,
    tol: f64,
    tail: TailModel,
) -> Result<QuadratureResult> {
    let finite = adaptive_quadrature(&f, lo, cutoff, tol)?;
    let tail_term = tail.tail_term(f(cutoff), cutoff);
    Ok(QuadratureResult {
        value: finite.value + tail_term,
        error_estimate: finite.error_estimate,
        evaluations: finite.evaluations + 1,
    })
}
