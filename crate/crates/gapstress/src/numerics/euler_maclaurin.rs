use crate::error::Result;
use crate::numerics::quadrature::{integrate_to_infinity, TailModel};

/// Bernoulli numbers B_2..B_8 (odd ones beyond B_1 vanish). Low orders only:
/// the summation formula is used here at N <= 8.
const BERNOULLI: [(usize, f64); 4] = [
    (2, 1.0 / 6.0),
    (4, -1.0 / 30.0),
    (6, 1.0 / 42.0),
    (8, -1.0 / 30.0),
];

/// Input bundle for the Euler-Maclaurin approximation of
/// sum_{n>=0} f(a + n*step) * step.
///
/// `derivs[k]` must evaluate the (k+1)-th derivative of f; derivatives are
/// needed up to order N-1 (only odd orders below N actually enter, since
/// odd Bernoulli numbers vanish). `integral_abs_deriv_n` is a bound on
/// int_a^inf |f^(N)|, which feeds the remainder bound
/// 4*(step/2pi)^N * integral_abs_deriv_n.
pub struct EmInput<'a> {
    pub f: &'a dyn Fn(f64) -> f64,
    pub derivs: Vec<&'a dyn Fn(f64) -> f64>,
    pub a: f64,
    pub step: f64,
    pub order: usize,
    pub integral_abs_deriv_n: f64,
    /// Finite cutoff and tail model used to evaluate int_a^inf f.
    pub cutoff: f64,
    pub tail: TailModel,
    pub quad_tol: f64,
}

/// Euler-Maclaurin estimate of sum_{n>=0} f(a + n*step)*step together with
/// its rigorous remainder bound:
///
///   sum = int_a^inf f + (step/2) f(a)
///         - sum_{m=2}^{N} step^m (B_m/m!) f^(m-1)(a) + R_N,
///   |R_N| <= 4 (step/2pi)^N int_a^inf |f^(N)|.
pub fn euler_maclaurin_sum(input: &EmInput) -> Result<(f64, f64)> {
    assert!(input.order >= 2 && input.order <= 8, "supported orders: 2..=8");
    assert!(input.step > 0.0);
    assert!(
        input.derivs.len() + 1 >= input.order,
        "need derivatives up to order N-1 = {}",
        input.order - 1
    );

    let integral = integrate_to_infinity(
        |x| (input.f)(x),
        input.a,
        input.cutoff,
        input.quad_tol,
        input.tail,
    )?;

    let mut value = integral.value + 0.5 * input.step * (input.f)(input.a);
    let mut factorial = 1.0f64;
    let mut step_pow = 1.0f64;
    let mut next_bernoulli = BERNOULLI.iter().peekable();
    for m in 1..=input.order {
        factorial *= m as f64;
        step_pow *= input.step;
        if let Some(&&(bm_order, bm)) = next_bernoulli.peek() {
            if bm_order == m {
                next_bernoulli.next();
                let deriv = (input.derivs[m - 2])(input.a);
                value -= step_pow * bm / factorial * deriv;
            }
        }
    }

    let two_pi = 2.0 * std::f64::consts::PI;
    let remainder_bound = 4.0 * (input.step / two_pi).powi(input.order as i32)
        * input.integral_abs_deriv_n
        + integral.error_estimate;
    Ok((value, remainder_bound))
}
