use super::{hat_check, QParam};
use crate::error::Result;
use crate::funcmodel::MeroFn;
use crate::math::{cabs, C64};

/// Within this distance of `±1` the divided difference is replaced by the
/// derivative at `±(q^{1/2} + q^{−1/2})/2`.
pub const EXCEPTIONAL_TOLERANCE: f64 = 1e-7;

/// `(D_q f)(x)` by direct evaluation at `x̂` and `x̌`.
pub fn dq_eval(f: &MeroFn, x: C64, q: &QParam) -> Result<C64> {
    dq_eval_by(x, q, |y| f.value_at(y), |y| f.derivative_at(y))
}

/// Divided difference of an arbitrary evaluator, with the derivative used at
/// the exceptional points.
pub(crate) fn dq_eval_by<F, D>(x: C64, q: &QParam, f: F, df: D) -> Result<C64>
where
    F: Fn(C64) -> Result<C64>,
    D: Fn(C64) -> Result<C64>,
{
    let one = C64::new(1.0, 0.0);
    if cabs(x - one) < EXCEPTIONAL_TOLERANCE {
        return df(q.a());
    }
    if cabs(x + one) < EXCEPTIONAL_TOLERANCE {
        return df(-q.a());
    }
    let h = hat_check(x, q);
    let fh = f(h.x_hat)?;
    let fc = f(h.x_check)?;
    Ok((fh - fc) / (h.x_hat - h.x_check))
}

/// Centered finite difference, for evaluators without a closed-form derivative.
pub(crate) fn central_difference<F>(x: C64, f: F) -> Result<C64>
where
    F: Fn(C64) -> Result<C64>,
{
    let h = 1e-5 * cabs(x).max(1.0);
    let step = C64::new(h, 0.0);
    Ok((f(x + step)? - f(x - step)?) / (2.0 * h))
}
