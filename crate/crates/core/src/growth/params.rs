use alloc::vec::Vec;

use super::{PhiFamily, PhiFn, SFamily, SFn};
use crate::error::{Error, Result};
use crate::math::{ln, powf};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParamSource {
    ClosedForm,
    Empirical,
}

/// `α_{φ,s} = liminf log φ(r) / log φ(s(r))` and
/// `γ_{φ,s} = liminf log log(s(r)/r) / log φ(r)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GrowthParams {
    pub alpha: f64,
    pub gamma: f64,
    pub source: ParamSource,
}

/// Closed form where the pair is tabulated, otherwise the empirical estimate.
pub fn alpha_gamma(phi: &PhiFn, s: &SFn) -> Result<GrowthParams> {
    match alpha_gamma_closed_form(phi, s) {
        Some(p) => Ok(p),
        None => alpha_gamma_empirical(phi, s),
    }
}

/// Exact limits for the built-in families.
pub fn alpha_gamma_closed_form(phi: &PhiFn, s: &SFn) -> Option<GrowthParams> {
    let (alpha, gamma) = match (phi.family(), s.family()) {
        (PhiFamily::Log, SFamily::RPow(_)) => (1.0, 1.0),
        (PhiFamily::Log, _) => (1.0, 0.0),
        (PhiFamily::LogPow(p), SFamily::RPow(_)) => (1.0, 1.0 / p),
        (PhiFamily::LogPow(_), _) => (1.0, 0.0),
        (PhiFamily::ExpLogPow(b), SFamily::RPow(a)) => (powf(a, -b), 0.0),
        (PhiFamily::ExpLogPow(_), _) => (1.0, 0.0),
        (PhiFamily::Pow(_), SFamily::RPow(a)) => (1.0 / a, 0.0),
        (PhiFamily::Pow(_), _) => (1.0, 0.0),
    };
    Some(GrowthParams { alpha, gamma, source: ParamSource::ClosedForm })
}

/// Spread between the last two decades beyond which the estimate is refused.
const UNSTABLE: f64 = 5e-3;

/// Finite-scale liminf of the defining ratios.
///
/// The ratios are functions of `ℓ = log r`, so they are sampled on
/// `ℓ ∈ [10^280, 10^300]`. The minimum over each of the last two decades is
/// combined by a Richardson step in `L = log ℓ`, which removes the `1/L`
/// corrections that dominate these ratios.
pub fn alpha_gamma_empirical(phi: &PhiFn, s: &SFn) -> Result<GrowthParams> {
    let alpha = tail_liminf(|l| phi.log_phi_of_log_r(l) / phi.log_phi_of_log_r(s.log_s_of_log_r(l)))?;
    let gamma = tail_liminf(|l| ln(s.log_s_over_r(l)) / phi.log_phi_of_log_r(l))?;
    Ok(GrowthParams { alpha, gamma, source: ParamSource::Empirical })
}

fn decade_min<F: Fn(f64) -> f64>(ratio: &F, lo_exp: f64) -> (f64, f64) {
    let pts: Vec<f64> = (0..=200).map(|i| lo_exp + 10.0 * i as f64 / 200.0).collect();
    let mut best = (f64::INFINITY, 0.0);
    for e in pts {
        // ℓ = 10^e, L = log ℓ
        let big_l = e * core::f64::consts::LN_10;
        let v = ratio(crate::math::exp(big_l));
        if v < best.0 {
            best = (v, big_l);
        }
    }
    best
}

fn tail_liminf<F: Fn(f64) -> f64>(ratio: F) -> Result<f64> {
    let (a1, l1) = decade_min(&ratio, 280.0);
    let (a2, l2) = decade_min(&ratio, 290.0);
    if !(a1.is_finite() && a2.is_finite()) {
        return Err(Error::EmpiricalUnstable { spread: f64::INFINITY });
    }
    if (a2 - a1).abs() > UNSTABLE {
        return Err(Error::EmpiricalUnstable { spread: (a2 - a1).abs() });
    }
    let est = if (l2 - l1).abs() > 1e-9 { (l2 * a2 - l1 * a1) / (l2 - l1) } else { a2 };
    Ok(est.clamp(0.0, 1.0))
}
