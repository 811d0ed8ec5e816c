use alloc::vec::Vec;

use super::quad::{integrate, QuadOptions};
use crate::error::{Error, Result};
use crate::funcmodel::{MeroFn, PointMult, Target, Value};
use crate::math::{cabs, exp, ln, polar, C64, TAU};

/// Logarithms are clamped to `±LOG_CLAMP` so poles hit by a node stay finite.
pub const LOG_CLAMP: f64 = 745.0;

fn check_radius(f: &MeroFn, r: f64) -> Result<()> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::InvalidParameter(alloc::format!("radius must be positive, got {r}")));
    }
    let valid = f.validity_radius();
    if r > valid {
        return Err(Error::OutOfValidity { radius: r, valid });
    }
    Ok(())
}

/// Angles of points close to the circle `|x| = r`, used as quadrature breakpoints.
pub(crate) fn singular_angles(points: &[PointMult], r: f64) -> Vec<f64> {
    let mut out = Vec::new();
    for p in points {
        let m = cabs(p.at);
        if m > 0.0 && (m - r).abs() <= 0.25 * r {
            let mut t = libm::atan2(p.at.im, p.at.re);
            if t < 0.0 {
                t += TAU;
            }
            out.push(t);
        }
    }
    out
}

/// Proximity function `m(r, a, f) = (1/2π) ∫ log⁺ |g(r e^{iθ})| dθ`, where
/// `g = f` for `a = ∞` and `g = 1/(f − a)` otherwise.
pub fn prox_m(f: &MeroFn, r: f64, target: Target) -> Result<f64> {
    prox_m_with(f, r, target, QuadOptions::default())
}

pub fn prox_m_with(f: &MeroFn, r: f64, target: Target, opts: QuadOptions) -> Result<f64> {
    check_radius(f, r)?;
    let mut breaks = Vec::new();
    for t in [Target::Infinity, target] {
        if let Ok(pts) = f.a_points(t) {
            breaks.extend(singular_angles(&pts, r));
        }
    }
    let integrand = |theta: f64| -> Result<f64> {
        let x = polar(r, theta);
        let v = match target {
            Target::Infinity => f.log_abs(x)?,
            Target::Value(a) if a == C64::new(0.0, 0.0) => -f.log_abs(x)?,
            Target::Value(a) => match f.eval(x)? {
                Value::Pole => f64::NEG_INFINITY,
                Value::Finite(v) => -ln(cabs(v - a)),
            },
        };
        Ok(v.clamp(-LOG_CLAMP, LOG_CLAMP).max(0.0))
    };
    let (v, _) = integrate(integrand, 0.0, TAU, &breaks, opts)?;
    Ok(v / TAU)
}

/// `(1/2π) ∫ log⁺ |g(r e^{iθ})| dθ` for a function given through `log |g|`.
pub fn prox_of<F>(log_abs: F, r: f64, breakpoints: &[f64]) -> Result<f64>
where
    F: Fn(C64) -> Result<f64>,
{
    let integrand = |theta: f64| -> Result<f64> {
        Ok(log_abs(polar(r, theta))?.clamp(-LOG_CLAMP, LOG_CLAMP).max(0.0))
    };
    let (v, _) = integrate(integrand, 0.0, TAU, breakpoints, QuadOptions::default())?;
    Ok(v / TAU)
}

fn a_points_checked(f: &MeroFn, r: f64, target: Target) -> Result<Vec<PointMult>> {
    check_radius(f, r)?;
    f.a_points(target)
}

/// `n(r, a, f)`: number of `a`-points in `|x| ≤ r`, with multiplicity.
pub fn count_n(f: &MeroFn, r: f64, target: Target) -> Result<u64> {
    Ok(a_points_checked(f, r, target)?
        .iter()
        .filter(|p| cabs(p.at) <= r)
        .map(|p| p.mult as u64)
        .sum())
}

/// Points this close to the origin are counted in `n(0, a, f)`.
const ORIGIN: f64 = 1e-12;

/// `N(r, a, f) = Σ_{0<|c|≤r} log(r/|c|) + n(0, a, f) log r`.
pub fn integrated_n(f: &MeroFn, r: f64, target: Target) -> Result<f64> {
    let pts = a_points_checked(f, r, target)?;
    let mut s = 0.0;
    for p in pts {
        let m = cabs(p.at);
        if m <= ORIGIN {
            s += p.mult as f64 * ln(r);
        } else if m <= r {
            s += p.mult as f64 * ln(r / m);
        }
    }
    Ok(s)
}

/// `T(r, f) = m(r, f) + N(r, f)`.
pub fn characteristic_t(f: &MeroFn, r: f64) -> Result<f64> {
    let n = if f.is_entire() { 0.0 } else { integrated_n(f, r, Target::Infinity)? };
    Ok(prox_m(f, r, Target::Infinity)? + n)
}

const SCAN: usize = 2048;

/// `log M(r, f)` for `f` without poles in `|x| ≤ r`.
pub fn log_max_modulus(f: &MeroFn, r: f64) -> Result<f64> {
    check_radius(f, r)?;
    if !f.is_entire() {
        match f.poles_in_disc(r * (1.0 + 1e-12)) {
            Ok(p) if p.is_empty() => {}
            _ => return Err(Error::NotEntire { radius: r }),
        }
    }
    let g = |t: f64| f.log_abs(polar(r, t));
    let mut best = (0.0, f64::NEG_INFINITY);
    for k in 0..SCAN {
        let t = TAU * k as f64 / SCAN as f64;
        let v = g(t)?;
        if v > best.1 {
            best = (t, v);
        }
    }
    // golden-section refinement around the best scan angle
    let step = TAU / SCAN as f64;
    let (mut a, mut b) = (best.0 - step, best.0 + step);
    let phi = 0.618_033_988_749_894_8;
    let mut x1 = b - phi * (b - a);
    let mut x2 = a + phi * (b - a);
    let mut f1 = g(x1)?;
    let mut f2 = g(x2)?;
    for _ in 0..60 {
        if f1 > f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = g(x1)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = g(x2)?;
        }
    }
    Ok(best.1.max(f1).max(f2))
}

/// `M(r, f) = max_{|x|=r} |f(x)|`.
pub fn max_modulus(f: &MeroFn, r: f64) -> Result<f64> {
    Ok(exp(log_max_modulus(f, r)?))
}
