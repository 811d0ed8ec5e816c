//! Least-squares polynomial fitting through sampled values.

use alloc::vec;
use alloc::vec::Vec;

use super::Polynomial;
use crate::error::{Error, Result};
use crate::math::{cabs, cos, sqrt, C64, PI};

/// Residual tolerance relative to the largest sample magnitude.
pub const INTERP_TOLERANCE: f64 = 1e-9;
/// Ratio of extreme diagonal entries of `R` above which the fit is refused.
pub const CONDITION_LIMIT: f64 = 1e13;

/// `n` Chebyshev points of the first kind on `[−radius, radius]`, nudged off
/// `±1` where the Askey–Wilson operator switches formulas.
pub fn chebyshev_nodes(n: usize, radius: f64) -> Vec<C64> {
    (0..n)
        .map(|j| {
            let mut x = radius * cos(PI * (2 * j + 1) as f64 / (2 * n) as f64);
            if (x.abs() - 1.0).abs() < 1e-6 {
                x *= 1.0 + 1e-3;
            }
            C64::new(x, 0.0)
        })
        .collect()
}

/// Fit a polynomial of degree at most `deg` to `(x, value)` samples.
///
/// The abscissae are rescaled to the unit disc before a Householder QR
/// least-squares solve, and the fitted polynomial must reproduce every
/// sample within [`INTERP_TOLERANCE`].
pub fn interpolate(samples: &[(C64, C64)], deg: usize) -> Result<Polynomial> {
    let n = deg + 1;
    if samples.len() < n {
        return Err(Error::InsufficientData(alloc::format!(
            "{} samples for degree {}",
            samples.len(),
            deg
        )));
    }
    for (i, a) in samples.iter().enumerate() {
        if samples[..i].iter().any(|b| b.0 == a.0) {
            return Err(Error::InvalidInput("interpolation nodes must be distinct".into()));
        }
    }
    let rho = samples.iter().map(|s| cabs(s.0)).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    let mut a: Vec<Vec<C64>> = samples
        .iter()
        .map(|(x, _)| {
            let t = *x / rho;
            let mut row = Vec::with_capacity(n);
            let mut pw = C64::new(1.0, 0.0);
            for _ in 0..n {
                row.push(pw);
                pw *= t;
            }
            row
        })
        .collect();
    let mut b: Vec<C64> = samples.iter().map(|s| s.1).collect();

    let diag = householder_qr(&mut a, &mut b, n);
    let dmax = diag.iter().cloned().fold(0.0, f64::max);
    let dmin = diag.iter().cloned().fold(f64::INFINITY, f64::min);
    if dmin == 0.0 || dmax / dmin > CONDITION_LIMIT {
        return Err(Error::IllConditioned { condition: dmax / dmin });
    }
    // back substitution on the leading n×n triangle
    let mut coef = vec![C64::new(0.0, 0.0); n];
    for i in (0..n).rev() {
        let mut s = b[i];
        for j in i + 1..n {
            s -= a[i][j] * coef[j];
        }
        coef[i] = s / a[i][i];
    }
    let mut scale = 1.0;
    for c in coef.iter_mut() {
        *c /= scale;
        scale *= rho;
    }
    let p = Polynomial::new(coef);

    let vmax = samples.iter().map(|s| cabs(s.1)).fold(1.0, f64::max);
    let residual = samples.iter().map(|(x, v)| cabs(p.eval(*x) - *v)).fold(0.0, f64::max) / vmax;
    if residual > INTERP_TOLERANCE {
        return Err(Error::InterpolationResidual { residual, tolerance: INTERP_TOLERANCE });
    }
    Ok(p)
}

/// In-place Householder QR of the first `n` columns of `a`, applying the
/// reflections to `b` as well. Returns `|R_ii|`.
fn householder_qr(a: &mut [Vec<C64>], b: &mut [C64], n: usize) -> Vec<f64> {
    let m = a.len();
    let mut diag = Vec::with_capacity(n);
    for k in 0..n {
        let norm = sqrt((k..m).map(|i| a[i][k].norm_sqr()).sum::<f64>());
        if norm == 0.0 {
            diag.push(0.0);
            continue;
        }
        let x0 = a[k][k];
        let phase = if cabs(x0) == 0.0 { C64::new(1.0, 0.0) } else { x0 / cabs(x0) };
        let alpha = -phase * norm;
        let mut v: Vec<C64> = (k..m).map(|i| a[i][k]).collect();
        v[0] -= alpha;
        let vnorm2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if vnorm2 > 0.0 {
            for j in k..n {
                let dot: C64 = (k..m).map(|i| v[i - k].conj() * a[i][j]).sum();
                let f = dot * (2.0 / vnorm2);
                for i in k..m {
                    a[i][j] -= v[i - k] * f;
                }
            }
            let dot: C64 = (k..m).map(|i| v[i - k].conj() * b[i]).sum();
            let f = dot * (2.0 / vnorm2);
            for i in k..m {
                b[i] -= v[i - k] * f;
            }
        }
        diag.push(cabs(a[k][k]));
    }
    diag
}
