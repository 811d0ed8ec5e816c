//! Polynomial root finding: Aberth–Ehrlich simultaneous iteration with a
//! companion-matrix (shifted Hessenberg QR) fallback.

use alloc::vec;
use alloc::vec::Vec;

use super::{PointMult, Polynomial};
use crate::error::{Error, Result};
use crate::math::{cabs, ln, polar, powf, C64, TAU};

pub const MAX_ITERATIONS: usize = 200;
/// Residual tolerance relative to `Σ|c_k||ζ|^k`.
pub const ROOT_TOLERANCE: f64 = 1e-9;
/// Approximations closer than this (relative) are merged into one multiple root.
const CLUSTER_TOLERANCE: f64 = 1e-5;

/// All roots of `p` with multiplicities; multiplicities sum to `deg p`.
pub fn roots(p: &Polynomial) -> Result<Vec<PointMult>> {
    if p.is_zero() || p.degree() == 0 {
        return Err(Error::InvalidInput("roots of a constant polynomial".into()));
    }
    let coeffs = p.coeffs();
    let zeros_at_origin = coeffs.iter().take_while(|c| **c == C64::new(0.0, 0.0)).count();
    let reduced = Polynomial::new(coeffs[zeros_at_origin..].to_vec());

    let mut approx = Vec::new();
    if reduced.degree() > 0 {
        approx = match aberth(&reduced) {
            Some(r) if residual_ok(&reduced, &r) => r,
            _ => {
                let mut r = companion_eigenvalues(&reduced)?;
                for z in r.iter_mut() {
                    *z = newton_polish(&reduced, *z);
                }
                if !residual_ok(&reduced, &r) {
                    return Err(Error::NonConvergence { iterations: MAX_ITERATIONS });
                }
                r
            }
        };
    }

    let mut out = cluster(&approx);
    if zeros_at_origin > 0 {
        out.push(PointMult::new(C64::new(0.0, 0.0), zeros_at_origin as u32));
    }
    Ok(out)
}

fn residual_ok(p: &Polynomial, roots: &[C64]) -> bool {
    roots.iter().all(|&z| {
        let scale = p.eval_abs(z);
        z.re.is_finite() && z.im.is_finite() && cabs(p.eval(z)) <= ROOT_TOLERANCE * scale
    })
}

fn initial_guesses(p: &Polynomial) -> Vec<C64> {
    let n = p.degree();
    let c = p.coeffs();
    // geometric mean of root moduli, |c0/cn|^{1/n}
    let radius = powf(cabs(c[0]) / cabs(c[n]), 1.0 / n as f64);
    let radius = if radius.is_finite() && radius > 0.0 { radius } else { 1.0 };
    (0..n)
        .map(|k| polar(radius, TAU * k as f64 / n as f64 + 0.4))
        .collect()
}

fn aberth(p: &Polynomial) -> Option<Vec<C64>> {
    let n = p.degree();
    if n == 1 {
        let c = p.coeffs();
        return Some(vec![-c[0] / c[1]]);
    }
    let dp = p.derivative();
    let mut z = initial_guesses(p);
    for _ in 0..MAX_ITERATIONS {
        let mut max_step: f64 = 0.0;
        for i in 0..n {
            let pv = p.eval(z[i]);
            if pv == C64::new(0.0, 0.0) {
                continue;
            }
            let ratio = pv / dp.eval(z[i]);
            let mut repulsion = C64::new(0.0, 0.0);
            for j in 0..n {
                if j != i {
                    repulsion += C64::new(1.0, 0.0) / (z[i] - z[j]);
                }
            }
            let step = ratio / (C64::new(1.0, 0.0) - ratio * repulsion);
            if !(step.re.is_finite() && step.im.is_finite()) {
                return None;
            }
            z[i] -= step;
            max_step = max_step.max(cabs(step) / cabs(z[i]).max(1e-300));
        }
        if max_step < 1e-14 {
            return Some(z);
        }
    }
    Some(z)
}

fn newton_polish(p: &Polynomial, mut z: C64) -> C64 {
    let dp = p.derivative();
    for _ in 0..8 {
        let d = dp.eval(z);
        if d == C64::new(0.0, 0.0) {
            break;
        }
        let step = p.eval(z) / d;
        if !(step.re.is_finite() && step.im.is_finite()) {
            break;
        }
        z -= step;
        if cabs(step) <= 1e-16 * cabs(z) {
            break;
        }
    }
    z
}

/// Merge numerically coincident approximations into multiple roots.
fn cluster(approx: &[C64]) -> Vec<PointMult> {
    let mut used = vec![false; approx.len()];
    let mut out = Vec::new();
    for i in 0..approx.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let mut members = vec![approx[i]];
        let mut changed = true;
        while changed {
            changed = false;
            for j in 0..approx.len() {
                if used[j] {
                    continue;
                }
                let centre = members.iter().sum::<C64>() / members.len() as f64;
                let tol = CLUSTER_TOLERANCE * cabs(centre).max(1.0) * (members.len() as f64);
                if cabs(approx[j] - centre) <= tol {
                    used[j] = true;
                    members.push(approx[j]);
                    changed = true;
                }
            }
        }
        let centre = members.iter().sum::<C64>() / members.len() as f64;
        out.push(PointMult::new(centre, members.len() as u32));
    }
    out
}

/// Eigenvalues of the companion matrix by shifted QR on the Hessenberg form.
fn companion_eigenvalues(p: &Polynomial) -> Result<Vec<C64>> {
    let n = p.degree();
    let c = p.coeffs();
    let lead = c[n];
    let mut h = vec![vec![C64::new(0.0, 0.0); n]; n];
    for i in 1..n {
        h[i][i - 1] = C64::new(1.0, 0.0);
    }
    for i in 0..n {
        h[i][n - 1] = -c[i] / lead;
    }
    hessenberg_eigenvalues(h)
}

fn hessenberg_eigenvalues(mut h: Vec<Vec<C64>>) -> Result<Vec<C64>> {
    let n = h.len();
    let mut eig = vec![C64::new(0.0, 0.0); n];
    let mut hi = n;
    let mut iter = 0usize;
    let cap = 60 * n.max(1);
    while hi > 0 {
        if hi == 1 {
            eig[0] = h[0][0];
            break;
        }
        // find small subdiagonal
        let mut lo = hi - 1;
        while lo > 0 {
            let s = cabs(h[lo - 1][lo - 1]) + cabs(h[lo][lo]);
            if cabs(h[lo][lo - 1]) <= f64::EPSILON * s.max(f64::MIN_POSITIVE) {
                h[lo][lo - 1] = C64::new(0.0, 0.0);
                break;
            }
            lo -= 1;
        }
        if lo == hi - 1 {
            eig[hi - 1] = h[hi - 1][hi - 1];
            hi -= 1;
            iter = 0;
            continue;
        }
        iter += 1;
        if iter > cap {
            return Err(Error::NonConvergence { iterations: iter });
        }
        // Wilkinson shift from trailing 2x2
        let a = h[hi - 2][hi - 2];
        let b = h[hi - 2][hi - 1];
        let cc = h[hi - 1][hi - 2];
        let d = h[hi - 1][hi - 1];
        let tr = a + d;
        let det = a * d - b * cc;
        let disc = (tr * tr * 0.25 - det).sqrt();
        let l1 = tr * 0.5 + disc;
        let l2 = tr * 0.5 - disc;
        let mut mu = if cabs(l1 - d) < cabs(l2 - d) { l1 } else { l2 };
        if iter % 11 == 0 {
            // exceptional shift
            mu = d + C64::new(cabs(h[hi - 1][hi - 2]), 0.0) * 0.75;
        }
        qr_step(&mut h, lo, hi, mu);
    }
    Ok(eig)
}

fn qr_step(h: &mut [Vec<C64>], lo: usize, hi: usize, mu: C64) {
    let n = h.len();
    for i in lo..hi {
        h[i][i] -= mu;
    }
    let mut rots: Vec<(C64, C64)> = Vec::with_capacity(hi - lo);
    for k in lo..hi - 1 {
        let x = h[k][k];
        let y = h[k + 1][k];
        let r = libm::hypot(cabs(x), cabs(y));
        let (cs, sn) = if r == 0.0 {
            (C64::new(1.0, 0.0), C64::new(0.0, 0.0))
        } else {
            (x / r, y / r)
        };
        // apply G = [[conj(cs), conj(sn)], [-sn, cs]] to rows k, k+1
        for j in k..n {
            let a = h[k][j];
            let b = h[k + 1][j];
            h[k][j] = cs.conj() * a + sn.conj() * b;
            h[k + 1][j] = -sn * a + cs * b;
        }
        rots.push((cs, sn));
    }
    for (idx, k) in (lo..hi - 1).enumerate() {
        let (cs, sn) = rots[idx];
        // multiply on the right by G^H
        for i in 0..=(k + 1).min(hi - 1) {
            let a = h[i][k];
            let b = h[i][k + 1];
            h[i][k] = a * cs + b * sn;
            h[i][k + 1] = -a * sn.conj() + b * cs.conj();
        }
    }
    for i in lo..hi {
        h[i][i] += mu;
    }
}

#[allow(dead_code)]
fn log_scale_hint(p: &Polynomial) -> f64 {
    ln(p.scaled_norm(1.0))
}
