use alloc::vec::Vec;

use super::{GrowthParams, PhiFn};
use crate::error::{Error, Result};
use crate::funcmodel::MeroFn;
use crate::math::{ln, ls_slope, powi, sqrt};
use crate::nevanlinna::{log_max_modulus, NevanlinnaTable, RadiusGrid};

/// Rows per least-squares window.
pub const WINDOW: usize = 8;
const MIN_ROWS: usize = 12;
const MIN_MODULI: usize = 20;

/// A finite-scale order estimate and the spread of the window slopes behind it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OrderEstimate {
    pub estimate: f64,
    pub dispersion: f64,
    pub windows: usize,
}

/// Largest slope over trailing windows that end in the top half of the data.
fn windowed_limsup(xs: &[f64], ys: &[f64]) -> Result<OrderEstimate> {
    let n = xs.len();
    if n < MIN_ROWS {
        return Err(Error::InsufficientData(alloc::format!("{n} usable rows, need {MIN_ROWS}")));
    }
    let mut slopes = Vec::new();
    for end in (n / 2).max(WINDOW)..=n {
        if let Some(s) = ls_slope(&xs[end - WINDOW..end], &ys[end - WINDOW..end]) {
            slopes.push(s);
        }
    }
    if slopes.is_empty() {
        return Err(Error::InsufficientData("no window with spread in log φ".into()));
    }
    let mean = slopes.iter().sum::<f64>() / slopes.len() as f64;
    let var = slopes.iter().map(|s| (s - mean) * (s - mean)).sum::<f64>() / slopes.len() as f64;
    let estimate = slopes.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    Ok(OrderEstimate { estimate, dispersion: sqrt(var), windows: slopes.len() })
}

/// `ρ_φ(f) = limsup log T(r, f) / log φ(r)` from a characteristic table.
pub fn phi_order(table: &NevanlinnaTable, phi: &PhiFn) -> Result<OrderEstimate> {
    let rows: Vec<(f64, f64)> = table
        .rows
        .iter()
        .filter(|row| row.r >= phi.r0() && row.t > 0.0 && phi.raw(row.r) > 1.0)
        .map(|row| (ln(phi.raw(row.r)), row.t))
        .collect();
    if rows.len() >= 2 {
        let tmax = rows.iter().map(|r| r.1).fold(0.0, f64::max);
        let tmin = rows.iter().map(|r| r.1).fold(f64::INFINITY, f64::min);
        if tmax - tmin <= 1e-12 * tmax {
            return Err(Error::DegenerateT);
        }
    }
    let xs: Vec<f64> = rows.iter().map(|r| r.0).collect();
    let ys: Vec<f64> = rows.iter().map(|r| ln(r.1)).collect();
    windowed_limsup(&xs, &ys)
}

/// The same estimator applied to `log log M(r, f)` for entire `f`.
pub fn phi_order_maxmod(f: &MeroFn, phi: &PhiFn, grid: &RadiusGrid) -> Result<OrderEstimate> {
    if !phi.is_subadditive() {
        return Err(Error::HypothesisViolation(alloc::format!(
            "{} is not subadditive",
            phi.name()
        )));
    }
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for r in grid.radii() {
        if r < phi.r0() || phi.raw(r) <= 1.0 {
            continue;
        }
        let lm = log_max_modulus(f, r)?;
        if lm > 0.0 {
            xs.push(ln(phi.raw(r)));
            ys.push(ln(lm));
        }
    }
    windowed_limsup(&xs, &ys)
}

/// `φ`-exponent of convergence of a non-decreasing sequence of moduli: the
/// slope of `log n(r)` against `log φ(r)` over the top half of the counts.
pub fn conv_exponent(moduli: &[f64], phi: &PhiFn) -> Result<f64> {
    if moduli.len() < MIN_MODULI {
        return Err(Error::InsufficientData(alloc::format!(
            "{} moduli, need {MIN_MODULI}",
            moduli.len()
        )));
    }
    let mut sorted = moduli.to_vec();
    sorted.sort_by(f64::total_cmp);
    // (modulus, cumulative count) at each distinct modulus
    let mut pts: Vec<(f64, f64)> = Vec::new();
    for (i, &m) in sorted.iter().enumerate() {
        let count = (i + 1) as f64;
        match pts.last_mut() {
            Some(last) if last.0 == m => last.1 = count,
            _ => pts.push((m, count)),
        }
    }
    let pts: Vec<(f64, f64)> = pts.into_iter().filter(|p| p.0 >= phi.r0()).collect();
    if pts.len() < 2 {
        return Ok(0.0);
    }
    let top = &pts[pts.len() / 2..];
    let xs: Vec<f64> = top.iter().map(|p| ln(phi.raw(p.0))).collect();
    let ys: Vec<f64> = top.iter().map(|p| ln(p.1)).collect();
    Ok(ls_slope(&xs, &ys).unwrap_or(0.0))
}

/// `max{ρ_f, max_{1≤l≤k} [ρ_f/α^l − γ Σ_{j<l} α^{−j}]}`, the bound on
/// `ρ_φ(D_q^k f)`.
pub fn rho_phi_k(rho_f: f64, params: &GrowthParams, k: u32) -> Result<f64> {
    if params.alpha <= 0.0 {
        return Err(Error::AlphaZero);
    }
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let a = params.alpha;
    let mut best = rho_f;
    let mut geom = 0.0;
    for l in 1..=k as i32 {
        geom += powi(a, -(l - 1));
        best = best.max(rho_f / powi(a, l) - params.gamma * geom);
    }
    Ok(best)
}
