use alloc::vec::Vec;

use super::{count_n, integrated_n, prox_m};
use crate::error::{Error, Result};
use crate::funcmodel::{MeroFn, Target};
use crate::math::{ln, powi};

/// Geometric radius grid `r_min · ratio^k ≤ r_max`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RadiusGrid {
    pub ratio: f64,
    pub r_min: f64,
    pub r_max: f64,
}

/// Outer radius for rational functions. Order estimates against `φ = log r`
/// and `φ = r^β` converge only like `1/log r`, so the grid runs far out.
pub const RATIONAL_R_MAX: f64 = 1e40;
/// Outer radius for exponential families, where `log|f|` grows like `r`.
pub const EXP_R_MAX: f64 = 100.0;

/// Family-dependent default outer radius.
pub fn default_r_max(f: &MeroFn) -> f64 {
    match f {
        MeroFn::Polynomial(_) | MeroFn::ZeroPole(_) | MeroFn::PartialFraction(_) => RATIONAL_R_MAX,
        MeroFn::ExpPoly(_) => EXP_R_MAX,
        MeroFn::TruncatedQProduct(p) => p.validity_radius(),
        MeroFn::NumericDq(_) | MeroFn::DqQuotient(_) => EXP_R_MAX.min(f.validity_radius()),
    }
}

impl RadiusGrid {
    pub fn new(ratio: f64, r_min: f64, r_max: f64) -> Result<Self> {
        if !(ratio > 1.0 && ratio.is_finite()) {
            return Err(Error::InvalidParameter(alloc::format!("grid ratio must exceed 1, got {ratio}")));
        }
        if !(r_min > 0.0 && r_max > r_min && r_max.is_finite()) {
            return Err(Error::InvalidParameter(alloc::format!(
                "grid needs 0 < r_min < r_max, got [{r_min}, {r_max}]"
            )));
        }
        Ok(Self { ratio, r_min, r_max })
    }

    /// Default grid for `f` from `r = 1`: ratio 1.25, or 1.1 when the range
    /// spans fewer than three decades so slope windows still fit.
    pub fn for_function(f: &MeroFn) -> Self {
        let r_max = default_r_max(f);
        let ratio = if r_max < 1e3 { 1.1 } else { 1.25 };
        Self { ratio, r_min: 1.0, r_max }
    }

    pub fn radii(&self) -> Vec<f64> {
        let steps = (ln(self.r_max / self.r_min) / ln(self.ratio) + 1e-9) as i32;
        (0..=steps).map(|k| self.r_min * powi(self.ratio, k)).collect()
    }
}

/// One sampled radius of a [`NevanlinnaTable`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TableRow {
    pub r: f64,
    pub m: f64,
    pub n_int: f64,
    pub t: f64,
    /// `n(r, 0, f)`, unknown when zeros cannot be enumerated.
    pub n_zeros: Option<u64>,
    /// `n(r, ∞, f)`, unknown when poles cannot be enumerated.
    pub n_poles: Option<u64>,
}

impl TableRow {
    pub fn compute(f: &MeroFn, r: f64) -> Result<Self> {
        let m = prox_m(f, r, Target::Infinity)?;
        let (n_int, n_poles) = if f.is_entire() {
            (0.0, Some(0))
        } else {
            (integrated_n(f, r, Target::Infinity)?, Some(count_n(f, r, Target::Infinity)?))
        };
        let n_zeros = match count_n(f, r, Target::ZERO) {
            Ok(n) => Some(n),
            Err(Error::Unsupported(_)) => None,
            Err(e) => return Err(e),
        };
        Ok(Self { r, m, n_int, t: m + n_int, n_zeros, n_poles })
    }
}

/// `(r, m, N, T, n)` rows over a radius grid, sorted by `r`.
#[derive(Clone, Debug, PartialEq)]
pub struct NevanlinnaTable {
    pub grid: RadiusGrid,
    pub rows: Vec<TableRow>,
}

impl NevanlinnaTable {
    pub fn build(f: &MeroFn, grid: RadiusGrid) -> Result<Self> {
        let rows = grid
            .radii()
            .into_iter()
            .map(|r| TableRow::compute(f, r))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { grid, rows })
    }

    pub fn from_rows(grid: RadiusGrid, rows: Vec<TableRow>) -> Self {
        Self { grid, rows }
    }

    pub fn radii(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.r).collect()
    }

    pub fn characteristic(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.t).collect()
    }
}
