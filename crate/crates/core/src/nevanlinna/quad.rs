//! Adaptive Gauss–Kronrod (7/15) quadrature with a global error budget.

use alloc::collections::BinaryHeap;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Refinement settings for [`integrate`].
#[derive(Clone, Copy, Debug)]
pub struct QuadOptions {
    pub initial_panels: usize,
    pub max_depth: u32,
    pub tolerance: f64,
    pub max_panels: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        Self { initial_panels: 64, max_depth: 40, tolerance: 1e-7, max_panels: 20_000 }
    }
}

struct Panel {
    lo: f64,
    hi: f64,
    depth: u32,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gk15<F: Fn(f64) -> Result<f64>>(f: &F, lo: f64, hi: f64) -> Result<(f64, f64)> {
    let c = 0.5 * (lo + hi);
    let h = 0.5 * (hi - lo);
    let fc = f(c)?;
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    for i in 0..7 {
        let dx = h * XGK[i];
        let s = f(c - dx)? + f(c + dx)?;
        k += WGK[i] * s;
        if i % 2 == 1 {
            g += WG[i / 2] * s;
        }
    }
    Ok((k * h, ((k - g) * h).abs()))
}

/// `∫_a^b f` with `a < b`. Panels start from a uniform split merged with
/// `breakpoints` (integrable singularities should sit on breakpoints).
/// Returns the value and the summed error estimate.
pub fn integrate<F>(f: F, a: f64, b: f64, breakpoints: &[f64], opts: QuadOptions) -> Result<(f64, f64)>
where
    F: Fn(f64) -> Result<f64>,
{
    let mut cuts: Vec<f64> = (0..=opts.initial_panels)
        .map(|i| a + (b - a) * i as f64 / opts.initial_panels as f64)
        .collect();
    cuts.extend(breakpoints.iter().copied().filter(|t| *t > a && *t < b));
    cuts.sort_by(f64::total_cmp);
    cuts.dedup_by(|x, y| (*x - *y).abs() <= 1e-14 * (b - a));

    let mut heap = BinaryHeap::new();
    let mut err = 0.0;
    for w in cuts.windows(2) {
        let (v, e) = gk15(&f, w[0], w[1])?;
        err += e;
        heap.push(Panel { lo: w[0], hi: w[1], depth: 0, value: v, error: e });
    }
    let mut capped: Vec<Panel> = Vec::new();
    while err > opts.tolerance && heap.len() + capped.len() < opts.max_panels {
        let Some(p) = heap.pop() else { break };
        if p.depth >= opts.max_depth {
            capped.push(p);
            continue;
        }
        let mid = 0.5 * (p.lo + p.hi);
        let (v1, e1) = gk15(&f, p.lo, mid)?;
        let (v2, e2) = gk15(&f, mid, p.hi)?;
        err += e1 + e2 - p.error;
        heap.push(Panel { lo: p.lo, hi: mid, depth: p.depth + 1, value: v1, error: e1 });
        heap.push(Panel { lo: mid, hi: p.hi, depth: p.depth + 1, value: v2, error: e2 });
    }
    let total: f64 = heap.iter().chain(&capped).map(|p| p.value).sum();
    let err_fresh: f64 = heap.iter().chain(&capped).map(|p| p.error).sum();
    if err_fresh > opts.tolerance {
        return Err(Error::QuadratureFailure { estimate: err_fresh });
    }
    Ok((total, err_fresh))
}
