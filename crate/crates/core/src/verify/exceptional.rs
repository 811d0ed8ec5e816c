use alloc::vec::Vec;

use super::common::{check_epsilon, grid_or_default, logdiff_rhs, provenance, require_case, rho_for, Case, LogDiff};
use super::verdict::{GridRow, Verdict};
use crate::awcore::QParam;
use crate::error::{Error, Result};
use crate::funcmodel::MeroFn;
use crate::growth::{alpha_gamma, PhiFn, SFn};
use crate::math::{cabs, ln, polar, powf, TAU};
use crate::nevanlinna::RadiusGrid;

/// `δ` in the tail estimate `log((1+u)/(1−u)) ≤ 2u/(1−δ)` for `u ≤ δ`.
const DELTA: f64 = 0.5;
/// Angles sampled on each non-excluded radius.
pub const POINTWISE_ANGLES: usize = 32;

/// The union of the intervals `E_n` around the moduli `|d_n|`, where
/// `{d_n} = {c_n} ∪ {q^{1/2} c_n} ∪ {q^{−1/2} c_n}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExceptionalSet {
    /// `[|d| − h, |d| + h]` with `h = |d| / φ(|d|+3)^{(ρ+ε)/α}`, one per `d`, sorted.
    pub intervals: Vec<(f64, f64)>,
    /// Sorted `|d_n|`, with multiplicity.
    pub d_moduli: Vec<f64>,
    pub phi: PhiFn,
    pub rho: f64,
    pub epsilon: f64,
    pub alpha: f64,
}

impl ExceptionalSet {
    /// `(ρ + ε)/α`.
    pub fn exponent(&self) -> f64 {
        (self.rho + self.epsilon) / self.alpha
    }

    fn half_width(&self, d: f64) -> f64 {
        d / powf(self.phi.raw(d + 3.0), self.exponent())
    }

    /// Overlapping intervals joined.
    pub fn merged(&self) -> Vec<(f64, f64)> {
        let mut out: Vec<(f64, f64)> = Vec::new();
        for &(lo, hi) in &self.intervals {
            match out.last_mut() {
                Some(last) if lo <= last.1 => last.1 = last.1.max(hi),
                _ => out.push((lo, hi)),
            }
        }
        out
    }

    pub fn contains(&self, r: f64) -> bool {
        self.intervals.iter().any(|&(lo, hi)| lo <= r && r <= hi)
    }

    /// `∫_{E ∩ [1, cutoff]} dt/t`.
    pub fn log_measure(&self, cutoff: f64) -> f64 {
        log_measure(self, cutoff)
    }

    /// Upper bound for the log-measure of the whole set:
    /// `log ρ_N + C_δ Σ_{n≥N} φ(|d_n|)^{−(ρ+ε)/α}`, where `N` is the first
    /// index with `φ(|d_N|)^{−(ρ+ε)/α} ≤ δ`, `C_δ = 2/(1−δ)`, and `ρ_N` is
    /// the larger of `|d_N|` and the right ends of the earlier intervals.
    pub fn tail_bound(&self) -> f64 {
        let e = self.exponent();
        let u = |d: f64| powf(self.phi.raw(d + 3.0), -e);
        let n = self.d_moduli.iter().position(|&d| u(d) <= DELTA);
        let Some(n) = n else {
            // every interval is wide; bound by the last right end
            return self.intervals.iter().map(|i| ln(i.1.max(1.0))).fold(0.0, f64::max);
        };
        let pivot = self.intervals[..n].iter().map(|i| i.1).fold(self.d_moduli[n], f64::max);
        let c_delta = 2.0 / (1.0 - DELTA);
        ln(pivot.max(1.0)) + c_delta * self.d_moduli[n..].iter().map(|&d| u(d)).sum::<f64>()
    }
}

/// Intervals around the shifted zero and pole moduli of `f`.
pub fn build_exceptional_set(
    f: &MeroFn,
    q: &QParam,
    phi: &PhiFn,
    rho: f64,
    epsilon: f64,
    alpha: f64,
) -> Result<ExceptionalSet> {
    check_epsilon(epsilon)?;
    if !(alpha > 0.0) {
        return Err(Error::AlphaZero);
    }
    if !(rho >= 0.0 && rho.is_finite()) {
        return Err(Error::InvalidParameter(alloc::format!("ρ must be finite and nonnegative, got {rho}")));
    }
    let cn = f.zeros_and_poles()?;
    let mut d_moduli = Vec::with_capacity(3 * cn.len());
    let (sh, smh) = (cabs(q.q_half()), cabs(q.q_minus_half()));
    for p in &cn {
        let m = cabs(p.at);
        if m == 0.0 {
            continue;
        }
        for d in [m, sh * m, smh * m] {
            d_moduli.extend(core::iter::repeat(d).take(p.mult as usize));
        }
    }
    d_moduli.sort_by(f64::total_cmp);
    let mut set = ExceptionalSet { intervals: Vec::new(), d_moduli, phi: *phi, rho, epsilon, alpha };
    set.intervals = set
        .d_moduli
        .iter()
        .map(|&d| {
            let h = set.half_width(d);
            (d - h, d + h)
        })
        .collect();
    set.intervals.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(set)
}

/// `Σ log(hi/lo)` over the merged intervals clipped to `[1, cutoff]`.
pub fn log_measure(set: &ExceptionalSet, cutoff: f64) -> f64 {
    set.merged()
        .into_iter()
        .map(|(lo, hi)| {
            let (lo, hi) = (lo.max(1.0), hi.min(cutoff));
            if hi > lo {
                ln(hi / lo)
            } else {
                0.0
            }
        })
        .sum()
}

/// Pointwise bound and the separation estimate outside the exceptional set.
#[derive(Clone, Debug, PartialEq)]
pub struct PointwiseReport {
    /// `log⁺|D_q f/f| = O(rhs)` on non-excluded radii (maximum over angles).
    pub bound: Verdict,
    /// `|x|/(2φ(|x|+3)^{(ρ+ε)/α}) ≤ min_n |x − d_n|` at every sampled `x`.
    pub separation: Verdict,
    pub exceptional: ExceptionalSet,
}

/// Samples `log⁺|D_q f/f|` on radii outside the exceptional set.
pub fn check_pointwise_logdiff(
    f: &MeroFn,
    q: &QParam,
    phi: &PhiFn,
    s: &SFn,
    epsilon: f64,
    case: Case,
    grid: Option<RadiusGrid>,
) -> Result<PointwiseReport> {
    check_epsilon(epsilon)?;
    if !phi.has_vanishing_log_ratio() {
        return Err(Error::HypothesisViolation(alloc::format!(
            "{} fails limsup log φ(r)/log r = 0",
            phi.name()
        )));
    }
    require_case(case, phi, s)?;
    let params = alpha_gamma(phi, s)?;
    if !(params.alpha > 0.0) {
        return Err(Error::AlphaZero);
    }
    let ld = LogDiff::new(f, q)?;
    let rho = rho_for(f, phi)?;
    let set = build_exceptional_set(f, q, phi, rho.value, epsilon, params.alpha)?;
    let (qh, qmh) = (q.q_half(), q.q_minus_half());
    let d_points: Vec<_> = f
        .zeros_and_poles()?
        .into_iter()
        .flat_map(|p| [p.at, qh * p.at, qmh * p.at])
        .filter(|d| cabs(*d) > 0.0)
        .collect();

    let mut bound_rows = Vec::new();
    let mut sep_rows = Vec::new();
    let mut excluded = 0usize;
    for r in grid_or_default(grid, f, q)? {
        if r < phi.r0() {
            continue;
        }
        if set.contains(r) {
            excluded += 1;
            continue;
        }
        let sep = r / (2.0 * powf(phi.raw(r + 3.0), set.exponent()));
        let mut worst_lhs: f64 = 0.0;
        let mut min_dist = f64::INFINITY;
        for k in 0..POINTWISE_ANGLES {
            let x = polar(r, TAU * (k as f64 + 0.5) / POINTWISE_ANGLES as f64);
            worst_lhs = worst_lhs.max(ld.log_plus(x)?);
            for d in &d_points {
                min_dist = min_dist.min(cabs(x - *d));
            }
        }
        bound_rows.push(GridRow { r, lhs: worst_lhs, rhs: logdiff_rhs(case, phi, s, rho.value, epsilon, r) });
        if min_dist.is_finite() {
            sep_rows.push(GridRow { r, lhs: sep, rhs: min_dist });
        }
    }
    let prov = provenance(Some(phi), Some(s), q, Some(epsilon));
    let bound = Verdict::big_o("pointwise_logdiff", bound_rows)
        .with_hypothesis("case", case.label())
        .with_hypothesis("rho_phi", rho.describe())
        .with_hypothesis("alpha", alloc::format!("{}", params.alpha))
        .with_hypothesis("log_phi_over_log_r", "vanishes")
        .with_note(alloc::format!("{excluded} radii inside the exceptional set skipped"))
        .with_provenance(prov.clone());
    let separation = if d_points.is_empty() {
        Verdict::fixed("separation", Vec::from([GridRow { r: phi.r0(), lhs: 0.0, rhs: 1.0 }]), 1.0)
            .with_note("no zeros or poles; separation is vacuous")
    } else {
        Verdict::fixed("separation", sep_rows, 1.0)
    }
    .with_hypothesis("exponent", alloc::format!("{}", set.exponent()))
    .with_provenance(prov);
    Ok(PointwiseReport { bound, separation, exceptional: set })
}
