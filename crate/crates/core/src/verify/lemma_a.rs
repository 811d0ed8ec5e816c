use alloc::vec::Vec;

use super::common::{provenance, LogDiff};
use super::verdict::{GridRow, Verdict};
use crate::awcore::{z_of_x, QParam};
use crate::error::{Error, Result};
use crate::funcmodel::{MeroFn, PointMult, Target};
use crate::math::{cabs, ln, polar, powf, powi, C64, LN_2, TAU};
use crate::nevanlinna::{count_n, prox_m};

/// Summand denominators below this are treated as hits on a singularity.
pub const SINGULAR_GUARD: f64 = 1e-14;

/// The terms of the logarithmic-difference estimate at one point.
///
/// `s1`, `s2`, `s3` are the three singular sums including their prefactor
/// `2|q^{±1/2} − 1|^{α₁}|x|^{α₁}`, but without the constant `C_{α₁}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LemmaATerms {
    pub m_term: f64,
    pub n_term: f64,
    pub s1: f64,
    pub s2: f64,
    pub s3: f64,
}

impl LemmaATerms {
    /// Everything that does not scale with `C`.
    pub fn base(&self) -> f64 {
        self.m_term + self.n_term + LN_2
    }

    pub fn singular(&self) -> f64 {
        self.s1 + self.s2 + self.s3
    }

    pub fn total(&self, c: f64) -> f64 {
        self.base() + c * self.singular()
    }
}

fn check_alpha1(alpha1: f64) -> Result<()> {
    if !(alpha1 > 0.0 && alpha1 < 1.0) {
        return Err(Error::InvalidParameter(alloc::format!("α₁ must lie in (0, 1), got {alpha1}")));
    }
    Ok(())
}

fn singular_sum(points: &[PointMult], alpha1: f64, den: impl Fn(C64) -> C64) -> Result<f64> {
    let mut s = 0.0;
    for p in points {
        let d = cabs(den(p.at));
        if d < SINGULAR_GUARD {
            return Err(Error::SingularHit { denominator: d });
        }
        s += p.mult as f64 * powf(d, -alpha1);
    }
    Ok(s)
}

/// Term-by-term evaluation of the right-hand side at `x` with radius `R`.
pub fn lemma_a_terms(f: &MeroFn, x: C64, big_r: f64, alpha1: f64, q: &QParam) -> Result<LemmaATerms> {
    check_alpha1(alpha1)?;
    let ax = cabs(x);
    let b = q.spread();
    if !(b * ax < big_r) || !big_r.is_finite() {
        return Err(Error::PreconditionRadius(alloc::format!(
            "need 2(|q^1/2|+|q^-1/2|)|x| = {:.6e} < R = {big_r:.6e}",
            b * ax
        )));
    }
    let one = C64::new(1.0, 0.0);
    let (qh, qmh) = (q.q_half(), q.q_minus_half());
    let a = cabs(qh - one) + cabs(qmh - one);

    let m = prox_m(f, big_r, Target::Infinity)? + prox_m(f, big_r, Target::ZERO)?;
    let n = (count_n(f, big_r, Target::Infinity)? + count_n(f, big_r, Target::ZERO)?) as f64;
    let m_term = 4.0 * big_r * a * ax / ((big_r - ax) * (big_r - b * ax)) * m;
    let n_term = 2.0 * a * ax * (1.0 / (big_r - ax) + 1.0 / (big_r - b * ax)) * n;

    let cn: Vec<PointMult> = f.zeros_and_poles()?.into_iter().filter(|p| cabs(p.at) < big_r).collect();
    let xa = powf(ax, alpha1);
    let (ah, amh) = (powf(cabs(qh - one), alpha1), powf(cabs(qmh - one), alpha1));
    let zi = one / z_of_x(x);
    let cq = q.c_q();
    let s1 = 2.0 * (ah + amh) * xa * singular_sum(&cn, alpha1, |c| x - c)?;
    let s2 = 2.0 * amh * xa * singular_sum(&cn, alpha1, |c| x + cq * qmh * zi - qmh * c)?;
    let s3 = 2.0 * ah * xa * singular_sum(&cn, alpha1, |c| x - cq * qh * zi - qh * c)?;
    Ok(LemmaATerms { m_term, n_term, s1, s2, s3 })
}

/// The full right-hand side with constant `C_{α₁} = c`.
pub fn lemma_a_rhs(f: &MeroFn, x: C64, big_r: f64, alpha1: f64, c: f64, q: &QParam) -> Result<f64> {
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::InvalidParameter(alloc::format!("C must be positive, got {c}")));
    }
    Ok(lemma_a_terms(f, x, big_r, alpha1, q)?.total(c))
}

/// How the radius `R` is chosen from `x`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RRule {
    /// `R = B|x|`.
    BTimes,
    /// `R = |x| log |x|`.
    RLogR,
    /// `R = k|x|`.
    Factor(f64),
}

impl RRule {
    pub fn radius(&self, ax: f64, q: &QParam) -> f64 {
        match *self {
            RRule::BTimes => q.b() as f64 * ax,
            RRule::RLogR => ax * ln(ax),
            RRule::Factor(k) => k * ax,
        }
    }

    pub fn name(&self) -> alloc::string::String {
        match self {
            RRule::BTimes => "B|x|".into(),
            RRule::RLogR => "|x| log|x|".into(),
            RRule::Factor(k) => alloc::format!("{k}|x|"),
        }
    }
}

/// Radii `5 · 1.25^k ≤ 50`, each with 16 equally spaced angles plus the
/// arguments of the zeros and poles of `f`.
pub fn default_lemma_a_grid(f: &MeroFn) -> Vec<C64> {
    let mut angles: Vec<f64> = (0..16).map(|k| TAU * (k as f64 + 0.5) / 16.0).collect();
    if let Ok(pts) = f.zeros_and_poles() {
        for p in pts {
            if cabs(p.at) > 0.0 {
                angles.push(libm::atan2(p.at.im, p.at.re));
            }
        }
    }
    let mut out = Vec::new();
    let mut k = 0;
    loop {
        let r = 5.0 * powi(1.25, k);
        if r > 50.0 * (1.0 + 1e-12) {
            break;
        }
        out.extend(angles.iter().map(|&t| polar(r, t)));
        k += 1;
    }
    out
}

/// Fits the smallest `C_{α₁}` for which the estimate holds over the grid.
///
/// Rows are `(|x|, log⁺|D_q f/f| − base, singular)`, so the fitted constant
/// is the smallest `C` with `log⁺|D_q f/f| ≤ base + C · singular`. With
/// `c_override` the constant is fixed instead of fitted.
pub fn check_lemma_a(
    f: &MeroFn,
    q: &QParam,
    alpha1: f64,
    x_grid: Option<&[C64]>,
    rule: RRule,
    c_override: Option<f64>,
) -> Result<Verdict> {
    check_alpha1(alpha1)?;
    let ld = LogDiff::new(f, q)?;
    let default;
    let xs = match x_grid {
        Some(g) => g,
        None => {
            default = default_lemma_a_grid(f);
            &default[..]
        }
    };
    let mut rows = Vec::with_capacity(xs.len());
    let mut skipped = 0usize;
    for &x in xs {
        let ax = cabs(x);
        let terms = match lemma_a_terms(f, x, rule.radius(ax, q), alpha1, q) {
            Ok(t) => t,
            Err(Error::SingularHit { .. }) => {
                skipped += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        let lhs = ld.log_plus(x)?;
        rows.push(GridRow { r: ax, lhs: lhs - terms.base(), rhs: terms.singular() });
    }
    let name = "lemma_a";
    let v = match c_override {
        Some(c) => Verdict::fixed(name, rows, c),
        None => Verdict::minimal_constant(name, rows),
    };
    let mut v = v
        .with_hypothesis("alpha1", alloc::format!("{alpha1}"))
        .with_hypothesis("R", rule.name())
        .with_hypothesis("q_radius", "2(|q^1/2|+|q^-1/2|)|x| < R")
        .with_hypothesis("branch", "z_of_x")
        .with_provenance(provenance(None, None, q, None));
    if c_override.is_some() {
        v = v.with_note("constant fixed by override");
    }
    if skipped > 0 {
        v = v.with_note(alloc::format!("{skipped} grid points skipped on a singular summand"));
    }
    Ok(v)
}
