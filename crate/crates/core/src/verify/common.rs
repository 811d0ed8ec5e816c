use alloc::vec;
use alloc::vec::Vec;

use crate::awcore::{dq_closure, DqQuotient, QParam};
use crate::error::{Error, Result};
use crate::funcmodel::{MeroFn, PointMult, Polynomial, Target};
use crate::growth::{phi_order, OrderEstimate, PhiFamily, PhiFn, SFn, DEFAULT_R0};
use crate::math::{cabs, ln, powf, sqrt, C64};
use crate::nevanlinna::{singular_angles, NevanlinnaTable, RadiusGrid, LOG_CLAMP};

use super::verdict::Provenance;

/// Default `ε` in every bound.
pub const DEFAULT_EPSILON: f64 = 0.5;

/// Outer radius of check grids for rational input.
const RATIONAL_CHECK_MAX: f64 = 1e12;
/// Outer radius for truncated q-products, whose growth is logarithmic.
const QPRODUCT_CHECK_MAX: f64 = 1e8;
/// Outer radius for exponential and numeric families.
const TRANSCENDENTAL_CHECK_MAX: f64 = 1e3;
/// `|log f|` budget at the shifted points of exponential families.
const EXP_BUDGET: f64 = 350.0;
/// Outer radius of order grids for `D_q`-quotients of exponentials.
pub const EXP_QUOTIENT_MAX: f64 = 300.0;
/// Largest exponent `Re(P(y) − P(x))` allowed in those quotients.
const EXP_SHIFT_BUDGET: f64 = 650.0;

/// The two hypothesis sets on `s`: (a) `s(r)/r` unbounded with `s` convex and
/// differentiable, (b) `s(r)/r` bounded with `φ` subadditive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Case {
    A,
    B,
}

impl Case {
    /// The case whose growth condition on `s` matches.
    pub fn of(s: &SFn) -> Self {
        if s.s_over_r_unbounded() {
            Case::A
        } else {
            Case::B
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Case::A => "a",
            Case::B => "b",
        }
    }
}

/// Checks that `(φ, s)` satisfies the hypotheses of `case`.
pub fn require_case(case: Case, phi: &PhiFn, s: &SFn) -> Result<()> {
    match case {
        Case::A => {
            if !s.s_over_r_unbounded() {
                return Err(Error::HypothesisViolation(alloc::format!(
                    "case (a) needs limsup s(r)/r = ∞, but s = {} has bounded s(r)/r",
                    s.name()
                )));
            }
            if !(s.is_convex() && s.is_differentiable()) {
                return Err(Error::HypothesisViolation(alloc::format!(
                    "case (a) needs s convex and differentiable, s = {}",
                    s.name()
                )));
            }
        }
        Case::B => {
            if s.s_over_r_unbounded() {
                return Err(Error::HypothesisViolation(alloc::format!(
                    "case (b) needs limsup s(r)/r < ∞, but s = {} has unbounded s(r)/r",
                    s.name()
                )));
            }
            if !phi.is_subadditive() {
                return Err(Error::HypothesisViolation(alloc::format!(
                    "case (b) needs φ subadditive, φ = {}",
                    phi.name()
                )));
            }
        }
    }
    Ok(())
}

/// A `φ`-order used inside a bound, with where it came from.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RhoValue {
    pub value: f64,
    pub closed_form: bool,
}

impl RhoValue {
    pub fn describe(&self) -> alloc::string::String {
        let src = if self.closed_form { "closed-form" } else { "empirical" };
        alloc::format!("{:.6} ({src})", self.value)
    }
}

/// `ρ_φ(f)` from the family when it is known, else estimated from a table.
pub fn rho_for(f: &MeroFn, phi: &PhiFn) -> Result<RhoValue> {
    if let Some(v) = rho_closed_form(f, phi)? {
        return Ok(RhoValue { value: v, closed_form: true });
    }
    let table = NevanlinnaTable::build(f, RadiusGrid::for_function(f))?;
    let est = phi_order(&table, phi)?;
    Ok(RhoValue { value: est.estimate.max(0.0), closed_form: false })
}

fn rho_closed_form(f: &MeroFn, phi: &PhiFn) -> Result<Option<f64>> {
    if f.is_constant() {
        return Ok(Some(0.0));
    }
    let fam = phi.family();
    let v = match f {
        MeroFn::Polynomial(_) | MeroFn::ZeroPole(_) | MeroFn::PartialFraction(_) => match fam {
            PhiFamily::Log => 1.0,
            PhiFamily::LogPow(p) => 1.0 / p,
            PhiFamily::ExpLogPow(_) | PhiFamily::Pow(_) => 0.0,
        },
        MeroFn::ExpPoly(p) => {
            let d = p.degree() as f64;
            match fam {
                PhiFamily::Pow(b) => d / b,
                PhiFamily::ExpLogPow(b) if b == 1.0 => d,
                _ => {
                    return Err(Error::HypothesisViolation(alloc::format!(
                        "exp of a degree-{} polynomial has infinite {}-order",
                        p.degree(),
                        phi.name()
                    )))
                }
            }
        }
        MeroFn::TruncatedQProduct(_) => match fam {
            PhiFamily::Log => 2.0,
            PhiFamily::LogPow(p) => 2.0 / p,
            PhiFamily::ExpLogPow(_) | PhiFamily::Pow(_) => 0.0,
        },
        MeroFn::NumericDq(_) | MeroFn::DqQuotient(_) => return Ok(None),
    };
    Ok(Some(v))
}

/// Largest radius at which `D_q f` can be evaluated around the whole circle.
pub fn dq_safe_radius(f: &MeroFn, q: &QParam) -> f64 {
    let v = f.validity_radius();
    if v.is_finite() {
        // the check point sits near |q|^{-1/2} |x|
        v * sqrt(cabs(q.q())) * 0.9
    } else {
        v
    }
}

/// Default radii for a check: ratio 1.25 from `R₀` to a family-dependent
/// outer radius, at most the `D_q`-safe radius.
///
/// For `exp(P)` of degree `d` the outer radius keeps `|P|` at the shifted
/// points below a fixed budget, so quotients of values stay finite.
pub fn check_grid(f: &MeroFn, q: &QParam) -> Result<RadiusGrid> {
    let top = match f {
        MeroFn::Polynomial(_) | MeroFn::ZeroPole(_) | MeroFn::PartialFraction(_) => RATIONAL_CHECK_MAX,
        MeroFn::TruncatedQProduct(_) => QPRODUCT_CHECK_MAX,
        MeroFn::ExpPoly(p) if p.degree() > 0 => {
            let d = p.degree() as i32;
            let reach = powf(cabs(q.q()), -(d as f64) / 2.0) + 1.0;
            let r = powf(EXP_BUDGET / (cabs(p.leading()) * reach), 1.0 / d as f64);
            r.min(TRANSCENDENTAL_CHECK_MAX)
        }
        _ => TRANSCENDENTAL_CHECK_MAX,
    };
    RadiusGrid::new(1.25, DEFAULT_R0, top.min(dq_safe_radius(f, q)))
}

pub(crate) fn grid_or_default(grid: Option<RadiusGrid>, f: &MeroFn, q: &QParam) -> Result<Vec<f64>> {
    let g = match grid {
        Some(g) => g,
        None => check_grid(f, q)?,
    };
    let top = dq_safe_radius(f, q);
    Ok(g.radii().into_iter().filter(|&r| r <= top).collect())
}

/// `log |D_q f(x) / f(x)|`, exact for rational input.
pub(crate) struct LogDiff<'a> {
    f: &'a MeroFn,
    closure: Option<MeroFn>,
    quotient: Option<MeroFn>,
    singular: Vec<PointMult>,
}

impl<'a> LogDiff<'a> {
    pub fn new(f: &'a MeroFn, q: &QParam) -> Result<Self> {
        if f.is_constant() {
            return Err(Error::InvalidInput("D_q f vanishes identically for constant f".into()));
        }
        let mut singular = f.zeros_and_poles().unwrap_or_default();
        if f.is_rational() {
            let df = dq_closure(f, q)?;
            if let Ok(p) = df.a_points(Target::Infinity) {
                singular.extend(p);
            }
            Ok(Self { f, closure: Some(df), quotient: None, singular })
        } else {
            let w = vec![Polynomial::zero(), Polynomial::constant(C64::new(1.0, 0.0))];
            let quot = MeroFn::DqQuotient(DqQuotient::new(f.clone(), w, *q));
            Ok(Self { f, closure: None, quotient: Some(quot), singular })
        }
    }

    pub fn log_abs(&self, x: C64) -> Result<f64> {
        let v = match (&self.closure, &self.quotient) {
            (Some(df), _) => {
                let a = df.log_abs(x)?;
                let b = self.f.log_abs(x)?;
                if a.is_infinite() && b.is_infinite() {
                    LOG_CLAMP
                } else {
                    a - b
                }
            }
            (None, Some(quot)) => match quot.log_abs(x) {
                Err(Error::PoleHit { .. }) => f64::INFINITY,
                other => other?,
            },
            _ => unreachable!(),
        };
        Ok(if v.is_nan() { LOG_CLAMP } else { v })
    }

    pub fn log_plus(&self, x: C64) -> Result<f64> {
        Ok(self.log_abs(x)?.clamp(-LOG_CLAMP, LOG_CLAMP).max(0.0))
    }

    pub fn breakpoints(&self, r: f64) -> Vec<f64> {
        singular_angles(&self.singular, r)
    }
}

/// `φ(s(r))^{ρ+ε/2} / log(s(r)/r) + 1` for case (a), `φ(r)^{ρ+ε}` for case (b).
pub fn logdiff_rhs(case: Case, phi: &PhiFn, s: &SFn, rho: f64, epsilon: f64, r: f64) -> f64 {
    match case {
        Case::A => {
            let sr = s.value(r);
            powf(phi.raw(sr), rho + epsilon / 2.0) / ln(sr / r) + 1.0
        }
        Case::B => powf(phi.raw(r), rho + epsilon),
    }
}

pub(crate) fn provenance(phi: Option<&PhiFn>, s: Option<&SFn>, q: &QParam, epsilon: Option<f64>) -> Provenance {
    Provenance { phi: phi.map(|p| p.name()), s: s.map(|s| s.name()), q: Some(q.q()), epsilon }
}

pub(crate) fn check_epsilon(epsilon: f64) -> Result<()> {
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(Error::InvalidParameter(alloc::format!("ε must be positive, got {epsilon}")));
    }
    Ok(())
}

/// Order-estimation grid: the table default, refined to ratio 1.1 when it
/// spans fewer than three decades. `D_q`-quotients of `exp(P)` run out to
/// [`EXP_QUOTIENT_MAX`] where the shifted exponents allow it.
pub fn order_grid(f: &MeroFn) -> RadiusGrid {
    let mut g = RadiusGrid::for_function(f);
    let shifted = match f {
        MeroFn::DqQuotient(d) => Some((d.base(), d.max_depth(), d.q())),
        MeroFn::NumericDq(n) => Some((n.base(), n.depth(), n.q())),
        _ => None,
    };
    if let Some((MeroFn::ExpPoly(p), depth, q)) = shifted {
        if p.degree() > 0 {
            let d = p.degree() as f64;
            let reach = powf(cabs(q.q()), -(depth as f64) * d / 2.0);
            let top = powf(EXP_SHIFT_BUDGET / (cabs(p.leading()) * reach), 1.0 / d);
            g.r_max = top.min(EXP_QUOTIENT_MAX).max(g.r_max);
        }
    }
    if g.r_max / g.r_min < 1e3 {
        g.ratio = 1.1;
    }
    g
}

/// `ρ̂_φ(f)` from a characteristic table on `grid`; zero for constants and
/// for characteristics that do not change over the grid.
pub fn estimate_order_on(f: &MeroFn, phi: &PhiFn, grid: RadiusGrid) -> Result<OrderEstimate> {
    let zero = OrderEstimate { estimate: 0.0, dispersion: 0.0, windows: 0 };
    if f.is_constant() {
        return Ok(zero);
    }
    let table = NevanlinnaTable::build(f, grid)?;
    match phi_order(&table, phi) {
        Err(Error::DegenerateT) => Ok(zero),
        other => other,
    }
}

pub fn estimate_order(f: &MeroFn, phi: &PhiFn) -> Result<OrderEstimate> {
    estimate_order_on(f, phi, order_grid(f))
}
