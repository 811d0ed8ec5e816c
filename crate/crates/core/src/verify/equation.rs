use alloc::vec;
use alloc::vec::Vec;

use super::common::{estimate_order, order_grid, provenance, require_case, Case};
use super::verdict::{GridRow, Verdict};
use crate::awcore::{dq_iter, DqQuotient, NumericDq, QParam};
use crate::error::{Error, Result};
use crate::funcmodel::{roots, MeroFn, Polynomial, ZeroPoleFn};
use crate::growth::{alpha_gamma, PhiFn, SFn};
use crate::math::{cabs, polar, powi, C64};

/// Relative residual allowed at the probe points.
pub const RESIDUAL_TOLERANCE: f64 = 1e-9;
/// Number of residual probes.
pub const PROBES: usize = 50;
/// Slack between the order bound and the estimated order of the solution.
pub const THEOREM_TOLERANCE: f64 = 0.15;

/// `Σ_{j=0}^{n} a_j(x) D_q^j f(x) = rhs(x)` with `rhs ≡ 0` when absent.
#[derive(Clone, Debug, PartialEq)]
pub struct EquationSpec {
    pub n: usize,
    /// `a_0, …, a_n`.
    pub coefficients: Vec<MeroFn>,
    pub rhs: Option<MeroFn>,
    pub q: QParam,
}

impl EquationSpec {
    pub fn is_homogeneous(&self) -> bool {
        self.rhs.is_none()
    }

    /// Largest relative residual `|Σ a_j D_q^j f − rhs| / (Σ |a_j D_q^j f| + |rhs|)`
    /// over the probe points, with `D_q^j f` from nested divided differences.
    pub fn residual(&self, f: &MeroFn) -> Result<f64> {
        let deepest = NumericDq::new(f.clone(), self.n as u32, self.q).validity_radius();
        let top = (0.5 * deepest).min(8.0);
        let lo = 2.0_f64.min(0.5 * top);
        let mut worst: f64 = 0.0;
        let mut used = 0;
        for k in 0..PROBES {
            let r = lo + (top - lo) * k as f64 / (PROBES - 1) as f64;
            let x = polar(r, 2.399_963_229_728_653 * k as f64 + 0.3);
            match self.residual_at(f, x) {
                Ok(v) => {
                    worst = worst.max(v);
                    used += 1;
                }
                Err(Error::PoleHit { .. }) => {}
                Err(e) => return Err(e),
            }
        }
        if used < PROBES / 2 {
            return Err(Error::InsufficientData(alloc::format!("only {used} usable residual probes")));
        }
        Ok(worst)
    }

    fn residual_at(&self, f: &MeroFn, x: C64) -> Result<f64> {
        let mut total = C64::new(0.0, 0.0);
        let mut scale = 0.0;
        for (j, a) in self.coefficients.iter().enumerate() {
            let d = if j == 0 { f.value_at(x)? } else { NumericDq::new(f.clone(), j as u32, self.q).eval(x)? };
            let term = a.value_at(x)? * d;
            total += term;
            scale += cabs(term);
        }
        if let Some(rhs) = &self.rhs {
            let v = rhs.value_at(x)?;
            total -= v;
            scale += cabs(v);
        }
        Ok(if scale > 0.0 { cabs(total) / scale } else { cabs(total) })
    }
}

/// Coefficients prescribed when manufacturing an equation.
#[derive(Clone, Debug, PartialEq)]
pub struct EquationOptions {
    /// `a_n`.
    pub leading: Polynomial,
    /// `a_1, …, a_{n−1}`; missing entries default to the constant 1.
    pub middle: Vec<Polynomial>,
    /// Right-hand side of a non-homogeneous equation (rational `f` only).
    pub rhs: Option<Polynomial>,
}

impl Default for EquationOptions {
    fn default() -> Self {
        Self { leading: one(), middle: Vec::new(), rhs: None }
    }
}

fn one() -> Polynomial {
    Polynomial::constant(C64::new(1.0, 0.0))
}

/// `num/den` with polynomial arithmetic.
struct Fraction {
    num: Polynomial,
    den: Polynomial,
}

impl Fraction {
    fn of(f: &MeroFn) -> Option<Self> {
        let pf = f.as_partial_fraction()?;
        Some(Self { num: pf.numerator().clone(), den: pf.denominator() })
    }

    fn add(&self, o: &Self) -> Self {
        Self { num: &(&self.num * &o.den) + &(&o.num * &self.den), den: &self.den * &o.den }
    }
}

/// Equation of order `n` with `a_n = 1`, `a_1 = … = a_{n−1} = 1`, solved for
/// `a_0` so that `f` is a solution.
pub fn manufacture_equation(f: &MeroFn, n: usize, q: &QParam) -> Result<EquationSpec> {
    manufacture_equation_with(f, n, q, &EquationOptions::default())
}

/// As [`manufacture_equation`] with prescribed `a_1, …, a_n` and right-hand side.
///
/// `a_0 = (rhs − Σ_{j≥1} a_j D_q^j f) / f`: an exact zero–pole function for
/// rational `f`, a [`DqQuotient`] otherwise.
pub fn manufacture_equation_with(f: &MeroFn, n: usize, q: &QParam, opts: &EquationOptions) -> Result<EquationSpec> {
    if n == 0 {
        return Err(Error::InvalidParameter("equation order must be at least 1".into()));
    }
    if f.is_constant() {
        return Err(Error::InvalidInput("D_q f vanishes identically for constant f".into()));
    }
    if opts.leading.is_zero() {
        return Err(Error::InvalidInput("leading coefficient a_n must not vanish".into()));
    }
    let weights: Vec<Polynomial> = (1..=n)
        .map(|j| if j == n { opts.leading.clone() } else { opts.middle.get(j - 1).cloned().unwrap_or_else(one) })
        .collect();

    let a0 = if f.is_rational() {
        rational_a0(f, n, q, &weights, opts.rhs.as_ref())?
    } else {
        if opts.rhs.is_some() {
            return Err(Error::Unsupported("a right-hand side needs a rational solution".into()));
        }
        let mut w = vec![Polynomial::zero()];
        w.extend(weights.iter().map(|p| p.scale(C64::new(-1.0, 0.0))));
        MeroFn::DqQuotient(DqQuotient::new(f.clone(), w, *q))
    };

    let mut coefficients = vec![a0];
    coefficients.extend(weights.into_iter().map(MeroFn::Polynomial));
    let spec = EquationSpec { n, coefficients, rhs: opts.rhs.clone().map(MeroFn::Polynomial), q: *q };
    let residual = spec.residual(f)?;
    if !(residual <= RESIDUAL_TOLERANCE) {
        return Err(Error::EquationResidual { residual, tolerance: RESIDUAL_TOLERANCE });
    }
    Ok(spec)
}

fn rational_a0(f: &MeroFn, n: usize, q: &QParam, weights: &[Polynomial], rhs: Option<&Polynomial>) -> Result<MeroFn> {
    let ff = Fraction::of(f).expect("rational input");
    let mut sum = Fraction { num: Polynomial::zero(), den: one() };
    let mut g = f.clone();
    for (j, w) in weights.iter().enumerate() {
        g = dq_iter(&g, 1, q)?;
        let dj = Fraction::of(&g).expect("closure of rational input is rational");
        if j + 1 < n && dj.num.is_zero() {
            return Err(Error::SolutionDegenerate(alloc::format!("D_q^{} f vanishes identically", j + 1)));
        }
        sum = sum.add(&Fraction { num: w * &dj.num, den: dj.den });
    }
    let top = match rhs {
        Some(r) => &(r * &sum.den) - &sum.num,
        None => sum.num.scale(C64::new(-1.0, 0.0)),
    };
    let num = &top * &ff.den;
    let den = &sum.den * &ff.num;
    if num.is_zero() {
        return Err(Error::SolutionDegenerate("a_0 vanishes identically".into()));
    }
    let mut zeros = if num.degree() > 0 { roots(&num)? } else { Vec::new() };
    let mut poles = if den.degree() > 0 { roots(&den)? } else { Vec::new() };
    crate::funcmodel::cancel(&mut zeros, &mut poles);
    if zeros.is_empty() && poles.is_empty() {
        return Err(Error::SolutionDegenerate("a_0 is constant, so no order gap can be built".into()));
    }
    Ok(MeroFn::ZeroPole(ZeroPoleFn::new(num.leading() / den.leading(), zeros, poles)?))
}

/// Compares `ρ̂_φ(f)` with the lower bound of the growth theorems.
///
/// Homogeneous, case (a): `α^n ρ(a_0)`, plus `α^n γ` when every coefficient
/// is entire. Homogeneous, case (b), and non-homogeneous: `α^{n−1} ρ(a_0)`.
/// The single row is `(r_max, bound, ρ̂(f) + tolerance)` with constant 1.
pub fn check_theorem_order(eq: &EquationSpec, f: &MeroFn, phi: &PhiFn, s: &SFn) -> Result<Verdict> {
    if f.is_constant() {
        return Err(Error::InvalidInput("the growth bound concerns non-constant solutions".into()));
    }
    if !phi.is_subadditive() {
        return Err(Error::HypothesisViolation(alloc::format!("{} is not subadditive", phi.name())));
    }
    let case = Case::of(s);
    require_case(case, phi, s)?;
    let params = alpha_gamma(phi, s)?;

    let a0 = estimate_order(&eq.coefficients[0], phi)?;
    let mut others = Vec::new();
    for a in eq.coefficients[1..].iter().chain(eq.rhs.iter()) {
        others.push(estimate_order(a, phi)?);
    }
    let top = others
        .iter()
        .copied()
        .max_by(|a, b| a.estimate.total_cmp(&b.estimate))
        .expect("at least a_n");
    let margin = a0.dispersion + top.dispersion;
    if !(a0.estimate > top.estimate + margin) {
        return Err(Error::HypothesisViolation(alloc::format!(
            "ρ̂(a_0) = {:.4} does not dominate max ρ̂(a_j) = {:.4} by the dispersion margin {:.4}",
            a0.estimate,
            top.estimate,
            margin
        )));
    }

    let n = eq.n as i32;
    let entire = eq.coefficients.iter().all(MeroFn::is_entire);
    let (bound, variant) = match (eq.is_homogeneous(), case) {
        (true, Case::A) if entire => {
            (powi(params.alpha, n) * (a0.estimate + params.gamma), "homogeneous (a), entire coefficients")
        }
        (true, Case::A) => (powi(params.alpha, n) * a0.estimate, "homogeneous (a)"),
        (true, Case::B) => (powi(params.alpha, n - 1) * a0.estimate, "homogeneous (b)"),
        (false, _) => (powi(params.alpha, n - 1) * a0.estimate, "non-homogeneous"),
    };
    let rf = estimate_order(f, phi)?;
    let r = order_grid(f).r_max;
    Ok(Verdict::fixed("theorem_order", vec![GridRow { r, lhs: bound, rhs: rf.estimate + THEOREM_TOLERANCE }], 1.0)
        .with_hypothesis("case", case.label())
        .with_hypothesis("variant", variant)
        .with_hypothesis("n", alloc::format!("{}", eq.n))
        .with_hypothesis("alpha", alloc::format!("{}", params.alpha))
        .with_hypothesis("gamma", alloc::format!("{}", params.gamma))
        .with_hypothesis("rho_hat_a0", alloc::format!("{:.6}", a0.estimate))
        .with_hypothesis("rho_hat_aj_max", alloc::format!("{:.6}", top.estimate))
        .with_hypothesis("rho_hat_f", alloc::format!("{:.6}", rf.estimate))
        .with_hypothesis("bound", alloc::format!("{bound:.6}"))
        .with_hypothesis("tolerance", alloc::format!("{THEOREM_TOLERANCE}"))
        .with_provenance(provenance(Some(phi), Some(s), &eq.q, None)))
}
