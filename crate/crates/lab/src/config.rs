//! Scenario files: TOML text to a validated [`ScenarioConfig`].

use std::collections::BTreeMap;

use awlab_core::funcmodel::QProduct;
use awlab_core::growth::{alpha_gamma, alpha_gamma_closed_form, PhiFamily, SFamily};
use awlab_core::verify::{require_case, Case};
use awlab_core::{MeroFn, PhiFn, PointMult, Polynomial, RadiusGrid, SFn, ZeroPoleFn, C64};
use serde::{Deserialize, Serialize};

use crate::error::LabError;

/// A complex literal: a bare number or `[re, im]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Complex {
    Real(f64),
    Pair([f64; 2]),
}

impl Complex {
    pub fn value(self) -> C64 {
        match self {
            Complex::Real(x) => C64::new(x, 0.0),
            Complex::Pair([a, b]) => C64::new(a, b),
        }
    }

    pub fn label(self) -> String {
        match self {
            Complex::Real(x) => format!("{x}"),
            Complex::Pair([a, b]) => format!("{a}{b:+}i"),
        }
    }
}

impl From<f64> for Complex {
    fn from(x: f64) -> Self {
        Complex::Real(x)
    }
}

/// A zero or pole, optionally with multiplicity.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointSpec {
    Simple(Complex),
    Multiple { at: Complex, mult: u32 },
}

impl PointSpec {
    fn point(self) -> PointMult {
        match self {
            PointSpec::Simple(c) => PointMult::new(c.value(), 1),
            PointSpec::Multiple { at, mult } => PointMult::new(at.value(), mult),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum FunctionSpec {
    /// `Σ c_k x^k`, ascending.
    Polynomial { coeffs: Vec<Complex> },
    ZeroPole {
        #[serde(default = "one")]
        scale: Complex,
        #[serde(default)]
        zeros: Vec<PointSpec>,
        #[serde(default)]
        poles: Vec<PointSpec>,
    },
    /// `exp(Σ c_k x^k)`.
    ExpPoly { coeffs: Vec<Complex> },
    /// `scale · Π_{k<terms} (1 − x/q^{−k})`.
    QProduct {
        #[serde(default = "one")]
        scale: Complex,
        q: Complex,
        terms: u32,
    },
}

fn one() -> Complex {
    Complex::Real(1.0)
}

fn polynomial(coeffs: &[Complex]) -> Polynomial {
    Polynomial::new(coeffs.iter().map(|c| c.value()).collect())
}

impl FunctionSpec {
    pub fn build(&self) -> Result<MeroFn, String> {
        let f = match self {
            FunctionSpec::Polynomial { coeffs } => MeroFn::Polynomial(polynomial(coeffs)),
            FunctionSpec::ZeroPole { scale, zeros, poles } => MeroFn::ZeroPole(
                ZeroPoleFn::new(
                    scale.value(),
                    zeros.iter().map(|p| p.point()).collect(),
                    poles.iter().map(|p| p.point()).collect(),
                )
                .map_err(|e| e.to_string())?,
            ),
            FunctionSpec::ExpPoly { coeffs } => MeroFn::ExpPoly(polynomial(coeffs)),
            FunctionSpec::QProduct { scale, q, terms } => MeroFn::TruncatedQProduct(
                QProduct::new(scale.value(), q.value(), *terms).map_err(|e| e.to_string())?,
            ),
        };
        Ok(f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum PhiSpec {
    Log,
    LogPow { alpha: f64 },
    ExpLogPow { beta: f64 },
    Pow { beta: f64 },
}

impl PhiSpec {
    pub fn build(self) -> Result<PhiFn, String> {
        let fam = match self {
            PhiSpec::Log => PhiFamily::Log,
            PhiSpec::LogPow { alpha } => PhiFamily::LogPow(alpha),
            PhiSpec::ExpLogPow { beta } => PhiFamily::ExpLogPow(beta),
            PhiSpec::Pow { beta } => PhiFamily::Pow(beta),
        };
        PhiFn::new(fam).map_err(|e| e.to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum SSpec {
    RLogR,
    RPow { p: f64 },
    Linear { c: f64 },
}

impl SSpec {
    pub fn build(self) -> Result<SFn, String> {
        let fam = match self {
            SSpec::RLogR => SFamily::RLogR,
            SSpec::RPow { p } => SFamily::RPow(p),
            SSpec::Linear { c } => SFamily::LinearC(c),
        };
        SFn::new(fam).map_err(|e| e.to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    #[serde(default = "default_ratio")]
    pub ratio: f64,
    #[serde(default = "default_r_min")]
    pub r_min: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_max: Option<f64>,
}

fn default_ratio() -> f64 {
    1.25
}

fn default_r_min() -> f64 {
    1.0
}

impl GridSpec {
    /// The grid for `f`, capped at the validity radius of `f`.
    pub fn for_function(&self, f: &MeroFn) -> Result<RadiusGrid, String> {
        let auto = RadiusGrid::for_function(f).r_max;
        let r_max = self.r_max.unwrap_or(auto).min(f.validity_radius());
        RadiusGrid::new(self.ratio, self.r_min, r_max).map_err(|e| e.to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    /// `T(r,f) − T(r,1/f) = log|f(0)|` to `1e-5`.
    Jensen,
    /// Empirical growth parameters against their closed forms.
    AlphaGamma,
    LemmaA,
    LogdiffM,
    PointwiseLogdiff,
    Counting,
    TheoremOrder,
}

impl CheckKind {
    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Jensen => "jensen",
            CheckKind::AlphaGamma => "alpha_gamma",
            CheckKind::LemmaA => "lemma_a",
            CheckKind::LogdiffM => "logdiff_m",
            CheckKind::PointwiseLogdiff => "pointwise_logdiff",
            CheckKind::Counting => "counting",
            CheckKind::TheoremOrder => "theorem_order",
        }
    }

    pub fn needs_scales(self) -> bool {
        !matches!(self, CheckKind::Jensen | CheckKind::LemmaA)
    }

    pub fn needs_functions(self) -> bool {
        self != CheckKind::AlphaGamma
    }

    pub fn needs_q(self) -> bool {
        !matches!(self, CheckKind::Jensen | CheckKind::AlphaGamma)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RRuleSpec {
    BTimes,
    RLogR,
    Factor(f64),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckSpec {
    pub kind: CheckKind,
    /// Function names; all functions when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub functions: Option<Vec<String>>,
    /// `q` values; the scenario's `q_values` when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<Vec<Complex>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha1: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_rule: Option<RRuleSpec>,
    /// Fixes the Lemma A constant instead of fitting it.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c_override: Option<f64>,
    /// Equation orders for `theorem_order`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orders: Option<Vec<usize>>,
    /// Leading coefficient `a_n` for `theorem_order`, ascending.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub leading: Option<Vec<Complex>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridSpec>,
}

impl CheckSpec {
    pub fn new(kind: CheckKind) -> Self {
        Self {
            kind,
            functions: None,
            q: None,
            phi: None,
            s: None,
            epsilon: None,
            alpha1: None,
            r_rule: None,
            c_override: None,
            orders: None,
            leading: None,
            grid: None,
        }
    }

    pub fn leading_poly(&self) -> Option<Polynomial> {
        self.leading.as_deref().map(polynomial)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub workers: Option<usize>,
    pub q_values: Vec<Complex>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridSpec>,
    pub functions: BTreeMap<String, FunctionSpec>,
    #[serde(default)]
    pub phi: BTreeMap<String, PhiSpec>,
    #[serde(default)]
    pub s: BTreeMap<String, SSpec>,
    #[serde(default)]
    pub checks: Vec<CheckSpec>,
}

pub const DEFAULT_ALPHA1: f64 = 0.5;
pub const DEFAULT_ORDERS: [usize; 1] = [1];

/// Parses and validates scenario text.
pub fn parse_config(text: &str) -> Result<ScenarioConfig, LabError> {
    let cfg: ScenarioConfig = toml::from_str(text).map_err(|e| {
        let (line, column) = e.span().map_or((0, 0), |s| line_col(text, s.start));
        LabError::Parse { line, column, message: e.message().to_string() }
    })?;
    let violations = cfg.violations();
    if violations.is_empty() {
        Ok(cfg)
    } else {
        Err(LabError::Validation(violations))
    }
}

/// 1-based line and column of a byte offset.
fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

fn name_ok(name: &str) -> bool {
    !name.is_empty() && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
}

fn q_violation(label: &str, c: Complex) -> Option<String> {
    let m = c.value().norm();
    (!(m > 0.0 && m < 1.0)).then(|| format!("{label} = {}: 0<|q|<1 violated", c.label()))
}

impl ScenarioConfig {
    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("scenario serializes")
    }

    /// Every failed invariant, each labelled with where it occurs.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.q_values.is_empty() {
            out.push("q_values: at least one q is required".into());
        }
        for (i, &c) in self.q_values.iter().enumerate() {
            out.extend(q_violation(&format!("q_values[{i}]"), c));
        }
        if self.workers == Some(0) {
            out.push("workers: must be at least 1".into());
        }
        if self.functions.is_empty() {
            out.push("functions: at least one function is required".into());
        }
        if let Some(g) = &self.grid {
            grid_violations("grid", g, &mut out);
        }
        let mut built = BTreeMap::new();
        for (name, spec) in &self.functions {
            if !name_ok(name) {
                out.push(format!("functions.{name}: names may only use letters, digits, '_' and '-'"));
            }
            match spec.build() {
                Ok(f) => {
                    built.insert(name.as_str(), f);
                }
                Err(e) => out.push(format!("functions.{name}: {e}")),
            }
        }
        let mut phis = BTreeMap::new();
        for (name, spec) in &self.phi {
            match spec.build() {
                Ok(p) => {
                    phis.insert(name.as_str(), p);
                }
                Err(e) => out.push(format!("phi.{name}: {e}")),
            }
        }
        let mut ss = BTreeMap::new();
        for (name, spec) in &self.s {
            match spec.build() {
                Ok(s) => {
                    ss.insert(name.as_str(), s);
                }
                Err(e) => out.push(format!("s.{name}: {e}")),
            }
        }
        for (i, check) in self.checks.iter().enumerate() {
            let label = format!("checks[{i}] ({})", check.kind.name());
            self.check_violations(&label, check, &built, &phis, &ss, &mut out);
        }
        out
    }

    fn check_violations(
        &self,
        label: &str,
        check: &CheckSpec,
        fns: &BTreeMap<&str, MeroFn>,
        phis: &BTreeMap<&str, PhiFn>,
        ss: &BTreeMap<&str, SFn>,
        out: &mut Vec<String>,
    ) {
        let kind = check.kind;
        let mut err = |msg: String| out.push(format!("{label}: {msg}"));

        for (i, &c) in check.q.iter().flatten().enumerate() {
            if let Some(v) = q_violation(&format!("q[{i}]"), c) {
                err(v);
            }
        }
        if let Some(e) = check.epsilon {
            if !(e > 0.0 && e.is_finite()) {
                err(format!("epsilon = {e}: must be positive"));
            }
        }
        if let Some(g) = &check.grid {
            let mut v = Vec::new();
            grid_violations("grid", g, &mut v);
            v.into_iter().for_each(&mut err);
        }

        let unused = |field: &str, present: bool, err: &mut dyn FnMut(String)| {
            if present {
                err(format!("{field} is not used by this check"));
            }
        };
        if kind != CheckKind::LemmaA {
            unused("alpha1", check.alpha1.is_some(), &mut err);
            unused("r_rule", check.r_rule.is_some(), &mut err);
            unused("c_override", check.c_override.is_some(), &mut err);
        }
        if kind != CheckKind::TheoremOrder {
            unused("orders", check.orders.is_some(), &mut err);
            unused("leading", check.leading.is_some(), &mut err);
        }
        if !kind.needs_scales() {
            unused("phi", check.phi.is_some(), &mut err);
            unused("s", check.s.is_some(), &mut err);
        }
        if !kind.needs_functions() {
            unused("functions", check.functions.is_some(), &mut err);
        }
        if !kind.needs_q() {
            unused("q", check.q.is_some(), &mut err);
        }

        let mut targets: Vec<(&str, &MeroFn)> = Vec::new();
        if kind.needs_functions() {
            match &check.functions {
                Some(names) => {
                    if names.is_empty() {
                        err("functions: empty list".into());
                    }
                    for n in names {
                        match fns.get(n.as_str()) {
                            Some(f) => targets.push((n, f)),
                            None if self.functions.contains_key(n) => {}
                            None => err(format!("function '{n}' is not defined")),
                        }
                    }
                }
                None => targets.extend(fns.iter().map(|(n, f)| (*n, f))),
            }
        }

        let mut scales = None;
        if kind.needs_scales() {
            let phi = match &check.phi {
                None => {
                    err("phi: required".into());
                    None
                }
                Some(n) => {
                    let p = phis.get(n.as_str());
                    if p.is_none() && !self.phi.contains_key(n) {
                        err(format!("phi '{n}' is not defined"));
                    }
                    p
                }
            };
            let s = match &check.s {
                None => {
                    err("s: required".into());
                    None
                }
                Some(n) => {
                    let s = ss.get(n.as_str());
                    if s.is_none() && !self.s.contains_key(n) {
                        err(format!("s '{n}' is not defined"));
                    }
                    s
                }
            };
            if let (Some(p), Some(s)) = (phi, s) {
                scales = Some((p, s));
            }
        }

        if let Some((phi, s)) = scales {
            for msg in hypothesis_violations(kind, phi, s) {
                err(msg);
            }
        }

        match kind {
            CheckKind::Jensen => {
                for (n, f) in &targets {
                    if !(f.is_rational() || matches!(f, MeroFn::ExpPoly(_))) {
                        err(format!("function '{n}': jensen needs a rational or exp-poly function"));
                        continue;
                    }
                    match f.value_at(C64::new(0.0, 0.0)) {
                        Ok(v) if v.norm() > 0.0 && v.norm().is_finite() => {}
                        _ => err(format!("function '{n}': jensen needs f(0) finite and nonzero")),
                    }
                }
            }
            CheckKind::LemmaA => {
                let a1 = check.alpha1.unwrap_or(DEFAULT_ALPHA1);
                if !(a1 > 0.0 && a1 < 1.0) {
                    err(format!("alpha1 = {a1}: must lie in (0, 1)"));
                }
                if let Some(c) = check.c_override {
                    if !(c > 0.0 && c.is_finite()) {
                        err(format!("c_override = {c}: must be positive"));
                    }
                }
                if let Some(RRuleSpec::Factor(k)) = check.r_rule {
                    if !(k > 0.0 && k.is_finite()) {
                        err(format!("r_rule factor = {k}: must be positive"));
                    }
                }
                for (n, f) in &targets {
                    if f.is_constant() {
                        err(format!("function '{n}': lemma_a needs a non-constant function"));
                    }
                }
            }
            CheckKind::TheoremOrder => {
                let orders = check.orders.as_deref().unwrap_or(&DEFAULT_ORDERS);
                if orders.is_empty() || orders.contains(&0) {
                    err("orders: each equation order must be at least 1".into());
                }
                if check.leading_poly().is_some_and(|p| p.is_zero()) {
                    err("leading: a_n must not vanish".into());
                }
                for (n, f) in &targets {
                    if f.is_constant() {
                        err(format!("function '{n}': theorem_order needs a non-constant solution"));
                    }
                }
            }
            CheckKind::AlphaGamma | CheckKind::LogdiffM | CheckKind::PointwiseLogdiff | CheckKind::Counting => {
                if kind == CheckKind::Counting {
                    for (n, f) in &targets {
                        if f.is_constant() {
                            err(format!("function '{n}': counting needs a non-constant function"));
                        }
                    }
                }
            }
        }
    }
}

fn grid_violations(label: &str, g: &GridSpec, out: &mut Vec<String>) {
    if !(g.ratio > 1.0) {
        out.push(format!("{label}.ratio = {}: must exceed 1", g.ratio));
    }
    if !(g.r_min > 0.0) {
        out.push(format!("{label}.r_min = {}: must be positive", g.r_min));
    }
    if let Some(r) = g.r_max {
        if !(r > g.r_min) {
            out.push(format!("{label}.r_max = {r}: must exceed r_min"));
        }
    }
}

/// The hypothesis flags each check places on `(φ, s)`.
pub fn hypothesis_violations(kind: CheckKind, phi: &PhiFn, s: &SFn) -> Vec<String> {
    let mut out = Vec::new();
    let pair = format!("(phi = {}, s = {})", phi.name(), s.name());
    let case = Case::of(s);
    let case_ok = |out: &mut Vec<String>| {
        if let Err(e) = require_case(case, phi, s) {
            out.push(format!("{pair}: {e}"));
        }
    };
    let alpha_pos = |out: &mut Vec<String>| match alpha_gamma(phi, s) {
        Ok(p) if p.alpha > 0.0 => {}
        Ok(_) => out.push(format!("{pair}: growth parameter alpha must be positive")),
        Err(e) => out.push(format!("{pair}: {e}")),
    };
    let subadditive = |out: &mut Vec<String>| {
        // case (b) already reports it
        if case == Case::A && !phi.is_subadditive() {
            out.push(format!("{pair}: phi must be subadditive"));
        }
    };
    match kind {
        CheckKind::Jensen | CheckKind::LemmaA => {}
        CheckKind::AlphaGamma => {
            if alpha_gamma_closed_form(phi, s).is_none() {
                out.push(format!("{pair}: no closed form to compare against"));
            }
        }
        CheckKind::LogdiffM => case_ok(&mut out),
        CheckKind::PointwiseLogdiff => {
            if !phi.has_vanishing_log_ratio() {
                out.push(format!("{pair}: pointwise_logdiff needs limsup log phi(r)/log r = 0"));
            }
            case_ok(&mut out);
            alpha_pos(&mut out);
        }
        CheckKind::Counting => {
            subadditive(&mut out);
            case_ok(&mut out);
            alpha_pos(&mut out);
        }
        CheckKind::TheoremOrder => {
            subadditive(&mut out);
            case_ok(&mut out);
        }
    }
    out
}
