//! Expands a scenario into jobs and runs them on a rayon pool.
//!
//! Jobs are built in a fixed order and `collect` keeps that order, so the
//! report does not depend on the worker count.

use std::collections::BTreeMap;

use awlab_core::growth::{alpha_gamma_closed_form, alpha_gamma_empirical};
use awlab_core::nevanlinna::characteristic_t;
use awlab_core::verify::{
    check_counting_bounds, check_lemma_a, check_logdiff_m, check_pointwise_logdiff, check_theorem_order,
    manufacture_equation_with, Case, EquationOptions, GridRow, RRule, DEFAULT_EPSILON,
};
use awlab_core::{MeroFn, NevanlinnaTable, PhiFn, QParam, RadiusGrid, SFn, Verdict, C64};
use rayon::prelude::*;

use crate::config::{CheckKind, CheckSpec, Complex, GridSpec, RRuleSpec, ScenarioConfig, DEFAULT_ALPHA1, DEFAULT_ORDERS};
use crate::error::LabError;

/// Largest `|T(r,f) − T(r,1/f) − log|f(0)||` accepted by `jensen`.
pub const JENSEN_TOLERANCE: f64 = 1e-5;
/// Largest deviation of empirical growth parameters from their closed forms.
pub const ALPHA_GAMMA_TOLERANCE: f64 = 5e-3;

/// Angles per radius on Lemma A grids built from a [`GridSpec`].
const LEMMA_ANGLES: usize = 16;

/// The scenario with every name resolved.
pub struct Resolved {
    pub config: ScenarioConfig,
    pub functions: BTreeMap<String, MeroFn>,
    pub phi: BTreeMap<String, PhiFn>,
    pub s: BTreeMap<String, SFn>,
}

impl Resolved {
    pub fn new(config: ScenarioConfig) -> Result<Self, LabError> {
        let v = config.violations();
        if !v.is_empty() {
            return Err(LabError::Validation(v));
        }
        let functions = config.functions.iter().map(|(n, f)| (n.clone(), f.build().expect("validated"))).collect();
        let phi = config.phi.iter().map(|(n, p)| (n.clone(), p.build().expect("validated"))).collect();
        let s = config.s.iter().map(|(n, p)| (n.clone(), p.build().expect("validated"))).collect();
        Ok(Self { config, functions, phi, s })
    }

    pub fn function(&self, name: &str) -> Result<&MeroFn, LabError> {
        self.functions.get(name).ok_or_else(|| LabError::Unknown { kind: "function", name: name.into() })
    }

    pub fn phi_fn(&self, name: &str) -> Result<&PhiFn, LabError> {
        self.phi.get(name).ok_or_else(|| LabError::Unknown { kind: "phi", name: name.into() })
    }

    /// The table grid for function `name`.
    pub fn table_grid(&self, name: &str) -> Result<RadiusGrid, LabError> {
        let f = self.function(name)?;
        match self.config.grid {
            Some(g) => g.for_function(f).map_err(|e| LabError::Validation(vec![format!("grid: {e}")])),
            None => Ok(RadiusGrid::for_function(f)),
        }
    }

    pub fn table(&self, name: &str) -> Result<NevanlinnaTable, LabError> {
        let f = self.function(name)?;
        Ok(NevanlinnaTable::build(f, self.table_grid(name)?)?)
    }
}

#[derive(Clone, Debug)]
enum Job {
    Table(String),
    Check { index: usize, function: Option<String>, q: Option<Complex>, order: Option<usize> },
}

enum Done {
    Table(String, Result<NevanlinnaTable, String>),
    Check(CheckOutcome),
}

/// Result of one check job.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckOutcome {
    pub id: String,
    pub check: CheckKind,
    pub function: Option<String>,
    pub q: Option<Complex>,
    pub result: Result<Vec<Verdict>, String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunReport {
    pub tables: Vec<(String, Result<NevanlinnaTable, String>)>,
    pub checks: Vec<CheckOutcome>,
}

impl RunReport {
    pub fn verdicts(&self) -> impl Iterator<Item = (&CheckOutcome, &Verdict)> {
        self.checks.iter().flat_map(|o| o.result.iter().flatten().map(move |v| (o, v)))
    }

    pub fn has_errors(&self) -> bool {
        self.tables.iter().any(|t| t.1.is_err()) || self.checks.iter().any(|c| c.result.is_err())
    }

    /// 2 on any job error, 1 on any failed verdict, 0 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.has_errors() {
            2
        } else if self.verdicts().any(|(_, v)| !v.holds) {
            1
        } else {
            0
        }
    }
}

fn check_id(index: usize, spec: &CheckSpec, function: Option<&str>, q: Option<Complex>, order: Option<usize>) -> String {
    let mut id = format!("{index:02}-{}", spec.kind.name());
    if let Some(f) = function {
        id.push_str(&format!("/{f}"));
    }
    if let Some(q) = q {
        id.push_str(&format!("/q={}", q.label()));
    }
    if let Some(n) = order {
        id.push_str(&format!("/n={n}"));
    }
    id
}

fn jobs(r: &Resolved) -> Vec<Job> {
    let cfg = &r.config;
    let mut out: Vec<Job> = cfg.functions.keys().map(|n| Job::Table(n.clone())).collect();
    for (index, spec) in cfg.checks.iter().enumerate() {
        let functions: Vec<Option<String>> = if spec.kind.needs_functions() {
            match &spec.functions {
                Some(v) => v.iter().cloned().map(Some).collect(),
                None => cfg.functions.keys().cloned().map(Some).collect(),
            }
        } else {
            vec![None]
        };
        let qs: Vec<Option<Complex>> = if spec.kind.needs_q() {
            spec.q.as_ref().unwrap_or(&cfg.q_values).iter().copied().map(Some).collect()
        } else {
            vec![None]
        };
        let orders: Vec<Option<usize>> = if spec.kind == CheckKind::TheoremOrder {
            spec.orders.as_deref().unwrap_or(&DEFAULT_ORDERS).iter().copied().map(Some).collect()
        } else {
            vec![None]
        };
        for f in &functions {
            for &q in &qs {
                for &order in &orders {
                    out.push(Job::Check { index, function: f.clone(), q, order });
                }
            }
        }
    }
    out
}

/// Runs every table and check of the scenario on `workers` threads.
pub fn run_scenario(r: &Resolved, workers: usize) -> RunReport {
    let jobs = jobs(r);
    let pool = rayon::ThreadPoolBuilder::new().num_threads(workers.max(1)).build().expect("thread pool");
    let done: Vec<Done> = pool.install(|| {
        jobs.par_iter()
            .map(|job| match job {
                Job::Table(name) => Done::Table(name.clone(), r.table(name).map_err(|e| e.to_string())),
                Job::Check { index, function, q, order } => {
                    let spec = &r.config.checks[*index];
                    let id = check_id(*index, spec, function.as_deref(), *q, *order);
                    let result = run_check(r, spec, function.as_deref(), *q, *order).map_err(|e| e.to_string());
                    Done::Check(CheckOutcome { id, check: spec.kind, function: function.clone(), q: *q, result })
                }
            })
            .collect()
    });
    let mut report = RunReport { tables: Vec::new(), checks: Vec::new() };
    for d in done {
        match d {
            Done::Table(name, t) => report.tables.push((name, t)),
            Done::Check(c) => report.checks.push(c),
        }
    }
    report
}

fn reciprocal(f: &MeroFn) -> Result<MeroFn, LabError> {
    match f {
        MeroFn::ExpPoly(p) => Ok(MeroFn::ExpPoly(p.scale(C64::new(-1.0, 0.0)))),
        _ => {
            let pf = f.as_partial_fraction().ok_or_else(|| {
                LabError::Core(awlab_core::Error::Unsupported(format!("no reciprocal for {}", f.family())))
            })?;
            Ok(MeroFn::ZeroPole(pf.to_zero_pole()?.reciprocal()))
        }
    }
}

fn lemma_grid(f: &MeroFn, g: &GridSpec) -> Result<Vec<C64>, LabError> {
    let radii = g.for_function(f).map_err(|e| LabError::Validation(vec![format!("grid: {e}")]))?.radii();
    let mut angles: Vec<f64> =
        (0..LEMMA_ANGLES).map(|k| std::f64::consts::TAU * (k as f64 + 0.5) / LEMMA_ANGLES as f64).collect();
    for p in f.zeros_and_poles()? {
        if p.at.norm() > 0.0 {
            angles.push(p.at.arg());
        }
    }
    Ok(radii.iter().flat_map(|&r| angles.iter().map(move |&t| C64::from_polar(r, t))).collect())
}

/// Runs one check job.
pub fn run_check(
    r: &Resolved,
    spec: &CheckSpec,
    function: Option<&str>,
    q: Option<Complex>,
    order: Option<usize>,
) -> Result<Vec<Verdict>, LabError> {
    let f = function.map(|n| r.function(n)).transpose()?;
    let qp = q.map(|q| QParam::new(q.value())).transpose()?;
    let scales = match (&spec.phi, &spec.s) {
        (Some(p), Some(s)) => Some((r.phi_fn(p)?, r.s.get(s).expect("validated"))),
        _ => None,
    };
    let eps = spec.epsilon.unwrap_or(DEFAULT_EPSILON);
    let grid = |f: &MeroFn| -> Result<Option<RadiusGrid>, LabError> {
        spec.grid
            .map(|g| g.for_function(f).map_err(|e| LabError::Validation(vec![format!("grid: {e}")])))
            .transpose()
    };

    let verdicts = match spec.kind {
        CheckKind::Jensen => {
            let f = f.expect("jensen has a function");
            let g = reciprocal(f)?;
            let f0 = f.value_at(C64::new(0.0, 0.0))?.norm().ln();
            let radii = match grid(f)? {
                Some(g) => g,
                None => r.table_grid(function.unwrap())?,
            }
            .radii();
            let mut rows = Vec::with_capacity(radii.len());
            for rr in radii {
                let d = characteristic_t(f, rr)? - characteristic_t(&g, rr)?;
                rows.push(GridRow { r: rr, lhs: (d - f0).abs(), rhs: 1.0 });
            }
            vec![Verdict::fixed("jensen", rows, JENSEN_TOLERANCE)
                .with_hypothesis("identity", "T(r,f) - T(r,1/f) = log|f(0)|")]
        }
        CheckKind::AlphaGamma => {
            let (phi, s) = scales.expect("validated");
            let want = alpha_gamma_closed_form(phi, s).expect("validated");
            let got = alpha_gamma_empirical(phi, s)?;
            let dev = |a: f64, b: f64| if a == b { 0.0 } else { (a - b).abs() };
            let rows = vec![
                GridRow { r: 1.0, lhs: dev(got.alpha, want.alpha), rhs: 1.0 },
                GridRow { r: 2.0, lhs: dev(got.gamma, want.gamma), rhs: 1.0 },
            ];
            vec![Verdict::fixed("alpha_gamma", rows, ALPHA_GAMMA_TOLERANCE)
                .with_note("row r = 1 compares alpha, row r = 2 compares gamma")
                .with_hypothesis("phi", phi.name())
                .with_hypothesis("s", s.name())
                .with_hypothesis("closed_form", format!("alpha = {}, gamma = {}", want.alpha, want.gamma))
                .with_hypothesis("empirical", format!("alpha = {:.6}, gamma = {:.6}", got.alpha, got.gamma))]
        }
        CheckKind::LemmaA => {
            let f = f.expect("lemma_a has a function");
            let rule = match spec.r_rule.unwrap_or(RRuleSpec::BTimes) {
                RRuleSpec::BTimes => RRule::BTimes,
                RRuleSpec::RLogR => RRule::RLogR,
                RRuleSpec::Factor(k) => RRule::Factor(k),
            };
            let xs = spec.grid.map(|g| lemma_grid(f, &g)).transpose()?;
            let a1 = spec.alpha1.unwrap_or(DEFAULT_ALPHA1);
            vec![check_lemma_a(f, qp.as_ref().unwrap(), a1, xs.as_deref(), rule, spec.c_override)?]
        }
        CheckKind::LogdiffM => {
            let f = f.unwrap();
            let (phi, s) = scales.expect("validated");
            vec![check_logdiff_m(f, qp.as_ref().unwrap(), phi, s, eps, Case::of(s), grid(f)?)?]
        }
        CheckKind::PointwiseLogdiff => {
            let f = f.unwrap();
            let (phi, s) = scales.expect("validated");
            let rep = check_pointwise_logdiff(f, qp.as_ref().unwrap(), phi, s, eps, Case::of(s), grid(f)?)?;
            vec![rep.bound, rep.separation]
        }
        CheckKind::Counting => {
            let f = f.unwrap();
            let (phi, s) = scales.expect("validated");
            check_counting_bounds(f, qp.as_ref().unwrap(), phi, s, eps, grid(f)?)?
        }
        CheckKind::TheoremOrder => {
            let f = f.unwrap();
            let (phi, s) = scales.expect("validated");
            let mut opts = EquationOptions::default();
            if let Some(p) = spec.leading_poly() {
                opts.leading = p;
            }
            let eq = manufacture_equation_with(f, order.unwrap(), qp.as_ref().unwrap(), &opts)?;
            vec![check_theorem_order(&eq, f, phi, s)?]
        }
    };
    Ok(verdicts)
}
