//! CSV tables, `verdicts.json` and `summary.txt`.
//!
//! Floats are written as `{:.14e}` (15 significant digits) so that two runs
//! of one scenario give identical bytes.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use awlab_core::verify::Verdict;
use awlab_core::NevanlinnaTable;
use serde::{Serialize, Serializer};
use serde_json::value::RawValue;

use crate::error::LabError;
use crate::runner::RunReport;

pub const CSV_HEADER: &str = "r,m,N,T,n_zeros,n_poles";

/// `{:.14e}`, or `None` for non-finite values.
pub fn fixed(x: f64) -> Option<String> {
    x.is_finite().then(|| format!("{x:.14e}"))
}

/// A float serialized as a fixed-width JSON number, `null` when non-finite.
#[derive(Clone, Copy, Debug)]
pub struct Fixed(pub f64);

impl Serialize for Fixed {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match fixed(self.0) {
            Some(text) => RawValue::from_string(text).map_err(serde::ser::Error::custom)?.serialize(s),
            None => s.serialize_none(),
        }
    }
}

pub fn table_csv(t: &NevanlinnaTable) -> String {
    let cell = |x: f64| fixed(x).unwrap_or_else(|| "NA".into());
    let count = |n: Option<u64>| n.map_or_else(|| "NA".into(), |n| n.to_string());
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in &t.rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            cell(row.r),
            cell(row.m),
            cell(row.n_int),
            cell(row.t),
            count(row.n_zeros),
            count(row.n_poles)
        );
    }
    out
}

#[derive(Serialize)]
struct JsonProvenance<'a> {
    phi: Option<&'a str>,
    s: Option<&'a str>,
    q: Option<[Fixed; 2]>,
    epsilon: Option<Fixed>,
}

#[derive(Serialize)]
struct JsonVerdict<'a> {
    id: String,
    job: &'a str,
    check: &'a str,
    function: Option<&'a str>,
    name: &'a str,
    holds: bool,
    fitted_constant: Fixed,
    onset_radius: Fixed,
    margin_min: Fixed,
    hypotheses: &'a BTreeMap<String, String>,
    provenance: JsonProvenance<'a>,
    notes: &'a [String],
    /// `[r, lhs, rhs]` rows.
    grid: Vec<[Fixed; 3]>,
}

#[derive(Serialize)]
struct JsonError<'a> {
    job: &'a str,
    error: &'a str,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    exit_code: i32,
    verdict_count: usize,
    failed: Vec<String>,
    verdicts: Vec<JsonVerdict<'a>>,
    errors: Vec<JsonError<'a>>,
}

fn verdict_id(job: &str, v: &Verdict) -> String {
    format!("{job}/{}", v.name)
}

fn json_verdict<'a>(job: &'a str, check: &'a str, function: Option<&'a str>, v: &'a Verdict) -> JsonVerdict<'a> {
    JsonVerdict {
        id: verdict_id(job, v),
        job,
        check,
        function,
        name: &v.name,
        holds: v.holds,
        fitted_constant: Fixed(v.fitted_constant),
        onset_radius: Fixed(v.onset_radius),
        margin_min: Fixed(v.margin_min),
        hypotheses: &v.hypotheses,
        provenance: JsonProvenance {
            phi: v.provenance.phi.as_deref(),
            s: v.provenance.s.as_deref(),
            q: v.provenance.q.map(|q| [Fixed(q.re), Fixed(q.im)]),
            epsilon: v.provenance.epsilon.map(Fixed),
        },
        notes: &v.notes,
        grid: v.grid.iter().map(|g| [Fixed(g.r), Fixed(g.lhs), Fixed(g.rhs)]).collect(),
    }
}

pub fn verdicts_json(report: &RunReport) -> String {
    let verdicts: Vec<JsonVerdict> = report
        .verdicts()
        .map(|(o, v)| json_verdict(&o.id, o.check.name(), o.function.as_deref(), v))
        .collect();
    let mut errors: Vec<JsonError> = Vec::new();
    for (name, t) in &report.tables {
        if let Err(e) = t {
            errors.push(JsonError { job: name, error: e });
        }
    }
    for o in &report.checks {
        if let Err(e) = &o.result {
            errors.push(JsonError { job: &o.id, error: e });
        }
    }
    let failed = verdicts.iter().filter(|v| !v.holds).map(|v| v.id.clone()).collect();
    let doc = JsonReport { exit_code: report.exit_code(), verdict_count: verdicts.len(), failed, verdicts, errors };
    let mut s = serde_json::to_string_pretty(&doc).expect("report serializes");
    s.push('\n');
    s
}

/// One line per verdict or failed job, then a totals line.
pub fn summary_text(report: &RunReport) -> String {
    let mut out = String::new();
    let num = |x: f64| fixed(x).unwrap_or_else(|| format!("{x}"));
    for o in &report.checks {
        match &o.result {
            Ok(vs) => {
                for v in vs {
                    let _ = writeln!(
                        out,
                        "{}  holds={}  C={}  onset={}",
                        verdict_id(&o.id, v),
                        v.holds,
                        num(v.fitted_constant),
                        num(v.onset_radius)
                    );
                }
            }
            Err(e) => {
                let _ = writeln!(out, "{}  ERROR  {e}", o.id);
            }
        }
    }
    for (name, t) in &report.tables {
        if let Err(e) = t {
            let _ = writeln!(out, "table/{name}  ERROR  {e}");
        }
    }
    let total = report.verdicts().count();
    let failed = report.verdicts().filter(|(_, v)| !v.holds).count();
    let errors = report.checks.iter().filter(|o| o.result.is_err()).count()
        + report.tables.iter().filter(|t| t.1.is_err()).count();
    let _ = writeln!(out, "total {total}  failed {failed}  errors {errors}  exit {}", report.exit_code());
    out
}

fn write(path: &Path, text: &str) -> Result<(), LabError> {
    std::fs::write(path, text).map_err(|e| LabError::Io { context: format!("writing {}", path.display()), source: e })
}

/// Writes `nevanlinna_<fn>.csv` for every table, then `verdicts.json` and
/// `summary.txt` unless the scenario has no checks.
pub fn write_artifacts(report: &RunReport, dir: &Path) -> Result<(), LabError> {
    std::fs::create_dir_all(dir)
        .map_err(|e| LabError::Io { context: format!("creating {}", dir.display()), source: e })?;
    for (name, t) in &report.tables {
        if let Ok(t) = t {
            write(&dir.join(format!("nevanlinna_{name}.csv")), &table_csv(t))?;
        }
    }
    if report.checks.is_empty() {
        return Ok(());
    }
    write(&dir.join("verdicts.json"), &verdicts_json(report))?;
    write(&dir.join("summary.txt"), &summary_text(report))
}
