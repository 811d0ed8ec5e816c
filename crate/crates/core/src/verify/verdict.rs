use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::math::C64;

/// One sampled radius of a verdict: `lhs ≤ C · rhs` is what is checked.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridRow {
    pub r: f64,
    pub lhs: f64,
    pub rhs: f64,
}

/// Which scales and parameters a verdict was computed with.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Provenance {
    pub phi: Option<String>,
    pub s: Option<String>,
    pub q: Option<C64>,
    pub epsilon: Option<f64>,
}

/// Outcome of checking one inequality over a radius grid.
///
/// `holds` is true iff `lhs ≤ fitted_constant · rhs` on every row with
/// `r ≥ onset_radius`, under the acceptance rule of the constructor used.
#[derive(Clone, Debug, PartialEq)]
pub struct Verdict {
    pub name: String,
    pub holds: bool,
    pub fitted_constant: f64,
    pub onset_radius: f64,
    /// `min (C·rhs − lhs)` over the rows from the onset on.
    pub margin_min: f64,
    pub grid: Vec<GridRow>,
    pub notes: Vec<String>,
    pub hypotheses: BTreeMap<String, String>,
    pub provenance: Provenance,
}

/// Slack on ratios that are zero up to rounding.
const RATIO_SLACK: f64 = 1e-6;

fn well_defined(row: &GridRow) -> bool {
    row.lhs.is_finite() && row.rhs.is_finite() && row.rhs > 0.0
}

fn sort_rows(rows: &mut [GridRow]) {
    rows.sort_by(|a, b| a.r.total_cmp(&b.r));
}

fn margin(rows: &[GridRow], c: f64) -> f64 {
    rows.iter().map(|g| c * g.rhs - g.lhs).fold(f64::INFINITY, f64::min)
}

impl Verdict {
    fn empty(name: &str, grid: Vec<GridRow>) -> Self {
        Self {
            name: name.into(),
            holds: false,
            fitted_constant: f64::INFINITY,
            onset_radius: f64::INFINITY,
            margin_min: f64::NEG_INFINITY,
            grid,
            notes: Vec::new(),
            hypotheses: BTreeMap::new(),
            provenance: Provenance::default(),
        }
    }

    /// Finite-scale reading of `lhs = O(rhs)`.
    ///
    /// The onset is the first radius from which every row is well defined;
    /// the constant is the largest `lhs⁺/rhs` from there on. The claim holds
    /// if the onset lies below `r_max/10`, the constant is finite, and the
    /// ratio over the last decade stays within twice its earlier maximum.
    pub fn big_o(name: &str, mut rows: Vec<GridRow>) -> Self {
        sort_rows(&mut rows);
        let mut v = Self::empty(name, rows);
        let Some(last) = v.grid.last().map(|g| g.r) else {
            v.notes.push("empty grid".into());
            return v;
        };
        let first_ok = v.grid.iter().rposition(|g| !well_defined(g)).map_or(0, |i| i + 1);
        if first_ok == v.grid.len() {
            v.notes.push("no radius from which all rows are finite".into());
            return v;
        }
        let tail = &v.grid[first_ok..];
        let ratio = |g: &GridRow| g.lhs.max(0.0) / g.rhs;
        let cut = last / 10.0;
        let c_all = tail.iter().map(ratio).fold(0.0, f64::max);
        let c_head = tail.iter().filter(|g| g.r <= cut).map(ratio).fold(0.0, f64::max);
        let c_last = tail.iter().filter(|g| g.r > cut).map(ratio).fold(0.0, f64::max);
        v.onset_radius = tail[0].r;
        v.fitted_constant = c_all;
        v.margin_min = margin(tail, c_all);
        let onset_ok = v.onset_radius <= cut;
        let growth_ok = c_last <= 2.0 * c_head + RATIO_SLACK;
        if !onset_ok {
            v.notes.push(alloc::format!("onset {} beyond r_max/10", v.onset_radius));
        }
        if !growth_ok {
            v.notes.push(alloc::format!(
                "lhs/rhs still growing: {c_last:.3e} over the last decade vs {c_head:.3e} before"
            ));
        }
        v.holds = onset_ok && growth_ok && c_all.is_finite();
        v
    }

    /// `lhs ≤ c · rhs` on every row, with `c` fixed in advance.
    pub fn fixed(name: &str, mut rows: Vec<GridRow>, c: f64) -> Self {
        sort_rows(&mut rows);
        let mut v = Self::empty(name, rows);
        if v.grid.is_empty() {
            v.notes.push("empty grid".into());
            return v;
        }
        v.fitted_constant = c;
        v.onset_radius = v.grid[0].r;
        v.margin_min = margin(&v.grid, c);
        v.holds = v.grid.iter().all(|g| g.lhs.is_finite() && g.lhs <= c * g.rhs);
        if let Some(bad) = v.grid.iter().find(|g| !(g.lhs <= c * g.rhs)) {
            v.notes.push(alloc::format!("first violation at r = {:.6e}", bad.r));
        }
        v
    }

    /// Smallest `c ≥ 0` with `lhs ≤ c · rhs` on all rows; holds iff it is finite.
    pub fn minimal_constant(name: &str, mut rows: Vec<GridRow>) -> Self {
        sort_rows(&mut rows);
        let mut v = Self::empty(name, rows);
        if v.grid.is_empty() {
            v.notes.push("empty grid".into());
            return v;
        }
        let finite = v.grid.iter().all(|g| g.lhs.is_finite() && g.rhs.is_finite() && g.rhs >= 0.0);
        let c = v
            .grid
            .iter()
            .map(|g| {
                if g.lhs <= 0.0 {
                    0.0
                } else if g.rhs > 0.0 {
                    g.lhs / g.rhs
                } else {
                    f64::INFINITY
                }
            })
            .fold(0.0, f64::max);
        v.fitted_constant = c;
        v.onset_radius = v.grid[0].r;
        v.margin_min = margin(&v.grid, c);
        v.holds = finite && c.is_finite();
        v
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn with_hypothesis(mut self, key: &str, value: impl Into<String>) -> Self {
        self.hypotheses.insert(key.into(), value.into());
        self
    }

    pub fn with_provenance(mut self, p: Provenance) -> Self {
        self.provenance = p;
        self
    }
}
