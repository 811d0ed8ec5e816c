use alloc::vec::Vec;

use super::common::{check_epsilon, grid_or_default, logdiff_rhs, provenance, require_case, rho_for, Case, LogDiff};
use super::verdict::{GridRow, Verdict};
use crate::awcore::QParam;
use crate::error::Result;
use crate::funcmodel::MeroFn;
use crate::growth::{PhiFn, SFn};
use crate::nevanlinna::{prox_of, RadiusGrid};

/// `m(r, D_q f / f) = O(rhs)` over a radius grid, with the right-hand side of
/// case (a) or (b).
pub fn check_logdiff_m(
    f: &MeroFn,
    q: &QParam,
    phi: &PhiFn,
    s: &SFn,
    epsilon: f64,
    case: Case,
    grid: Option<RadiusGrid>,
) -> Result<Verdict> {
    check_epsilon(epsilon)?;
    require_case(case, phi, s)?;
    let ld = LogDiff::new(f, q)?;
    let rho = rho_for(f, phi)?;
    let mut rows = Vec::new();
    for r in grid_or_default(grid, f, q)? {
        if r < phi.r0() {
            continue;
        }
        let lhs = prox_of(|x| ld.log_abs(x), r, &ld.breakpoints(r))?;
        rows.push(GridRow { r, lhs, rhs: logdiff_rhs(case, phi, s, rho.value, epsilon, r) });
    }
    let shape = match case {
        Case::A => "phi(s(r))^(rho+eps/2)/log(s(r)/r) + 1",
        Case::B => "phi(r)^(rho+eps)",
    };
    Ok(Verdict::big_o("logdiff_m", rows)
        .with_hypothesis("case", case.label())
        .with_hypothesis("rhs", shape)
        .with_hypothesis("rho_phi", rho.describe())
        .with_hypothesis("s_over_r_unbounded", alloc::format!("{}", s.s_over_r_unbounded()))
        .with_hypothesis("phi_subadditive", alloc::format!("{}", phi.is_subadditive()))
        .with_provenance(provenance(Some(phi), Some(s), q, Some(epsilon))))
}
