use alloc::vec::Vec;

use super::common::{check_epsilon, estimate_order, estimate_order_on, grid_or_default, order_grid, provenance, require_case, rho_for, Case};
use super::pullback::{pullback_points, Direction};
use super::verdict::{GridRow, Verdict};
use crate::awcore::{dq_iter, QParam};
use crate::error::{Error, Result};
use crate::funcmodel::{MeroFn, PointMult, Target};
use crate::growth::{alpha_gamma, rho_phi_k, PhiFn, SFn};
use crate::math::{cabs, ln, powf};
use crate::nevanlinna::{characteristic_t, RadiusGrid};

/// Slack in the order comparison of `D_q f` against `f`.
pub const ORDER_SLACK: f64 = 0.1;

const ORIGIN: f64 = 1e-12;

/// `N(r)` of a point list, with the `n(0) log r` convention at the origin.
fn integrated_from(points: &[PointMult], r: f64) -> f64 {
    points
        .iter()
        .map(|p| {
            let m = cabs(p.at);
            if m <= ORIGIN {
                p.mult as f64 * ln(r)
            } else if m <= r {
                p.mult as f64 * ln(r / m)
            } else {
                0.0
            }
        })
        .sum()
}

fn pulled_back(points: &[PointMult], q: &QParam, dir: Direction) -> Vec<PointMult> {
    points
        .iter()
        .flat_map(|p| pullback_points(p.at, q, dir).into_iter().map(move |x| PointMult::new(x, p.mult)))
        .collect()
}

/// The shifted-counting, `N`, `T` and order comparisons between `f` and
/// `D_q f`, in that order.
///
/// Error terms are `φ(r)^{ρ/α − γ + ε} + log r` in case (a) and
/// `φ(r)^{ρ + ε} + log r` in case (b), the case being read off `s`.
pub fn check_counting_bounds(
    f: &MeroFn,
    q: &QParam,
    phi: &PhiFn,
    s: &SFn,
    epsilon: f64,
    grid: Option<RadiusGrid>,
) -> Result<Vec<Verdict>> {
    check_epsilon(epsilon)?;
    if f.is_constant() {
        return Err(Error::InvalidInput("counting bounds need a non-constant function".into()));
    }
    let params = alpha_gamma(phi, s)?;
    if !(params.alpha > 0.0) {
        return Err(Error::AlphaZero);
    }
    if !phi.is_subadditive() {
        return Err(Error::HypothesisViolation(alloc::format!("{} is not subadditive", phi.name())));
    }
    let case = Case::of(s);
    require_case(case, phi, s)?;
    let rho = rho_for(f, phi)?;
    let exponent = match case {
        Case::A => rho.value / params.alpha - params.gamma + epsilon,
        Case::B => rho.value + epsilon,
    };
    let rhs = |r: f64| powf(phi.raw(r), exponent) + ln(r);
    let df = dq_iter(f, 1, q)?;
    let radii: Vec<f64> = grid_or_default(grid, f, q)?.into_iter().filter(|&r| r >= phi.r0()).collect();

    let zeros = f.a_points(Target::ZERO)?;
    let poles = f.a_points(Target::Infinity)?;
    let shifted: Vec<[Vec<PointMult>; 2]> = [Direction::Hat, Direction::Check]
        .into_iter()
        .map(|d| [pulled_back(&zeros, q, d), pulled_back(&poles, q, d)])
        .collect();
    let df_poles = df.a_points(Target::Infinity)?;

    let mut shift_rows = Vec::with_capacity(radii.len());
    let mut n_rows = Vec::with_capacity(radii.len());
    let mut t_rows = Vec::with_capacity(radii.len());
    for &r in &radii {
        let base = [integrated_from(&zeros, r), integrated_from(&poles, r)];
        let mut worst: f64 = 0.0;
        for pair in &shifted {
            for k in 0..2 {
                worst = worst.max((integrated_from(&pair[k], r) - base[k]).abs());
            }
        }
        let e = rhs(r);
        shift_rows.push(GridRow { r, lhs: worst, rhs: e });
        n_rows.push(GridRow { r, lhs: integrated_from(&df_poles, r) - 2.0 * base[1], rhs: e });
        let tf = characteristic_t(f, r)?;
        let tdf = characteristic_t(&df, r)?;
        t_rows.push(GridRow { r, lhs: tdf - 2.0 * tf, rhs: e });
    }

    let prov = provenance(Some(phi), Some(s), q, Some(epsilon));
    let shape = match case {
        Case::A => "phi(r)^(rho/alpha-gamma+eps) + log r",
        Case::B => "phi(r)^(rho+eps) + log r",
    };
    let tag = |v: Verdict| {
        v.with_hypothesis("case", case.label())
            .with_hypothesis("rhs", shape)
            .with_hypothesis("rho_phi", rho.describe())
            .with_hypothesis("alpha", alloc::format!("{}", params.alpha))
            .with_hypothesis("gamma", alloc::format!("{}", params.gamma))
            .with_hypothesis("phi_subadditive", "true")
            .with_provenance(prov.clone())
    };
    let mut out = Vec::with_capacity(4);
    out.push(tag(Verdict::big_o("shifted_counting", shift_rows)));
    out.push(tag(Verdict::big_o("counting_dq", n_rows)));
    out.push(tag(Verdict::big_o("characteristic_dq", t_rows)));

    // ρ̂(D_q f) ≤ max{ρ̂(f), ρ̂(f)/α − γ} + slack, both estimated on the grid of f
    let fgrid = order_grid(f);
    let rf = estimate_order(f, phi)?;
    let mut dgrid = fgrid;
    dgrid.r_max = dgrid.r_max.min(df.validity_radius());
    let rd = estimate_order_on(&df, phi, dgrid)?;
    let bound = rho_phi_k(rf.estimate, &params, 1)? + ORDER_SLACK;
    let order = Verdict::fixed("order_dq", Vec::from([GridRow { r: fgrid.r_max, lhs: rd.estimate, rhs: bound }]), 1.0)
        .with_hypothesis("rho_hat_f", alloc::format!("{:.6}", rf.estimate))
        .with_hypothesis("rho_hat_dq_f", alloc::format!("{:.6}", rd.estimate))
        .with_hypothesis("slack", alloc::format!("{ORDER_SLACK}"));
    out.push(tag(order));
    Ok(out)
}
