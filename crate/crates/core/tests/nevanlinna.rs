mod common;

use awlab_core::nevanlinna::{
    characteristic_t, count_n, integrated_n, log_max_modulus, max_modulus, prox_m, NevanlinnaTable, RadiusGrid,
};
use awlab_core::{Error, MeroFn, PointMult, Target, ZeroPoleFn, C64};
use common::*;
use std::f64::consts::{E, PI};

fn reciprocal(f: &MeroFn) -> MeroFn {
    MeroFn::ZeroPole(f.as_partial_fraction().unwrap().to_zero_pole().unwrap().reciprocal())
}

/// `∫_{r1}^{r2} n(t)/t dt` for the step function `n` with jumps at `moduli`.
fn step_integral(moduli: &[(f64, u32)], r1: f64, r2: f64) -> f64 {
    let mut cuts: Vec<f64> = moduli.iter().map(|m| m.0).filter(|&m| m > r1 && m < r2).collect();
    cuts.push(r1);
    cuts.push(r2);
    cuts.sort_by(f64::total_cmp);
    let n_at = |t: f64| moduli.iter().filter(|m| m.0 <= t).map(|m| m.1 as f64).sum::<f64>();
    cuts.windows(2).map(|w| n_at(0.5 * (w[0] + w[1])) * (w[1] / w[0]).ln()).sum()
}

fn ls_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}

#[test]
fn prox_examples() {
    let x = poly_fn(&[0.0, 1.0]);
    assert!((prox_m(&x, E, Target::Infinity).unwrap() - 1.0).abs() < 1e-9);
    let inv = zp_fn(1.0, &[], &[2.0]);
    assert!(prox_m(&inv, 1.0, Target::Infinity).unwrap().abs() < 1e-9);
    let oracle = riemann_prox(|x| inv.log_abs(x).unwrap(), 1.0, 1_000_000);
    assert!(oracle.abs() < 1e-12);
    let sq = poly_fn(&[0.0, 0.0, 1.0]);
    assert!((prox_m(&sq, 10.0, Target::Infinity).unwrap() - 2.0 * 10f64.ln()).abs() < 1e-9);
}

#[test]
fn prox_matches_riemann_sum_near_singular_circles() {
    let witnesses: Vec<(MeroFn, f64)> = vec![
        (zp_fn(1.0, &[2.0], &[]), 2.0),
        (zp_fn(3.0, &[1.001], &[-0.999]), 1.0),
        (zp_fn(0.5, &[2.0, -3.0], &[2.002]), 2.0),
        (poly_fn(&[1.0, 0.0, 1.0]), 1.0),
        (exp_fn(&[0.0, 1.0]), 3.0),
    ];
    for (f, r) in witnesses {
        let got = prox_m(&f, r, Target::Infinity).unwrap();
        let oracle = riemann_prox(|x| f.log_abs(x).unwrap(), r, 1_000_000);
        assert!((got - oracle).abs() < 1e-6, "{}: {got} vs {oracle}", f.family());
    }
}

#[test]
fn prox_at_finite_target() {
    let f = zp_fn(1.0, &[1.0, 3.0], &[2.0]);
    let got = prox_m(&f, 0.5, Target::ZERO).unwrap();
    let oracle = riemann_prox(|x| -f.log_abs(x).unwrap(), 0.5, 200_000);
    assert!((got - oracle).abs() < 1e-7);
}

#[test]
fn count_examples() {
    let f = zp_fn(1.0, &[1.0, 3.0], &[2.0]);
    assert_eq!(count_n(&f, 2.5, Target::ZERO).unwrap(), 1);
    assert_eq!(count_n(&f, 2.5, Target::Infinity).unwrap(), 1);
    let qp = qproduct(0.5, 20);
    assert_eq!(count_n(&qp, 10.0, Target::ZERO).unwrap(), 3);
}

#[test]
fn count_rescaling_law() {
    let q = awlab_core::QParam::real(0.25).unwrap();
    let cq = q.q_minus_half();
    let f = ZeroPoleFn::new(
        re(1.0),
        vec![PointMult::new(c(1.0, 1.0), 1), PointMult::new(re(-5.0), 2)],
        vec![PointMult::new(re(3.0), 1), PointMult::new(c(0.0, 7.0), 1)],
    )
    .unwrap();
    // f(cx) has its zeros and poles at a/c
    let scaled = ZeroPoleFn::new(
        re(1.0),
        f.zeros().iter().map(|p| PointMult::new(p.at / cq, p.mult)).collect(),
        f.poles().iter().map(|p| PointMult::new(p.at / cq, p.mult)).collect(),
    )
    .unwrap();
    let (f, scaled) = (MeroFn::ZeroPole(f), MeroFn::ZeroPole(scaled));
    for k in 0..40 {
        let r = 0.3 * 1.13f64.powi(k);
        for t in [Target::ZERO, Target::Infinity] {
            assert_eq!(count_n(&scaled, r, t).unwrap(), count_n(&f, cq.norm() * r, t).unwrap());
        }
    }
}

#[test]
fn count_unsupported_for_numeric_iterates() {
    let q = awlab_core::QParam::real(0.5).unwrap();
    let f = MeroFn::NumericDq(awlab_core::awcore::NumericDq::new(exp_fn(&[0.0, 1.0]), 1, q));
    assert!(matches!(count_n(&f, 2.0, Target::ZERO), Err(Error::Unsupported(_))));
}

#[test]
fn integrated_counting_examples() {
    let f = zp_fn(1.0, &[], &[2.0]);
    assert!((integrated_n(&f, 4.0, Target::Infinity).unwrap() - 2f64.ln()).abs() < 1e-14);
    let e = exp_fn(&[0.0, 1.0]);
    for r in [1.0, 10.0, 100.0] {
        assert_eq!(integrated_n(&e, r, Target::Infinity).unwrap(), 0.0);
    }
    // origin convention: n(0)·log r
    let g = zp_fn(1.0, &[], &[0.0, 1.0]);
    assert!((integrated_n(&g, 3.0, Target::Infinity).unwrap() - (3f64.ln() + 3f64.ln())).abs() < 1e-14);
}

#[test]
fn integrated_counting_matches_step_integral() {
    for f in rational_witnesses() {
        for t in [Target::ZERO, Target::Infinity] {
            let pts = f.a_points(t).unwrap();
            let moduli: Vec<(f64, u32)> = pts.iter().map(|p| (p.at.norm(), p.mult)).collect();
            let radii: Vec<f64> = (0..30).map(|k| 1.25f64.powi(k)).collect();
            for w in radii.windows(2) {
                let diff = integrated_n(&f, w[1], t).unwrap() - integrated_n(&f, w[0], t).unwrap();
                assert!((diff - step_integral(&moduli, w[0], w[1])).abs() < 1e-9);
            }
        }
    }
}

#[test]
fn characteristic_examples() {
    assert!((characteristic_t(&poly_fn(&[0.0, 1.0]), E).unwrap() - 1.0).abs() < 1e-9);
    let e = exp_fn(&[0.0, 1.0]);
    for r in [10.0, 20.0, 50.0, 100.0] {
        let ratio = characteristic_t(&e, r).unwrap() / (r / PI);
        assert!((0.99..=1.01).contains(&ratio), "r = {r}: {ratio}");
    }
    for (f, d) in [(zp_fn(1.0, &[1.0, -2.0], &[3.0]), 2.0), (zp_fn(2.0, &[0.5], &[-1.5, 4.0]), 2.0)] {
        let rs: Vec<f64> = (0..13).map(|k| 1e3 * 10f64.powf(k as f64 / 4.0)).collect();
        let ts: Vec<f64> = rs.iter().map(|&r| characteristic_t(&f, r).unwrap()).collect();
        let slope = ls_slope(&rs.iter().map(|r| r.ln()).collect::<Vec<_>>(), &ts);
        assert!((slope - d).abs() < 0.01 * d, "slope {slope}");
    }
}

#[test]
fn max_modulus_examples() {
    assert!((max_modulus(&poly_fn(&[0.0, 0.0, 1.0]), 3.0).unwrap() - 9.0).abs() < 9e-6);
    let e5 = max_modulus(&exp_fn(&[0.0, 1.0]), 5.0).unwrap();
    assert!((e5 / 5f64.exp() - 1.0).abs() < 1e-6);
    let p = poly_fn(&[1.0, -3.0, 0.0, 2.0, 0.5]);
    let rs: Vec<f64> = (0..10).map(|k| 1e3 * 2f64.powi(k)).collect();
    let ls: Vec<f64> = rs.iter().map(|&r| log_max_modulus(&p, r).unwrap()).collect();
    let slope = ls_slope(&rs.iter().map(|r| r.ln()).collect::<Vec<_>>(), &ls);
    assert!((slope - 4.0).abs() < 0.04);
    assert!(matches!(max_modulus(&zp_fn(1.0, &[], &[2.0]), 3.0), Err(Error::NotEntire { .. })));
}

#[test]
fn max_modulus_against_dense_scan() {
    let f = poly_fn(&[1.0, 0.0, -2.0, 0.3, 0.0, 1.0]);
    for r in [0.7, 1.3, 4.0] {
        let scan = (0..200_000)
            .map(|k| f.value_at(C64::from_polar(r, std::f64::consts::TAU * k as f64 / 200_000.0)).unwrap().norm())
            .fold(0.0, f64::max);
        let got = max_modulus(&f, r).unwrap();
        assert!(got >= scan * (1.0 - 1e-9) && got <= scan * (1.0 + 1e-6));
    }
}

#[test]
fn jensen_consistency_over_grid() {
    for f in rational_witnesses() {
        let g = reciprocal(&f);
        let f0 = f.value_at(re(0.0)).unwrap().norm().ln();
        for r in RadiusGrid::new(1.25, 1.0, 1e6).unwrap().radii() {
            let d = characteristic_t(&f, r).unwrap() - characteristic_t(&g, r).unwrap();
            assert!((d - f0).abs() < 1e-5, "r = {r}: {d} vs {f0}");
        }
    }
}

#[test]
fn table_monotone_and_additive() {
    for f in rational_witnesses().into_iter().chain([exp_fn(&[0.0, 1.0]), qproduct(0.5, 30)]) {
        let t = NevanlinnaTable::build(&f, RadiusGrid::new(1.25, 1.0, 1e3_f64.min(f.validity_radius())).unwrap()).unwrap();
        for w in t.rows.windows(2) {
            assert!(w[1].t >= w[0].t - 1e-6);
            assert!(w[1].n_int >= w[0].n_int);
        }
        for row in &t.rows {
            assert_eq!(row.t, row.m + row.n_int);
        }
    }
}

#[test]
fn first_main_theorem_shape() {
    for f in rational_witnesses() {
        for a in [c(1.0, 0.0), c(-2.0, 3.0)] {
            let pf = f.as_partial_fraction().unwrap();
            let shifted = pf.add(&awlab_core::funcmodel::PartialFraction::from_polynomial(awlab_core::Polynomial::constant(-a)));
            let g = reciprocal(&MeroFn::PartialFraction(shifted));
            let diffs: Vec<f64> = RadiusGrid::new(1.5, 1.0, 1e8)
                .unwrap()
                .radii()
                .into_iter()
                .map(|r| (characteristic_t(&g, r).unwrap() - characteristic_t(&f, r).unwrap()).abs())
                .collect();
            let worst = diffs.iter().cloned().fold(0.0, f64::max);
            let last = diffs[diffs.len() - 10..].iter().cloned().fold(0.0, f64::max);
            // bounded, and not growing in the tail
            assert!(worst.is_finite() && last <= worst);
            assert!(worst < 20.0);
        }
    }
}
