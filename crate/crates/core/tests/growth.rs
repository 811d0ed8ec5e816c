mod common;

use awlab_core::growth::{
    alpha_gamma, alpha_gamma_closed_form, alpha_gamma_empirical, conv_exponent, phi_order, phi_order_maxmod,
    rho_phi_k, ParamSource, PhiFamily, SFamily, DEFAULT_R0,
};
use awlab_core::nevanlinna::{NevanlinnaTable, RadiusGrid};
use awlab_core::{Error, GrowthParams, MeroFn, PhiFn, SFn};
use common::*;
use proptest::prelude::*;

fn phi(f: PhiFamily) -> PhiFn {
    PhiFn::new(f).unwrap()
}

fn s(f: SFamily) -> SFn {
    SFn::new(f).unwrap()
}

fn all_phis() -> Vec<PhiFn> {
    [
        PhiFamily::Log,
        PhiFamily::LogPow(1.5),
        PhiFamily::LogPow(2.0),
        PhiFamily::ExpLogPow(0.5),
        PhiFamily::ExpLogPow(1.0),
        PhiFamily::Pow(0.5),
        PhiFamily::Pow(1.0),
    ]
    .into_iter()
    .map(phi)
    .collect()
}

fn all_s() -> Vec<SFn> {
    [SFamily::RLogR, SFamily::RPow(1.5), SFamily::RPow(2.0), SFamily::LinearC(2.0)].into_iter().map(s).collect()
}

fn params(alpha: f64, gamma: f64) -> GrowthParams {
    GrowthParams { alpha, gamma, source: ParamSource::ClosedForm }
}

fn order(f: &MeroFn, p: &PhiFn) -> f64 {
    let t = NevanlinnaTable::build(f, RadiusGrid::for_function(f)).unwrap();
    phi_order(&t, p).unwrap().estimate
}

#[test]
fn phi_value_examples() {
    assert!((phi(PhiFamily::Log).value(10f64.exp()).unwrap() - 10.0).abs() < 1e-12);
    assert!((phi(PhiFamily::Pow(0.5)).value(100.0).unwrap() - 10.0).abs() < 1e-12);
    assert!((phi(PhiFamily::LogPow(2.0)).value(3f64.exp()).unwrap() - 9.0).abs() < 1e-12);
    assert!(matches!(phi(PhiFamily::Log).value(5.0), Err(Error::BelowR0 { .. })));
}

#[test]
fn phi_parameter_ranges() {
    assert!(PhiFn::new(PhiFamily::LogPow(1.0)).is_err());
    assert!(PhiFn::new(PhiFamily::LogPow(2.5)).is_err());
    assert!(PhiFn::new(PhiFamily::Pow(1.5)).is_err());
    assert!(PhiFn::new(PhiFamily::ExpLogPow(0.0)).is_err());
    assert!(SFn::new(SFamily::RPow(2.5)).is_err());
    assert!(SFn::new(SFamily::LinearC(1.0)).is_err());
}

#[test]
fn phi_sandwich_and_monotone() {
    for p in all_phis() {
        let mut prev = 0.0;
        for k in 0..400 {
            let r = DEFAULT_R0 * 1.1f64.powi(k);
            let v = p.value(r).unwrap();
            assert!(r.ln() <= v * (1.0 + 1e-12) && v <= r * (1.0 + 1e-12), "{} at {r}", p.name());
            assert!(v >= prev);
            prev = v;
        }
    }
}

#[test]
fn s_range() {
    for sf in all_s() {
        for k in 0..300 {
            let r = DEFAULT_R0 * 1.1f64.powi(k);
            let v = sf.value(r);
            assert!(r < v && v <= r * r * (1.0 + 1e-12), "{} at {r}", sf.name());
        }
    }
    assert!(s(SFamily::RPow(2.0)).s_over_r_unbounded());
    assert!(!s(SFamily::LinearC(2.0)).s_over_r_unbounded());
}

#[test]
fn subadditive_scales_double_at_most() {
    for p in all_phis() {
        if !p.is_subadditive() {
            continue;
        }
        for k in 0..200 {
            let r = DEFAULT_R0 * 1.15f64.powi(k);
            assert!(p.raw(2.0 * r) <= 2.0 * p.raw(r) * (1.0 + 1e-12));
        }
    }
    assert!(phi(PhiFamily::Log).is_subadditive());
    assert!(phi(PhiFamily::Pow(0.5)).is_subadditive());
}

#[test]
fn alpha_gamma_examples() {
    let cases = [
        (PhiFamily::Log, SFamily::RPow(2.0), 1.0, 1.0),
        (PhiFamily::LogPow(1.5), SFamily::RPow(2.0), 1.0, 1.0 / 1.5),
        (PhiFamily::LogPow(2.0), SFamily::RPow(2.0), 1.0, 0.5),
        (PhiFamily::Pow(0.5), SFamily::RPow(2.0), 0.5, 0.0),
        (PhiFamily::Pow(0.5), SFamily::LinearC(2.0), 1.0, 0.0),
    ];
    for (pf, sf, a, g) in cases {
        let cf = alpha_gamma(&phi(pf), &s(sf)).unwrap();
        assert_eq!(cf.source, ParamSource::ClosedForm);
        assert!((cf.alpha - a).abs() < 1e-15 && (cf.gamma - g).abs() < 1e-15);
        let em = alpha_gamma_empirical(&phi(pf), &s(sf)).unwrap();
        assert!((em.alpha - a).abs() < 5e-3, "{pf:?} {sf:?} alpha {}", em.alpha);
        assert!((em.gamma - g).abs() < 5e-3, "{pf:?} {sf:?} gamma {}", em.gamma);
    }
}

#[test]
fn empirical_agrees_with_table_for_every_pair() {
    for p in all_phis() {
        for sf in all_s() {
            let cf = alpha_gamma_closed_form(&p, &sf).unwrap();
            let em = alpha_gamma_empirical(&p, &sf).unwrap();
            assert!((cf.alpha - em.alpha).abs() < 5e-3, "{} {}", p.name(), sf.name());
            assert!((cf.gamma - em.gamma).abs() < 5e-3, "{} {}", p.name(), sf.name());
            assert!((0.0..=1.0).contains(&em.alpha) && (0.0..=1.0).contains(&em.gamma));
        }
    }
}

#[test]
fn phi_order_examples() {
    let rational = zp_fn(1.0, &[1.0, -2.0], &[3.0]);
    let est = order(&rational, &phi(PhiFamily::Log));
    assert!((0.9..=1.1).contains(&est), "{est}");

    let e = exp_fn(&[0.0, 1.0]);
    let est = order(&e, &phi(PhiFamily::Pow(1.0)));
    assert!((0.95..=1.05).contains(&est), "{est}");

    let est = order(&rational, &phi(PhiFamily::Pow(0.5)));
    assert!(est <= 0.05, "{est}");
}

#[test]
fn phi_order_degenerate_and_short() {
    let c = poly_fn(&[3.0]);
    let t = NevanlinnaTable::build(&c, RadiusGrid::new(1.25, 1.0, 1e6).unwrap()).unwrap();
    assert!(matches!(phi_order(&t, &phi(PhiFamily::Log)), Err(Error::DegenerateT)));
    let f = poly_fn(&[1.0, 1.0]);
    let t = NevanlinnaTable::build(&f, RadiusGrid::new(1.25, 10.0, 50.0).unwrap()).unwrap();
    assert!(matches!(phi_order(&t, &phi(PhiFamily::Log)), Err(Error::InsufficientData(_))));
}

#[test]
fn maxmod_order_examples_and_agreement() {
    let e = exp_fn(&[0.0, 1.0]);
    let p1 = phi(PhiFamily::Pow(1.0));
    let grid = RadiusGrid::for_function(&e);
    let mm = phi_order_maxmod(&e, &p1, &grid).unwrap().estimate;
    assert!((mm - 1.0).abs() < 0.05, "{mm}");
    assert!((mm - order(&e, &p1)).abs() <= 0.1);

    let p = poly_fn(&[1.0, -3.0, 0.0, 2.0]);
    let log = phi(PhiFamily::Log);
    let grid = RadiusGrid::for_function(&p);
    let mm = phi_order_maxmod(&p, &log, &grid).unwrap().estimate;
    assert!((mm - 1.0).abs() < 0.1, "{mm}");
    assert!((mm - order(&p, &log)).abs() <= 0.1);

    let qp = qproduct(0.5, 40);
    let grid = RadiusGrid::new(1.25, 1.0, 1e8).unwrap();
    let mm = phi_order_maxmod(&qp, &log, &grid).unwrap().estimate;
    let t = NevanlinnaTable::build(&qp, grid).unwrap();
    assert!((mm - phi_order(&t, &log).unwrap().estimate).abs() <= 0.1);
}

#[test]
fn maxmod_requires_subadditive() {
    // exp(log r) = r is subadditive, so pick a scale that is not
    let p = phi(PhiFamily::LogPow(2.0));
    if !p.is_subadditive() {
        let e = poly_fn(&[0.0, 1.0]);
        assert!(matches!(
            phi_order_maxmod(&e, &p, &RadiusGrid::for_function(&e)),
            Err(Error::HypothesisViolation(_))
        ));
    }
}

#[test]
fn conv_exponent_examples() {
    let geo: Vec<f64> = (1..=60).map(|n| 2f64.powi(n)).collect();
    let v = conv_exponent(&geo, &phi(PhiFamily::Log)).unwrap();
    assert!((v - 1.0).abs() < 0.05, "{v}");
    let sq: Vec<f64> = (1..=2000).map(|n| (n * n) as f64).collect();
    let v = conv_exponent(&sq, &phi(PhiFamily::Pow(1.0))).unwrap();
    assert!((v - 0.5).abs() < 0.02, "{v}");
    let flat = vec![5.0; 30];
    assert_eq!(conv_exponent(&flat, &phi(PhiFamily::Log)).unwrap(), 0.0);
    assert!(matches!(conv_exponent(&geo[..10], &phi(PhiFamily::Log)), Err(Error::InsufficientData(_))));
}

#[test]
fn rho_phi_k_examples() {
    assert_eq!(rho_phi_k(2.0, &params(1.0, 1.0), 3).unwrap(), 2.0);
    for k in 1..5 {
        assert_eq!(rho_phi_k(1.7, &params(1.0, 0.0), k).unwrap(), 1.7);
    }
    assert!((rho_phi_k(1.0, &params(0.5, 0.0), 2).unwrap() - 4.0).abs() < 1e-15);
    assert!(matches!(rho_phi_k(1.0, &params(0.0, 0.0), 1), Err(Error::AlphaZero)));
}

#[test]
fn order_at_least_alpha_gamma() {
    let witnesses = [
        zp_fn(1.0, &[1.0, -2.0], &[3.0]),
        poly_fn(&[1.0, 0.0, 2.0]),
        exp_fn(&[0.0, 1.0]),
        qproduct(0.5, 40),
    ];
    for f in &witnesses {
        let grid = RadiusGrid::for_function(f);
        let grid = if matches!(f, MeroFn::TruncatedQProduct(_)) { RadiusGrid::new(1.25, 1.0, 1e8).unwrap() } else { grid };
        let t = NevanlinnaTable::build(f, grid).unwrap();
        for p in all_phis() {
            for sf in all_s() {
                let ag = alpha_gamma(&p, &sf).unwrap();
                let est = phi_order(&t, &p).unwrap().estimate;
                assert!(est >= ag.alpha * ag.gamma - 0.05, "{} {} {}: {est}", f.family(), p.name(), sf.name());
            }
        }
    }
}

proptest! {
    #[test]
    fn rho_phi_k_monotone_in_k(
        alpha in 0.05f64..1.0,
        gamma in 0.0f64..1.0,
        rho in 0.0f64..5.0,
        k in 1u32..8,
    ) {
        let p = params(alpha, gamma);
        let a = rho_phi_k(rho, &p, k).unwrap();
        let b = rho_phi_k(rho, &p, k + 1).unwrap();
        prop_assert!(rho <= a && a <= b);
    }

    #[test]
    fn rho_phi_k_matches_direct_formula(
        alpha in 0.05f64..1.0,
        gamma in 0.0f64..1.0,
        rho in 0.0f64..5.0,
        k in 1u32..8,
    ) {
        let mut best = rho;
        for l in 1..=k as i32 {
            let geom: f64 = (0..l).map(|j| alpha.powi(-j)).sum();
            best = best.max(rho / alpha.powi(l) - gamma * geom);
        }
        let got = rho_phi_k(rho, &params(alpha, gamma), k).unwrap();
        prop_assert!((got - best).abs() <= 1e-9 * best.abs().max(1.0));
    }
}
