mod common;

use awlab_core::awcore::{hat_check_with_z, DqQuotient, NumericDq};
use awlab_core::{dq_closure, dq_eval, dq_iter, hat_check, z_of_x, Error, MeroFn, QParam, C64};
use common::*;
use proptest::prelude::*;

fn degree(f: &MeroFn) -> Option<usize> {
    match f {
        MeroFn::Polynomial(p) if p.is_zero() => None,
        MeroFn::Polynomial(p) => Some(p.degree()),
        other => panic!("expected a polynomial, got {}", other.family()),
    }
}

#[test]
fn z_of_x_examples() {
    assert_eq!(z_of_x(re(1.0)), re(1.0));
    assert_eq!(z_of_x(re(-1.0)), re(-1.0));
    assert!((z_of_x(re(0.0)) - c(0.0, 1.0)).norm() < 1e-15);
    let z = z_of_x(re(2.5));
    assert!((z - re(2.5 + 5.25f64.sqrt())).norm() < 1e-12);
    assert!(((z + 1.0 / z) * 0.5 - re(2.5)).norm() < 1e-12);
}

#[test]
fn z_of_x_tie_break_on_cut() {
    for k in 0..21 {
        let x = re(-1.0 + 0.1 * k as f64);
        let z = z_of_x(x);
        assert!((z.norm() - 1.0).abs() < 1e-12);
        assert!(z.im >= 0.0);
    }
}

#[test]
fn qparam_invariants() {
    for q in test_qs() {
        assert!((q.q_half() * q.q_half() - q.q()).norm() < 1e-14 * q.q().norm());
        assert!((q.q_half() * q.q_minus_half() - re(1.0)).norm() < 1e-14);
        let spread = 2.0 * (q.q_half().norm() + q.q_minus_half().norm());
        assert!(q.b() as f64 > spread);
        let c_q = (q.q_minus_half() - q.q_half()) * 0.5;
        assert!((q.c_q() - c_q).norm() < 1e-15);
    }
    assert!(QParam::real(1.5).is_err());
    assert!(QParam::real(0.0).is_err());
    assert!(QParam::with_constant(re(0.25), 40.0).unwrap().b() > 40);
}

#[test]
fn hat_check_examples() {
    let q = QParam::real(0.25).unwrap();
    let h = hat_check(re(1.0), &q);
    assert!((h.x_hat - re(1.25)).norm() < 1e-14);
    assert!((h.x_check - re(1.25)).norm() < 1e-14);

    let h = hat_check(re(3.0), &q);
    assert!(h.x_hat.im.abs() < 1e-15 && h.x_check.im.abs() < 1e-15);
}

#[test]
fn dq_eval_examples() {
    let q = QParam::real(0.25).unwrap();
    for x in [re(2.0), c(0.3, -1.2), re(1.0)] {
        assert_eq!(dq_eval(&poly_fn(&[5.0]), x, &q).unwrap(), re(0.0));
        assert!((dq_eval(&poly_fn(&[0.0, 1.0]), x, &q).unwrap() - re(1.0)).norm() < 1e-12);
    }
    let got = dq_eval(&poly_fn(&[0.0, 0.0, 1.0]), re(2.0), &q).unwrap();
    let (z, _) = branches(re(2.0));
    let oracle = aw_oracle(|x| x * x, z, re(0.25));
    assert!((got - re(5.0)).norm() < 1e-12);
    assert!((oracle - re(5.0)).norm() < 1e-12);
}

#[test]
fn dq_eval_pole_hit() {
    let q = QParam::real(0.25).unwrap();
    let x = re(3.0);
    let h = hat_check(x, &q);
    let f = MeroFn::ZeroPole(awlab_core::ZeroPoleFn::new(re(1.0), vec![], vec![awlab_core::PointMult::new(h.x_hat, 1)]).unwrap());
    assert!(matches!(dq_eval(&f, x, &q), Err(Error::PoleHit { .. })));
}

#[test]
fn dq_eval_exceptional_points_use_derivative() {
    let q = QParam::real(0.5).unwrap();
    let f = exp_fn(&[0.0, 1.0]);
    let shift = (q.q_half() + q.q_minus_half()) * 0.5;
    for sign in [1.0, -1.0] {
        let got = dq_eval(&f, re(sign), &q).unwrap();
        let want = (shift * sign).exp();
        assert!(rel_err(got, want) < 1e-12);
        // continuity from just outside the threshold
        let near = dq_eval(&f, re(sign * (1.0 + 1e-5)), &q).unwrap();
        assert!(rel_err(near, want) < 1e-3);
    }
}

#[test]
fn operator_identities_against_oracle() {
    let mut g = Lcg::new(1);
    for q in test_qs() {
        let k = q.q_half() + q.q_minus_half();
        for _ in 0..100 {
            let x = g.point(4.0);
            let d0 = dq_eval(&poly_fn(&[3.0]), x, &q).unwrap();
            let d1 = dq_eval(&poly_fn(&[0.0, 1.0]), x, &q).unwrap();
            let d2 = dq_eval(&poly_fn(&[0.0, 0.0, 1.0]), x, &q).unwrap();
            assert!(d0.norm() < 1e-10);
            assert!((d1 - re(1.0)).norm() < 1e-10);
            assert!(rel_err(d2, k * x) < 1e-10);
        }
    }
}

#[test]
fn closure_examples() {
    let q = QParam::real(0.25).unwrap();
    match dq_closure(&poly_fn(&[0.0, 0.0, 1.0]), &q).unwrap() {
        MeroFn::Polynomial(p) => {
            assert_eq!(p.degree(), 1);
            assert!((p.coeffs()[1] - re(2.5)).norm() < 1e-12);
            assert!(p.coeffs()[0].norm() < 1e-12);
        }
        other => panic!("{other:?}"),
    }
    assert_eq!(degree(&dq_closure(&poly_fn(&[4.0]), &q).unwrap()), None);

    let cube = poly_fn(&[0.0, 0.0, 0.0, 1.0]);
    let d = dq_closure(&cube, &q).unwrap();
    assert_eq!(degree(&d), Some(2));
    let mut g = Lcg::new(20);
    for _ in 0..20 {
        let x = g.point(3.0);
        let (z, _) = branches(x);
        let oracle = aw_oracle(|t| t * t * t, z, q.q());
        assert!(rel_err(d.value_at(x).unwrap(), oracle) < 1e-9);
    }
}

#[test]
fn degree_drop_for_all_degrees_and_q() {
    let mut g = Lcg::new(2);
    for q in test_qs() {
        for d in 1..=12usize {
            let coeffs: Vec<f64> = (0..=d).map(|_| g.range(-2.0, 2.0)).collect();
            let f = poly_fn(&coeffs);
            assert_eq!(degree(&dq_closure(&f, &q).unwrap()), Some(d - 1), "d = {d}, q = {}", q.q());
            let top = dq_iter(&f, d + 1, &q);
            match top {
                Ok(f) => assert_eq!(degree(&f), None),
                Err(Error::DepthExceeded { .. }) => {
                    let mut h = f.clone();
                    for _ in 0..=d {
                        h = dq_closure(&h, &q).unwrap();
                    }
                    assert_eq!(degree(&h), None);
                }
                Err(e) => panic!("{e}"),
            }
        }
    }
}

#[test]
fn dq_iter_examples() {
    let q = QParam::real(0.3).unwrap();
    let cube = poly_fn(&[1.0, 0.0, 0.0, 1.0]);
    assert_eq!(dq_iter(&cube, 0, &q).unwrap(), cube);
    assert_eq!(degree(&dq_iter(&cube, 3, &q).unwrap()), Some(0));
    assert_eq!(degree(&dq_iter(&cube, 4, &q).unwrap()), None);
    assert!(matches!(dq_iter(&cube, 7, &q), Err(Error::DepthExceeded { .. })));
}

#[test]
fn closure_and_nested_paths_agree() {
    let q = QParam::real(0.3).unwrap();
    let f = poly_fn(&[-2.0, 1.0, 1.0]);
    let closed = dq_iter(&f, 2, &q).unwrap();
    let nested = NumericDq::new(f.clone(), 2, q);
    let mut g = Lcg::new(50);
    for _ in 0..50 {
        let x = g.point(3.0);
        assert!(rel_err(nested.eval(x).unwrap(), closed.value_at(x).unwrap()) < 1e-8);
    }
}

#[test]
fn rational_closure_matches_pointwise_including_iterates() {
    let q = QParam::new(c(0.3, 0.2)).unwrap();
    let mut g = Lcg::new(7);
    for f in rational_witnesses() {
        let mut cur = f.clone();
        for k in 1..=3 {
            cur = dq_closure(&cur, &q).unwrap();
            let nested = NumericDq::new(f.clone(), k, q);
            let mut checked = 0;
            while checked < 50 {
                let x = g.point(6.0);
                let (Ok(a), Ok(b)) = (cur.value_at(x), nested.eval(x)) else { continue };
                assert!(rel_err(a, b) < 1e-8, "k = {k}: {a} vs {b}");
                checked += 1;
            }
        }
    }
}

#[test]
fn rational_closure_degree_bounds() {
    let q = QParam::real(0.5).unwrap();
    for f in rational_witnesses() {
        let pf = f.as_partial_fraction().unwrap();
        let (p, m) = (pf.numerator().degree(), pf.den_degree());
        let d = dq_closure(&f, &q).unwrap().as_partial_fraction().unwrap();
        assert!(d.den_degree() <= 2 * m);
        assert!(d.numerator().degree() <= (p + m).saturating_sub(1).max(d.den_degree()));
    }
}

#[test]
fn closure_of_polynomial_is_entire() {
    for q in test_qs() {
        let d = dq_closure(&poly_fn(&[1.0, -3.0, 0.0, 2.0, 1.0]), &q).unwrap();
        assert!(d.is_entire());
        assert!(d.poles_in_disc(1e6).unwrap().is_empty());
    }
}

#[test]
fn classical_limit_decreases_monotonically() {
    let f = poly_fn(&[0.0, -2.0, 0.0, 1.0]);
    let xs: Vec<C64> = (0..20).map(|k| c(1.5 + 0.1 * k as f64, 0.3 * (k % 3) as f64)).collect();
    let mut errs = Vec::new();
    for qv in [0.9, 0.99, 0.999] {
        let q = QParam::real(qv).unwrap();
        // D_q x³ = x̂² + x̂x̌ + x̌² = 3x² + b²(4x² − 1) with b = (q^{1/2} − q^{−1/2})/2
        let b2 = ((q.q_half() - q.q_minus_half()) * 0.5).powi(2);
        let mut worst: f64 = 0.0;
        for &x in &xs {
            let err = dq_eval(&f, x, &q).unwrap() - (3.0 * x * x - 2.0);
            assert!((err - b2 * (4.0 * x * x - 1.0)).norm() < 1e-9);
            worst = worst.max(err.norm());
        }
        errs.push(worst);
    }
    assert!(errs[0] > errs[1] && errs[1] > errs[2]);
}

#[test]
fn quotient_of_iterates() {
    let q = QParam::real(0.5).unwrap();
    let f = exp_fn(&[0.0, 1.0]);
    let quot = DqQuotient::new(f.clone(), vec![poly(&[0.0]), poly(&[1.0])], q);
    let x = c(1.7, 0.4);
    let want = dq_eval(&f, x, &q).unwrap() / f.value_at(x).unwrap();
    assert!(rel_err(quot.eval(x).unwrap(), want) < 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn hat_check_invariants(xr in -6.0f64..6.0, xi in -6.0f64..6.0, qi in 0usize..4) {
        let q = test_qs()[qi];
        let x = c(xr, xi);
        let h = hat_check(x, &q);
        prop_assert!(h.z.norm() >= 1.0 - 1e-12);
        prop_assert!(rel_err((h.z + 1.0 / h.z) * 0.5, x) < 1e-12);
        let sum = (q.q_half() + q.q_minus_half()) * x;
        prop_assert!(rel_err(h.x_hat + h.x_check, sum) < 1e-12);
    }

    #[test]
    fn branch_swap_exchanges_hat_and_check(xr in -6.0f64..6.0, xi in 0.01f64..6.0, qi in 0usize..4) {
        let q = test_qs()[qi];
        let x = c(xr, if xr.abs() <= 1.0 { xi } else { xi - 3.0 });
        let h = hat_check(x, &q);
        let o = hat_check_with_z(1.0 / h.z, &q);
        prop_assert!(rel_err(o.x_hat, h.x_check) < 1e-12);
        prop_assert!(rel_err(o.x_check, h.x_hat) < 1e-12);
    }

    #[test]
    fn opposite_branch_gives_same_value(xr in -5.0f64..5.0, xi in -5.0f64..5.0, qi in 0usize..4) {
        let q = test_qs()[qi];
        let x = c(xr, xi);
        prop_assume!(xi.abs() > 1e-3 || xr.abs() > 1.0 + 1e-3);
        let f = zp_fn(1.0, &[1.0, -2.0], &[3.0]);
        let ours = dq_eval(&f, x, &q);
        prop_assume!(ours.is_ok());
        let (_, other) = branches(x);
        let g = |t: C64| f.value_at(t).unwrap();
        let theirs = aw_oracle(g, other, q.q());
        prop_assert!(rel_err(ours.unwrap(), theirs) < 1e-12);
    }

    #[test]
    fn linearity(
        a in -3.0f64..3.0, b in -3.0f64..3.0,
        xr in -4.0f64..4.0, xi in 0.1f64..4.0, qi in 0usize..4,
    ) {
        let q = test_qs()[qi];
        let x = c(xr, xi);
        let f = poly(&[1.0, -1.0, 2.0, 0.5]);
        let g = poly(&[0.0, 3.0, 0.0, 0.0, -1.0]);
        let combo = MeroFn::Polynomial(&f.scale(re(a)) + &g.scale(re(b)));
        let lhs = dq_eval(&combo, x, &q).unwrap();
        let rhs = dq_eval(&MeroFn::Polynomial(f), x, &q).unwrap() * a + dq_eval(&MeroFn::Polynomial(g), x, &q).unwrap() * b;
        prop_assert!(rel_err(lhs, rhs) < 1e-10);
    }
}
