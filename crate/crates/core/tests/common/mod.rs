#![allow(dead_code)]

use awlab_core::funcmodel::QProduct;
use awlab_core::{MeroFn, PointMult, Polynomial, QParam, ZeroPoleFn, C64};

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

pub fn poly(coeffs: &[f64]) -> Polynomial {
    Polynomial::from_real(coeffs)
}

pub fn poly_fn(coeffs: &[f64]) -> MeroFn {
    MeroFn::Polynomial(poly(coeffs))
}

pub fn zp(scale: f64, zeros: &[f64], poles: &[f64]) -> ZeroPoleFn {
    ZeroPoleFn::new(
        re(scale),
        zeros.iter().map(|&z| PointMult::new(re(z), 1)).collect(),
        poles.iter().map(|&p| PointMult::new(re(p), 1)).collect(),
    )
    .unwrap()
}

pub fn zp_fn(scale: f64, zeros: &[f64], poles: &[f64]) -> MeroFn {
    MeroFn::ZeroPole(zp(scale, zeros, poles))
}

pub fn exp_fn(coeffs: &[f64]) -> MeroFn {
    MeroFn::ExpPoly(poly(coeffs))
}

pub fn qproduct(q: f64, terms: u32) -> MeroFn {
    MeroFn::TruncatedQProduct(QProduct::new(re(1.0), re(q), terms).unwrap())
}

pub fn test_qs() -> Vec<QParam> {
    [c(0.25, 0.0), c(0.5, 0.0), c(0.3, 0.2), c(0.9, 0.0)].into_iter().map(|q| QParam::new(q).unwrap()).collect()
}

/// Rational witnesses with `f(0) ≠ 0, ∞`.
pub fn rational_witnesses() -> Vec<MeroFn> {
    vec![
        zp_fn(1.0, &[1.0, -2.0], &[3.0]),
        zp_fn(2.0, &[0.5], &[-1.5, 4.0]),
        zp_fn(-0.7, &[2.0, 3.0, -5.0], &[1.2, -7.0]),
        MeroFn::ZeroPole(
            ZeroPoleFn::new(
                c(1.0, 0.5),
                vec![PointMult::new(c(1.0, 1.0), 1), PointMult::new(c(1.0, -1.0), 1)],
                vec![PointMult::new(c(-2.0, 0.5), 2)],
            )
            .unwrap(),
        ),
        poly_fn(&[3.0, -1.0, 0.0, 2.0]),
    ]
}

/// Lehmer-style generator so the oracles do not share code with proptest.
pub struct Lcg(u64);

impl Lcg {
    pub fn new(seed: u64) -> Self {
        Self(seed.wrapping_mul(6364136223846793005).wrapping_add(1))
    }

    pub fn uniform(&mut self) -> f64 {
        self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (self.0 >> 11) as f64 / (1u64 << 53) as f64
    }

    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    pub fn point(&mut self, rmax: f64) -> C64 {
        C64::from_polar(self.range(0.1, rmax), self.range(0.0, std::f64::consts::TAU))
    }
}

/// `scale · Π(x − z)/Π(x − p)` by direct multiplication.
pub fn direct_product(scale: C64, zeros: &[C64], poles: &[C64], x: C64) -> C64 {
    let mut v = scale;
    for z in zeros {
        v *= x - z;
    }
    for p in poles {
        v /= x - p;
    }
    v
}

/// Uniform Riemann sum of `log⁺|g(re^{iθ})|` with `n` midpoints.
pub fn riemann_prox(g: impl Fn(C64) -> f64, r: f64, n: usize) -> f64 {
    let h = std::f64::consts::TAU / n as f64;
    let mut s = 0.0;
    for k in 0..n {
        let v = g(C64::from_polar(r, (k as f64 + 0.5) * h));
        if v > 0.0 {
            s += v;
        }
    }
    s / n as f64
}

/// Askey–Wilson divided difference of a closure with the branch given by `z`.
pub fn aw_oracle(f: impl Fn(C64) -> C64, z: C64, q: C64) -> C64 {
    let qh = q.sqrt();
    let a = (qh * z + 1.0 / (qh * z)) * 0.5;
    let b = (z / qh + qh / z) * 0.5;
    (f(a) - f(b)) / (a - b)
}

/// The root of `z² − 2xz + 1` with `|z| > 1`, or the other one.
pub fn branches(x: C64) -> (C64, C64) {
    let s = (x * x - 1.0).sqrt();
    let (a, b) = (x + s, x - s);
    if a.norm() >= b.norm() {
        (a, b)
    } else {
        (b, a)
    }
}

pub fn rel_err(a: C64, b: C64) -> f64 {
    (a - b).norm() / b.norm().max(1.0)
}
