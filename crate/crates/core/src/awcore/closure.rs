use alloc::vec;
use alloc::vec::Vec;

use super::{dq_eval, QParam};
use crate::error::{Error, Result};
use crate::funcmodel::{series, MeroFn, PartialFraction, PoleTerm, Polynomial};
use crate::math::{c, cabs, near, polar, C64, TAU};

/// Relative residual allowed between the closure and pointwise evaluation.
const CROSS_CHECK_TOLERANCE: f64 = 1e-7;
const CROSS_CHECK_NODES: usize = 20;

/// `h_m(u, v) = Σ_{i=0}^{m} u^i v^{m−i}` from `e1 = u + v`, `e2 = uv`, for m = 0..=n.
fn complete_homogeneous(e1: &Polynomial, e2: &Polynomial, n: usize) -> Vec<Polynomial> {
    let mut h = Vec::with_capacity(n + 1);
    h.push(Polynomial::constant(c(1.0, 0.0)));
    if n >= 1 {
        h.push(e1.clone());
    }
    for m in 2..=n {
        let next = &(e1 * &h[m - 1]) - &(e2 * &h[m - 2]);
        h.push(next);
    }
    h
}

/// Exact `D_q p` for a polynomial, using `D_q xⁿ = h_{n−1}(x̂, x̌)` with
/// `x̂ + x̌ = (q^{1/2} + q^{−1/2}) x` and `x̂ x̌ = x² + c(q)²`.
pub fn dq_polynomial(p: &Polynomial, q: &QParam) -> Polynomial {
    let d = p.degree();
    if d == 0 {
        return Polynomial::zero();
    }
    let e1 = Polynomial::new(vec![c(0.0, 0.0), q.a() * 2.0]);
    let e2 = Polynomial::new(vec![q.c_q() * q.c_q(), c(0.0, 0.0), c(1.0, 0.0)]);
    let h = complete_homogeneous(&e1, &e2, d - 1);
    let mut out = Polynomial::zero();
    for (n, &cn) in p.coeffs().iter().enumerate().skip(1) {
        out = &out + &h[n - 1].scale(cn);
    }
    out
}

/// Partial fractions of `num / Π (x − r)^K` (distinct roots).
fn expand(num: &Polynomial, den: &[(C64, u32)]) -> PartialFraction {
    let den_poly = Polynomial::from_roots(c(1.0, 0.0), den);
    let (poly, _) = num.div_rem(&den_poly);
    let mut terms = Vec::with_capacity(den.len());
    for (i, &(r, k)) in den.iter().enumerate() {
        let k = k as usize;
        let mut g = num.shift(r);
        g.resize(k.max(g.len()), c(0.0, 0.0));
        g.truncate(k);
        for (j, &(other, kj)) in den.iter().enumerate() {
            if j != i {
                g = series::mul(&g, &series::binomial(r - other, -(kj as i32), k), k);
            }
        }
        let coeffs = (0..k).map(|m| g[k - 1 - m]).collect();
        terms.push(PoleTerm { at: r, coeffs });
    }
    PartialFraction::new(poly, terms)
}

/// `D_q (x − p)^{−k} = −h_{k−1}(u, v) / W^k` with `u = x̂ − p`, `v = x̌ − p`,
/// `W = uv = x² − 2a p x + p² + c(q)²`, expanded into partial fractions.
fn dq_pole_power(p: C64, k: usize, q: &QParam) -> PartialFraction {
    let a = q.a();
    let cq = q.c_q();
    let e1 = Polynomial::new(vec![-p * 2.0, a * 2.0]);
    let w = Polynomial::new(vec![p * p + cq * cq, -p * a * 2.0, c(1.0, 0.0)]);
    let h = complete_homogeneous(&e1, &w, k - 1);
    let num = h[k - 1].scale(c(-1.0, 0.0));
    let disc = cq * (p * p - c(1.0, 0.0)).sqrt();
    let w1 = p * a + disc;
    let w2 = p * a - disc;
    let den = if near(w1, w2, 1e-12) {
        vec![((w1 + w2) * 0.5, 2 * k as u32)]
    } else {
        vec![(w1, k as u32), (w2, k as u32)]
    };
    expand(&num, &den)
}

/// Exact `D_q` of a rational function in partial-fraction form.
pub fn dq_partial_fraction(f: &PartialFraction, q: &QParam) -> PartialFraction {
    let mut out = PartialFraction::from_polynomial(dq_polynomial(f.poly(), q));
    for t in f.terms() {
        for (k, &a) in t.coeffs.iter().enumerate() {
            if a != c(0.0, 0.0) {
                out = out.add(&dq_pole_power(t.at, k + 1, q).scaled(a));
            }
        }
    }
    out
}

/// Exact closed form of `D_q f` for polynomial and rational `f`.
///
/// Polynomials map to polynomials of one lower degree; rational input maps
/// to a [`MeroFn::PartialFraction`]. The result is cross-checked against
/// [`dq_eval`] at fresh nodes.
pub fn dq_closure(f: &MeroFn, q: &QParam) -> Result<MeroFn> {
    let result = match f {
        MeroFn::Polynomial(p) => MeroFn::Polynomial(dq_polynomial(p, q)),
        MeroFn::ZeroPole(z) => {
            from_pf(dq_partial_fraction(&PartialFraction::from_zero_pole(z), q))
        }
        MeroFn::PartialFraction(pf) => from_pf(dq_partial_fraction(pf, q)),
        other => {
            return Err(Error::Unsupported(alloc::format!(
                "no exact D_q closure for the {} family",
                other.family()
            )))
        }
    };
    cross_check(f, &result, q)?;
    Ok(result)
}

fn from_pf(pf: PartialFraction) -> MeroFn {
    if pf.is_polynomial() {
        MeroFn::Polynomial(pf.poly().clone())
    } else {
        MeroFn::PartialFraction(pf)
    }
}

fn cross_check(f: &MeroFn, g: &MeroFn, q: &QParam) -> Result<()> {
    let base = 2.0 * cabs(q.q_minus_half()).max(1.0);
    let mut worst: f64 = 0.0;
    for j in 0..CROSS_CHECK_NODES {
        let radius = base * (0.6 + 0.45 * (j % 4) as f64);
        let x = polar(radius, TAU * (j as f64 + 0.37) / CROSS_CHECK_NODES as f64);
        let (Ok(direct), Ok(closed)) = (dq_eval(f, x, q), g.value_at(x)) else {
            continue;
        };
        let scale = cabs(direct).max(cabs(closed)).max(1.0);
        worst = worst.max(cabs(direct - closed) / scale);
    }
    if !(worst <= CROSS_CHECK_TOLERANCE) {
        return Err(Error::DegreeMismatch { residual: worst });
    }
    Ok(())
}
