use alloc::vec;
use alloc::vec::Vec;

use super::{roots::roots, series, PointMult, Polynomial, Value, ZeroPoleFn};
use crate::error::{Error, Result};
use crate::math::{cabs, ln, near, C64};

/// Poles closer than this (relative) are treated as the same pole.
const POLE_MERGE: f64 = 1e-10;
/// Trailing pole coefficients below this fraction of the term's scale are dropped.
const COEFF_DROP: f64 = 1e-10;
/// Zeros within this relative distance of a pole cancel against it.
const CANCEL: f64 = 1e-6;

/// The principal part of a rational function at one pole:
/// `Σ_k coeffs[k] / (x − at)^{k+1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct PoleTerm {
    pub at: C64,
    pub coeffs: Vec<C64>,
}

impl PoleTerm {
    pub fn order(&self) -> u32 {
        self.coeffs.len() as u32
    }

    fn eval(&self, x: C64) -> C64 {
        let inv = C64::new(1.0, 0.0) / (x - self.at);
        self.coeffs.iter().rev().fold(C64::new(0.0, 0.0), |acc, &a| (acc + a) * inv)
    }
}

/// Rational function as polynomial part plus principal parts,
/// `poly(x) + Σ_p Σ_k A_{p,k} / (x − p)^k`.
///
/// This is the form in which `D_q` acts exactly on rational input.
#[derive(Clone, Debug, PartialEq)]
pub struct PartialFraction {
    poly: Polynomial,
    terms: Vec<PoleTerm>,
    /// `poly·Π(x−p)^K + Σ A·(x−p)^{K−k}·Π_{p'≠p}(x−p')^{K'}`, kept for
    /// overflow-safe logarithms far from the poles.
    num: Polynomial,
}

impl PartialFraction {
    pub fn new(poly: Polynomial, terms: Vec<PoleTerm>) -> Self {
        let terms = normalize(terms);
        let num = combined_numerator(&poly, &terms);
        Self { poly, terms, num }
    }

    pub fn from_polynomial(p: Polynomial) -> Self {
        Self::new(p, Vec::new())
    }

    pub fn from_zero_pole(f: &ZeroPoleFn) -> Self {
        let (poly, _) = f.numerator().div_rem(&f.denominator());
        let mut terms = Vec::with_capacity(f.poles().len());
        for (i, p) in f.poles().iter().enumerate() {
            let k = p.mult as usize;
            // g(t) = (x − p)^K f(x) with x = p + t
            let mut g = vec![C64::new(0.0, 0.0); k];
            g[0] = f.scale();
            for z in f.zeros() {
                g = series::mul(&g, &series::binomial(p.at - z.at, z.mult as i32, k), k);
            }
            for (j, other) in f.poles().iter().enumerate() {
                if j != i {
                    g = series::mul(&g, &series::binomial(p.at - other.at, -(other.mult as i32), k), k);
                }
            }
            // coefficient of t^j belongs to (x − p)^{-(K−j)}
            let coeffs = (0..k).map(|m| g[k - 1 - m]).collect();
            terms.push(PoleTerm { at: p.at, coeffs });
        }
        Self::new(poly, terms)
    }

    pub fn poly(&self) -> &Polynomial {
        &self.poly
    }

    pub fn terms(&self) -> &[PoleTerm] {
        &self.terms
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.poly.is_zero()
    }

    pub fn poles(&self) -> Vec<PointMult> {
        self.terms.iter().map(|t| PointMult::new(t.at, t.order())).collect()
    }

    pub fn den_degree(&self) -> usize {
        self.terms.iter().map(|t| t.coeffs.len()).sum()
    }

    /// Denominator `Π (x − p)^K`.
    pub fn denominator(&self) -> Polynomial {
        let pts: Vec<(C64, u32)> = self.terms.iter().map(|t| (t.at, t.order())).collect();
        Polynomial::from_roots(C64::new(1.0, 0.0), &pts)
    }

    /// Numerator over [`PartialFraction::denominator`].
    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    fn hits_pole(&self, x: C64) -> bool {
        self.terms.iter().any(|t| near(x, t.at, super::zeropole::MATCH_TOLERANCE))
    }

    pub fn eval(&self, x: C64) -> Value {
        if self.hits_pole(x) {
            return Value::Pole;
        }
        let mut v = self.poly.eval(x);
        for t in &self.terms {
            v += t.eval(x);
        }
        Value::Finite(v)
    }

    pub fn log_abs(&self, x: C64) -> f64 {
        let far = self.terms.iter().all(|t| cabs(x) > 1e6 * (cabs(t.at) + 1.0));
        if !far {
            if let Value::Finite(v) = self.eval(x) {
                let a = cabs(v);
                if a.is_finite() && a > 0.0 {
                    return ln(a);
                }
            }
        }
        let mut s = self.num.log_abs(x);
        for t in &self.terms {
            s -= t.coeffs.len() as f64 * ln(cabs(x - t.at));
        }
        s
    }

    pub fn derivative_at(&self, x: C64) -> Result<C64> {
        if self.hits_pole(x) {
            return Err(Error::pole(x));
        }
        let mut v = self.poly.derivative().eval(x);
        for t in &self.terms {
            let inv = C64::new(1.0, 0.0) / (x - t.at);
            let mut pw = inv * inv;
            for (k, &a) in t.coeffs.iter().enumerate() {
                v -= a * pw * (k as f64 + 1.0);
                pw *= inv;
            }
        }
        Ok(v)
    }

    pub fn scaled(&self, s: C64) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|t| PoleTerm { at: t.at, coeffs: t.coeffs.iter().map(|&a| a * s).collect() })
            .collect();
        Self::new(self.poly.scale(s), terms)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Self::new(&self.poly + &other.poly, terms)
    }

    /// Zeros of `self − c` (or of `self` for `c = 0`) with multiplicity.
    pub fn value_points(&self, c: C64) -> Result<Vec<PointMult>> {
        let den = self.denominator();
        let shifted = &self.num - &den.scale(c);
        if shifted.is_zero() {
            return Err(Error::InvalidInput("function is identically equal to the target".into()));
        }
        if shifted.degree() == 0 {
            return Ok(Vec::new());
        }
        let mut zeros = roots(&shifted)?;
        let mut poles = self.poles();
        cancel(&mut zeros, &mut poles);
        Ok(zeros)
    }

    /// Equivalent zero–pole form (roots of the combined numerator).
    pub fn to_zero_pole(&self) -> Result<ZeroPoleFn> {
        if self.num.is_zero() {
            return Err(Error::InvalidInput("zero function has no zero-pole form".into()));
        }
        let mut zeros = if self.num.degree() > 0 { roots(&self.num)? } else { Vec::new() };
        let mut poles = self.poles();
        cancel(&mut zeros, &mut poles);
        ZeroPoleFn::new(self.num.leading(), zeros, poles)
    }
}

/// Remove common zero/pole pairs from two multisets.
pub(crate) fn cancel(zeros: &mut Vec<PointMult>, poles: &mut Vec<PointMult>) {
    for z in zeros.iter_mut() {
        for p in poles.iter_mut() {
            if z.mult > 0 && p.mult > 0 && near(z.at, p.at, CANCEL) {
                let m = z.mult.min(p.mult);
                z.mult -= m;
                p.mult -= m;
            }
        }
    }
    zeros.retain(|z| z.mult > 0);
    poles.retain(|p| p.mult > 0);
}

fn normalize(terms: Vec<PoleTerm>) -> Vec<PoleTerm> {
    let mut out: Vec<PoleTerm> = Vec::with_capacity(terms.len());
    for t in terms {
        match out.iter_mut().find(|o| near(o.at, t.at, POLE_MERGE)) {
            Some(o) => {
                if o.coeffs.len() < t.coeffs.len() {
                    o.coeffs.resize(t.coeffs.len(), C64::new(0.0, 0.0));
                }
                for (a, b) in o.coeffs.iter_mut().zip(&t.coeffs) {
                    *a += *b;
                }
            }
            None => out.push(t),
        }
    }
    for t in out.iter_mut() {
        let rho = cabs(t.at).max(1.0);
        let mut scale: f64 = 0.0;
        let mut w = 1.0;
        for a in &t.coeffs {
            w /= rho;
            scale = scale.max(cabs(*a) * w);
        }
        let mut w = 1.0 / rho;
        let weights: Vec<f64> = (0..t.coeffs.len())
            .map(|_| {
                let cur = w;
                w /= rho;
                cur
            })
            .collect();
        while let Some(last) = t.coeffs.last() {
            let k = t.coeffs.len() - 1;
            if cabs(*last) * weights[k] <= COEFF_DROP * scale {
                t.coeffs.pop();
            } else {
                break;
            }
        }
    }
    out.retain(|t| !t.coeffs.is_empty());
    out
}

fn combined_numerator(poly: &Polynomial, terms: &[PoleTerm]) -> Polynomial {
    let all: Vec<(C64, u32)> = terms.iter().map(|t| (t.at, t.order())).collect();
    let one = C64::new(1.0, 0.0);
    let mut num = poly * &Polynomial::from_roots(one, &all);
    for (i, t) in terms.iter().enumerate() {
        let mut others: Vec<(C64, u32)> = all
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, p)| *p)
            .collect();
        let k_total = t.order();
        for (k, &a) in t.coeffs.iter().enumerate() {
            others.push((t.at, k_total - (k as u32 + 1)));
            num = &num + &Polynomial::from_roots(a, &others);
            others.pop();
        }
    }
    num
}
