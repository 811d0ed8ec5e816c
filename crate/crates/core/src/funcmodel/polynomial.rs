use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use crate::math::{cabs, ln, C64};

/// Dense polynomial with complex coefficients in ascending degree order.
///
/// Trailing exact zeros are stripped on construction, so the zero polynomial
/// has an empty coefficient list.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Polynomial {
    coeffs: Vec<C64>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<C64>) -> Self {
        while coeffs.last().is_some_and(|c| *c == C64::new(0.0, 0.0)) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| C64::new(c, 0.0)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: C64) -> Self {
        Self::new(vec![c])
    }

    /// The identity `e(x) = x`.
    pub fn x() -> Self {
        Self::from_real(&[0.0, 1.0])
    }

    pub fn monomial(degree: usize, c: C64) -> Self {
        let mut coeffs = vec![C64::new(0.0, 0.0); degree + 1];
        coeffs[degree] = c;
        Self::new(coeffs)
    }

    /// `scale · Π (x − root)^mult`.
    pub fn from_roots(scale: C64, roots: &[(C64, u32)]) -> Self {
        let mut p = Self::constant(scale);
        for &(r, m) in roots {
            let lin = Self::new(vec![-r, C64::new(1.0, 0.0)]);
            for _ in 0..m {
                p = &p * &lin;
            }
        }
        p
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0 (check [`Polynomial::is_zero`]).
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> C64 {
        self.coeffs.last().copied().unwrap_or_default()
    }

    pub fn eval(&self, x: C64) -> C64 {
        self.coeffs
            .iter()
            .rev()
            .fold(C64::new(0.0, 0.0), |acc, &c| acc * x + c)
    }

    /// `Σ |c_k| |x|^k`, the natural scale for rounding error in [`Polynomial::eval`].
    pub fn eval_abs(&self, x: C64) -> f64 {
        let t = cabs(x);
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * t + cabs(*c))
    }

    /// `log |p(x)|`, computed without overflow for large `|x|`.
    pub fn log_abs(&self, x: C64) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        let t = cabs(x);
        if t <= 1.0 {
            return ln(cabs(self.eval(x)));
        }
        // p(x) = x^d · Σ c_k x^{k-d}
        let inv = C64::new(1.0, 0.0) / x;
        let tail = self
            .coeffs
            .iter()
            .fold(C64::new(0.0, 0.0), |acc, &c| acc * inv + c);
        self.degree() as f64 * ln(t) + ln(cabs(tail))
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * k as f64)
                .collect(),
        )
    }

    pub fn scale(&self, s: C64) -> Self {
        Self::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    /// Polynomial long division: `self = q·d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.coeffs.len() < d.coeffs.len() {
            return (Self::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let dd = d.degree();
        let lead = d.leading();
        let mut quot = vec![C64::new(0.0, 0.0); self.coeffs.len() - dd];
        for k in (0..quot.len()).rev() {
            let t = rem[k + dd] / lead;
            quot[k] = t;
            for (j, &dc) in d.coeffs.iter().enumerate() {
                rem[k + j] -= t * dc;
            }
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// Taylor coefficients of `p(a + t)` in powers of `t`.
    pub fn shift(&self, a: C64) -> Vec<C64> {
        let mut out = self.coeffs.clone();
        let n = out.len();
        // repeated synthetic division
        for i in 0..n {
            for j in (i..n - 1).rev() {
                let next = out[j + 1];
                out[j] += a * next;
            }
        }
        out
    }

    /// Largest `|c_k| ρ^k`, the coefficient scale relative to radius `rho`.
    pub fn scaled_norm(&self, rho: f64) -> f64 {
        let mut s = 1.0;
        let mut best: f64 = 0.0;
        for c in &self.coeffs {
            best = best.max(cabs(*c) * s);
            s *= rho;
        }
        best
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![C64::new(0.0, 0.0); n];
        for (k, c) in self.coeffs.iter().enumerate() {
            out[k] += c;
        }
        for (k, c) in rhs.coeffs.iter().enumerate() {
            out[k] += c;
        }
        Polynomial::new(out)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![C64::new(0.0, 0.0); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}
