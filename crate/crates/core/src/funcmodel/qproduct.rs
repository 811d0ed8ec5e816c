use alloc::vec::Vec;

use super::PointMult;
use crate::error::{Error, Result};
use crate::math::{cabs, ln, powi, C64};

/// Validity margin: queries must stay inside `(1 − δ)·|q|^{−M}`.
pub const VALIDITY_MARGIN: f64 = 0.1;

/// `scale · Π_{n=1}^{M} (1 − x qⁿ)`, a truncation of an entire function of
/// logarithmic order 2.
#[derive(Clone, Debug, PartialEq)]
pub struct QProduct {
    scale: C64,
    q: C64,
    terms: u32,
}

impl QProduct {
    pub fn new(scale: C64, q: C64, terms: u32) -> Result<Self> {
        let aq = cabs(q);
        if !(aq > 0.0 && aq < 1.0) {
            return Err(Error::InvalidParameter("q-product needs 0 < |q| < 1".into()));
        }
        if terms == 0 {
            return Err(Error::InvalidParameter("q-product needs at least one factor".into()));
        }
        if scale == C64::new(0.0, 0.0) {
            return Err(Error::InvalidParameter("q-product scale must be nonzero".into()));
        }
        Ok(Self { scale, q, terms })
    }

    pub fn scale(&self) -> C64 {
        self.scale
    }

    pub fn q(&self) -> C64 {
        self.q
    }

    pub fn terms(&self) -> u32 {
        self.terms
    }

    pub fn validity_radius(&self) -> f64 {
        powi(cabs(self.q), -(self.terms as i32)) * (1.0 - VALIDITY_MARGIN)
    }

    pub fn zeros(&self) -> Vec<PointMult> {
        let inv = C64::new(1.0, 0.0) / self.q;
        let mut at = C64::new(1.0, 0.0);
        (0..self.terms)
            .map(|_| {
                at *= inv;
                PointMult::new(at, 1)
            })
            .collect()
    }

    pub fn eval(&self, x: C64) -> C64 {
        let mut qn = C64::new(1.0, 0.0);
        let mut v = self.scale;
        for _ in 0..self.terms {
            qn *= self.q;
            v *= C64::new(1.0, 0.0) - x * qn;
        }
        v
    }

    pub fn log_abs(&self, x: C64) -> f64 {
        let mut qn = C64::new(1.0, 0.0);
        let mut s = ln(cabs(self.scale));
        for _ in 0..self.terms {
            qn *= self.q;
            s += ln(cabs(C64::new(1.0, 0.0) - x * qn));
        }
        s
    }

    pub fn derivative(&self, x: C64) -> C64 {
        // Σ_n (−qⁿ) Π_{m≠n} (1 − x q^m) · scale
        let factors: Vec<C64> = {
            let mut qn = C64::new(1.0, 0.0);
            (0..self.terms)
                .map(|_| {
                    qn *= self.q;
                    qn
                })
                .collect()
        };
        let mut total = C64::new(0.0, 0.0);
        for (i, &qi) in factors.iter().enumerate() {
            let mut prod = -qi * self.scale;
            for (j, &qj) in factors.iter().enumerate() {
                if i != j {
                    prod *= C64::new(1.0, 0.0) - x * qj;
                }
            }
            total += prod;
        }
        total
    }
}
