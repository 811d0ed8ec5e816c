use alloc::vec::Vec;

use super::{PointMult, Polynomial, Value};
use crate::error::{Error, Result};
use crate::math::{cabs, ln, near, C64};

/// Relative distance below which a zero and a pole count as colliding.
pub const MATCH_TOLERANCE: f64 = 1e-8;

/// `scale · Π (x − z_i)^{m_i} / Π (x − p_j)^{k_j}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ZeroPoleFn {
    scale: C64,
    zeros: Vec<PointMult>,
    poles: Vec<PointMult>,
}

impl ZeroPoleFn {
    pub fn new(scale: C64, zeros: Vec<PointMult>, poles: Vec<PointMult>) -> Result<Self> {
        if scale == C64::new(0.0, 0.0) || !crate::math::is_finite(scale) {
            return Err(Error::InvalidInput("zero-pole scale must be finite and nonzero".into()));
        }
        for pm in zeros.iter().chain(&poles) {
            if pm.mult == 0 || !crate::math::is_finite(pm.at) {
                return Err(Error::InvalidInput(
                    "zero/pole points need finite position and positive multiplicity".into(),
                ));
            }
        }
        for z in &zeros {
            if let Some(p) = poles.iter().find(|p| near(z.at, p.at, MATCH_TOLERANCE)) {
                return Err(Error::InvalidInput(alloc::format!(
                    "zero {} collides with pole {}",
                    z.at,
                    p.at
                )));
            }
        }
        Ok(Self { scale, zeros: merge(zeros), poles: merge(poles) })
    }

    pub fn scale(&self) -> C64 {
        self.scale
    }

    pub fn zeros(&self) -> &[PointMult] {
        &self.zeros
    }

    pub fn poles(&self) -> &[PointMult] {
        &self.poles
    }

    /// Numerator `scale · Π (x − z)^m` as a dense polynomial.
    pub fn numerator(&self) -> Polynomial {
        Polynomial::from_roots(self.scale, &pairs(&self.zeros))
    }

    /// Denominator `Π (x − p)^k` as a dense polynomial.
    pub fn denominator(&self) -> Polynomial {
        Polynomial::from_roots(C64::new(1.0, 0.0), &pairs(&self.poles))
    }

    pub fn num_degree(&self) -> usize {
        self.zeros.iter().map(|z| z.mult as usize).sum()
    }

    pub fn den_degree(&self) -> usize {
        self.poles.iter().map(|p| p.mult as usize).sum()
    }

    pub fn hits_pole(&self, x: C64) -> bool {
        self.poles.iter().any(|p| near(x, p.at, MATCH_TOLERANCE))
    }

    pub fn eval(&self, x: C64) -> Value {
        if self.hits_pole(x) {
            return Value::Pole;
        }
        let mut v = self.scale;
        for z in &self.zeros {
            v *= (x - z.at).powi(z.mult as i32);
        }
        for p in &self.poles {
            v /= (x - p.at).powi(p.mult as i32);
        }
        Value::Finite(v)
    }

    pub fn log_abs(&self, x: C64) -> f64 {
        let mut s = ln(cabs(self.scale));
        for z in &self.zeros {
            s += z.mult as f64 * ln(cabs(x - z.at));
        }
        for p in &self.poles {
            s -= p.mult as f64 * ln(cabs(x - p.at));
        }
        s
    }

    pub fn derivative_at(&self, x: C64) -> Result<C64> {
        if self.hits_pole(x) {
            return Err(Error::pole(x));
        }
        // at a zero the logarithmic derivative is singular, so use the
        // product rule on the remaining factors
        if let Some(idx) = self.zeros.iter().position(|z| x == z.at) {
            if self.zeros[idx].mult > 1 {
                return Ok(C64::new(0.0, 0.0));
            }
            let mut v = self.scale;
            for (j, z) in self.zeros.iter().enumerate() {
                if j != idx {
                    v *= (x - z.at).powi(z.mult as i32);
                }
            }
            for p in &self.poles {
                v /= (x - p.at).powi(p.mult as i32);
            }
            return Ok(v);
        }
        let Value::Finite(f) = self.eval(x) else {
            return Err(Error::pole(x));
        };
        let mut ld = C64::new(0.0, 0.0);
        for z in &self.zeros {
            ld += C64::new(z.mult as f64, 0.0) / (x - z.at);
        }
        for p in &self.poles {
            ld -= C64::new(p.mult as f64, 0.0) / (x - p.at);
        }
        Ok(f * ld)
    }

    pub fn reciprocal(&self) -> Self {
        Self {
            scale: C64::new(1.0, 0.0) / self.scale,
            zeros: self.poles.clone(),
            poles: self.zeros.clone(),
        }
    }
}

fn pairs(v: &[PointMult]) -> Vec<(C64, u32)> {
    v.iter().map(|p| (p.at, p.mult)).collect()
}

/// Combine repeated points (exact matches) into a single entry.
fn merge(points: Vec<PointMult>) -> Vec<PointMult> {
    let mut out: Vec<PointMult> = Vec::with_capacity(points.len());
    for p in points {
        match out.iter_mut().find(|q| q.at == p.at) {
            Some(q) => q.mult += p.mult,
            None => out.push(p),
        }
    }
    out
}
