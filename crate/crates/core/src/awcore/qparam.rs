use crate::error::{Error, Result};
use crate::math::{cabs, floor, C64};

/// The deformation parameter `q` together with the constants derived from it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QParam {
    q: C64,
    q_half: C64,
    q_minus_half: C64,
    c_q: C64,
    b: u64,
}

impl QParam {
    /// Requires `0 < |q| < 1`; uses the principal square root.
    pub fn new(q: C64) -> Result<Self> {
        Self::with_constant(q, 0.0)
    }

    /// As [`QParam::new`], with `B` also exceeding the constant `c`.
    pub fn with_constant(q: C64, c: f64) -> Result<Self> {
        let aq = cabs(q);
        if !(aq > 0.0 && aq < 1.0) || !crate::math::is_finite(q) {
            return Err(Error::InvalidParameter(alloc::format!("0<|q|<1 violated for q = {q}")));
        }
        if !(c >= 0.0 && c.is_finite()) {
            return Err(Error::InvalidParameter("constant for B must be finite and nonnegative".into()));
        }
        let q_half = q.sqrt();
        let q_minus_half = C64::new(1.0, 0.0) / q_half;
        let c_q = (q_minus_half - q_half) * 0.5;
        let spread = 2.0 * (cabs(q_half) + cabs(q_minus_half));
        let b = floor(c).max(floor(spread)) as u64 + 1;
        Ok(Self { q, q_half, q_minus_half, c_q, b })
    }

    pub fn real(q: f64) -> Result<Self> {
        Self::new(C64::new(q, 0.0))
    }

    pub fn q(&self) -> C64 {
        self.q
    }

    pub fn q_half(&self) -> C64 {
        self.q_half
    }

    pub fn q_minus_half(&self) -> C64 {
        self.q_minus_half
    }

    /// `c(q) = (q^{−1/2} − q^{1/2})/2`.
    pub fn c_q(&self) -> C64 {
        self.c_q
    }

    /// `B = max{[C], [2(|q^{1/2}| + |q^{−1/2}|)]} + 1`.
    pub fn b(&self) -> u64 {
        self.b
    }

    /// `(q^{1/2} + q^{−1/2})/2`, the common image of `x = 1` under both shifts.
    pub fn a(&self) -> C64 {
        (self.q_half + self.q_minus_half) * 0.5
    }

    /// `2(|q^{1/2}| + |q^{−1/2}|)`.
    pub fn spread(&self) -> f64 {
        2.0 * (cabs(self.q_half) + cabs(self.q_minus_half))
    }
}
