use alloc::string::String;

use crate::error::{Error, Result};
use crate::math::{exp, ln, powf};

/// Lower validity radius shared by all built-in scales.
pub const DEFAULT_R0: f64 = 10.0;

/// The built-in `φ` families.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PhiFamily {
    /// `log r`
    Log,
    /// `log^α r`, `α ∈ (1, 2]`
    LogPow(f64),
    /// `exp(log^β r)`, `β ∈ (0, 1]`
    ExpLogPow(f64),
    /// `r^β`, `β ∈ (0, 1]`
    Pow(f64),
}

/// A growth scale `φ` on `[R₀, ∞)` with `log r ≤ φ(r) ≤ r`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhiFn {
    family: PhiFamily,
    r0: f64,
}

impl PhiFn {
    /// Validates the parameter range and the sandwich `log r ≤ φ(r) ≤ r`
    /// on a geometric grid from `R₀` to `10^300`.
    pub fn new(family: PhiFamily) -> Result<Self> {
        match family {
            PhiFamily::Log => {}
            PhiFamily::LogPow(a) if a > 1.0 && a <= 2.0 => {}
            PhiFamily::ExpLogPow(b) | PhiFamily::Pow(b) if b > 0.0 && b <= 1.0 => {}
            _ => {
                return Err(Error::InvalidParameter(alloc::format!(
                    "parameter out of range for {family:?}"
                )))
            }
        }
        let phi = Self { family, r0: DEFAULT_R0 };
        // sandwich in log space: ln ln r ≤ ln φ ≤ ln r
        let mut l = ln(phi.r0);
        while l < 690.0 {
            let lp = phi.log_phi_of_log_r(l);
            if lp < ln(l) - 1e-12 || lp > l + 1e-12 {
                return Err(Error::InvalidParameter(alloc::format!(
                    "{} violates log r ≤ φ(r) ≤ r at r = e^{l:.3}",
                    phi.name()
                )));
            }
            l *= 1.05;
        }
        Ok(phi)
    }

    pub fn log() -> Self {
        Self { family: PhiFamily::Log, r0: DEFAULT_R0 }
    }

    pub fn family(&self) -> PhiFamily {
        self.family
    }

    pub fn r0(&self) -> f64 {
        self.r0
    }

    pub fn name(&self) -> String {
        match self.family {
            PhiFamily::Log => "log".into(),
            PhiFamily::LogPow(a) => alloc::format!("log^{a}"),
            PhiFamily::ExpLogPow(b) => alloc::format!("exp(log^{b})"),
            PhiFamily::Pow(b) => alloc::format!("r^{b}"),
        }
    }

    /// `φ(r)` for `r ≥ R₀`.
    pub fn value(&self, r: f64) -> Result<f64> {
        if !(r >= self.r0) {
            return Err(Error::BelowR0 { r, r0: self.r0 });
        }
        Ok(self.raw(r))
    }

    /// The family formula without the `R₀` check (needs `r > 1`).
    pub fn raw(&self, r: f64) -> f64 {
        exp(self.log_phi_of_log_r(ln(r)))
    }

    /// `log φ(e^ℓ)`, usable far beyond the range of `f64` radii.
    pub fn log_phi_of_log_r(&self, l: f64) -> f64 {
        match self.family {
            PhiFamily::Log => ln(l),
            PhiFamily::LogPow(a) => a * ln(l),
            PhiFamily::ExpLogPow(b) => powf(l, b),
            PhiFamily::Pow(b) => b * l,
        }
    }

    /// Empirical subadditivity `φ(a+b) ≤ φ(a) + φ(b)` on 1000 pairs in `[R₀, 10^12]`.
    pub fn is_subadditive(&self) -> bool {
        let top = ln(1e12 / self.r0);
        let grid = |i: usize| self.r0 * exp(top * i as f64 / 39.0);
        (0..40).all(|i| {
            (0..25).all(|j| {
                let a = grid(i);
                let b = grid(j * 39 / 24);
                self.raw(a + b) <= (self.raw(a) + self.raw(b)) * (1.0 + 1e-12)
            })
        })
    }

    /// `limsup log φ(r) / log r = 0`.
    pub fn has_vanishing_log_ratio(&self) -> bool {
        match self.family {
            PhiFamily::Log | PhiFamily::LogPow(_) => true,
            PhiFamily::ExpLogPow(b) => b < 1.0,
            PhiFamily::Pow(_) => false,
        }
    }
}

/// The built-in comparison radii `s(r)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SFamily {
    /// `r log r`
    RLogR,
    /// `r^α`, `α ∈ (1, 2]`
    RPow(f64),
    /// `c r`, `1 < c ≤ R₀`
    LinearC(f64),
}

/// A comparison radius with `r < s(r) ≤ r²` on `[R₀, ∞)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SFn {
    family: SFamily,
}

impl SFn {
    pub fn new(family: SFamily) -> Result<Self> {
        let ok = match family {
            SFamily::RLogR => true,
            SFamily::RPow(a) => a > 1.0 && a <= 2.0,
            // c r ≤ r² needs c ≤ R₀
            SFamily::LinearC(c) => c > 1.0 && c <= DEFAULT_R0,
        };
        if !ok {
            return Err(Error::InvalidParameter(alloc::format!("parameter out of range for {family:?}")));
        }
        Ok(Self { family })
    }

    pub fn family(&self) -> SFamily {
        self.family
    }

    pub fn name(&self) -> String {
        match self.family {
            SFamily::RLogR => "r log r".into(),
            SFamily::RPow(a) => alloc::format!("r^{a}"),
            SFamily::LinearC(c) => alloc::format!("{c}r"),
        }
    }

    pub fn value(&self, r: f64) -> f64 {
        match self.family {
            SFamily::RLogR => r * ln(r),
            SFamily::RPow(a) => powf(r, a),
            SFamily::LinearC(c) => c * r,
        }
    }

    /// `log s(e^ℓ)`.
    pub fn log_s_of_log_r(&self, l: f64) -> f64 {
        l + self.log_s_over_r(l)
    }

    /// `log (s(r)/r)` at `r = e^ℓ`.
    pub fn log_s_over_r(&self, l: f64) -> f64 {
        match self.family {
            SFamily::RLogR => ln(l),
            SFamily::RPow(a) => (a - 1.0) * l,
            SFamily::LinearC(c) => ln(c),
        }
    }

    pub fn is_convex(&self) -> bool {
        true
    }

    pub fn is_differentiable(&self) -> bool {
        true
    }

    /// `limsup s(r)/r = ∞`.
    pub fn s_over_r_unbounded(&self) -> bool {
        !matches!(self.family, SFamily::LinearC(_))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::E;

    #[test]
    fn values() {
        assert!((PhiFn::log().value(powf(E, 10.0)).unwrap() - 10.0).abs() < 1e-12);
        let p = PhiFn::new(PhiFamily::Pow(0.5)).unwrap();
        assert!((p.value(100.0).unwrap() - 10.0).abs() < 1e-12);
        let lp = PhiFn::new(PhiFamily::LogPow(2.0)).unwrap();
        assert!((lp.value(powf(E, 3.0)).unwrap() - 9.0).abs() < 1e-9);
        assert!(matches!(p.value(5.0), Err(Error::BelowR0 { .. })));
    }

    #[test]
    fn sandwich_rejects_slow_powers() {
        assert!(PhiFn::new(PhiFamily::Pow(0.2)).is_err());
        assert!(PhiFn::new(PhiFamily::LogPow(2.5)).is_err());
        assert!(SFn::new(SFamily::RPow(3.0)).is_err());
    }

    #[test]
    fn subadditivity_and_doubling() {
        for fam in [PhiFamily::Log, PhiFamily::LogPow(1.5), PhiFamily::ExpLogPow(0.5), PhiFamily::Pow(0.5)] {
            let phi = PhiFn::new(fam).unwrap();
            assert!(phi.is_subadditive(), "{fam:?}");
            for k in 0..50 {
                let r = 10.0 * powf(1.7, k as f64);
                assert!(phi.raw(2.0 * r) <= 2.0 * phi.raw(r) * (1.0 + 1e-12));
            }
        }
    }
}
