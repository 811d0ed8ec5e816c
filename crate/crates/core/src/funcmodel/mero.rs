use alloc::vec::Vec;

use super::{roots, PartialFraction, PointMult, Polynomial, QProduct, Target, Value, ZeroPoleFn};
use crate::awcore::eval::central_difference;
use crate::awcore::{DqQuotient, NumericDq};
use crate::error::{Error, Result};
use crate::math::{cabs, ln, C64};

/// A meromorphic function from one of the supported closed-form families.
#[derive(Clone, Debug, PartialEq)]
pub enum MeroFn {
    Polynomial(Polynomial),
    ZeroPole(ZeroPoleFn),
    /// Rational function as polynomial part plus principal parts; the exact
    /// image of rational input under `D_q`.
    PartialFraction(PartialFraction),
    /// `exp(P(x))`.
    ExpPoly(Polynomial),
    TruncatedQProduct(QProduct),
    NumericDq(NumericDq),
    /// `Σ_j w_j · D_q^j g / g`, used for coefficients of manufactured equations.
    DqQuotient(DqQuotient),
}

impl MeroFn {
    pub fn family(&self) -> &'static str {
        match self {
            MeroFn::Polynomial(_) => "polynomial",
            MeroFn::ZeroPole(_) => "zero-pole",
            MeroFn::PartialFraction(_) => "partial-fraction",
            MeroFn::ExpPoly(_) => "exp-poly",
            MeroFn::TruncatedQProduct(_) => "q-product",
            MeroFn::NumericDq(_) => "numeric-dq",
            MeroFn::DqQuotient(_) => "dq-quotient",
        }
    }

    /// Radius beyond which evaluation is refused.
    pub fn validity_radius(&self) -> f64 {
        match self {
            MeroFn::TruncatedQProduct(p) => p.validity_radius(),
            MeroFn::NumericDq(n) => n.validity_radius(),
            MeroFn::DqQuotient(d) => d.validity_radius(),
            _ => f64::INFINITY,
        }
    }

    fn check_validity(&self, x: C64) -> Result<()> {
        let valid = self.validity_radius();
        let r = cabs(x);
        if r > valid {
            return Err(Error::OutOfValidity { radius: r, valid });
        }
        Ok(())
    }

    pub fn is_entire(&self) -> bool {
        match self {
            MeroFn::Polynomial(_) | MeroFn::ExpPoly(_) | MeroFn::TruncatedQProduct(_) => true,
            MeroFn::ZeroPole(z) => z.poles().is_empty(),
            MeroFn::PartialFraction(pf) => pf.is_polynomial(),
            MeroFn::NumericDq(n) => n.base().is_entire(),
            MeroFn::DqQuotient(d) => d.is_entire(),
        }
    }

    /// True for constant functions that can be recognised structurally.
    pub fn is_constant(&self) -> bool {
        match self {
            MeroFn::Polynomial(p) | MeroFn::ExpPoly(p) => p.is_constant(),
            MeroFn::ZeroPole(z) => z.zeros().is_empty() && z.poles().is_empty(),
            MeroFn::PartialFraction(pf) => pf.is_polynomial() && pf.poly().is_constant(),
            _ => false,
        }
    }

    pub fn eval(&self, x: C64) -> Result<Value> {
        self.check_validity(x)?;
        Ok(match self {
            MeroFn::Polynomial(p) => Value::Finite(p.eval(x)),
            MeroFn::ZeroPole(z) => z.eval(x),
            MeroFn::PartialFraction(pf) => pf.eval(x),
            MeroFn::ExpPoly(p) => Value::Finite(p.eval(x).exp()),
            MeroFn::TruncatedQProduct(p) => Value::Finite(p.eval(x)),
            MeroFn::NumericDq(n) => Value::Finite(n.eval(x)?),
            MeroFn::DqQuotient(d) => Value::Finite(d.eval(x)?),
        })
    }

    /// Finite value at `x`, with a pole reported as [`Error::PoleHit`].
    pub fn value_at(&self, x: C64) -> Result<C64> {
        match self.eval(x)? {
            Value::Finite(v) => Ok(v),
            Value::Pole => Err(Error::pole(x)),
        }
    }

    /// `log |f(x)|`, overflow-safe for the closed-form families; `+∞` at poles.
    pub fn log_abs(&self, x: C64) -> Result<f64> {
        self.check_validity(x)?;
        Ok(match self {
            MeroFn::Polynomial(p) => p.log_abs(x),
            MeroFn::ZeroPole(z) => {
                if z.hits_pole(x) {
                    f64::INFINITY
                } else {
                    z.log_abs(x)
                }
            }
            MeroFn::PartialFraction(pf) => match pf.eval(x) {
                Value::Pole => f64::INFINITY,
                Value::Finite(_) => pf.log_abs(x),
            },
            MeroFn::ExpPoly(p) => p.eval(x).re,
            MeroFn::TruncatedQProduct(p) => p.log_abs(x),
            MeroFn::NumericDq(_) | MeroFn::DqQuotient(_) => match self.eval(x) {
                Ok(Value::Finite(v)) => ln(cabs(v)),
                Ok(Value::Pole) | Err(Error::PoleHit { .. }) => f64::INFINITY,
                Err(e) => return Err(e),
            },
        })
    }

    /// Whether [`MeroFn::derivative_at`] is exact rather than a finite difference.
    pub fn has_exact_derivative(&self) -> bool {
        !matches!(self, MeroFn::NumericDq(_) | MeroFn::DqQuotient(_))
    }

    pub fn derivative_at(&self, x: C64) -> Result<C64> {
        self.check_validity(x)?;
        match self {
            MeroFn::Polynomial(p) => Ok(p.derivative().eval(x)),
            MeroFn::ZeroPole(z) => z.derivative_at(x),
            MeroFn::PartialFraction(pf) => pf.derivative_at(x),
            MeroFn::ExpPoly(p) => Ok(p.derivative().eval(x) * p.eval(x).exp()),
            MeroFn::TruncatedQProduct(p) => Ok(p.derivative(x)),
            MeroFn::NumericDq(_) | MeroFn::DqQuotient(_) => {
                central_difference(x, |y| self.value_at(y))
            }
        }
    }

    /// All `a`-points (solutions of `f = a`, or poles for `a = ∞`) with
    /// multiplicity. Infinite or unenumerable sets give [`Error::Unsupported`].
    pub fn a_points(&self, target: Target) -> Result<Vec<PointMult>> {
        let unsupported = || {
            Err(Error::Unsupported(alloc::format!(
                "a-points of the {} family are not enumerable",
                self.family()
            )))
        };
        match (self, target) {
            (f, Target::Infinity) if f.is_entire() => Ok(Vec::new()),
            (MeroFn::Polynomial(p), Target::Value(a)) => {
                let shifted = p - &Polynomial::constant(a);
                if shifted.is_zero() {
                    return Err(Error::InvalidInput("function is identically equal to the target".into()));
                }
                if shifted.degree() == 0 {
                    return Ok(Vec::new());
                }
                roots(&shifted)
            }
            (MeroFn::ZeroPole(z), Target::Infinity) => Ok(z.poles().to_vec()),
            (MeroFn::ZeroPole(z), Target::Value(a)) if a == C64::new(0.0, 0.0) => {
                Ok(z.zeros().to_vec())
            }
            (MeroFn::ZeroPole(z), Target::Value(a)) => {
                PartialFraction::from_zero_pole(z).value_points(a)
            }
            (MeroFn::PartialFraction(pf), Target::Infinity) => Ok(pf.poles()),
            (MeroFn::PartialFraction(pf), Target::Value(a)) => pf.value_points(a),
            (MeroFn::ExpPoly(p), Target::Value(a)) => {
                if a == C64::new(0.0, 0.0) {
                    Ok(Vec::new())
                } else if p.is_constant() {
                    let v = p.eval(C64::new(0.0, 0.0)).exp();
                    if v == a {
                        Err(Error::InvalidInput("function is identically equal to the target".into()))
                    } else {
                        Ok(Vec::new())
                    }
                } else {
                    unsupported()
                }
            }
            (MeroFn::TruncatedQProduct(p), Target::Value(a)) if a == C64::new(0.0, 0.0) => {
                Ok(p.zeros())
            }
            _ => unsupported(),
        }
    }

    pub fn zeros_in_disc(&self, r: f64) -> Result<Vec<PointMult>> {
        Ok(filter_disc(self.a_points(Target::ZERO)?, r))
    }

    pub fn poles_in_disc(&self, r: f64) -> Result<Vec<PointMult>> {
        Ok(filter_disc(self.a_points(Target::Infinity)?, r))
    }

    /// The combined zero and pole sequence `{c_n}`, each listed with multiplicity.
    pub fn zeros_and_poles(&self) -> Result<Vec<PointMult>> {
        let mut all = self.a_points(Target::ZERO)?;
        all.extend(self.a_points(Target::Infinity)?);
        Ok(all)
    }

    /// Rational input as partial fractions, if this is a rational family.
    pub fn as_partial_fraction(&self) -> Option<PartialFraction> {
        match self {
            MeroFn::Polynomial(p) => Some(PartialFraction::from_polynomial(p.clone())),
            MeroFn::ZeroPole(z) => Some(PartialFraction::from_zero_pole(z)),
            MeroFn::PartialFraction(pf) => Some(pf.clone()),
            _ => None,
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, MeroFn::Polynomial(_) | MeroFn::ZeroPole(_) | MeroFn::PartialFraction(_))
    }
}

fn filter_disc(points: Vec<PointMult>, r: f64) -> Vec<PointMult> {
    points.into_iter().filter(|p| cabs(p.at) < r).collect()
}

impl From<Polynomial> for MeroFn {
    fn from(p: Polynomial) -> Self {
        MeroFn::Polynomial(p)
    }
}

impl From<ZeroPoleFn> for MeroFn {
    fn from(z: ZeroPoleFn) -> Self {
        MeroFn::ZeroPole(z)
    }
}

impl From<QProduct> for MeroFn {
    fn from(p: QProduct) -> Self {
        MeroFn::TruncatedQProduct(p)
    }
}
