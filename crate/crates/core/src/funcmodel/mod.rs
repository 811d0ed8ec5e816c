//! Closed-form meromorphic functions.
//!
//! [`MeroFn`] is a tagged union over the families the rest of the crate
//! works with. Every variant evaluates exactly (up to rounding) and knows
//! whether it is entire; the rational and product families also enumerate
//! their zeros and poles, which the counting functions need.

pub mod interp;
mod mero;
mod partial;
mod polynomial;
mod qproduct;
pub mod roots;
pub(crate) mod series;
mod zeropole;

pub use interp::{chebyshev_nodes, interpolate};
pub use mero::MeroFn;
pub use partial::{PartialFraction, PoleTerm};
pub use polynomial::Polynomial;
pub use qproduct::QProduct;
pub use roots::roots;
pub use zeropole::{ZeroPoleFn, MATCH_TOLERANCE};

pub(crate) use partial::cancel;

use crate::math::C64;

/// A point with a positive multiplicity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PointMult {
    pub at: C64,
    pub mult: u32,
}

impl PointMult {
    pub fn new(at: C64, mult: u32) -> Self {
        Self { at, mult }
    }
}

/// Result of evaluating a meromorphic function.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Value {
    Finite(C64),
    Pole,
}

impl Value {
    pub fn finite(self) -> Option<C64> {
        match self {
            Value::Finite(v) => Some(v),
            Value::Pole => None,
        }
    }
}

/// The value `a` whose preimages are counted: `∞` (poles) or a finite point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Target {
    Infinity,
    Value(C64),
}

impl Target {
    pub const ZERO: Target = Target::Value(C64::new(0.0, 0.0));
}
