//! Numerics for the Askey–Wilson divided-difference operator `D_q` and for
//! Nevanlinna-theoretic growth of meromorphic functions.
//!
//! The crate is `no_std` and only needs `alloc`. Everything here is pure
//! computation over immutable values, so all public types are `Send + Sync`
//! and can be evaluated from many threads at once. File formats, the CLI and
//! parallel job scheduling live in the `awlab` companion crate.
//!
//! Module map:
//!
//! - [`funcmodel`]: closed-form meromorphic families ([`MeroFn`]), polynomial
//!   roots and interpolation.
//! - [`awcore`]: the `x ↦ z` branch, the hat/check maps, pointwise and exact
//!   `D_q`, and iterates `D_q^k`.
//! - [`nevanlinna`]: proximity, counting, characteristic and maximum modulus.
//! - [`growth`]: scale functions `φ`, `s`, growth parameters and order
//!   estimators.
//! - [`verify`]: right-hand sides of the logarithmic-difference, counting and
//!   order inequalities, exceptional sets, and [`Verdict`]s.

#![no_std]

extern crate alloc;

pub mod awcore;
mod error;
pub mod funcmodel;
pub mod growth;
pub(crate) mod math;
pub mod nevanlinna;
pub mod verify;

pub use awcore::{dq_closure, dq_eval, dq_iter, hat_check, z_of_x, HatCheckPair, QParam};
pub use error::{Error, Result};
pub use funcmodel::{MeroFn, PointMult, Polynomial, Target, Value, ZeroPoleFn};
pub use growth::{GrowthParams, PhiFn, SFn};
pub use math::C64;
pub use nevanlinna::{NevanlinnaTable, RadiusGrid};
pub use verify::Verdict;
