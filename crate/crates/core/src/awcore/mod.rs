//! The Askey–Wilson divided-difference operator.
//!
//! With `x = (z + 1/z)/2` the operator is
//! `(D_q f)(x) = (f(x̂) − f(x̌)) / (x̂ − x̌)` where
//! `x̂ = (q^{1/2} z + q^{−1/2} z^{−1})/2` and `x̌ = (q^{−1/2} z + q^{1/2} z^{−1})/2`.
//! At `x = ±1` the two points coincide and the value is
//! `f'(±(q^{1/2} + q^{−1/2})/2)`.

mod branch;
mod closure;
pub(crate) mod eval;
mod nested;
mod qparam;

pub use branch::{hat_check, hat_check_with_z, z_of_x, HatCheckPair};
pub use closure::{dq_closure, dq_partial_fraction, dq_polynomial};
pub use eval::{dq_eval, EXCEPTIONAL_TOLERANCE};
pub use nested::{dq_iter, dq_iter_with_limit, DqQuotient, NumericDq, DEFAULT_MAX_DEPTH};
pub use qparam::QParam;
