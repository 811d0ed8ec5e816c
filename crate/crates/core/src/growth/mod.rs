//! Growth scales `φ(r)` and `s(r)`, the growth parameters `α_{φ,s}` and
//! `γ_{φ,s}`, and finite-scale estimators for `φ`-orders.

mod order;
mod params;
mod scale;

pub use order::{conv_exponent, phi_order, phi_order_maxmod, rho_phi_k, OrderEstimate, WINDOW};
pub use params::{alpha_gamma, alpha_gamma_closed_form, alpha_gamma_empirical, GrowthParams, ParamSource};
pub use scale::{PhiFamily, PhiFn, SFamily, SFn, DEFAULT_R0};
