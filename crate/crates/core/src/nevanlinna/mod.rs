//! Nevanlinna functionals on circles `|x| = r`.
//!
//! `m(r, a, f)` is computed by adaptive quadrature; `n` and `N` come straight
//! from the enumerated `a`-points, so they are exact up to root accuracy.

mod functionals;
pub(crate) use functionals::singular_angles;
pub mod quad;
mod table;

pub use functionals::{
    characteristic_t, count_n, integrated_n, log_max_modulus, max_modulus, prox_m, prox_m_with, prox_of,
    LOG_CLAMP,
};
pub use table::{default_r_max, NevanlinnaTable, RadiusGrid, TableRow};
