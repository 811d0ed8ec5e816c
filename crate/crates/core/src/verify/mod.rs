//! Right-hand sides of the logarithmic-difference, counting and growth
//! estimates, exceptional sets, manufactured equations, and [`Verdict`]s.
//!
//! Every check is deterministic: grids come from the arguments or from
//! fixed defaults, never from random sampling.

mod common;
mod counting;
mod equation;
mod exceptional;
mod lemma_a;
mod logdiff;
mod pullback;
mod verdict;

pub use common::{
    check_grid, dq_safe_radius, estimate_order, estimate_order_on, logdiff_rhs, order_grid, require_case, rho_for,
    Case, RhoValue, DEFAULT_EPSILON, EXP_QUOTIENT_MAX,
};
pub use counting::{check_counting_bounds, ORDER_SLACK};
pub use equation::{
    check_theorem_order, manufacture_equation, manufacture_equation_with, EquationOptions, EquationSpec, PROBES,
    RESIDUAL_TOLERANCE, THEOREM_TOLERANCE,
};
pub use exceptional::{
    build_exceptional_set, check_pointwise_logdiff, log_measure, ExceptionalSet, PointwiseReport, POINTWISE_ANGLES,
};
pub use lemma_a::{check_lemma_a, default_lemma_a_grid, lemma_a_rhs, lemma_a_terms, LemmaATerms, RRule, SINGULAR_GUARD};
pub use logdiff::check_logdiff_m;
pub use pullback::{pullback_points, Direction};
pub use verdict::{GridRow, Provenance, Verdict};
