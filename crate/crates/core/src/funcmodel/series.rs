//! Truncated power series in a local variable `t`, used to expand rational
//! functions around a pole.

use alloc::vec;
use alloc::vec::Vec;

use crate::math::C64;

/// First `n` coefficients of `(a + t)^e` for any integer `e`.
///
/// `a` may be zero only when `e ≥ 0`.
pub(crate) fn binomial(a: C64, e: i32, n: usize) -> Vec<C64> {
    let mut out = vec![C64::new(0.0, 0.0); n];
    if n == 0 {
        return out;
    }
    if a == C64::new(0.0, 0.0) {
        debug_assert!(e >= 0);
        if e >= 0 && (e as usize) < n {
            out[e as usize] = C64::new(1.0, 0.0);
        }
        return out;
    }
    out[0] = a.powi(e);
    let inv_a = C64::new(1.0, 0.0) / a;
    for j in 1..n {
        out[j] = out[j - 1] * inv_a * ((e as f64 - (j - 1) as f64) / j as f64);
    }
    out
}

/// Product of two series truncated to `n` terms.
pub(crate) fn mul(a: &[C64], b: &[C64], n: usize) -> Vec<C64> {
    let mut out = vec![C64::new(0.0, 0.0); n];
    for (i, &x) in a.iter().enumerate().take(n) {
        if x == C64::new(0.0, 0.0) {
            continue;
        }
        for (j, &y) in b.iter().enumerate().take(n - i) {
            out[i + j] += x * y;
        }
    }
    out
}
