use alloc::vec::Vec;

use crate::awcore::{hat_check, QParam};
use crate::math::{cabs, near, C64};

/// Which of the two shifted points is pulled back.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    Hat,
    Check,
}

/// Residual allowed when matching a candidate against the fixed branch.
const BRANCH_TOLERANCE: f64 = 1e-9;

/// All `x` with `x̂ = c` (or `x̌ = c`), computed on the branch of `z_of_x`.
///
/// Solves `q^{±1/2} z + q^{∓1/2} z^{−1} = 2c` for `z` and maps each root to
/// `x = (z + 1/z)/2`. A root whose image does not reproduce `c` under the
/// fixed branch is a preimage on the other sheet and is dropped.
pub fn pullback_points(c: C64, q: &QParam, dir: Direction) -> Vec<C64> {
    let one = C64::new(1.0, 0.0);
    let w = (c * c - one).sqrt();
    let lead = match dir {
        Direction::Hat => q.q_half(),
        Direction::Check => q.q_minus_half(),
    };
    let image = |x: C64| {
        let h = hat_check(x, q);
        match dir {
            Direction::Hat => h.x_hat,
            Direction::Check => h.x_check,
        }
    };
    let mut cands: Vec<(C64, f64)> = [c + w, c - w]
        .into_iter()
        .filter(|z| cabs(*z) > 0.0)
        .map(|z| {
            let z = z / lead;
            let x = (z + one / z) * 0.5;
            (x, cabs(image(x) - c))
        })
        .collect();
    let tol = BRANCH_TOLERANCE * cabs(c).max(1.0);
    cands.retain(|p| p.1 <= tol);
    let mut out: Vec<C64> = Vec::with_capacity(2);
    for (x, _) in cands {
        if !out.iter().any(|y| near(*y, x, 1e-12)) {
            out.push(x);
        }
    }
    out
}
