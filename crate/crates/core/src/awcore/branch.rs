use super::QParam;
use crate::math::{cabs, C64};

/// `x̂`, `x̌` and the branch value `z` they were computed from.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HatCheckPair {
    pub x_hat: C64,
    pub x_check: C64,
    pub z: C64,
}

/// The branch of `z = x + √(x² − 1)` with `|z| ≥ 1`.
///
/// On the cut `x ∈ [−1, 1]` both roots have modulus one and the root with
/// `Im z ≥ 0` is taken, so `z(1) = 1`, `z(−1) = −1` and `z(0) = i`.
pub fn z_of_x(x: C64) -> C64 {
    let s = (x * x - C64::new(1.0, 0.0)).sqrt();
    let z1 = x + s;
    let z2 = x - s;
    let (a1, a2) = (cabs(z1), cabs(z2));
    if (a1 - a2).abs() <= 1e-12 * a1.max(a2) {
        return if z1.im >= z2.im { z1 } else { z2 };
    }
    if a1 > a2 {
        z1
    } else {
        z2
    }
}

/// Hat/check points from the fixed branch of [`z_of_x`].
pub fn hat_check(x: C64, q: &QParam) -> HatCheckPair {
    hat_check_with_z(z_of_x(x), q)
}

/// Hat/check points from an explicit branch value `z` (`x = (z + 1/z)/2`).
pub fn hat_check_with_z(z: C64, q: &QParam) -> HatCheckPair {
    let zi = C64::new(1.0, 0.0) / z;
    HatCheckPair {
        x_hat: (q.q_half() * z + q.q_minus_half() * zi) * 0.5,
        x_check: (q.q_minus_half() * z + q.q_half() * zi) * 0.5,
        z,
    }
}
