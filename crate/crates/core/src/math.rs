use alloc::vec::Vec;
use core::f64::consts::PI;

/// Tolerance below 1 that `arccosh_clamped` absorbs as rounding.
pub(crate) const ARCCOSH_CLAMP_TOL: f64 = 1e-12;

pub fn sech(x: f64) -> f64 {
    1.0 / x.cosh()
}

/// `ln(u + sqrt(u^2 - 1))`, with `u` in `[1 - 1e-12, 1)` treated as 1.
///
/// Returns NaN for `u` further below 1.
pub fn arccosh_clamped(u: f64) -> f64 {
    if u < 1.0 - ARCCOSH_CLAMP_TOL || u.is_nan() {
        return f64::NAN;
    }
    let u = u.max(1.0);
    (u + (u * u - 1.0).sqrt()).ln()
}

/// `n` evenly spaced points from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => alloc::vec![lo],
        _ => {
            let step = (hi - lo) / (n - 1) as f64;
            (0..n)
                .map(|i| if i == n - 1 { hi } else { lo + step * i as f64 })
                .collect()
        }
    }
}

/// Maps an angle into `(-pi, pi]`.
pub(crate) fn normalize_angle(phi: f64) -> f64 {
    if phi > -PI && phi <= PI {
        return phi;
    }
    let two_pi = 2.0 * PI;
    let mut t = phi % two_pi;
    if t <= -PI {
        t += two_pi;
    } else if t > PI {
        t -= two_pi;
    }
    t
}

pub(crate) fn sigmoid(t: f64) -> f64 {
    if t >= 0.0 {
        1.0 / (1.0 + (-t).exp())
    } else {
        let e = t.exp();
        e / (1.0 + e)
    }
}
