//! Peres-Simon separability of two-mode Gaussian states, the separability
//! threshold of squeezed thermal states, and the Bures degree of entanglement
//! `E0`.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::error::{domain, Error, Result};
use crate::fidelity::fidelity_two_mode_sts;
use crate::gaussian::{local_invariants, CovMat2, TwoModeStsParams};
use crate::math::{arccosh_clamped, normalize_angle, sech, sigmoid};
use crate::minimize::{multistart, NelderMeadOptions, SplitMix64};
use crate::nonclassicality::MULTISTART_POINTS;

/// Slack on the sign of the partially transposed Heisenberg combination.
pub const SEPARABILITY_TOL: f64 = 1e-12;
const SEED: u64 = 0x5EED_E0E0_51CA_0002;

/// `det V - (det V1 + det V2 + 2 |det C|)/4 + 1/16`.
pub fn peres_simon_combination(m: &CovMat2) -> f64 {
    let inv = local_invariants(m);
    inv.det_v - 0.25 * (inv.det_v1 + inv.det_v2 + 2.0 * inv.det_c.abs()) + 1.0 / 16.0
}

/// Simon's criterion: `true` when the state stays physical under partial
/// transposition.
pub fn peres_simon_separable(m: &CovMat2) -> Result<bool> {
    m.check_physical()?;
    Ok(peres_simon_combination(m) >= -SEPARABILITY_TOL)
}

/// `r_s` with `cosh^2 r_s = (n1 + 1)(n2 + 1)/(n1 + n2 + 1)`.
pub fn separability_threshold_rs(nbar1: f64, nbar2: f64) -> Result<f64> {
    if !(nbar1 >= 0.0 && nbar1.is_finite()) {
        return Err(domain("nbar1", nbar1));
    }
    if !(nbar2 >= 0.0 && nbar2.is_finite()) {
        return Err(domain("nbar2", nbar2));
    }
    Ok(threshold(nbar1, nbar2))
}

fn threshold(n1: f64, n2: f64) -> f64 {
    arccosh_clamped(((n1 + 1.0) * (n2 + 1.0) / (n1 + n2 + 1.0)).sqrt())
}

/// `1 - sech(r - r_s)` above threshold, 0 otherwise.
pub fn degree_e0(p: &TwoModeStsParams) -> f64 {
    let excess = p.r - threshold(p.nbar1, p.nbar2);
    if excess <= 0.0 {
        0.0
    } else {
        1.0 - sech(excess)
    }
}

fn separable_point(v: &[f64]) -> TwoModeStsParams {
    let (n1, n2) = (v[0] * v[0], v[1] * v[1]);
    TwoModeStsParams {
        nbar1: n1,
        nbar2: n2,
        r: threshold(n1, n2) * sigmoid(v[2]),
        phi: normalize_angle(v[3]),
    }
}

/// Searches separable STS's for the one closest to `p` in Bures distance.
///
/// Returns the minimizer and the minimum of `1 - sqrt(F)`. Separable inputs
/// are returned unchanged with value 0.
pub fn closest_separable_numeric(p: &TwoModeStsParams) -> Result<(TwoModeStsParams, f64)> {
    p.validate()?;
    if p.r <= threshold(p.nbar1, p.nbar2) {
        return Ok((*p, 0.0));
    }
    let objective = |v: &[f64]| match fidelity_two_mode_sts(p, &separable_point(v)) {
        Ok(f) => 1.0 - f.sqrt(),
        Err(_) => f64::INFINITY,
    };
    let mut rng = SplitMix64::new(SEED);
    let s1 = (p.nbar1 + 1.0).sqrt();
    let s2 = (p.nbar2 + 1.0).sqrt();
    let starts: Vec<Vec<f64>> = (0..MULTISTART_POINTS)
        .map(|_| {
            alloc::vec![
                rng.uniform(0.0, 1.5 * s1),
                rng.uniform(0.0, 1.5 * s2),
                rng.uniform(-2.0, 4.0),
                p.phi + rng.uniform(-0.5 * PI, 0.5 * PI),
            ]
        })
        .collect();
    let best = multistart(objective, &starts, &NelderMeadOptions::default())
        .ok_or(Error::ConvergenceFailure("no starting points"))?;
    if !best.f.is_finite() {
        return Err(Error::ConvergenceFailure("separable-state search"));
    }
    Ok((separable_point(&best.x), best.f.max(0.0)))
}

/// Von Neumann entropy of a thermal state, `(n+1) ln(n+1) - n ln n`.
pub fn thermal_entropy(nbar: f64) -> f64 {
    if nbar <= 0.0 {
        0.0
    } else {
        (nbar + 1.0) * nbar.ln_1p() - nbar * nbar.ln()
    }
}

/// Entropy of entanglement of a two-mode squeezed vacuum with squeeze factor `r`.
pub fn entropy_of_entanglement_svs(r: f64) -> f64 {
    thermal_entropy(r.sinh().powi(2))
}
