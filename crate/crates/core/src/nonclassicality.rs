//! Nonclassicality threshold and the Bures degree of nonclassicality `Q0` for
//! one-mode Gaussian states.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::error::{domain, Error, Result};
use crate::fidelity::fidelity_one_mode;
use crate::gaussian::{dsts_to_cf, Complex, DstsParams};
use crate::math::{normalize_angle, sech, sigmoid};
use crate::minimize::{multistart, NelderMeadOptions, SplitMix64};

/// `r_c = ln(2 nbar + 1) / 2`; a DSTS is classical iff `r <= r_c`.
pub fn nonclassicality_threshold(nbar: f64) -> Result<f64> {
    if !(nbar >= 0.0 && nbar.is_finite()) {
        return Err(domain("nbar", nbar));
    }
    Ok(0.5 * (2.0 * nbar).ln_1p())
}

fn threshold(nbar: f64) -> f64 {
    0.5 * (2.0 * nbar).ln_1p()
}

pub fn is_classical(p: &DstsParams) -> bool {
    p.r <= threshold(p.nbar)
}

/// `1 - sqrt(sech(r - r_c))` above threshold, 0 otherwise.
pub fn degree_q0(p: &DstsParams) -> f64 {
    let excess = p.r - threshold(p.nbar);
    if excess <= 0.0 {
        0.0
    } else {
        1.0 - sech(excess).sqrt()
    }
}

/// Number of seeded starting points for the numerical searches.
pub const MULTISTART_POINTS: usize = 8;
const SEED: u64 = 0x5EED_C1A5_51CA_0001;

/// Classical DSTS from unconstrained search variables.
///
/// `v = [s, t, phi, (dre, dim)]` maps to `nbar = s^2`, `r = r_c(nbar) sigmoid(t)`
/// and `alpha = center + dre + i dim`.
fn classical_point(v: &[f64], center: Complex) -> DstsParams {
    let nbar = v[0] * v[0];
    let alpha = if v.len() > 3 {
        center + Complex::new(v[3], v[4])
    } else {
        center
    };
    DstsParams {
        nbar,
        r: threshold(nbar) * sigmoid(v[1]),
        phi: normalize_angle(v[2]),
        alpha,
    }
}

/// Searches the classical set for the state closest to `p` in Bures distance.
///
/// Returns the minimizer and the minimum of `1 - sqrt(F)`, which is the
/// numerical counterpart of [`degree_q0`]. Classical inputs are returned
/// unchanged with value 0. The displacement is only searched when `p` is
/// displaced.
pub fn closest_classical_numeric(p: &DstsParams) -> Result<(DstsParams, f64)> {
    p.validate()?;
    if is_classical(p) {
        return Ok((*p, 0.0));
    }
    let target = dsts_to_cf(p);
    let search_alpha = p.alpha.norm() > 0.0;
    let objective = |v: &[f64]| {
        let q = classical_point(v, p.alpha);
        match fidelity_one_mode(&target, &dsts_to_cf(&q)) {
            Ok(f) => 1.0 - f.sqrt(),
            Err(_) => f64::INFINITY,
        }
    };

    let mut rng = SplitMix64::new(SEED);
    let scale = (p.nbar + 1.0).sqrt();
    let starts: Vec<Vec<f64>> = (0..MULTISTART_POINTS)
        .map(|_| {
            let mut v = alloc::vec![
                rng.uniform(0.0, 1.5 * scale),
                rng.uniform(-2.0, 4.0),
                p.phi + rng.uniform(-0.5 * PI, 0.5 * PI),
            ];
            if search_alpha {
                v.push(rng.uniform(-0.3, 0.3));
                v.push(rng.uniform(-0.3, 0.3));
            }
            v
        })
        .collect();
    let opts = NelderMeadOptions::default();
    let best = multistart(objective, &starts, &opts)
        .ok_or(Error::ConvergenceFailure("no starting points"))?;
    if !best.f.is_finite() {
        return Err(Error::ConvergenceFailure("classical-state search"));
    }
    Ok((classical_point(&best.x, p.alpha), best.f.max(0.0)))
}
