//! Closed-form Uhlmann fidelity between Gaussian states, and the Bures distance.

use crate::error::{domain, Result};
use crate::gaussian::{cf_to_cov, sts_to_cov2, CovMat1, OneModeGaussianCF, TwoModeStsParams};

/// Values above 1 by at most this much are rounded down to 1.
pub const FIDELITY_CLAMP_TOL: f64 = 1e-12;

/// `Delta = det(V + V')` and `Lambda = 4 (det V - 1/4)(det V' - 1/4)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FidelityIntermediates {
    pub delta: f64,
    pub lambda: f64,
}

impl FidelityIntermediates {
    pub fn from_covariances(v1: &CovMat1, v2: &CovMat1) -> Self {
        let delta = v1.add(v2).det();
        // Negative only through cancellation when a state is pure.
        let lambda = (4.0 * (v1.det() - 0.25) * (v2.det() - 0.25)).max(0.0);
        Self { delta, lambda }
    }

    /// `1 / (sqrt(Delta + Lambda) - sqrt(Lambda))`, written without the
    /// subtraction.
    pub fn prefactor(&self) -> f64 {
        ((self.delta + self.lambda).sqrt() + self.lambda.sqrt()) / self.delta
    }
}

/// `X1`, `X2` and `det(V + V')` for a pair of two-mode STS's.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoModeFidelityIntermediates {
    pub x1: f64,
    pub x2: f64,
    pub det_sum: f64,
}

impl TwoModeFidelityIntermediates {
    pub fn new(p1: &TwoModeStsParams, p2: &TwoModeStsParams) -> Self {
        let x1 = p1.nbar1 * p2.nbar1 * (p1.nbar2 + 1.0) * (p2.nbar2 + 1.0);
        let x2 = p1.nbar2 * p2.nbar2 * (p1.nbar1 + 1.0) * (p2.nbar1 + 1.0);
        let det_sum = sts_to_cov2(p1).add(&sts_to_cov2(p2)).det();
        Self { x1, x2, det_sum }
    }
}

fn clamp_unit(f: f64) -> f64 {
    if f > 1.0 && f <= 1.0 + FIDELITY_CLAMP_TOL {
        1.0
    } else {
        f.max(0.0)
    }
}

/// Relative slack under which `det V - 1/4` counts as zero.
pub const PURITY_SLACK: f64 = 16.0 * f64::EPSILON;

/// `det V - 1/4 = A (A + 1) - |B|^2`, set to zero when it is below the
/// rounding level of the two terms. Near a pure state the square root in
/// `Lambda` would otherwise turn 1e-16 of cancellation into 1e-8 of fidelity.
pub fn det_excess(g: &OneModeGaussianCF) -> f64 {
    let p = g.a * (g.a + 1.0);
    let q = g.b.norm_sqr();
    let d = p - q;
    if d <= PURITY_SLACK * (p + q) {
        0.0
    } else {
        d
    }
}

pub fn one_mode_intermediates(
    s1: &OneModeGaussianCF,
    s2: &OneModeGaussianCF,
) -> Result<FidelityIntermediates> {
    let v1 = cf_to_cov(s1)?;
    let v2 = cf_to_cov(s2)?;
    Ok(FidelityIntermediates {
        delta: v1.add(&v2).det(),
        lambda: 4.0 * det_excess(s1) * det_excess(s2),
    })
}

/// Fidelity of two one-mode Gaussian states given by their CF coefficients.
pub fn fidelity_one_mode(s1: &OneModeGaussianCF, s2: &OneModeGaussianCF) -> Result<f64> {
    let im = one_mode_intermediates(s1, s2)?;
    let d = s1.c - s2.c;
    let quad = (s1.a + s2.a + 1.0) * d.norm_sqr() + ((s1.b + s2.b) * (d.conj() * d.conj())).re;
    let f = im.prefactor() * (-quad / im.delta).exp();
    Ok(clamp_unit(f))
}

/// Fidelity of two two-mode squeezed thermal states.
pub fn fidelity_two_mode_sts(p1: &TwoModeStsParams, p2: &TwoModeStsParams) -> Result<f64> {
    p1.validate()?;
    p2.validate()?;
    let im = TwoModeFidelityIntermediates::new(p1, p2);
    let root = im.det_sum.sqrt();
    let t = im.x1.sqrt() + im.x2.sqrt();
    let f = (((root + t * t).sqrt() + t) / root).powi(2);
    Ok(clamp_unit(f))
}

/// `sqrt(2 - 2 sqrt(F))`.
pub fn bures_distance(f: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&f) {
        return Err(domain("fidelity", f));
    }
    Ok((2.0 - 2.0 * f.sqrt()).sqrt())
}
