//! Characteristic-function model of Braunstein-Kimble teleportation.
//!
//! With a displacement-free two-mode resource `chi_AB`, the teleported state has
//! CF `chi_out(lambda) = chi_in(lambda) chi_AB(lambda^*, lambda)`. For a
//! symmetric squeezed thermal resource this adds thermal noise
//! `z = exp(-2 (r - r_s))` to the coefficient `A` and leaves `B` and `C` alone.

use alloc::vec::Vec;

use crate::entanglement::separability_threshold_rs;
use crate::error::{domain, Error, Result};
use crate::fidelity::fidelity_one_mode;
use crate::gaussian::{
    cf2_to_cov2, cf_to_dsts, dsts_to_cf, DstsParams, OneModeGaussianCF, TwoModeGaussianCF,
};
use crate::math::{arccosh_clamped, linspace};
use crate::nonclassicality::degree_q0;

/// `x = cosh 2 r_in`, `y = nbar_in + 1/2` and the added noise `z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TeleportVariables {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl TeleportVariables {
    /// `z = 0` is accepted as the ideal-resource limit.
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        if !(x >= 1.0 && x.is_finite()) {
            return Err(domain("x", x));
        }
        if !(y >= 0.5 && y.is_finite()) {
            return Err(domain("y", y));
        }
        if !(z >= 0.0 && z.is_finite()) {
            return Err(domain("z", z));
        }
        Ok(Self { x, y, z })
    }

    /// Variables for an undisplaced-or-displaced DSTS input and added noise `z`.
    pub fn from_input(input: &DstsParams, z: f64) -> Result<Self> {
        input.validate()?;
        Self::new((2.0 * input.r).cosh(), input.nbar + 0.5, z)
    }
}

/// Output CF for an arbitrary displacement-free Gaussian resource.
pub fn teleport_cf(
    input: &OneModeGaussianCF,
    resource: &TwoModeGaussianCF,
) -> Result<OneModeGaussianCF> {
    if !resource.is_displacement_free() {
        return Err(Error::DisplacedResource);
    }
    input.check_physical()?;
    cf2_to_cov2(resource)?;
    let (m1, m2) = (&resource.mode1, &resource.mode2);
    Ok(OneModeGaussianCF {
        a: input.a + m1.a + m2.a + 1.0 - 2.0 * resource.g.re,
        b: input.b + m1.b.conj() + m2.b + 2.0 * resource.f.conj(),
        c: input.c,
    })
}

/// Added noise `exp(-2 (r - r_s))` of a symmetric STS resource.
///
/// Evaluated as `(2 nbar + 1) exp(-2 r)`, which is the same quantity since
/// `exp(2 r_s) = 2 nbar + 1` when both modes carry `nbar` photons.
pub fn noise_z(nbar: f64, r: f64) -> Result<f64> {
    if !(nbar >= 0.0 && nbar.is_finite()) {
        return Err(domain("nbar", nbar));
    }
    if !(r >= 0.0 && r.is_finite()) {
        return Err(domain("r", r));
    }
    Ok((2.0 * nbar + 1.0) * (-2.0 * r).exp())
}

/// Adds thermal noise `z` to a one-mode CF.
pub fn add_noise(input: &OneModeGaussianCF, z: f64) -> OneModeGaussianCF {
    OneModeGaussianCF {
        a: input.a + z,
        ..*input
    }
}

/// Teleports through a symmetric STS with `nbar` thermal photons per mode and
/// squeeze factor `r`. The resource need not be entangled.
pub fn teleport_symmetric_sts(
    input: &OneModeGaussianCF,
    nbar: f64,
    r: f64,
) -> Result<OneModeGaussianCF> {
    let z = noise_z(nbar, r)?;
    Ok(add_noise(input, z))
}

/// `Delta` and `Lambda` of the teleportation fidelity.
pub fn teleport_intermediates(v: &TeleportVariables) -> (f64, f64) {
    let (x, y, z) = (v.x, v.y, v.z);
    let y2 = y * y - 0.25;
    let delta = 4.0 * (y * y + x * y * z + 0.25 * z * z);
    let lambda = 4.0 * y2 * (y2 + 2.0 * x * y * z + z * z);
    (delta, lambda)
}

/// Fidelity between input and teleported state, `1 / (sqrt(D + L) - sqrt(L))`.
pub fn teleport_fidelity(v: &TeleportVariables) -> f64 {
    let (delta, lambda) = teleport_intermediates(v);
    ((delta + lambda).sqrt() + lambda.sqrt()) / delta
}

/// Teleportation fidelity of a DSTS input through a symmetric STS resource.
pub fn teleport_fidelity_from_states(input: &DstsParams, nbar: f64, r: f64) -> Result<f64> {
    let z = noise_z(nbar, r)?;
    Ok(teleport_fidelity(&TeleportVariables::from_input(input, z)?))
}

/// Same fidelity through the general one-mode formula; used as a cross-check.
pub fn teleport_fidelity_via_states(input: &DstsParams, nbar: f64, r: f64) -> Result<f64> {
    input.validate()?;
    let g = dsts_to_cf(input);
    fidelity_one_mode(&g, &teleport_symmetric_sts(&g, nbar, r)?)
}

/// `E0 = (1 - sqrt z)^2 / (1 + z)` for a symmetric resource with noise `z`.
pub fn e0_from_z(z: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&z) {
        return Err(domain("z", z));
    }
    let s = z.sqrt();
    Ok((1.0 - s).powi(2) / (1.0 + z))
}

/// Inverse of [`e0_from_z`] on `[0, 1]`.
pub fn z_from_e0(e0: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&e0) {
        return Err(domain("e0", e0));
    }
    let u = 1.0 - e0;
    let s = u / (1.0 + (e0 * (2.0 - e0)).sqrt());
    Ok(s * s)
}

/// Squeeze factor of the squeezed vacuum with nonclassicality `q`.
pub fn squeezed_vacuum_r_for_q0(q: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&q) {
        return Err(domain("q0", q));
    }
    Ok(arccosh_clamped(1.0 / (1.0 - q).powi(2)))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Fig1Curve {
    pub nbar_in: f64,
    /// `(E0, F)` rows in grid order.
    pub rows: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Fig2Curve {
    pub e0: f64,
    /// `(Q_in, Q_out)` rows in grid order.
    pub rows: Vec<(f64, f64)>,
}

pub const FIG1_R_IN: f64 = 1.0;
pub const FIG1_NBAR_IN: [f64; 4] = [0.0, 0.1, 0.5, 5.0];
pub const FIG2_E0: [f64; 3] = [1.0, 0.615, 0.425];

/// `99` points on `[0.01, 0.99]`.
pub fn default_e0_grid() -> Vec<f64> {
    linspace(0.01, 0.99, 99)
}

/// `96` points on `[0, 0.95]`.
pub fn default_q_grid() -> Vec<f64> {
    linspace(0.0, 0.95, 96)
}

/// Teleportation fidelity against resource entanglement for DSTS inputs with
/// squeeze factor `r_in` and each thermal occupancy in `nbar_in`.
pub fn sweep_fig1(r_in: f64, nbar_in: &[f64], e0_grid: &[f64]) -> Result<Vec<Fig1Curve>> {
    if !(r_in >= 0.0 && r_in.is_finite()) {
        return Err(domain("r_in", r_in));
    }
    let x = (2.0 * r_in).cosh();
    nbar_in
        .iter()
        .map(|&n| {
            let rows = e0_grid
                .iter()
                .map(|&e| {
                    let v = TeleportVariables::new(x, n + 0.5, z_from_e0(e)?)?;
                    Ok((e, teleport_fidelity(&v)))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Fig1Curve { nbar_in: n, rows })
        })
        .collect()
}

/// Nonclassicality after teleportation of a squeezed vacuum, against the
/// input's nonclassicality, for each resource entanglement in `e0_list`.
///
/// Both coordinates are measured from the CF through the same path, so the
/// `E0 = 1` curve is the identity.
pub fn sweep_fig2(e0_list: &[f64], q_grid: &[f64]) -> Result<Vec<Fig2Curve>> {
    let inputs = q_grid
        .iter()
        .map(|&q| {
            let r = squeezed_vacuum_r_for_q0(q)?;
            Ok(dsts_to_cf(&DstsParams::squeezed_vacuum(r, 0.0)))
        })
        .collect::<Result<Vec<_>>>()?;
    e0_list
        .iter()
        .map(|&e| {
            let z = z_from_e0(e)?;
            let rows = inputs
                .iter()
                .map(|g| {
                    let q_in = degree_q0(&cf_to_dsts(g)?);
                    let q_out = degree_q0(&cf_to_dsts(&add_noise(g, z))?);
                    Ok((q_in, q_out))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Fig2Curve { e0: e, rows })
        })
        .collect()
}

/// `r` of a symmetric resource with `nbar` photons per mode and noise `z`.
pub fn resource_r_for_z(nbar: f64, z: f64) -> Result<f64> {
    if !(z > 0.0 && z.is_finite()) {
        return Err(domain("z", z));
    }
    Ok(separability_threshold_rs(nbar, nbar)? - 0.5 * z.ln())
}
