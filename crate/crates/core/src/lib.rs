//! Closed-form toolkit for Gaussian states of a bosonic field.
//!
//! The crate covers one-mode displaced squeezed thermal states (DSTS) and
//! two-mode squeezed thermal states (STS) in three equivalent forms: physical
//! parameters, characteristic-function (CF) exponent coefficients, and
//! covariance matrices. On top of those it provides
//!
//! - Uhlmann fidelity and Bures distance ([`fidelity`]),
//! - the Bures degree of nonclassicality `Q0` ([`nonclassicality`]),
//! - Peres-Simon separability and the Bures degree of entanglement `E0`
//!   ([`entanglement`]),
//! - the characteristic-function model of continuous-variable teleportation
//!   and the figure sweeps built on it ([`teleport`]).
//!
//! Every closed form that is the result of an optimization is paired with a
//! derivative-free numerical minimizer ([`minimize`]) so the two can be checked
//! against each other.
//!
//! The crate is `no_std` and only needs `alloc` (for the minimizer's simplex
//! and the sweep tables).

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

mod error;
mod math;

pub mod entanglement;
pub mod fidelity;
pub mod gaussian;
pub mod minimize;
pub mod nonclassicality;
pub mod teleport;

pub use error::{Error, Result};
pub use gaussian::{
    Complex, CovMat1, CovMat2, DstsParams, LocalInvariants, OneModeGaussianCF, TwoModeGaussianCF,
    TwoModeStsParams,
};
pub use math::{arccosh_clamped, linspace, sech};
