use thiserror::Error;

/// Errors raised by state validation and the measures built on it.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A determinant inequality (Heisenberg bound) fails by more than the
    /// physicality tolerance.
    #[error("unphysical state: {what} falls short of its bound by {deficit:.3e}")]
    UnphysicalState { what: &'static str, deficit: f64 },

    /// A scalar argument lies outside the domain of the operation.
    #[error("{what} out of domain: {value}")]
    Domain { what: &'static str, value: f64 },

    /// Teleportation resources must have zero first moments.
    #[error("teleportation resource carries a nonzero displacement")]
    DisplacedResource,

    /// No start of the multi-start search reached the requested tolerance.
    #[error("minimizer did not converge: {0}")]
    ConvergenceFailure(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn domain(what: &'static str, value: f64) -> Error {
    Error::Domain { what, value }
}
