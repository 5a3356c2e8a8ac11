//! Truncated Fock-space density matrices for Gaussian states.
//!
//! This crate rebuilds the states of `cvgauss-core` as explicit matrices,
//! `D(alpha) S(r, phi) rho_T S^dag D^dag` for one mode and
//! `S12(r, phi) (rho_T1 (x) rho_T2) S12^dag` for two, and evaluates fidelities,
//! trace products and entropies by dense linear algebra. It shares no formulas
//! with the closed forms and serves as their oracle.
//!
//! Unitaries are exponentials of truncated generators. Every generator is
//! rotated to a real antisymmetric chain (`D(alpha) = R D(|alpha|) R^dag` with
//! `R = exp(i arg(alpha) n)`, likewise for squeezing), so the heavy work is
//! real-valued. States are built on a padded basis and then projected, which
//! keeps the edge artifacts of truncation out of the kept block.

mod dump;
mod expm;
mod measures;
mod states;

use nalgebra::DMatrix;
use num_complex::Complex64;

pub use dump::{read_binary, write_binary};
pub use expm::{expm_real, orthogonality_defect};
pub use measures::{
    characteristic_function, mean_photon_number, purity, reduce_to_mode, trace_product,
    uhlmann_fidelity_numeric, von_neumann_entropy,
};
pub use states::{
    displacement_matrix, dsts_dm, dsts_dm_padded, squeeze_matrix, sts2_dm, sts2_dm_padded,
    thermal_dm, DimPolicy, TruncatedUnitary, DEFAULT_PAD_ONE_MODE, DEFAULT_PAD_TWO_MODE,
};

/// Tail mass above which a matrix carries a [`TruncationWarning`].
pub const TRUNCATION_WARNING_THRESHOLD: f64 = 1e-6;

#[derive(Debug, thiserror::Error)]
pub enum FockError {
    #[error("invalid {what}: {value}")]
    Domain { what: &'static str, value: f64 },
    #[error("dimension mismatch: {left:?} vs {right:?}")]
    DimensionMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("matrix has eigenvalue {0:e}, below the clipping tolerance")]
    NegativeEigenvalue(f64),
    #[error(transparent)]
    Core(#[from] cvgauss_core::Error),
    #[error("malformed matrix dump: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, FockError>;

/// Probability mass lost to truncation exceeds [`TRUNCATION_WARNING_THRESHOLD`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationWarning {
    pub tail_mass: f64,
    pub dim: usize,
}

impl std::fmt::Display for TruncationWarning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "truncation at dim {} drops probability {:.3e}",
            self.dim, self.tail_mass
        )
    }
}

/// A density matrix in the number basis, truncated to `dim` levels per mode.
///
/// Two-mode matrices are indexed by `n1 * dim + n2`.
#[derive(Debug, Clone, PartialEq)]
pub struct FockDensityMatrix {
    pub dim: usize,
    pub modes: usize,
    pub entries: DMatrix<Complex64>,
    /// Probability outside the truncated space, `1 - Tr rho` of the projection.
    pub tail_mass: f64,
}

impl FockDensityMatrix {
    pub fn size(&self) -> usize {
        self.entries.nrows()
    }

    pub fn trace(&self) -> f64 {
        self.entries.diagonal().iter().map(|z| z.re).sum()
    }

    pub fn truncation_warning(&self) -> Option<TruncationWarning> {
        (self.tail_mass > TRUNCATION_WARNING_THRESHOLD).then_some(TruncationWarning {
            tail_mass: self.tail_mass,
            dim: self.dim,
        })
    }

    /// `max |rho - rho^dag|`.
    pub fn hermiticity_defect(&self) -> f64 {
        let n = self.size();
        let mut worst = 0.0f64;
        for j in 0..n {
            for i in 0..=j {
                let d = self.entries[(i, j)] - self.entries[(j, i)].conj();
                worst = worst.max(d.norm());
            }
        }
        worst
    }

    pub(crate) fn same_shape(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim || self.modes != other.modes {
            return Err(FockError::DimensionMismatch {
                left: (self.dim, self.modes),
                right: (other.dim, other.modes),
            });
        }
        Ok(())
    }
}
