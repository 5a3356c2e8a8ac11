//! Builders for thermal, displaced squeezed thermal and two-mode squeezed
//! thermal density matrices.

use cvgauss_core::{DstsParams, TwoModeStsParams};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::expm::{expm_real, orthogonality_defect};
use crate::{FockDensityMatrix, FockError, Result};

/// Extra levels the one-mode builders work with before projecting to `dim`.
pub const DEFAULT_PAD_ONE_MODE: usize = 64;
/// Extra levels per mode for the two-mode builder.
pub const DEFAULT_PAD_TWO_MODE: usize = 32;

/// How the truncation is picked for a given state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimPolicy {
    pub floor: usize,
    pub cap: usize,
    /// Aim for a photon-number tail below this.
    pub target_tail: f64,
}

impl DimPolicy {
    pub const ONE_MODE: Self = Self {
        floor: 120,
        cap: 256,
        target_tail: 1e-8,
    };
    pub const TWO_MODE: Self = Self {
        floor: 40,
        cap: 64,
        target_tail: 1e-8,
    };

    pub fn with_cap(self, cap: usize) -> Self {
        Self {
            cap,
            floor: self.floor.min(cap),
            ..self
        }
    }

    fn levels_for(&self, v_max: f64, shift: f64) -> usize {
        // Geometric tail of a thermal state with variance v_max.
        let q = (v_max - 0.5) / (v_max + 0.5);
        let decay = if q > 0.0 {
            (self.target_tail.ln() / q.ln()).ceil()
        } else {
            0.0
        };
        let want = (decay + shift).max(0.0) as usize;
        want.clamp(self.floor, self.cap.max(self.floor))
    }

    /// Truncation for a DSTS from its largest quadrature variance and its
    /// displacement.
    pub fn one_mode_dim(&self, p: &DstsParams) -> usize {
        let v_max = (p.nbar + 0.5) * (2.0 * p.r).exp();
        let a = p.alpha.norm();
        let shift = (a * a + 6.0 * a * v_max.sqrt()).ceil();
        self.levels_for(v_max, shift)
    }

    /// Per-mode truncation for a two-mode STS from its reduced occupancies.
    pub fn two_mode_dim(&self, p: &TwoModeStsParams) -> usize {
        let (n1, n2) = p.reduced_occupancies();
        self.levels_for(n1.max(n2) + 0.5, 0.0)
    }
}

/// A truncated unitary with its measured deviation from unitarity.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedUnitary {
    pub matrix: DMatrix<Complex64>,
    /// `max |U^dag U - I|`.
    pub unitarity_defect: f64,
}

fn check_dim(dim: usize) -> Result<()> {
    if dim == 0 {
        return Err(FockError::Domain {
            what: "dim",
            value: 0.0,
        });
    }
    Ok(())
}

fn thermal_weights(nbar: f64, n: usize) -> Vec<f64> {
    let q = nbar / (nbar + 1.0);
    let mut w = Vec::with_capacity(n);
    let mut p = 1.0 / (nbar + 1.0);
    for _ in 0..n {
        w.push(p);
        p *= q;
    }
    w
}

/// `exp(G)` for `G[i+1][i] = w[i]`, `G[i][i+1] = -w[i]`.
fn chain_exp(weights: &[f64]) -> DMatrix<f64> {
    let n = weights.len() + 1;
    let mut g = DMatrix::<f64>::zeros(n, n);
    for (i, &w) in weights.iter().enumerate() {
        g[(i + 1, i)] = w;
        g[(i, i + 1)] = -w;
    }
    expm_real(&g)
}

/// `exp(r (a^dag^2 - a^2)/2)` on `n` levels, built from its even and odd chains.
fn squeeze_real(r: f64, n: usize) -> DMatrix<f64> {
    let mut s = DMatrix::<f64>::zeros(n, n);
    for parity in 0..2 {
        let idx: Vec<usize> = (parity..n).step_by(2).collect();
        if idx.is_empty() {
            continue;
        }
        let weights: Vec<f64> = idx[..idx.len() - 1]
            .iter()
            .map(|&k| 0.5 * r * (((k + 1) * (k + 2)) as f64).sqrt())
            .collect();
        let block = chain_exp(&weights);
        for (bi, &i) in idx.iter().enumerate() {
            for (bj, &j) in idx.iter().enumerate() {
                s[(i, j)] = block[(bi, bj)];
            }
        }
    }
    s
}

/// `exp(a (a^dag - a))` on `n` levels for real `a`.
fn displacement_real(a: f64, n: usize) -> DMatrix<f64> {
    let weights: Vec<f64> = (0..n - 1).map(|k| a * ((k + 1) as f64).sqrt()).collect();
    chain_exp(&weights)
}

/// `R(theta) M R(theta)^dag` with `R = exp(i theta n)`.
fn rotate(m: &DMatrix<f64>, theta: f64) -> DMatrix<Complex64> {
    DMatrix::from_fn(m.nrows(), m.ncols(), |i, j| {
        Complex64::from_polar(m[(i, j)], theta * (i as f64 - j as f64))
    })
}

fn unitary(real: DMatrix<f64>, theta: f64) -> TruncatedUnitary {
    let unitarity_defect = orthogonality_defect(&real);
    TruncatedUnitary {
        matrix: rotate(&real, theta),
        unitarity_defect,
    }
}

/// Bose-Einstein state `sum_n nbar^n/(nbar+1)^(n+1) |n><n|` on `dim` levels.
pub fn thermal_dm(nbar: f64, dim: usize) -> Result<FockDensityMatrix> {
    check_dim(dim)?;
    if !(nbar >= 0.0 && nbar.is_finite()) {
        return Err(FockError::Domain {
            what: "nbar",
            value: nbar,
        });
    }
    let w = thermal_weights(nbar, dim);
    let entries = DMatrix::from_diagonal(&DVector::from_iterator(
        dim,
        w.iter().map(|&p| Complex64::new(p, 0.0)),
    ));
    Ok(FockDensityMatrix {
        dim,
        modes: 1,
        entries,
        tail_mass: (nbar / (nbar + 1.0)).powi(dim as i32),
    })
}

/// `exp(alpha a^dag - alpha^* a)` of the truncated generator.
pub fn displacement_matrix(alpha: Complex64, dim: usize) -> Result<TruncatedUnitary> {
    check_dim(dim)?;
    Ok(unitary(displacement_real(alpha.norm(), dim), alpha.arg()))
}

/// `exp(r (e^{i phi} a^dag^2 - e^{-i phi} a^2)/2)` of the truncated generator.
pub fn squeeze_matrix(r: f64, phi: f64, dim: usize) -> Result<TruncatedUnitary> {
    check_dim(dim)?;
    Ok(unitary(squeeze_real(r, dim), 0.5 * phi))
}

fn project(full: &DMatrix<Complex64>, dim: usize, modes: usize) -> FockDensityMatrix {
    let entries = full.view((0, 0), (dim, dim)).into_owned();
    let trace: f64 = entries.diagonal().iter().map(|z| z.re).sum();
    FockDensityMatrix {
        dim,
        modes,
        entries,
        tail_mass: (1.0 - trace).max(0.0),
    }
}

/// DSTS density matrix on `dim` levels, built on `dim + DEFAULT_PAD_ONE_MODE`.
pub fn dsts_dm(p: &DstsParams, dim: usize) -> Result<FockDensityMatrix> {
    dsts_dm_padded(p, dim, DEFAULT_PAD_ONE_MODE)
}

/// DSTS density matrix built on `dim + pad` levels and projected to `dim`.
pub fn dsts_dm_padded(p: &DstsParams, dim: usize, pad: usize) -> Result<FockDensityMatrix> {
    check_dim(dim)?;
    p.validate()?;
    let n = dim + pad;
    let w = thermal_weights(p.nbar, n);
    let root = DVector::from_iterator(n, w.iter().map(|x| x.sqrt()));

    // S rho_T S^T = X X^T with X = S sqrt(rho_T).
    let squeezed = if p.r > 0.0 {
        let mut x = squeeze_real(p.r, n);
        for (j, mut col) in x.column_iter_mut().enumerate() {
            col *= root[j];
        }
        &x * x.transpose()
    } else {
        DMatrix::from_diagonal(&DVector::from_vec(w))
    };

    let a = p.alpha.norm();
    let theta = if a > 0.0 { p.alpha.arg() } else { 0.0 };
    let psi = 0.5 * p.phi - theta;
    let full = if a > 0.0 {
        let cos = DMatrix::from_fn(n, n, |i, j| {
            squeezed[(i, j)] * (psi * (i as f64 - j as f64)).cos()
        });
        let sin = DMatrix::from_fn(n, n, |i, j| {
            squeezed[(i, j)] * (psi * (i as f64 - j as f64)).sin()
        });
        let d = displacement_real(a, n);
        let dt = d.transpose();
        let re = &d * cos * &dt;
        let im = &d * sin * &dt;
        DMatrix::from_fn(n, n, |i, j| {
            Complex64::new(re[(i, j)], im[(i, j)])
                * Complex64::from_polar(1.0, theta * (i as f64 - j as f64))
        })
    } else {
        rotate(&squeezed, psi)
    };
    Ok(project(&full, dim, 1))
}

/// Two-mode STS density matrix with `dim` levels per mode, built on
/// `dim + DEFAULT_PAD_TWO_MODE`.
pub fn sts2_dm(p: &TwoModeStsParams, dim: usize) -> Result<FockDensityMatrix> {
    sts2_dm_padded(p, dim, DEFAULT_PAD_TWO_MODE)
}

/// Two-mode STS density matrix.
///
/// `S12` conserves `n1 - n2`, so each sector `n1 - n2 = k` is a chain that is
/// exponentiated on its own; the phase `phi` is applied afterwards through
/// `R = exp(i phi n1)`.
pub fn sts2_dm_padded(p: &TwoModeStsParams, dim: usize, pad: usize) -> Result<FockDensityMatrix> {
    check_dim(dim)?;
    p.validate()?;
    let n = dim + pad;
    let w1 = thermal_weights(p.nbar1, n);
    let w2 = thermal_weights(p.nbar2, n);
    let size = dim * dim;
    let mut entries = DMatrix::<Complex64>::zeros(size, size);

    for k in -(dim as i64 - 1)..=(dim as i64 - 1) {
        // Sector basis |m + k, m> with both occupations below n.
        let m0 = (-k).max(0) as usize;
        let m1 = n - k.max(0) as usize;
        let levels: Vec<(usize, usize)> = (m0..m1).map(|m| ((m as i64 + k) as usize, m)).collect();
        let root: Vec<f64> = levels
            .iter()
            .map(|&(a, b)| (w1[a] * w2[b]).sqrt())
            .collect();
        let rho = if p.r > 0.0 {
            let weights: Vec<f64> = levels[..levels.len() - 1]
                .iter()
                .map(|&(a, b)| p.r * (((a + 1) * (b + 1)) as f64).sqrt())
                .collect();
            let mut x = chain_exp(&weights);
            for (j, mut col) in x.column_iter_mut().enumerate() {
                col *= root[j];
            }
            &x * x.transpose()
        } else {
            DMatrix::from_diagonal(&DVector::from_iterator(
                levels.len(),
                root.iter().map(|x| x * x),
            ))
        };
        for (i, &(a, b)) in levels.iter().enumerate() {
            if a >= dim || b >= dim {
                continue;
            }
            for (j, &(c, d)) in levels.iter().enumerate() {
                if c >= dim || d >= dim {
                    continue;
                }
                let phase = p.phi * (a as f64 - c as f64);
                entries[(a * dim + b, c * dim + d)] = Complex64::from_polar(rho[(i, j)], phase);
            }
        }
    }
    let trace: f64 = entries.diagonal().iter().map(|z| z.re).sum();
    Ok(FockDensityMatrix {
        dim,
        modes: 2,
        entries,
        tail_mass: (1.0 - trace).max(0.0),
    })
}
