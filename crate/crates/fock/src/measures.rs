//! Fidelity, trace products, entropies and reductions of Fock-basis matrices.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::states::displacement_matrix;
use crate::{FockDensityMatrix, FockError, Result};

/// Eigenvalues down to this are treated as rounding and clipped to zero.
pub const EIGEN_CLIP_TOL: f64 = 1e-10;

const SVD_MAX_ITER: usize = 10_000;

/// Entries this far below the largest one are set to zero before an
/// eigendecomposition. Near-subnormal entries (coherent amplitudes at high
/// photon number) otherwise make the QR iteration return infinities.
const FLUSH_REL: f64 = 1e-30;

fn hermitian_eigen(m: DMatrix<Complex64>) -> SymmetricEigen<Complex64, nalgebra::Dyn> {
    let mut h = (&m + m.adjoint()) * Complex64::new(0.5, 0.0);
    let top = h.iter().fold(0.0f64, |a, z| a.max(z.norm()));
    let floor = FLUSH_REL * top;
    h.iter_mut()
        .filter(|z| z.norm() < floor)
        .for_each(|z| *z = Complex64::new(0.0, 0.0));
    SymmetricEigen::new(h)
}

fn clip(lambda: f64) -> Result<f64> {
    if lambda < -EIGEN_CLIP_TOL {
        return Err(FockError::NegativeEigenvalue(lambda));
    }
    Ok(lambda.max(0.0))
}

/// Groups indices coupled by a nonzero entry of either matrix.
fn components(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> Vec<Vec<usize>> {
    let n = a.nrows();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for j in 0..n {
        for i in 0..j {
            let zero = Complex64::new(0.0, 0.0);
            if a[(i, j)] != zero || b[(i, j)] != zero {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri] = rj;
                }
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for i in 0..n {
        let root = find(&mut parent, i);
        if slot[root] == usize::MAX {
            slot[root] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot[root]].push(i);
    }
    groups
}

fn submatrix(m: &DMatrix<Complex64>, idx: &[usize]) -> DMatrix<Complex64> {
    DMatrix::from_fn(idx.len(), idx.len(), |i, j| m[(idx[i], idx[j])])
}

/// `X` with `X X^dag = m`, keeping only eigenvalues above rounding level.
fn support_factor(m: DMatrix<Complex64>) -> Result<DMatrix<Complex64>> {
    let n = m.nrows();
    let eig = hermitian_eigen(m);
    let top = eig.eigenvalues.iter().fold(0.0f64, |a, &b| a.max(b));
    let floor = n as f64 * f64::EPSILON * top;
    let mut cols = Vec::new();
    for (j, &l) in eig.eigenvalues.iter().enumerate() {
        let l = clip(l)?;
        if l > floor {
            cols.push(eig.eigenvectors.column(j) * Complex64::new(l.sqrt(), 0.0));
        }
    }
    if cols.is_empty() {
        return Ok(DMatrix::zeros(n, 0));
    }
    Ok(DMatrix::from_columns(&cols))
}

/// `Tr sqrt(sqrt(a) b sqrt(a))`, taken as the trace norm of `X^dag Y` with
/// `a = X X^dag`, `b = Y Y^dag`.
///
/// Both factors are restricted to their supports, so rounding-level
/// eigenvalues never reach a square root, where they would bias the sum
/// upward.
fn root_fidelity_block(a: DMatrix<Complex64>, b: DMatrix<Complex64>) -> Result<f64> {
    let p = support_factor(a)?.adjoint() * support_factor(b)?;
    if p.is_empty() {
        return Ok(0.0);
    }
    if let Some(svd) = p.clone().try_svd(false, false, f64::EPSILON, SVD_MAX_ITER) {
        return Ok(svd.singular_values.iter().sum());
    }
    // Fallback when the bidiagonal iteration stalls.
    let gram = if p.nrows() <= p.ncols() {
        &p * p.adjoint()
    } else {
        p.adjoint() * &p
    };
    let mut total = 0.0;
    for &l in hermitian_eigen(gram).eigenvalues.iter() {
        total += clip(l)?.sqrt();
    }
    Ok(total)
}

/// Uhlmann fidelity `(Tr sqrt(sqrt(r1) r2 sqrt(r1)))^2`.
///
/// The matrices are split into the blocks that their nonzero pattern leaves
/// uncoupled (the number-difference sectors of a two-mode STS, for instance)
/// and each block is handled by Hermitian eigendecomposition.
pub fn uhlmann_fidelity_numeric(r1: &FockDensityMatrix, r2: &FockDensityMatrix) -> Result<f64> {
    r1.same_shape(r2)?;
    let mut total = 0.0;
    for idx in components(&r1.entries, &r2.entries) {
        let a = submatrix(&r1.entries, &idx);
        let b = submatrix(&r2.entries, &idx);
        total += root_fidelity_block(a, b)?;
    }
    Ok(total * total)
}

/// `Re Tr(r1 r2)`.
pub fn trace_product(r1: &FockDensityMatrix, r2: &FockDensityMatrix) -> Result<f64> {
    r1.same_shape(r2)?;
    let a = &r1.entries;
    let b = &r2.entries;
    let mut acc = 0.0;
    for j in 0..a.ncols() {
        for i in 0..a.nrows() {
            acc += (a[(i, j)] * b[(j, i)]).re;
        }
    }
    Ok(acc)
}

pub fn purity(r: &FockDensityMatrix) -> f64 {
    r.entries.iter().map(|z| z.norm_sqr()).sum()
}

/// `-Tr rho ln rho` with `0 ln 0 = 0`.
pub fn von_neumann_entropy(r: &FockDensityMatrix) -> Result<f64> {
    let mut s = 0.0;
    for idx in components(&r.entries, &r.entries) {
        for &l in hermitian_eigen(submatrix(&r.entries, &idx))
            .eigenvalues
            .iter()
        {
            let l = clip(l)?;
            if l > 0.0 {
                s -= l * l.ln();
            }
        }
    }
    Ok(s)
}

/// Reduced one-mode state of mode `which` (0 or 1) of a two-mode matrix.
pub fn reduce_to_mode(r: &FockDensityMatrix, which: usize) -> Result<FockDensityMatrix> {
    if r.modes != 2 || which > 1 {
        return Err(FockError::DimensionMismatch {
            left: (r.dim, r.modes),
            right: (r.dim, 2),
        });
    }
    let d = r.dim;
    let idx = |keep: usize, traced: usize| {
        if which == 0 {
            keep * d + traced
        } else {
            traced * d + keep
        }
    };
    let entries = DMatrix::from_fn(d, d, |a, b| {
        (0..d).map(|c| r.entries[(idx(a, c), idx(b, c))]).sum()
    });
    Ok(FockDensityMatrix {
        dim: d,
        modes: 1,
        entries,
        tail_mass: r.tail_mass,
    })
}

/// `Tr(rho a^dag a)` of a one-mode matrix.
pub fn mean_photon_number(r: &FockDensityMatrix) -> Result<f64> {
    if r.modes != 1 {
        return Err(FockError::DimensionMismatch {
            left: (r.dim, r.modes),
            right: (r.dim, 1),
        });
    }
    Ok(r.entries
        .diagonal()
        .iter()
        .enumerate()
        .map(|(n, z)| n as f64 * z.re)
        .sum())
}

/// `Tr(rho D(lambda))`, with `D` built on `dim + pad` levels.
pub fn characteristic_function(
    r: &FockDensityMatrix,
    lambda: Complex64,
    pad: usize,
) -> Result<Complex64> {
    if r.modes != 1 {
        return Err(FockError::DimensionMismatch {
            left: (r.dim, r.modes),
            right: (r.dim, 1),
        });
    }
    let d = displacement_matrix(lambda, r.dim + pad)?.matrix;
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..r.dim {
        for i in 0..r.dim {
            acc += r.entries[(i, j)] * d[(j, i)];
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{dsts_dm, sts2_dm, thermal_dm};
    use cvgauss_core::{Complex, DstsParams, TwoModeStsParams};

    #[test]
    fn self_fidelity_is_one() {
        let p = DstsParams::new(0.4, 0.5, 0.3, Complex::new(0.2, 0.1)).unwrap();
        let r = dsts_dm(&p, 60).unwrap();
        // F(rho, rho) = (Tr rho)^2 for a truncated rho.
        let f = uhlmann_fidelity_numeric(&r, &r).unwrap();
        assert!((f - r.trace().powi(2)).abs() < 1e-9);
        assert!((f - 1.0).abs() < 1e-6);
    }

    #[test]
    fn vacuum_against_thermal() {
        let dim = 80;
        let v = thermal_dm(0.0, dim).unwrap();
        for nbar in [0.5, 1.0, 2.0] {
            let t = thermal_dm(nbar, dim).unwrap();
            let f = uhlmann_fidelity_numeric(&v, &t).unwrap();
            assert!((f - 1.0 / (nbar + 1.0)).abs() < 1e-12);
            assert!((trace_product(&v, &t).unwrap() - f).abs() < 1e-12);
        }
    }

    #[test]
    fn thermal_purity_and_entropy() {
        let t = thermal_dm(1.0, 120).unwrap();
        assert!((purity(&t) - 1.0 / 3.0).abs() < 1e-14);
        let s = von_neumann_entropy(&t).unwrap();
        assert!((s - 2.0 * 2.0_f64.ln()).abs() < 1e-12);
        let v = thermal_dm(0.0, 10).unwrap();
        assert!(von_neumann_entropy(&v).unwrap().abs() < 1e-12);
    }

    #[test]
    fn shape_mismatch_is_reported() {
        let a = thermal_dm(0.5, 10).unwrap();
        let b = thermal_dm(0.5, 11).unwrap();
        assert!(matches!(
            uhlmann_fidelity_numeric(&a, &b),
            Err(FockError::DimensionMismatch { .. })
        ));
        assert!(trace_product(&a, &b).is_err());
    }

    #[test]
    fn reduction_of_product_state() {
        let p = TwoModeStsParams::new(0.7, 0.2, 0.0, 0.0).unwrap();
        let r = sts2_dm(&p, 40).unwrap();
        let m1 = reduce_to_mode(&r, 0).unwrap();
        let m2 = reduce_to_mode(&r, 1).unwrap();
        assert!((mean_photon_number(&m1).unwrap() - 0.7).abs() < 1e-8);
        assert!((mean_photon_number(&m2).unwrap() - 0.2).abs() < 1e-8);
        assert!(mean_photon_number(&r).is_err());
    }

    #[test]
    fn coherent_pair_with_tiny_tail() {
        // exp(-|a - b|^2) for coherent states; the tails underflow at dim 120.
        let x = DstsParams::coherent(Complex::new(0.5, 0.0));
        let y = DstsParams::coherent(Complex::new(0.0, 0.3));
        let f = uhlmann_fidelity_numeric(&dsts_dm(&x, 120).unwrap(), &dsts_dm(&y, 120).unwrap())
            .unwrap();
        assert!((f - (-0.34f64).exp()).abs() < 1e-12);
    }

    #[test]
    fn negative_matrix_is_rejected() {
        let mut a = thermal_dm(0.5, 4).unwrap();
        a.entries[(3, 3)] = Complex64::new(-1e-3, 0.0);
        let b = thermal_dm(0.5, 4).unwrap();
        assert!(matches!(
            uhlmann_fidelity_numeric(&a, &b),
            Err(FockError::NegativeEigenvalue(_))
        ));
    }
}
