//! Real matrix exponential by scaling and squaring of a truncated Taylor series.

use nalgebra::DMatrix;

/// Norm the scaled matrix is brought under before the series is summed.
const SCALED_NORM: f64 = 0.5;
const MAX_TERMS: usize = 30;

fn norm1(m: &DMatrix<f64>) -> f64 {
    m.column_iter()
        .map(|c| c.iter().map(|x| x.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// `exp(g)` for a real square matrix.
pub fn expm_real(g: &DMatrix<f64>) -> DMatrix<f64> {
    let n = g.nrows();
    assert_eq!(n, g.ncols(), "expm needs a square matrix");
    let norm = norm1(g);
    let squarings = if norm > SCALED_NORM {
        (norm / SCALED_NORM).log2().ceil() as i32
    } else {
        0
    };
    let a = g / 2f64.powi(squarings);
    let mut result = DMatrix::<f64>::identity(n, n);
    let mut term = DMatrix::<f64>::identity(n, n);
    for k in 1..=MAX_TERMS {
        term = &term * &a / k as f64;
        result += &term;
        if norm1(&term) < f64::EPSILON * 1e-3 {
            break;
        }
    }
    for _ in 0..squarings {
        result = &result * &result;
    }
    result
}

/// `max |U^T U - I|` over all entries.
pub fn orthogonality_defect(u: &DMatrix<f64>) -> f64 {
    let n = u.ncols();
    let p = u.transpose() * u;
    let mut worst = 0.0f64;
    for j in 0..n {
        for i in 0..n {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((p[(i, j)] - target).abs());
        }
    }
    worst
}
