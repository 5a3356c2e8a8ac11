//! State representations and the conversions between them.
//!
//! Conventions: `a = (q + i p)/sqrt(2)`, the displacement operator is
//! `D(lambda) = exp(lambda a^dag - lambda^* a)` and a one-mode Gaussian CF is
//!
//! ```text
//! chi(lambda) = exp[-(A + 1/2)|lambda|^2 - B^* lambda^2 / 2 - B (lambda^*)^2 / 2
//!                   + C^* lambda - C lambda^*]
//! ```
//!
//! With `lambda = -(i/sqrt 2)(x + i y)` the same CF reads
//! `exp[-X^T V X / 2 - i Xi^T X]`, which fixes the covariance matrix
//!
//! ```text
//! V = [[A + 1/2 - Re B,  -Im B        ],
//!      [-Im B,            A + 1/2 + Re B]]
//! ```
//!
//! For two modes the cross term `-F l1^* l2 - F^* l1 l2^* + G^* l1 l2 + G l1^* l2^*`
//! maps onto the cross-covariance block
//! `C = [[Re F + Re G, Im G - Im F], [Im F + Im G, Re F - Re G]]`.

use crate::error::{domain, Error, Result};
use crate::math::normalize_angle;

pub use num_complex::Complex64 as Complex;

/// Absolute slack allowed on determinant inequalities, before scaling.
pub const PHYSICALITY_TOL: f64 = 1e-9;

/// Slack for a determinant built from entries of size `scale`.
///
/// Rounding in a 2x2 determinant grows like `eps * scale^2`, so the absolute
/// tolerance is widened once entries exceed 1.
fn det_tolerance(scale: f64) -> f64 {
    PHYSICALITY_TOL * scale.abs().max(1.0).powi(2)
}

/// Displaced squeezed thermal state `D(alpha) S(r, phi) rho_T S^dag D^dag`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DstsParams {
    /// Mean thermal occupancy.
    pub nbar: f64,
    /// Squeeze factor.
    pub r: f64,
    /// Squeeze angle in `(-pi, pi]`.
    pub phi: f64,
    /// Coherent displacement.
    pub alpha: Complex,
}

impl DstsParams {
    /// Validates the parameters and normalizes `phi` into `(-pi, pi]`.
    pub fn new(nbar: f64, r: f64, phi: f64, alpha: Complex) -> Result<Self> {
        let p = Self {
            nbar,
            r,
            phi: normalize_angle(phi),
            alpha,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn vacuum() -> Self {
        Self::thermal(0.0)
    }

    pub fn thermal(nbar: f64) -> Self {
        Self {
            nbar,
            r: 0.0,
            phi: 0.0,
            alpha: Complex::new(0.0, 0.0),
        }
    }

    pub fn coherent(alpha: Complex) -> Self {
        Self {
            alpha,
            ..Self::vacuum()
        }
    }

    pub fn squeezed_vacuum(r: f64, phi: f64) -> Self {
        Self {
            r,
            phi: normalize_angle(phi),
            ..Self::vacuum()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.nbar >= 0.0 && self.nbar.is_finite()) {
            return Err(domain("nbar", self.nbar));
        }
        if !(self.r >= 0.0 && self.r.is_finite()) {
            return Err(domain("r", self.r));
        }
        if !self.phi.is_finite() {
            return Err(domain("phi", self.phi));
        }
        if !(self.alpha.re.is_finite() && self.alpha.im.is_finite()) {
            return Err(domain("alpha", self.alpha.norm()));
        }
        Ok(())
    }
}

/// Exponent coefficients `(A, B, C)` of a one-mode Gaussian CF.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OneModeGaussianCF {
    pub a: f64,
    pub b: Complex,
    pub c: Complex,
}

impl OneModeGaussianCF {
    pub fn new(a: f64, b: Complex, c: Complex) -> Self {
        Self { a, b, c }
    }

    /// `(A + 1/2)^2 - |B|^2`, the determinant of the covariance matrix.
    pub fn det_cov(&self) -> f64 {
        let s = self.a + 0.5;
        let m = self.b.norm();
        (s - m) * (s + m)
    }

    /// Checks `det V >= 1/4` within tolerance.
    pub fn check_physical(&self) -> Result<()> {
        let det = self.det_cov();
        let deficit = 0.25 - det;
        if !det.is_finite() || deficit > det_tolerance(self.a + 0.5) {
            return Err(Error::UnphysicalState {
                what: "one-mode covariance determinant",
                deficit,
            });
        }
        Ok(())
    }

    /// Evaluates the CF at `lambda` from the coefficients.
    pub fn eval(&self, lambda: Complex) -> Complex {
        eval_cf1(self, lambda)
    }
}

/// Symmetric one-mode covariance matrix of `(q, p)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CovMat1 {
    pub qq: f64,
    pub qp: f64,
    pub pp: f64,
}

impl CovMat1 {
    pub fn det(&self) -> f64 {
        self.qq * self.pp - self.qp * self.qp
    }

    pub fn to_array(&self) -> [[f64; 2]; 2] {
        [[self.qq, self.qp], [self.qp, self.pp]]
    }

    pub fn check_physical(&self) -> Result<()> {
        let scale = 0.5 * (self.qq + self.pp);
        let deficit = 0.25 - self.det();
        if !(self.qq > 0.0 && self.pp > 0.0) || deficit > det_tolerance(scale) {
            return Err(Error::UnphysicalState {
                what: "one-mode covariance matrix",
                deficit,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &CovMat1) -> CovMat1 {
        CovMat1 {
            qq: self.qq + other.qq,
            qp: self.qp + other.qp,
            pp: self.pp + other.pp,
        }
    }
}

/// Two-mode squeezed thermal state `S12(r, phi) (rho_T1 (x) rho_T2) S12^dag`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoModeStsParams {
    pub nbar1: f64,
    pub nbar2: f64,
    pub r: f64,
    pub phi: f64,
}

impl TwoModeStsParams {
    pub fn new(nbar1: f64, nbar2: f64, r: f64, phi: f64) -> Result<Self> {
        let p = Self {
            nbar1,
            nbar2,
            r,
            phi: normalize_angle(phi),
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.nbar1 >= 0.0 && self.nbar1.is_finite()) {
            return Err(domain("nbar1", self.nbar1));
        }
        if !(self.nbar2 >= 0.0 && self.nbar2.is_finite()) {
            return Err(domain("nbar2", self.nbar2));
        }
        if !(self.r >= 0.0 && self.r.is_finite()) {
            return Err(domain("r", self.r));
        }
        if !self.phi.is_finite() {
            return Err(domain("phi", self.phi));
        }
        Ok(())
    }

    /// Mean occupancies `(N1, N2)` of the two reduced states.
    pub fn reduced_occupancies(&self) -> (f64, f64) {
        let c2 = self.r.cosh().powi(2);
        let s2 = self.r.sinh().powi(2);
        let h1 = self.nbar1 + 0.5;
        let h2 = self.nbar2 + 0.5;
        (h1 * c2 + h2 * s2 - 0.5, h2 * c2 + h1 * s2 - 0.5)
    }

    /// `sqrt(-det C) = (n1 + n2 + 1) sinh r cosh r`.
    pub fn cross_strength(&self) -> f64 {
        (self.nbar1 + self.nbar2 + 1.0) * self.r.sinh() * self.r.cosh()
    }
}

/// Two-mode Gaussian CF: two one-mode factors and the cross coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoModeGaussianCF {
    pub mode1: OneModeGaussianCF,
    pub mode2: OneModeGaussianCF,
    pub f: Complex,
    pub g: Complex,
}

impl TwoModeGaussianCF {
    pub fn is_displacement_free(&self) -> bool {
        self.mode1.c == Complex::new(0.0, 0.0) && self.mode2.c == Complex::new(0.0, 0.0)
    }

    pub fn eval(&self, l1: Complex, l2: Complex) -> Complex {
        eval_cf2(self, l1, l2)
    }
}

/// Full 4x4 covariance matrix in block form `[[V1, C], [C^T, V2]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CovMat2 {
    pub v1: CovMat1,
    pub v2: CovMat1,
    /// Rows `(q1, p1)`, columns `(q2, p2)`.
    pub cross: [[f64; 2]; 2],
}

impl CovMat2 {
    pub fn to_array(&self) -> [[f64; 4]; 4] {
        let a = self.v1.to_array();
        let b = self.v2.to_array();
        let c = self.cross;
        [
            [a[0][0], a[0][1], c[0][0], c[0][1]],
            [a[1][0], a[1][1], c[1][0], c[1][1]],
            [c[0][0], c[1][0], b[0][0], b[0][1]],
            [c[0][1], c[1][1], b[1][0], b[1][1]],
        ]
    }

    pub fn det_cross(&self) -> f64 {
        self.cross[0][0] * self.cross[1][1] - self.cross[0][1] * self.cross[1][0]
    }

    pub fn det(&self) -> f64 {
        det4(self.to_array())
    }

    pub fn add(&self, other: &CovMat2) -> CovMat2 {
        let mut cross = self.cross;
        for (row, orow) in cross.iter_mut().zip(other.cross.iter()) {
            for (x, y) in row.iter_mut().zip(orow.iter()) {
                *x += y;
            }
        }
        CovMat2 {
            v1: self.v1.add(&other.v1),
            v2: self.v2.add(&other.v2),
            cross,
        }
    }

    /// `det V - (det V1 + det V2 + 2 det C)/4 + 1/16`; nonnegative for every
    /// physical state.
    pub fn heisenberg_combination(&self) -> f64 {
        let inv = local_invariants(self);
        inv.det_v - 0.25 * (inv.det_v1 + inv.det_v2 + 2.0 * inv.det_c) + 1.0 / 16.0
    }

    pub fn check_physical(&self) -> Result<()> {
        self.v1.check_physical()?;
        self.v2.check_physical()?;
        let scale = 0.5 * (self.v1.qq + self.v1.pp + self.v2.qq + self.v2.pp);
        let tol = PHYSICALITY_TOL * scale.max(1.0).powi(4);
        // Both symplectic eigenvalues below 1/2 also make the combination
        // positive; det V >= 1/16 rules that case out.
        let det = self.det();
        if !det.is_finite() || 1.0 / 16.0 - det > tol {
            return Err(Error::UnphysicalState {
                what: "two-mode covariance determinant",
                deficit: 1.0 / 16.0 - det,
            });
        }
        let h = self.heisenberg_combination();
        if !h.is_finite() || -h > tol {
            return Err(Error::UnphysicalState {
                what: "two-mode Heisenberg combination",
                deficit: -h,
            });
        }
        Ok(())
    }
}

/// The four `Sp(2,R) (x) Sp(2,R)` invariants of a two-mode covariance matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalInvariants {
    pub det_v1: f64,
    pub det_v2: f64,
    pub det_c: f64,
    pub det_v: f64,
}

pub fn dsts_to_cf(p: &DstsParams) -> OneModeGaussianCF {
    let h = p.nbar + 0.5;
    let two_r = 2.0 * p.r;
    OneModeGaussianCF {
        a: h * two_r.cosh() - 0.5,
        b: -Complex::from_polar(h * two_r.sinh(), p.phi),
        c: p.alpha,
    }
}

/// Inverse of [`dsts_to_cf`]. `phi` is reported as 0 when `B = 0`.
pub fn cf_to_dsts(g: &OneModeGaussianCF) -> Result<DstsParams> {
    g.check_physical()?;
    let s = g.a + 0.5;
    let m = g.b.norm();
    let half = g.det_cov().max(0.25).sqrt();
    let r = if m == 0.0 {
        0.0
    } else if m < 0.5 * s {
        0.5 * (m / s).atanh()
    } else {
        0.5 * ((s + m) / half).ln()
    };
    let phi = if m == 0.0 { 0.0 } else { (-g.b).arg() };
    Ok(DstsParams {
        nbar: half - 0.5,
        r,
        phi: normalize_angle(phi),
        alpha: g.c,
    })
}

pub fn cf_to_cov(g: &OneModeGaussianCF) -> Result<CovMat1> {
    g.check_physical()?;
    Ok(cf_to_cov_unchecked(g))
}

pub(crate) fn cf_to_cov_unchecked(g: &OneModeGaussianCF) -> CovMat1 {
    let s = g.a + 0.5;
    CovMat1 {
        qq: s - g.b.re,
        qp: -g.b.im,
        pp: s + g.b.re,
    }
}

/// Builds CF coefficients from second moments and the displacement `c`.
pub fn cov_to_cf(v: &CovMat1, c: Complex) -> Result<OneModeGaussianCF> {
    v.check_physical()?;
    Ok(OneModeGaussianCF {
        a: 0.5 * (v.qq + v.pp) - 0.5,
        b: Complex::new(0.5 * (v.pp - v.qq), -v.qp),
        c,
    })
}

pub fn sts_to_cf2(p: &TwoModeStsParams) -> TwoModeGaussianCF {
    let (n1, n2) = p.reduced_occupancies();
    let zero = Complex::new(0.0, 0.0);
    TwoModeGaussianCF {
        mode1: OneModeGaussianCF::new(n1, zero, zero),
        mode2: OneModeGaussianCF::new(n2, zero, zero),
        f: zero,
        g: Complex::from_polar(p.cross_strength(), p.phi),
    }
}

pub fn cf2_to_cov2(t: &TwoModeGaussianCF) -> Result<CovMat2> {
    let m = cf2_to_cov2_unchecked(t);
    m.check_physical()?;
    Ok(m)
}

pub(crate) fn cf2_to_cov2_unchecked(t: &TwoModeGaussianCF) -> CovMat2 {
    let (f, g) = (t.f, t.g);
    CovMat2 {
        v1: cf_to_cov_unchecked(&t.mode1),
        v2: cf_to_cov_unchecked(&t.mode2),
        cross: [[f.re + g.re, g.im - f.im], [f.im + g.im, f.re - g.re]],
    }
}

pub fn sts_to_cov2(p: &TwoModeStsParams) -> CovMat2 {
    cf2_to_cov2_unchecked(&sts_to_cf2(p))
}

pub fn local_invariants(m: &CovMat2) -> LocalInvariants {
    LocalInvariants {
        det_v1: m.v1.det(),
        det_v2: m.v2.det(),
        det_c: m.det_cross(),
        det_v: m.det(),
    }
}

pub fn eval_cf1(g: &OneModeGaussianCF, l: Complex) -> Complex {
    let l2 = l * l;
    let exponent = -(g.a + 0.5) * l.norm_sqr() - 0.5 * g.b.conj() * l2 - 0.5 * g.b * l2.conj()
        + g.c.conj() * l
        - g.c * l.conj();
    exponent.exp()
}

/// Phase-space vector `(x, y)` with `lambda = -(i/sqrt 2)(x + i y)`.
fn quadrature_arg(l: Complex) -> [f64; 2] {
    let s = core::f64::consts::SQRT_2;
    [-s * l.im, s * l.re]
}

/// `(xi, eta)` with `alpha = (xi + i eta)/sqrt 2`.
fn quadrature_mean(alpha: Complex) -> [f64; 2] {
    let s = core::f64::consts::SQRT_2;
    [s * alpha.re, s * alpha.im]
}

/// Evaluates the CF from second moments and displacement instead of
/// coefficients.
pub fn eval_cf1_cov(v: &CovMat1, alpha: Complex, l: Complex) -> Complex {
    let x = quadrature_arg(l);
    let xi = quadrature_mean(alpha);
    let m = v.to_array();
    let quad = quad_form(&m, &x);
    let lin = xi[0] * x[0] + xi[1] * x[1];
    Complex::new(-0.5 * quad, -lin).exp()
}

pub fn eval_cf2(t: &TwoModeGaussianCF, l1: Complex, l2: Complex) -> Complex {
    let cross = -t.f * l1.conj() * l2 - t.f.conj() * l1 * l2.conj()
        + t.g.conj() * l1 * l2
        + t.g * l1.conj() * l2.conj();
    eval_cf1(&t.mode1, l1) * eval_cf1(&t.mode2, l2) * cross.exp()
}

pub fn eval_cf2_cov(m: &CovMat2, alpha: [Complex; 2], l1: Complex, l2: Complex) -> Complex {
    let a = quadrature_arg(l1);
    let b = quadrature_arg(l2);
    let x = [a[0], a[1], b[0], b[1]];
    let m1 = quadrature_mean(alpha[0]);
    let m2 = quadrature_mean(alpha[1]);
    let quad = quad_form(&m.to_array(), &x);
    let lin = m1[0] * x[0] + m1[1] * x[1] + m2[0] * x[2] + m2[1] * x[3];
    Complex::new(-0.5 * quad, -lin).exp()
}

fn quad_form<const N: usize>(m: &[[f64; N]; N], x: &[f64; N]) -> f64 {
    let mut acc = 0.0;
    for i in 0..N {
        for j in 0..N {
            acc += x[i] * m[i][j] * x[j];
        }
    }
    acc
}

/// Determinant by Gaussian elimination with partial pivoting.
pub(crate) fn det4(mut m: [[f64; 4]; 4]) -> f64 {
    let mut det = 1.0;
    for col in 0..4 {
        let pivot = (col..4)
            .max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))
            .unwrap_or(col);
        if m[pivot][col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let p = m[col][col];
        det *= p;
        for row in col + 1..4 {
            let factor = m[row][col] / p;
            for k in col..4 {
                m[row][k] -= factor * m[col][k];
            }
        }
    }
    det
}
