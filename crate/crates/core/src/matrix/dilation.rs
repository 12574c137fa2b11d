use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg;

const DET_TOL: f64 = 1e-12;
const MODULUS_TOL: f64 = 1e-12;

/// A validated real expansive matrix `A` with its transpose `B = Aᵗ`.
#[derive(Debug, Clone)]
pub struct DilationMatrix {
    a: DMatrix<f64>,
    b: DMatrix<f64>,
    a_inv: DMatrix<f64>,
    b_inv: DMatrix<f64>,
    det_abs: f64,
    eigenvalues: Vec<Complex64>,
}

/// Checks that `m` is square, finite, invertible and has every eigenvalue
/// strictly outside the closed unit disc.
pub fn validate_expansive(m: &DMatrix<f64>) -> Result<DilationMatrix> {
    if m.nrows() == 0 {
        return Err(Error::Empty);
    }
    if m.nrows() != m.ncols() {
        return Err(Error::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    if m.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite);
    }
    let det = m.determinant();
    if det.abs() <= DET_TOL {
        return Err(Error::Singular { det: det.abs() });
    }
    let mut eigenvalues: Vec<Complex64> = m
        .clone()
        .complex_eigenvalues()
        .iter()
        .map(|z| Complex64::new(z.re, z.im))
        .collect();
    eigenvalues.sort_by(|x, y| {
        y.norm()
            .total_cmp(&x.norm())
            .then(y.re.total_cmp(&x.re))
            .then(y.im.total_cmp(&x.im))
    });
    if let Some(z) = eigenvalues.iter().find(|z| z.norm() <= 1.0 + MODULUS_TOL) {
        return Err(Error::NotExpansive {
            re: z.re,
            im: z.im,
            modulus: z.norm(),
        });
    }
    let a_inv = linalg::inverse(m)?;
    Ok(DilationMatrix {
        a: m.clone(),
        b: m.transpose(),
        b_inv: a_inv.transpose(),
        a_inv,
        det_abs: det.abs(),
        eigenvalues,
    })
}

impl DilationMatrix {
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        validate_expansive(&linalg::matrix_from_rows(rows)?)
    }

    /// The quincunx matrix `[[1, -1], [1, 1]]`.
    pub fn quincunx() -> Self {
        Self::from_rows(&[vec![1.0, -1.0], vec![1.0, 1.0]]).expect("quincunx is expansive")
    }

    pub fn dim(&self) -> usize {
        self.a.nrows()
    }

    pub fn a(&self) -> &DMatrix<f64> {
        &self.a
    }

    pub fn a_inv(&self) -> &DMatrix<f64> {
        &self.a_inv
    }

    /// `B = Aᵗ`, the matrix acting on the frequency side.
    pub fn b(&self) -> &DMatrix<f64> {
        &self.b
    }

    pub fn b_inv(&self) -> &DMatrix<f64> {
        &self.b_inv
    }

    pub fn det_abs(&self) -> f64 {
        self.det_abs
    }

    /// Eigenvalues sorted by decreasing modulus.
    pub fn eigenvalues(&self) -> &[Complex64] {
        &self.eigenvalues
    }

    pub fn max_modulus(&self) -> f64 {
        self.eigenvalues[0].norm()
    }

    pub fn min_modulus(&self) -> f64 {
        self.eigenvalues.last().unwrap().norm()
    }

    pub fn a_pow(&self, p: i32) -> DMatrix<f64> {
        linalg::matrix_power(&self.a, &self.a_inv, p)
    }

    pub fn b_pow(&self, p: i32) -> DMatrix<f64> {
        linalg::matrix_power(&self.b, &self.b_inv, p)
    }

    /// Conjugated dilation `P⁻¹ A P`.
    pub fn conjugated(&self, p: &DMatrix<f64>) -> Result<Self> {
        let p_inv = linalg::inverse(p)?;
        validate_expansive(&(p_inv * &self.a * p))
    }
}
