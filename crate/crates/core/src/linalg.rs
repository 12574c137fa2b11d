//! Small dense helpers shared by the construction and verification code.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Builds a matrix from row-major nested vectors.
pub fn matrix_from_rows(rows: &[Vec<f64>]) -> Result<DMatrix<f64>> {
    let n = rows.len();
    if n == 0 {
        return Err(Error::Empty);
    }
    let cols = rows[0].len();
    if rows.iter().any(|r| r.len() != cols) {
        return Err(Error::Config("ragged matrix rows".into()));
    }
    Ok(DMatrix::from_fn(n, cols, |i, j| rows[i][j]))
}

/// Row-major nested vectors, the serialized form of every matrix.
pub fn rows_of(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect())
        .collect()
}

/// Spectral (operator 2-) norm.
pub fn op_norm2(m: &DMatrix<f64>) -> f64 {
    m.clone()
        .svd(false, false)
        .singular_values
        .iter()
        .copied()
        .fold(0.0, f64::max)
}

pub(crate) fn symmetrize(m: &DMatrix<f64>) -> DMatrix<f64> {
    (m + m.transpose()) * 0.5
}

/// Eigenvalues of a symmetric matrix, ascending.
pub(crate) fn sym_eigenvalues(m: &DMatrix<f64>) -> Vec<f64> {
    let mut ev: Vec<f64> = symmetrize(m).symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

pub(crate) fn sym_min_eigenvalue(m: &DMatrix<f64>) -> f64 {
    sym_eigenvalues(m)[0]
}

pub(crate) fn sym_max_eigenvalue(m: &DMatrix<f64>) -> f64 {
    *sym_eigenvalues(m).last().unwrap()
}

/// `xᵗ M x`.
#[inline]
pub(crate) fn quad_form(m: &DMatrix<f64>, x: &DVector<f64>) -> f64 {
    let n = x.len();
    let mut acc = 0.0;
    for i in 0..n {
        let mut row = 0.0;
        for j in 0..n {
            row += m[(i, j)] * x[j];
        }
        acc += x[i] * row;
    }
    acc
}

#[inline]
pub(crate) fn sup_norm(m: &DMatrix<f64>, x: &DVector<f64>) -> f64 {
    let n = x.len();
    let mut best: f64 = 0.0;
    for i in 0..m.nrows() {
        let mut row = 0.0;
        for j in 0..n {
            row += m[(i, j)] * x[j];
        }
        best = best.max(row.abs());
    }
    best
}

/// Integer power of a square matrix given the matrix and its inverse.
pub(crate) fn matrix_power(m: &DMatrix<f64>, m_inv: &DMatrix<f64>, power: i32) -> DMatrix<f64> {
    let n = m.nrows();
    let base = if power >= 0 { m } else { m_inv };
    let mut out = DMatrix::identity(n, n);
    for _ in 0..power.unsigned_abs() {
        out = base * &out;
    }
    out
}

pub(crate) fn inverse(m: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let det = m.determinant();
    m.clone().try_inverse().ok_or(Error::Singular { det: det.abs() })
}

/// All sign vectors of `{-1, 1}ⁿ`, the vertices of the cube `[-1, 1]ⁿ`.
pub(crate) fn cube_vertices(n: usize) -> Vec<DVector<f64>> {
    (0..1usize << n)
        .map(|mask| DVector::from_fn(n, |i, _| if mask >> i & 1 == 1 { 1.0 } else { -1.0 }))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn power_matches_repeated_product() {
        let m = DMatrix::from_row_slice(2, 2, &[1.0, 1.0, -1.0, 1.0]);
        let inv = inverse(&m).unwrap();
        let p3 = matrix_power(&m, &inv, 3);
        assert!((p3 - &m * &m * &m).norm() < 1e-12);
        let pm2 = matrix_power(&m, &inv, -2);
        assert!((pm2 * &m * &m - DMatrix::identity(2, 2)).norm() < 1e-12);
    }

    #[test]
    fn spectral_norm_of_rotation_dilation() {
        let m = DMatrix::from_row_slice(2, 2, &[1.0, -1.0, 1.0, 1.0]);
        assert!((op_norm2(&m) - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn rows_round_trip() {
        let rows = vec![vec![3.0, -3.0], vec![1.0, 0.0]];
        let m = matrix_from_rows(&rows).unwrap();
        assert_eq!(m[(0, 1)], -3.0);
        assert_eq!(rows_of(&m), rows);
        assert!(matrix_from_rows(&[vec![1.0], vec![1.0, 2.0]]).is_err());
    }
}
