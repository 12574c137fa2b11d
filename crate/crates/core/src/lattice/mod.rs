//! Translation lattices, their duals, and the separation machinery.

mod packing;
mod quotient;
mod separation;
mod special;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::linalg;

pub use packing::{fcc_lattice_3d, hexagonal_lattice_2d, packing_density, unit_ball_volume};
pub use quotient::{integer_quotient_representatives, QuotientRepresentatives};
pub use separation::{verify_separation, SeparationMethod, SeparationReport};
pub use special::{
    crude_lattice, crude_lattice_norm_bound, hexagonal_special_lattice, special_lattice, special_lattice_determinant,
};

/// The point set `Pℤⁿ` for an invertible basis matrix `P` (basis vectors are columns).
#[derive(Debug, Clone)]
pub struct Lattice {
    basis: DMatrix<f64>,
    basis_inv: DMatrix<f64>,
    det: f64,
}

impl Lattice {
    pub fn new(basis: DMatrix<f64>) -> Result<Self> {
        if basis.nrows() != basis.ncols() {
            return Err(Error::NotSquare {
                rows: basis.nrows(),
                cols: basis.ncols(),
            });
        }
        if basis.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        let det = basis.determinant().abs();
        if det <= 1e-300 {
            return Err(Error::Singular { det });
        }
        let basis_inv = linalg::inverse(&basis)?;
        Ok(Self { basis, basis_inv, det })
    }

    /// `s·ℤⁿ`.
    pub fn scaled_integer(n: usize, s: f64) -> Result<Self> {
        Self::new(DMatrix::identity(n, n) * s)
    }

    pub fn dim(&self) -> usize {
        self.basis.nrows()
    }

    pub fn basis(&self) -> &DMatrix<f64> {
        &self.basis
    }

    /// `d(Γ) = |det P|`.
    pub fn determinant(&self) -> f64 {
        self.det
    }

    /// The dual lattice with basis `(Pᵗ)⁻¹`.
    pub fn dual(&self) -> Lattice {
        let basis = self.basis_inv.transpose();
        Lattice {
            basis_inv: self.basis.transpose(),
            det: 1.0 / self.det,
            basis,
        }
    }

    pub fn point(&self, k: &[i64]) -> DVector<f64> {
        let kv = DVector::from_iterator(k.len(), k.iter().map(|&v| v as f64));
        &self.basis * kv
    }

    /// Coordinates of `x` in the basis.
    pub fn coordinates(&self, x: &DVector<f64>) -> DVector<f64> {
        &self.basis_inv * x
    }

    pub fn contains(&self, x: &DVector<f64>, tol: f64) -> bool {
        self.coordinates(x).iter().all(|c| (c - c.round()).abs() <= tol)
    }

    /// Integer coordinate vectors `k` with `‖Pk‖₂ ≤ radius`, ordered by length
    /// and then lexicographically.
    pub fn indices_within(&self, radius: f64, include_zero: bool) -> Vec<Vec<i64>> {
        let n = self.dim();
        let bounds: Vec<i64> = (0..n)
            .map(|i| (radius * self.basis_inv.row(i).norm() * (1.0 + 1e-12) + 1e-12).floor() as i64)
            .collect();
        let total: f64 = bounds.iter().map(|b| (2 * b + 1) as f64).product();
        assert!(total < 5e7, "lattice enumeration of {total} points is too large");
        let mut out: Vec<(f64, Vec<i64>)> = Vec::new();
        let mut k: Vec<i64> = bounds.iter().map(|b| -b).collect();
        let limit = radius * (1.0 + 1e-12);
        loop {
            let is_zero = k.iter().all(|&v| v == 0);
            if include_zero || !is_zero {
                let len = self.point(&k).norm();
                if len <= limit {
                    out.push((len, k.clone()));
                }
            }
            let mut i = 0;
            loop {
                if i == n {
                    out.sort_by(|a, b| a.0.total_cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
                    return out.into_iter().map(|(_, k)| k).collect();
                }
                if k[i] < bounds[i] {
                    k[i] += 1;
                    break;
                }
                k[i] = -bounds[i];
                i += 1;
            }
        }
    }

    /// Lattice points of Euclidean length at most `radius`, nonzero ones only.
    pub fn points_within(&self, radius: f64) -> Vec<DVector<f64>> {
        self.indices_within(radius, false)
            .iter()
            .map(|k| self.point(k))
            .collect()
    }

    /// Whether `other` describes the same point set (bases differ by a unimodular matrix).
    pub fn same_lattice(&self, other: &Lattice, tol: f64) -> bool {
        if self.dim() != other.dim() {
            return false;
        }
        let u = &self.basis_inv * &other.basis;
        let integral = u.iter().all(|v| (v - v.round()).abs() <= tol);
        integral && (u.map(|v| v.round()).determinant().abs() - 1.0).abs() <= tol
    }
}

/// `dual_lattice(L)`, the free-function form of [`Lattice::dual`].
pub fn dual_lattice(l: &Lattice) -> Lattice {
    l.dual()
}

/// A translation lattice Γ together with its dual Γ*.
#[derive(Debug, Clone)]
pub struct LatticePair {
    pub gamma: Lattice,
    pub gamma_star: Lattice,
}

impl LatticePair {
    pub fn from_gamma(gamma: Lattice) -> Self {
        let gamma_star = gamma.dual();
        Self { gamma, gamma_star }
    }

    pub fn from_gamma_star(gamma_star: Lattice) -> Self {
        let gamma = gamma_star.dual();
        Self { gamma, gamma_star }
    }

    pub fn dim(&self) -> usize {
        self.gamma.dim()
    }

    pub fn d_gamma(&self) -> f64 {
        self.gamma.determinant()
    }
}
