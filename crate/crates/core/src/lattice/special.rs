use nalgebra::{DMatrix, DVector};

use super::{Lattice, LatticePair};
use crate::error::{Error, Result};
use crate::linalg;
use crate::matrix::AssociatedNorm;

fn sqrt_lambda(norm: &AssociatedNorm, power: f64) -> DMatrix<f64> {
    DMatrix::from_diagonal(&DVector::from_iterator(
        norm.dim(),
        norm.eig_lambda().iter().map(|l| l.powf(power)),
    ))
}

/// `Γ = ½A^{−c}QΛ^{1/2}ℤⁿ` with dual `Γ* = 2B^cQΛ^{−1/2}ℤⁿ`.
///
/// In the coordinates `y = Λ^{1/2}QᵗB^{−c}ξ` the ellipsoid `B^c(I_*)` is the
/// Euclidean unit ball and `Γ*` becomes `2ℤⁿ`, so translates never overlap.
pub fn special_lattice(norm: &AssociatedNorm, c: i32) -> LatticePair {
    let dil = norm.dilation();
    let q = norm.eig_q();
    let gamma = dil.a_pow(-c) * q * sqrt_lambda(norm, 0.5) * 0.5;
    let gamma_star = dil.b_pow(c) * q * sqrt_lambda(norm, -0.5) * 2.0;
    LatticePair {
        gamma: Lattice::new(gamma).expect("special basis is invertible"),
        gamma_star: Lattice::new(gamma_star).expect("special dual basis is invertible"),
    }
}

/// `2⁻ⁿ |det A|^{−c} √(λ₁⋯λₙ)`.
pub fn special_lattice_determinant(norm: &AssociatedNorm, c: i32) -> f64 {
    let n = norm.dim() as i32;
    let prod: f64 = norm.eig_lambda().iter().product();
    2f64.powi(-n) * norm.dilation().det_abs().powi(-c) * prod.sqrt()
}

/// Special lattice with the hexagonal packing in unit-ball coordinates:
/// `Γ* = B^cQΛ^{−1/2}Hℤ²` where `H` spans a hexagonal lattice of minimal length 2.
pub fn hexagonal_special_lattice(norm: &AssociatedNorm, c: i32) -> Result<LatticePair> {
    if norm.dim() != 2 {
        return Err(Error::UnsupportedDimension(norm.dim()));
    }
    let h = super::hexagonal_lattice_2d(1.0);
    let gamma_star = norm.dilation().b_pow(c) * norm.eig_q() * sqrt_lambda(norm, -0.5) * h.basis();
    Ok(LatticePair::from_gamma_star(Lattice::new(gamma_star)?))
}

/// `1 / (ℓ ‖A^c‖₂ (1 + ‖A^{m̲}‖₂))`; any basis with smaller spectral norm separates.
pub fn crude_lattice_norm_bound(norm: &AssociatedNorm, c: i32, m_under: i32) -> f64 {
    let dil = norm.dilation();
    let ell = norm.max_semi_axis();
    let ac = linalg::op_norm2(&dil.a_pow(c));
    let am = linalg::op_norm2(&dil.a_pow(m_under));
    1.0 / (ell * ac * (1.0 + am))
}

/// `Γ = bound·ℤⁿ` at the crude bound.
pub fn crude_lattice(norm: &AssociatedNorm, c: i32, m_under: i32) -> LatticePair {
    let bound = crude_lattice_norm_bound(norm, c, m_under);
    LatticePair::from_gamma(Lattice::scaled_integer(norm.dim(), bound).expect("positive scale"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{build_associated_norm, DilationMatrix, NormOptions};

    fn norm_of(rows: &[Vec<f64>]) -> AssociatedNorm {
        build_associated_norm(&DilationMatrix::from_rows(rows).unwrap(), &NormOptions::default()).unwrap()
    }

    #[test]
    fn quincunx_special_determinant() {
        let n = norm_of(&[vec![1.0, -1.0], vec![1.0, 1.0]]);
        let pair = special_lattice(&n, 1);
        assert!((pair.d_gamma() - 0.125).abs() < 1e-14);
        assert!((special_lattice_determinant(&n, 1) - 0.125).abs() < 1e-14);
        assert!((pair.d_gamma() * pair.gamma_star.determinant() - 1.0).abs() < 1e-12);
        assert!(pair.gamma.dual().same_lattice(&pair.gamma_star, 1e-9));
    }

    #[test]
    fn golden_special_dual_basis() {
        let n = norm_of(&[vec![3.0, -3.0], vec![1.0, 0.0]]);
        let pair = special_lattice(&n, 1);
        let lam = DMatrix::from_diagonal(&DVector::from_iterator(2, n.eig_lambda().iter().map(|l| l.powf(-0.5))));
        let expect = n.dilation().b() * n.eig_q() * lam * 2.0;
        assert!((pair.gamma_star.basis() - expect).amax() < 1e-12);
        let rel = (pair.d_gamma() - special_lattice_determinant(&n, 1)).abs() / pair.d_gamma();
        assert!(rel < 1e-10);
    }

    #[test]
    fn one_dimensional_special() {
        let n = norm_of(&[vec![2.0]]);
        let pair = special_lattice(&n, 0);
        assert!((pair.gamma.basis()[(0, 0)].abs() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn crude_bounds() {
        let one = norm_of(&[vec![2.0]]);
        assert!((crude_lattice_norm_bound(&one, 0, 0) - 0.5).abs() < 1e-15);
        let q = norm_of(&[vec![1.0, -1.0], vec![1.0, 1.0]]);
        assert!((crude_lattice_norm_bound(&q, 1, 0) - 1.0 / (2.0 * 2f64.sqrt())).abs() < 1e-12);
    }

    #[test]
    fn hexagonal_special_is_denser() {
        let n = norm_of(&[vec![3.0, -3.0], vec![1.0, 0.0]]);
        let plain = special_lattice(&n, 1);
        let hex = hexagonal_special_lattice(&n, 1).unwrap();
        let ratio = plain.gamma_star.determinant() / hex.gamma_star.determinant();
        assert!((ratio - 2.0 / 3f64.sqrt()).abs() < 1e-12);
    }
}
