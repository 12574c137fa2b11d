//! Radial parametrization of centered ellipsoids in hyperspherical angles.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Unit vector for hyperspherical angles `θ₁ … θ_{n−1}`.
///
/// `u₁ = cos θ₁`, `u_k = sin θ₁ ⋯ sin θ_{k−1} cos θ_k`, `u_n = sin θ₁ ⋯ sin θ_{n−1}`.
pub fn unit_from_angles(angles: &[f64]) -> DVector<f64> {
    let n = angles.len() + 1;
    let mut u = DVector::zeros(n);
    let mut sin_prod = 1.0;
    for (k, &t) in angles.iter().enumerate() {
        u[k] = sin_prod * t.cos();
        sin_prod *= t.sin();
    }
    u[n - 1] = sin_prod;
    u
}

/// Inverse of [`unit_from_angles`] for a nonzero vector (normalized internally).
pub fn angles_from_vector(x: &DVector<f64>) -> Vec<f64> {
    let n = x.len();
    if n < 2 {
        return Vec::new();
    }
    let mut angles = Vec::with_capacity(n - 1);
    // tail[k] = ‖(x_k, …, x_n)‖
    let mut tail = vec![0.0f64; n + 1];
    for k in (0..n).rev() {
        tail[k] = tail[k + 1].hypot(x[k]);
    }
    for k in 0..n - 2 {
        angles.push(tail[k + 1].atan2(x[k]));
    }
    let last = x[n - 1].atan2(x[n - 2]);
    let wrapped = if last < 0.0 { last + 2.0 * PI } else { last };
    angles.push(if wrapped >= 2.0 * PI { 0.0 } else { wrapped });
    angles
}

fn check_angles(angles: &[f64]) -> Result<()> {
    let m = angles.len();
    for (i, &t) in angles.iter().enumerate() {
        let ok = if i + 1 < m {
            (0.0..=PI).contains(&t)
        } else {
            (0.0..2.0 * PI).contains(&t)
        };
        if !ok {
            return Err(Error::AngleOutOfRange { index: i + 1, value: t });
        }
    }
    Ok(())
}

/// Distance from the origin to the surface of the axis-aligned ellipsoid with
/// semi-axes `ℓᵢ`, in the direction given by hyperspherical angles.
///
/// `r = f(θ)^{-1/2}` with `f(θ) = Σ ℓᵢ⁻² uᵢ(θ)²`.
pub fn ellipsoid_radius(semi_axes: &[f64], angles: &[f64]) -> Result<f64> {
    let n = semi_axes.len();
    if n == 0 {
        return Err(Error::Empty);
    }
    if angles.len() != n - 1 {
        return Err(Error::DimensionMismatch {
            expected: n - 1,
            found: angles.len(),
        });
    }
    if let Some(&l) = semi_axes.iter().find(|l| !l.is_finite() || **l <= 0.0) {
        return Err(Error::Config(format!("semi-axis {l} is not positive")));
    }
    check_angles(angles)?;
    let u = unit_from_angles(angles);
    let f: f64 = semi_axes.iter().zip(u.iter()).map(|(l, ui)| ui * ui / (l * l)).sum();
    Ok(f.powf(-0.5))
}

/// The ellipsoid `{x : xᵗ M x ≤ 1}` expressed in the eigenbasis of `M`.
#[derive(Debug, Clone)]
pub struct EllipsoidGeometry {
    form: DMatrix<f64>,
    axes: DMatrix<f64>,
    semi_axes: Vec<f64>,
}

impl EllipsoidGeometry {
    pub fn new(form: &DMatrix<f64>) -> Self {
        let sym = crate::linalg::symmetrize(form);
        let eig = sym.clone().symmetric_eigen();
        let semi_axes = eig.eigenvalues.iter().map(|&mu| mu.powf(-0.5)).collect();
        Self {
            form: sym,
            axes: eig.eigenvectors,
            semi_axes,
        }
    }

    pub fn form(&self) -> &DMatrix<f64> {
        &self.form
    }

    pub fn semi_axes(&self) -> &[f64] {
        &self.semi_axes
    }

    /// Orthogonal matrix whose columns are the principal axes.
    pub fn axes(&self) -> &DMatrix<f64> {
        &self.axes
    }

    /// Radius of the boundary in the direction of `x ≠ 0`.
    pub fn radius_towards(&self, x: &DVector<f64>) -> f64 {
        let y = self.axes.tr_mul(x);
        if y.len() == 1 {
            return self.semi_axes[0];
        }
        let angles = angles_from_vector(&y);
        ellipsoid_radius(&self.semi_axes, &angles).expect("angles from atan2 are in range")
    }

    /// Boundary point for hyperspherical angles measured in the eigenbasis.
    pub fn surface_point(&self, angles: &[f64]) -> Result<DVector<f64>> {
        let r = ellipsoid_radius(&self.semi_axes, angles)?;
        Ok(&self.axes * (unit_from_angles(angles) * r))
    }
}
