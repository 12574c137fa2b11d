use std::f64::consts::PI;

use nalgebra::DMatrix;

use super::Lattice;

/// Volume of the unit ball in ℝⁿ, from the even/odd closed forms.
pub fn unit_ball_volume(n: usize) -> f64 {
    let m = n / 2;
    let fact = |k: usize| (1..=k).map(|v| v as f64).product::<f64>();
    if n.is_multiple_of(2) {
        PI.powi(m as i32) / fact(m)
    } else {
        2f64.powi(n as i32) * fact(m) * PI.powi(m as i32) / fact(n)
    }
}

/// `Vₙ rⁿ / d(L)`: covered fraction for balls of radius `r` centered at the
/// lattice points (overlap is not checked).
pub fn packing_density(l: &Lattice, ball_radius: f64) -> f64 {
    unit_ball_volume(l.dim()) * ball_radius.powi(l.dim() as i32) / l.determinant()
}

/// Hexagonal lattice spanned by `scale·(2, 0)` and `scale·(1, √3)`.
pub fn hexagonal_lattice_2d(scale: f64) -> Lattice {
    let basis = DMatrix::from_row_slice(2, 2, &[2.0, 1.0, 0.0, 3f64.sqrt()]) * scale;
    Lattice::new(basis).expect("hexagonal basis is invertible")
}

/// Face-centered cubic lattice with minimal vector length `2·scale`.
pub fn fcc_lattice_3d(scale: f64) -> Lattice {
    let basis = DMatrix::from_row_slice(3, 3, &[1.0, 1.0, 0.0, 1.0, 0.0, 1.0, 0.0, 1.0, 1.0]) * (2f64.sqrt() * scale);
    Lattice::new(basis).expect("fcc basis is invertible")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ball_volumes() {
        assert!((unit_ball_volume(1) - 2.0).abs() < 1e-15);
        assert!((unit_ball_volume(2) - PI).abs() < 1e-15);
        assert!((unit_ball_volume(3) - 4.0 * PI / 3.0).abs() < 1e-14);
        assert!((unit_ball_volume(4) - PI * PI / 2.0).abs() < 1e-14);
    }

    #[test]
    fn classical_densities() {
        let sq = Lattice::scaled_integer(2, 2.0).unwrap();
        assert!((packing_density(&sq, 1.0) - PI / 4.0).abs() < 1e-12);
        let hex = hexagonal_lattice_2d(1.0);
        assert!((hex.determinant() - 2.0 * 3f64.sqrt()).abs() < 1e-12);
        assert!((packing_density(&hex, 1.0) - PI / 12f64.sqrt()).abs() < 1e-12);
        let cube = Lattice::scaled_integer(3, 2.0).unwrap();
        assert!((packing_density(&cube, 1.0) - PI / 6.0).abs() < 1e-12);
        let fcc = fcc_lattice_3d(1.0);
        assert!((packing_density(&fcc, 1.0) - PI / 18f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn hexagonal_minimal_vectors_have_length_two() {
        let hex = hexagonal_lattice_2d(1.0);
        let pts = hex.points_within(2.0 + 1e-9);
        assert_eq!(pts.len(), 6);
        assert!(pts.iter().all(|p| (p.norm() - 2.0).abs() < 1e-12));
        let fcc = fcc_lattice_3d(1.0);
        assert_eq!(fcc.points_within(2.0 + 1e-9).len(), 12);
    }
}
