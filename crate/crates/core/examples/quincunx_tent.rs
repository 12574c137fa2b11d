//! The piecewise-linear quincunx generator and its dual on ½ℤ².

use dualframe::generators::{make_dual, quincunx_tent_generator, DualCoefficients};
use dualframe::lattice::{Lattice, LatticePair};
use nalgebra::DVector;

fn main() -> dualframe::Result<()> {
    let psi = quincunx_tent_generator();
    let lattice = LatticePair::from_gamma(Lattice::scaled_integer(2, 0.5)?);
    let coeffs = DualCoefficients::new(vec![0.0, 0.0, 1.0, 2.0, 2.0])?;
    let pair = make_dual(&psi, &coeffs, &lattice)?;

    let xi = DVector::from_vec(vec![0.7, 0.2]);
    let dil = psi.dilation();
    let dilates: Vec<f64> = (-2..=2).map(|j| psi.eval(&(dil.b_pow(j) * &xi))).collect();
    println!(
        "psi(B^j xi), j = -2..=2: {dilates:.3?}, sum {:.15}",
        dilates.iter().sum::<f64>()
    );
    println!("d(Gamma) = {}", pair.d_gamma());
    println!("phi = sum of w_j psi(A^-j .): {:?}", pair.time_domain_terms());
    println!("separation: {:?}", pair.separation.as_ref().map(|s| s.separated));
    Ok(())
}
