//! Associated norm of a rotating expansive matrix.

use dualframe::matrix::{build_associated_norm, DilationMatrix, NormOptions};
use nalgebra::DVector;

fn main() -> dualframe::Result<()> {
    let dil = DilationMatrix::from_rows(&[vec![3.0, -3.0], vec![1.0, 0.0]])?;
    let norm = build_associated_norm(&dil, &NormOptions::default())?;

    println!("eigenvalues of A: {:?}", dil.eigenvalues());
    println!("order k = {}", norm.order());
    println!("K = {}", norm.k());
    println!("eigenvalues of K = {:?}", norm.eig_lambda());
    println!(
        "lambda = {:.6}, slack = {:.3e}",
        norm.lambda(),
        norm.certificate_slack(norm.lambda())
    );

    let x = DVector::from_vec(vec![0.3, -0.8]);
    let j = norm.dilation_index(&x)?;
    println!("x = {:?} lies in B^{j}(I_*) minus B^{}(I_*)", x.as_slice(), j - 1);
    Ok(())
}
