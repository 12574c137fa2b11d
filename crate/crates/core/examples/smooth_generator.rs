//! A C^∞ generator normalized into a partition of unity, with its special dual.

use std::sync::Arc;

use dualframe::generators::{make_dual_special, smooth_generator};
use dualframe::lattice::special_lattice;
use dualframe::matrix::{build_associated_norm, DilationMatrix, NormOptions};
use dualframe::verification::{check_calderon, check_partition, SampleSpec};

fn main() -> dualframe::Result<()> {
    let dil = DilationMatrix::from_rows(&[vec![2.0, 0.0], vec![0.0, 2.0]])?;
    let norm = Arc::new(build_associated_norm(&dil, &NormOptions::default())?);
    let psi = smooth_generator(norm.clone(), 1, 2)?;
    let pair = make_dual_special(&psi, &special_lattice(&norm, 1))?;

    let spec = SampleSpec::for_generator(&psi, 10_000, 7);
    println!("support shells {}..={}", psi.support().lo(), psi.support().hi());
    println!("partition error {:.2e}", check_partition(&psi, &spec)?);
    println!("Calderon error  {:.2e}", check_calderon(&pair, &spec)?);
    println!("d(Gamma) = {:.6}", pair.d_gamma());
    Ok(())
}
