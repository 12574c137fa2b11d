//! Radial generators with the three transition profiles.

use std::sync::Arc;

use dualframe::generators::{radial_profile_generator, ProfileKind};
use dualframe::matrix::{build_associated_norm, DilationMatrix, NormOptions};
use dualframe::verification::{check_partition, SampleSpec};
use nalgebra::DVector;

fn main() -> dualframe::Result<()> {
    let dil = DilationMatrix::from_rows(&[vec![3.0, -3.0], vec![1.0, 0.0]])?;
    let norm = Arc::new(build_associated_norm(&dil, &NormOptions::default())?);
    for kind in ProfileKind::ALL {
        let g = radial_profile_generator(norm.clone(), 1, kind)?;
        let err = check_partition(&g, &SampleSpec::for_generator(&g, 10_000, 42))?;
        let u = DVector::from_vec(vec![1.0, 0.3]);
        let u = &u / norm.norm_value(&u);
        let probe: Vec<String> = [0.5, 0.7, 0.9, 1.1, 1.4]
            .iter()
            .map(|&s| format!("{:.4}", g.eval(&(&u * s))))
            .collect();
        println!(
            "{kind:?}: partition error {err:.2e}, values at *-norm 0.5 .. 1.4: {}",
            probe.join(" ")
        );
    }
    Ok(())
}
