//! Analysis and synthesis of a smooth bump with the dyadic cosine pair.

use std::sync::Arc;

use dualframe::generators::{dual_pair_1d, radial_profile_generator, ProfileKind};
use dualframe::matrix::{build_associated_norm, DilationMatrix, NormOptions};
use dualframe::transform::{covering_scales, roundtrip, AnalysisOptions, FrequencyGrid, Signal};

fn main() -> dualframe::Result<()> {
    let dil = DilationMatrix::from_rows(&[vec![2.0]])?;
    let norm = Arc::new(build_associated_norm(&dil, &NormOptions::default())?);
    let psi = radial_profile_generator(norm, 0, ProfileKind::Cosine)?;
    let (pair, max_step) = dual_pair_1d(&psi, &[0.0, 0.5, 1.0], 0.5)?;
    println!("translation step 0.5, admissible up to {max_step}");

    let signal = Signal::Bump {
        center: vec![0.625],
        radius: vec![0.375],
        sharpness: None,
        shift: Some(vec![1.5]),
    };
    let grid = FrequencyGrid::from_fn(vec![-2.0], vec![4.0], 1 << 14, |x| signal.eval(x))?;
    let j_range = covering_scales(&grid, &pair).expect("signal is nonzero");
    for k_window in [16, 32, 64, 128] {
        let rt = roundtrip(
            &grid,
            &pair,
            &AnalysisOptions {
                j_range,
                k_window,
                drop_tol: 0.0,
            },
        )?;
        println!(
            "scales {j_range:?}, |k| <= {k_window:>3}: relative error {:.3e}",
            rt.rel_err
        );
    }
    Ok(())
}
