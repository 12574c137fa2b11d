//! Two-dimensional round trip with the quincunx tent pair, exported as CSV.

use dualframe::generators::{make_dual, quincunx_tent_generator, DualCoefficients};
use dualframe::lattice::{Lattice, LatticePair};
use dualframe::transform::{covering_scales, roundtrip, AnalysisOptions, FrequencyGrid, Signal};

fn main() -> dualframe::Result<()> {
    let lattice = LatticePair::from_gamma(Lattice::scaled_integer(2, 0.5)?);
    let coeffs = DualCoefficients::new(vec![0.0, 0.0, 1.0, 2.0, 2.0])?;
    let pair = make_dual(&quincunx_tent_generator(), &coeffs, &lattice)?;

    let signal = Signal::Bump {
        center: vec![0.5, 0.5],
        radius: vec![0.6, 0.6],
        sharpness: None,
        shift: None,
    };
    let grid = FrequencyGrid::from_fn(vec![-1.0, -1.0], vec![2.0, 2.0], 256, |x| signal.eval(x))?;
    let j_range = covering_scales(&grid, &pair).expect("signal is nonzero");
    let rt = roundtrip(
        &grid,
        &pair,
        &AnalysisOptions {
            j_range,
            k_window: 16,
            drop_tol: 0.0,
        },
    )?;
    println!(
        "scales {j_range:?}: relative error {:.3e}, {} coefficients",
        rt.rel_err, rt.stored_coefficients
    );

    let dir = std::env::temp_dir().join("dualframe_quincunx");
    std::fs::create_dir_all(&dir)?;
    grid.write_header(&dir.join("grid.json"))?;
    rt.reconstruction.write_csv(&dir.join("reconstruction.csv"))?;
    rt.coefficients.write_csv(&dir.join("coefficients.csv"), 2)?;
    println!("wrote {}", dir.display());
    Ok(())
}
