//! Moving a pair onto the integer lattice.

use dualframe::generators::{make_dual, quincunx_tent_generator, standardize, DualCoefficients};
use dualframe::lattice::{Lattice, LatticePair};
use dualframe::verification::{check_calderon, SampleSpec};
use nalgebra::DMatrix;

fn main() -> dualframe::Result<()> {
    let lattice = LatticePair::from_gamma(Lattice::scaled_integer(2, 0.5)?);
    let coeffs = DualCoefficients::new(vec![0.0, 0.0, 1.0, 2.0, 2.0])?;
    let pair = make_dual(&quincunx_tent_generator(), &coeffs, &lattice)?;

    let p = DMatrix::identity(2, 2) * 0.5;
    let std_pair = standardize(&pair, &p)?;
    println!("new dilation {}", std_pair.psi.dilation().a());
    println!("new lattice basis {}", std_pair.lattice.gamma.basis());
    let spec = SampleSpec::for_generator(&std_pair.psi, 5_000, 1);
    println!(
        "Calderon error after standardizing: {:.2e}",
        check_calderon(&std_pair, &spec)?
    );
    Ok(())
}
