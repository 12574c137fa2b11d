//! Sampled frame bounds of the quincunx tent system.

use dualframe::generators::{make_dual, quincunx_tent_generator, DualCoefficients};
use dualframe::lattice::{Lattice, LatticePair};
use dualframe::verification::{full_report, VerificationOptions};

fn main() -> dualframe::Result<()> {
    let psi = quincunx_tent_generator();
    let lattice = LatticePair::from_gamma(Lattice::scaled_integer(2, 0.5)?);
    let pair = make_dual(&psi, &DualCoefficients::new(vec![0.0, 0.0, 1.0, 2.0, 2.0])?, &lattice)?;
    let report = full_report(&pair, &VerificationOptions::default())?;
    println!("C1 = {:.9}, C2 = {:.9}", report.c1, report.c2);
    println!("dual: C1 = {:.9}, C2 = {:.9}", report.c1_phi, report.c2_phi);
    println!("all checks passed: {}", report.all_passed);
    Ok(())
}
