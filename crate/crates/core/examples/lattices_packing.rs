//! Dual lattices, packing densities and the lattices admitted by a dilation.

use dualframe::lattice::{
    crude_lattice, hexagonal_lattice_2d, hexagonal_special_lattice, integer_quotient_representatives, packing_density,
    special_lattice, Lattice,
};
use dualframe::matrix::{build_associated_norm, DilationMatrix, NormOptions};

fn main() -> dualframe::Result<()> {
    let square = Lattice::scaled_integer(2, 2.0)?;
    let hex = hexagonal_lattice_2d(1.0);
    let (ds, dh) = (packing_density(&square, 1.0), packing_density(&hex, 1.0));
    println!("density 2Z^2: {ds:.12}, hexagonal: {dh:.12}, ratio {:.12}", dh / ds);
    println!("d(hex) d(hex*) = {}", hex.determinant() * hex.dual().determinant());

    let dil = DilationMatrix::quincunx();
    let norm = build_associated_norm(&dil, &NormOptions::default())?;
    for (name, pair) in [
        ("special", special_lattice(&norm, 1)),
        ("hexagonal", hexagonal_special_lattice(&norm, 1)?),
        ("crude", crude_lattice(&norm, 1, 0)),
    ] {
        println!("{name:>9}: d(Gamma) = {:.6}", pair.d_gamma());
    }

    let classes = integer_quotient_representatives(dil.a())?;
    let reps: Vec<Vec<f64>> = classes
        .to_vectors()
        .iter()
        .map(|v| v.iter().copied().collect())
        .collect();
    println!("A^-1 Z^2 / Z^2 representatives: {reps:?}");
    Ok(())
}
