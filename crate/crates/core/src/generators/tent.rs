use std::sync::Arc;

use nalgebra::DVector;

use super::{BandlimitedGenerator, GeneratorDescriptor, SupportSpec};
use crate::matrix::{build_associated_norm, DilationMatrix, NormOptions};

/// The piecewise-linear tent on `[0, 1]²`, peaking at `(½, ½)`.
pub fn tent_value(x1: f64, x2: f64) -> f64 {
    let s = x1 + x2;
    if s < 0.5 {
        0.0
    } else if x1 <= 0.5 && x2 <= 0.5 {
        -1.0 + 2.0 * x1 + 2.0 * x2
    } else if s <= 1.0 {
        if x1 >= 0.5 {
            2.0 * x2
        } else {
            2.0 * x1
        }
    } else if x1 >= x2 {
        2.0 - 2.0 * x1
    } else {
        2.0 - 2.0 * x2
    }
}

/// `ψ̂(ξ) = g(|ξ₁|, |ξ₂|)` on `[−1, 1]²`, zero elsewhere, for the quincunx
/// dilation. Its support is `⋃_{j=0}^{2} B^{−j}(E)` with
/// `E = [−1,1]² \ B⁻¹([−1,1]²)`.
pub fn quincunx_tent_generator() -> BandlimitedGenerator {
    let dil = DilationMatrix::quincunx();
    let norm = Arc::new(build_associated_norm(&dil, &NormOptions::default()).expect("quincunx norm"));
    let support = SupportSpec::unit_box_annulus(norm, 2).expect("quincunx box annulus");
    let eval = Arc::new(|x: &DVector<f64>| {
        let (a, b) = (x[0].abs(), x[1].abs());
        if a > 1.0 || b > 1.0 {
            0.0
        } else {
            tent_value(a, b)
        }
    });
    BandlimitedGenerator::new(eval, support, GeneratorDescriptor::Tent)
}
