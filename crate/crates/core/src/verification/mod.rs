//! Sampled certification of the duality and frame conditions.

mod bounds;
mod checks;
mod report;

use nalgebra::DVector;

use crate::error::Result;
use crate::generators::{BandlimitedGenerator, SupportSpec};
use crate::matrix::AssociatedNorm;
use crate::sampling;

pub use bounds::{bessel_bound, frame_bounds, FrameBounds};
pub use checks::{check_calderon, check_cross_terms, check_partition};
pub use report::{full_report, PassFlags, Tolerances, VerificationOptions, VerificationReport};

/// Distance kept from region boundaries when sampling.
pub const DEFAULT_MARGIN: f64 = 1e-6;

/// A deterministic point set inside a region.
#[derive(Debug, Clone)]
pub struct SampleSpec {
    pub count: usize,
    pub seed: u64,
    pub region: SupportSpec,
    /// Samples stay this far (in gauge units) from the region boundary.
    pub margin: f64,
}

impl SampleSpec {
    pub fn new(region: SupportSpec, count: usize, seed: u64) -> Self {
        Self {
            count,
            seed,
            region,
            margin: DEFAULT_MARGIN,
        }
    }

    /// Samples in the innermost tile of the generator's support.
    pub fn for_generator(g: &BandlimitedGenerator, count: usize, seed: u64) -> Self {
        Self::new(g.support().sampler_region(), count, seed)
    }

    pub fn draw(&self) -> Result<Vec<DVector<f64>>> {
        let (lo, hi) = self.region.bounding_box();
        let margin = self.margin;
        let region = &self.region;
        sampling::sample_in_box(&lo, &hi, self.count, self.seed, |x| region.contains_interior(x, margin))
    }
}

/// `*-norm` interval `[a, b]` that contains every point of `support`,
/// derived from its Euclidean radii and the spectrum of K.
pub(crate) fn star_bounds(support: &SupportSpec) -> (f64, f64) {
    let norm = support.norm();
    let lam = norm.eig_lambda();
    let mu_max = lam[0];
    let mu_min = *lam.last().unwrap();
    let a = mu_min.sqrt() * support.inner_radius() * (1.0 - 1e-9);
    let b = mu_max.sqrt() * support.outer_radius() * (1.0 + 1e-9);
    (a, b)
}

/// Dilates `B^j ξ` whose *-norm lies in `[a, b]`, as `(first j, points)`.
///
/// Because `‖Bx‖_* ≥ λ‖x‖_*` with `λ > 1`, the norms increase strictly
/// along the orbit, so the admissible `j` form a finite interval.
pub(crate) fn orbit(norm: &AssociatedNorm, xi: &DVector<f64>, a: f64, b: f64) -> (i32, Vec<DVector<f64>>) {
    let dil = norm.dilation();
    let mut y = xi.clone();
    let mut v = norm.norm_value(&y);
    if v == 0.0 {
        return (0, Vec::new());
    }
    let mut j = 0;
    if v < a {
        while v < a {
            y = dil.b() * &y;
            v = norm.norm_value(&y);
            j += 1;
        }
    } else {
        loop {
            let z = dil.b_inv() * &y;
            let w = norm.norm_value(&z);
            if w < a {
                break;
            }
            y = z;
            v = w;
            j -= 1;
        }
    }
    let j0 = j;
    let mut pts = Vec::new();
    while v <= b {
        pts.push(y.clone());
        y = dil.b() * &y;
        v = norm.norm_value(&y);
    }
    (j0, pts)
}
