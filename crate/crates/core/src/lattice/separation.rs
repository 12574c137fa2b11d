use nalgebra::DVector;
use rayon::prelude::*;
use serde::Serialize;

use super::Lattice;
use crate::generators::SupportSpec;
use crate::sampling;

/// Gauge-distance slack separating measure-zero contact from genuine overlap.
const CONTACT_EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SeparationMethod {
    /// No lattice vector was short enough to matter.
    NoCandidates,
    /// Every candidate was cleared by the convex-hull test.
    Analytic,
    /// At least one candidate needed sampling.
    Sampled,
}

#[derive(Debug, Clone, Serialize)]
pub struct SeparationReport {
    pub separated: bool,
    pub method: SeparationMethod,
    pub candidates: usize,
    pub sampled_candidates: usize,
    /// Offending dual-lattice vectors, shortest first.
    pub violations: Vec<Vec<f64>>,
}

/// Checks `(A + γ) ∩ B = ∅` for every `γ ∈ Γ* \ {0}`, up to sets of measure zero.
///
/// Candidates are the dual vectors no longer than the sum of the bounding
/// radii. When the two regions come from the same tile family the smaller
/// convex hull sits inside the larger, and `(C_A + γ) ∩ C_B = ∅` follows from
/// `gauge_B(γ) ≥ 2`. Candidates that fail the hull test are sampled: up to
/// `samples` points of `B` near the overlap of the bounding boxes are tested
/// for interior membership in `A + γ`.
pub fn verify_separation(
    gamma_star: &Lattice,
    region_a: &SupportSpec,
    region_b: &SupportSpec,
    samples: usize,
    seed: u64,
) -> SeparationReport {
    let radius = region_a.outer_radius() + region_b.outer_radius();
    let candidates = gamma_star.points_within(radius);
    if candidates.is_empty() {
        return SeparationReport {
            separated: true,
            method: SeparationMethod::NoCandidates,
            candidates: 0,
            sampled_candidates: 0,
            violations: Vec::new(),
        };
    }
    let hull = if region_a.same_family(region_b) {
        // The smaller lo has the larger outer body.
        Some(if region_a.lo() <= region_b.lo() {
            region_a.outer_gauge().clone()
        } else {
            region_b.outer_gauge().clone()
        })
    } else {
        None
    };
    let undecided: Vec<&DVector<f64>> = candidates
        .iter()
        .filter(|g| hull.as_ref().is_none_or(|h| h.value(g) < 2.0 * (1.0 - CONTACT_EPS)))
        .collect();
    let sampled_candidates = undecided.len();
    let outcomes: Vec<bool> = undecided
        .par_iter()
        .map(|g| overlaps(g, region_a, region_b, samples, seed))
        .collect();
    let violations: Vec<Vec<f64>> = undecided
        .iter()
        .zip(outcomes)
        .filter(|(_, hit)| *hit)
        .map(|(g, _)| g.iter().copied().collect())
        .collect();
    SeparationReport {
        separated: violations.is_empty(),
        method: if sampled_candidates == 0 {
            SeparationMethod::Analytic
        } else {
            SeparationMethod::Sampled
        },
        candidates: candidates.len(),
        sampled_candidates,
        violations,
    }
}

fn overlaps(gamma: &DVector<f64>, a: &SupportSpec, b: &SupportSpec, samples: usize, seed: u64) -> bool {
    let (alo, ahi) = a.bounding_box();
    let (blo, bhi) = b.bounding_box();
    let n = gamma.len();
    let lo = DVector::from_fn(n, |i, _| blo[i].max(alo[i] + gamma[i]));
    let hi = DVector::from_fn(n, |i, _| bhi[i].min(ahi[i] + gamma[i]));
    if (0..n).any(|i| lo[i] >= hi[i]) {
        return false;
    }
    let mut seq = sampling::ShiftedHalton::new(n, seed);
    let mut accepted = 0;
    for _ in 0..samples.saturating_mul(50) {
        let u = seq.next_unit();
        let x = DVector::from_fn(n, |i, _| lo[i] + (hi[i] - lo[i]) * u[i]);
        if !b.contains_interior(&x, CONTACT_EPS) {
            continue;
        }
        if a.contains_interior(&(&x - gamma), CONTACT_EPS) {
            return true;
        }
        accepted += 1;
        if accepted >= samples {
            break;
        }
    }
    false
}
