use nalgebra::DVector;
use rayon::prelude::*;

use super::{orbit, star_bounds, SampleSpec};
use crate::error::Result;
use crate::generators::{BandlimitedGenerator, DualFramePair};

fn max_of(values: Vec<f64>) -> f64 {
    values.into_iter().fold(0.0, f64::max)
}

/// `max |Σ_j ψ̂(B^jξ) − level|` over the samples.
pub fn check_partition(g: &BandlimitedGenerator, spec: &SampleSpec) -> Result<f64> {
    let samples = spec.draw()?;
    let (a, b) = star_bounds(g.support());
    let norm = g.support().norm();
    let level = g.partition_level();
    let errs: Vec<f64> = samples
        .par_iter()
        .map(|xi| {
            let (_, pts) = orbit(norm, xi, a, b);
            let s: f64 = pts.iter().map(|p| g.eval(p)).sum();
            (s - level).abs()
        })
        .collect();
    Ok(max_of(errs))
}

/// `max |Σ_j φ̂(B^jξ) ψ̂(B^jξ) − d(Γ)|` over the samples.
pub fn check_calderon(pair: &DualFramePair, spec: &SampleSpec) -> Result<f64> {
    let samples = spec.draw()?;
    let (a, b) = star_bounds(pair.psi.support());
    let norm = pair.psi.support().norm();
    let target = pair.d_gamma();
    let errs: Vec<f64> = samples
        .par_iter()
        .map(|xi| {
            let (_, pts) = orbit(norm, xi, a, b);
            let s: f64 = pts.iter().map(|p| pair.phi.eval(p) * pair.psi.eval(p)).sum();
            (s - target).abs()
        })
        .collect();
    Ok(max_of(errs))
}

/// `max |φ̂(ξ) ψ̂(ξ + γ)|` over samples `ξ` and `γ ∈ Γ* \ {0}` short enough
/// for the shifted supports to meet.
pub fn check_cross_terms(pair: &DualFramePair, spec: &SampleSpec) -> Result<f64> {
    let radius = pair.phi.support().outer_radius() + pair.psi.support().outer_radius();
    let candidates: Vec<DVector<f64>> = pair.lattice.gamma_star.points_within(radius);
    if candidates.is_empty() {
        return Ok(0.0);
    }
    let samples = spec.draw()?;
    let vals: Vec<f64> = samples
        .par_iter()
        .map(|xi| {
            let f = pair.phi.eval(xi);
            if f == 0.0 {
                return 0.0;
            }
            candidates
                .iter()
                .map(|g| (f * pair.psi.eval(&(xi + g))).abs())
                .fold(0.0, f64::max)
        })
        .collect();
    Ok(max_of(vals))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{make_dual, make_dual_unchecked, quincunx_tent_generator, DualCoefficients};
    use crate::lattice::{Lattice, LatticePair};

    fn half() -> LatticePair {
        LatticePair::from_gamma(Lattice::scaled_integer(2, 0.5).unwrap())
    }

    #[test]
    fn tent_partition_and_scaled() {
        let g = quincunx_tent_generator();
        let spec = SampleSpec::for_generator(&g, 2000, 42);
        assert!(check_partition(&g, &spec).unwrap() < 1e-12);
        let e = check_partition(&g.scaled(2.0), &spec).unwrap();
        assert!((e - 1.0).abs() < 1e-12);
    }

    #[test]
    fn calderon_valid_and_tampered() {
        let g = quincunx_tent_generator();
        let spec = SampleSpec::for_generator(&g, 2000, 42);
        let pair = make_dual(
            &g,
            &DualCoefficients::new(vec![0.0, 0.0, 1.0, 2.0, 2.0]).unwrap(),
            &half(),
        )
        .unwrap();
        assert!(check_calderon(&pair, &spec).unwrap() < 1e-12);
        let bad = DualCoefficients::unchecked(vec![0.0, 1.0, 1.0, 3.0, 2.0]).unwrap();
        let tampered = make_dual_unchecked(&g, &bad, &half()).unwrap();
        assert!(check_calderon(&tampered, &spec).unwrap() > 0.1);
    }

    #[test]
    fn cross_terms_vanish_or_not() {
        let g = quincunx_tent_generator();
        let coeffs = DualCoefficients::special(2);
        let pair = make_dual(&g, &coeffs, &half()).unwrap();
        let spec = SampleSpec::new(pair.phi.support().clone(), 2000, 42);
        assert_eq!(check_cross_terms(&pair, &spec).unwrap(), 0.0);
        let coarse = LatticePair::from_gamma_star(Lattice::scaled_integer(2, 1.0).unwrap());
        let overlap = make_dual_unchecked(&g, &coeffs, &coarse).unwrap();
        let spec = SampleSpec::new(overlap.phi.support().clone(), 2000, 42);
        assert!(check_cross_terms(&overlap, &spec).unwrap() > 1e-3);
    }
}
