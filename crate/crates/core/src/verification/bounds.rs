use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use serde::Serialize;

use super::{orbit, star_bounds, SampleSpec};
use crate::error::{Error, Result};
use crate::generators::{BandlimitedGenerator, SupportSpec};
use crate::lattice::Lattice;

/// Extremal samples handed to the local search.
const REFINE_STARTS: usize = 8;
/// Terminal step of the local search, relative to the region size.
const REFINE_MIN_STEP: f64 = 1e-10;
const REFINE_MAX_ITERS: usize = 4000;

#[derive(Debug, Clone, Serialize)]
pub struct FrameBounds {
    pub c1: f64,
    pub c2: f64,
    pub argmin: Vec<f64>,
    pub argmax: Vec<f64>,
}

fn directions(n: usize) -> Vec<DVector<f64>> {
    if n <= 4 {
        let total = 3usize.pow(n as u32);
        (0..total)
            .filter_map(|mut code| {
                let v = DVector::from_fn(n, |_, _| {
                    let digit = code % 3;
                    code /= 3;
                    digit as f64 - 1.0
                });
                (v.norm() > 0.0).then(|| v.normalize())
            })
            .collect()
    } else {
        (0..n)
            .flat_map(|i| {
                let e = DVector::from_fn(n, |k, _| if k == i { 1.0 } else { 0.0 });
                [e.clone(), -e]
            })
            .collect()
    }
}

/// Compass search for a local extremum of `sign·f` inside `region`.
fn pattern_search<F>(f: &F, region: &SupportSpec, start: &DVector<f64>, sign: f64) -> (f64, DVector<f64>)
where
    F: Fn(&DVector<f64>) -> f64 + Sync,
{
    let dirs = directions(start.len());
    let scale = region.outer_radius();
    let mut step = 1e-2 * scale;
    let min_step = REFINE_MIN_STEP * scale.max(1e-300);
    let mut x = start.clone();
    let mut best = sign * f(&x);
    let mut iters = 0;
    while step > min_step && iters < REFINE_MAX_ITERS {
        iters += 1;
        let mut next: Option<(f64, DVector<f64>)> = None;
        for d in &dirs {
            let cand = &x + d * step;
            if !region.contains(&cand) {
                continue;
            }
            let v = sign * f(&cand);
            if v > next.as_ref().map_or(best, |(b, _)| *b) {
                next = Some((v, cand));
            }
        }
        match next {
            Some((v, c)) => {
                best = v;
                x = c;
            }
            None => step *= 0.5,
        }
    }
    (sign * best, x)
}

/// Sampled extrema of `f` followed by local refinement of the best starts.
fn extremize<F>(f: &F, spec: &SampleSpec, want_min: bool) -> Result<(f64, DVector<f64>, f64, DVector<f64>)>
where
    F: Fn(&DVector<f64>) -> f64 + Sync,
{
    let samples = spec.draw()?;
    let values: Vec<f64> = samples.par_iter().map(f).collect();
    let mut order: Vec<usize> = (0..samples.len()).collect();
    order.sort_by(|&i, &j| values[i].total_cmp(&values[j]).then(i.cmp(&j)));
    let lows: Vec<usize> = if want_min {
        order.iter().take(REFINE_STARTS).copied().collect()
    } else {
        Vec::new()
    };
    let highs: Vec<usize> = order.iter().rev().take(REFINE_STARTS).copied().collect();
    let refine = |idx: &[usize], sign: f64| -> Vec<(f64, DVector<f64>)> {
        idx.par_iter()
            .map(|&i| pattern_search(f, &spec.region, &samples[i], sign))
            .collect()
    };
    let pick = |found: Vec<(f64, DVector<f64>)>, better: fn(f64, f64) -> bool| {
        found
            .into_iter()
            .reduce(|a, b| if better(b.0, a.0) { b } else { a })
            .unwrap()
    };
    let (hi, arg_hi) = pick(refine(&highs, 1.0), |a, b| a > b);
    let (lo, arg_lo) = if want_min {
        pick(refine(&lows, -1.0), |a, b| a < b)
    } else {
        (f64::NAN, DVector::zeros(0))
    };
    Ok((lo, arg_lo, hi, arg_hi))
}

/// `C₁ = inf`, `C₂ = sup` of `(1/d(Γ)) Σ_{j=jLo}^{jHi} ĝ(B^jξ)²` over the sample region.
pub fn frame_bounds(
    g: &BandlimitedGenerator,
    lattice: &Lattice,
    spec: &SampleSpec,
    j_lo: i32,
    j_hi: i32,
) -> Result<FrameBounds> {
    let dil = g.dilation();
    let powers: Vec<DMatrix<f64>> = (j_lo..=j_hi).map(|j| dil.b_pow(j)).collect();
    let inv_det = 1.0 / lattice.determinant();
    let f = |xi: &DVector<f64>| -> f64 { inv_det * powers.iter().map(|m| g.eval(&(m * xi)).powi(2)).sum::<f64>() };
    let (c1, argmin, c2, argmax) = extremize(&f, spec, true)?;
    if c1 <= 1e-9 {
        return Err(Error::DegenerateLowerBound { c1 });
    }
    Ok(FrameBounds {
        c1,
        c2,
        argmin: argmin.iter().copied().collect(),
        argmax: argmax.iter().copied().collect(),
    })
}

/// `sup (1/d(Γ)) Σ_j Σ_{γ∈Γ*} |ĝ(B^jξ) ĝ(B^jξ + γ)|` over the sample region.
pub fn bessel_bound(g: &BandlimitedGenerator, lattice: &Lattice, spec: &SampleSpec) -> Result<f64> {
    let gamma_star = lattice.dual();
    let mut shifts = vec![DVector::zeros(g.dim())];
    shifts.extend(gamma_star.points_within(2.0 * g.support().outer_radius()));
    let (a, b) = star_bounds(g.support());
    let norm = g.support().norm();
    let inv_det = 1.0 / lattice.determinant();
    let f = |xi: &DVector<f64>| -> f64 {
        let (_, pts) = orbit(norm, xi, a, b);
        let mut acc = 0.0;
        for p in &pts {
            let v = g.eval(p);
            if v == 0.0 {
                continue;
            }
            for s in &shifts {
                acc += (v * g.eval(&(p + s))).abs();
            }
        }
        inv_det * acc
    };
    Ok(extremize(&f, spec, false)?.2)
}
