use serde::{Deserialize, Serialize};

use super::{bessel_bound, check_calderon, check_cross_terms, check_partition, frame_bounds, SampleSpec};
use crate::error::Result;
use crate::generators::DualFramePair;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Tolerances {
    pub partition: f64,
    pub calderon: f64,
    pub cross_term: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            partition: 1e-8,
            calderon: 1e-8,
            cross_term: 1e-10,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct VerificationOptions {
    pub samples: usize,
    pub seed: u64,
    pub tolerances: Tolerances,
}

impl Default for VerificationOptions {
    fn default() -> Self {
        Self {
            samples: 10_000,
            seed: 42,
            tolerances: Tolerances::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PassFlags {
    pub partition: bool,
    pub calderon: bool,
    pub cross_terms: bool,
    pub separation: bool,
    pub frame: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub partition_max_err: f64,
    pub calderon_max_err: f64,
    pub cross_term_max_abs: f64,
    pub c1: f64,
    pub c2: f64,
    pub c1_phi: f64,
    pub c2_phi: f64,
    pub bessel_c2: f64,
    pub bessel_c2_phi: f64,
    pub d_gamma: f64,
    pub sample_count: usize,
    pub seed: u64,
    pub tolerances: Tolerances,
    pub passed: PassFlags,
    pub all_passed: bool,
}

/// Runs every check on a pair.
///
/// Frame bounds use the innermost ψ tile as the sampling set, with
/// `j ∈ [0, d]` for ψ and `j ∈ [−m̄, d + m̲]` for φ.
pub fn full_report(pair: &DualFramePair, opts: &VerificationOptions) -> Result<VerificationReport> {
    let psi_spec = SampleSpec::for_generator(&pair.psi, opts.samples, opts.seed);
    let phi_spec = SampleSpec::new(pair.phi.support().clone(), opts.samples, opts.seed);
    let d = pair.psi.support().hi();
    let (mu, mo) = (pair.coeffs.m_under(), pair.coeffs.m_over());
    let gamma = &pair.lattice.gamma;

    let psi_bounds = frame_bounds(&pair.psi, gamma, &psi_spec, 0, d)?;
    let phi_bounds = frame_bounds(&pair.phi, gamma, &psi_spec, -mo, d + mu)?;
    let partition = check_partition(&pair.psi, &psi_spec)?;
    let calderon = check_calderon(pair, &psi_spec)?;
    let cross = check_cross_terms(pair, &phi_spec)?;
    let bessel = bessel_bound(&pair.psi, gamma, &psi_spec)?;
    let bessel_phi = bessel_bound(&pair.phi, gamma, &psi_spec)?;

    let tol = opts.tolerances;
    let passed = PassFlags {
        partition: partition <= tol.partition,
        calderon: calderon <= tol.calderon,
        cross_terms: cross <= tol.cross_term,
        separation: pair.separation.as_ref().is_none_or(|s| s.separated),
        frame: psi_bounds.c1 > 0.0 && psi_bounds.c1 <= psi_bounds.c2,
    };
    let all_passed = passed.partition && passed.calderon && passed.cross_terms && passed.separation && passed.frame;
    Ok(VerificationReport {
        partition_max_err: partition,
        calderon_max_err: calderon,
        cross_term_max_abs: cross,
        c1: psi_bounds.c1,
        c2: psi_bounds.c2,
        c1_phi: phi_bounds.c1,
        c2_phi: phi_bounds.c2,
        bessel_c2: bessel,
        bessel_c2_phi: bessel_phi,
        d_gamma: pair.d_gamma(),
        sample_count: opts.samples,
        seed: opts.seed,
        tolerances: tol,
        passed,
        all_passed,
    })
}
