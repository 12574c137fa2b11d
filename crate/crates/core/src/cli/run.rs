use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use nalgebra::DMatrix;
use serde::Serialize;

use super::config::{GeneratorKind, LatticeMode, RunConfig};
use crate::error::{Error, Result};
use crate::generators::{
    make_dual, make_dual_special, make_dual_unchecked, quincunx_tent_generator, radial_profile_generator,
    smooth_generator, BandlimitedGenerator, DualCoefficients, DualFramePair, GeneratorDescriptor, ProfileKind,
    SupportDescriptor,
};
use crate::lattice::{
    crude_lattice, hexagonal_special_lattice, special_lattice, Lattice, LatticePair, SeparationReport,
};
use crate::linalg::{matrix_from_rows, rows_of};
use crate::matrix::{build_associated_norm, AssociatedNorm, DilationMatrix};
use crate::transform::{covering_scales, roundtrip, AnalysisOptions, FrequencyGrid, GridHeader, RoundTrip};
use crate::verification::{full_report, VerificationReport};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize)]
pub struct NormSummary {
    pub matrix: Vec<Vec<f64>>,
    /// Eigenvalues of `A` as `[re, im]`, by decreasing modulus.
    pub eigenvalues: Vec<[f64; 2]>,
    pub order: usize,
    pub form: Vec<Vec<f64>>,
    pub form_eigenvalues: Vec<f64>,
    pub lambda: f64,
    /// Smallest eigenvalue of `BᵗKB − λ²K`.
    pub certificate_slack: f64,
}

impl NormSummary {
    pub fn new(norm: &AssociatedNorm) -> Self {
        Self {
            matrix: rows_of(norm.dilation().a()),
            eigenvalues: norm.dilation().eigenvalues().iter().map(|z| [z.re, z.im]).collect(),
            order: norm.order(),
            form: rows_of(norm.k()),
            form_eigenvalues: norm.eig_lambda().to_vec(),
            lambda: norm.lambda(),
            certificate_slack: norm.certificate_slack(norm.lambda()),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LatticeSummary {
    pub mode: LatticeMode,
    pub gamma_basis: Vec<Vec<f64>>,
    pub gamma_star_basis: Vec<Vec<f64>>,
    pub d_gamma: f64,
    pub d_gamma_star: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct PairSummary {
    pub psi: GeneratorDescriptor,
    pub psi_support: SupportDescriptor,
    pub phi_support: SupportDescriptor,
    pub coefficients: Vec<f64>,
    pub coefficients_valid: bool,
    pub phi_scale: f64,
    /// `(j, w_j)` with `φ = Σ w_j ψ(A^{−j}·)`.
    pub time_domain_terms: Vec<(i32, f64)>,
    pub separation: Option<SeparationReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TransformSummary {
    pub grid: GridHeader,
    pub j_range_from_config: bool,
    #[serde(flatten)]
    pub result: RoundTrip,
}

/// Everything a subcommand produces. `timings` (seconds) is the only
/// field that varies between identical runs.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub command: String,
    pub config: RunConfig,
    pub norm: NormSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lattice: Option<LatticeSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pair: Option<PairSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerificationReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub transform: Option<TransformSummary>,
    pub timings: BTreeMap<String, f64>,
}

impl RunReport {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }
}

/// Wall-clock phases of a run.
#[derive(Debug, Default)]
pub struct Timings(BTreeMap<String, f64>);

impl Timings {
    pub fn time<T>(&mut self, phase: &str, f: impl FnOnce() -> Result<T>) -> Result<T> {
        let t = Instant::now();
        let out = f();
        self.0.insert(phase.to_string(), t.elapsed().as_secs_f64());
        out
    }
}

/// The objects a configuration describes.
pub struct Built {
    pub norm: Arc<AssociatedNorm>,
    pub pair: DualFramePair,
    pub mode: LatticeMode,
}

pub fn build_norm(cfg: &RunConfig) -> Result<Arc<AssociatedNorm>> {
    let dil = DilationMatrix::from_rows(&cfg.matrix)?;
    Ok(Arc::new(build_associated_norm(&dil, &cfg.norm)?))
}

fn build_generator(cfg: &RunConfig, norm: &Arc<AssociatedNorm>) -> Result<BandlimitedGenerator> {
    let g = cfg.generator()?;
    match g.kind {
        GeneratorKind::Tent => {
            let q = DilationMatrix::quincunx();
            if (norm.dilation().a() - q.a()).abs().max() > 1e-12 {
                return Err(Error::Config(
                    "the tent generator needs the quincunx matrix [[1,-1],[1,1]]".into(),
                ));
            }
            Ok(quincunx_tent_generator())
        }
        GeneratorKind::Radial => {
            if g.d != 1 {
                return Err(Error::Config(format!(
                    "radial generators have d = 1, config asks for d = {}",
                    g.d
                )));
            }
            radial_profile_generator(norm.clone(), g.c, g.profile.unwrap_or(ProfileKind::Cosine))
        }
        GeneratorKind::Smooth => smooth_generator(norm.clone(), g.c, g.d),
    }
}

fn coefficients(cfg: &RunConfig, d: i32) -> Result<DualCoefficients> {
    match &cfg.coefficients {
        None => Ok(DualCoefficients::special(d)),
        Some(v) => {
            let c = DualCoefficients::unchecked(v.clone())?;
            if c.d() != d {
                return Err(Error::BadCoefficients(format!(
                    "expected {} coefficients for d = {d}, got {}",
                    2 * d + 1,
                    v.len()
                )));
            }
            if !cfg.allow_invalid_coefficients {
                c.validate()?;
            }
            Ok(c)
        }
    }
}

fn build_lattice(cfg: &RunConfig, psi: &BandlimitedGenerator, coeffs: &DualCoefficients) -> Result<LatticePair> {
    let l = cfg.lattice()?;
    let c = l.c.unwrap_or_else(|| cfg.generator.as_ref().map_or(1, |g| g.c));
    let norm = psi.support().norm();
    if l.basis.is_some() && l.mode != LatticeMode::Custom {
        return Err(Error::Config("lattice.basis is only used with mode \"custom\"".into()));
    }
    match l.mode {
        LatticeMode::Special => Ok(special_lattice(norm, c)),
        LatticeMode::Crude => Ok(crude_lattice(norm, c, coeffs.m_under())),
        LatticeMode::Hexagonal => hexagonal_special_lattice(norm, c),
        LatticeMode::Custom => {
            let rows = l
                .basis
                .as_ref()
                .ok_or_else(|| Error::Config("custom lattice needs a basis".into()))?;
            let p: DMatrix<f64> = matrix_from_rows(rows)?;
            if p.nrows() != psi.dim() {
                return Err(Error::DimensionMismatch {
                    expected: psi.dim(),
                    found: p.nrows(),
                });
            }
            Ok(LatticePair::from_gamma(Lattice::new(p)?))
        }
    }
}

/// Builds the pair; separation failures surface as [`Error::SeparationFailure`].
pub fn build_pair(cfg: &RunConfig, timings: &mut Timings) -> Result<Built> {
    let norm = timings.time("norm", || build_norm(cfg))?;
    timings.time("pair", || {
        let psi = build_generator(cfg, &norm)?;
        let d = psi.support().hi();
        let coeffs = coefficients(cfg, d)?;
        let lattice = build_lattice(cfg, &psi, &coeffs)?;
        let pair = if cfg.coefficients.is_none() {
            make_dual_special(&psi, &lattice)?
        } else if coeffs.is_valid() {
            make_dual(&psi, &coeffs, &lattice)?
        } else {
            log::warn!("coefficients {:?} violate the duality conditions", coeffs.values());
            make_dual_unchecked(&psi, &coeffs, &lattice)?
        };
        Ok(Built {
            norm: norm.clone(),
            pair,
            mode: cfg.lattice()?.mode,
        })
    })
}

fn lattice_summary(built: &Built) -> LatticeSummary {
    let l = &built.pair.lattice;
    LatticeSummary {
        mode: built.mode,
        gamma_basis: rows_of(l.gamma.basis()),
        gamma_star_basis: rows_of(l.gamma_star.basis()),
        d_gamma: l.gamma.determinant(),
        d_gamma_star: l.gamma_star.determinant(),
    }
}

fn pair_summary(pair: &DualFramePair) -> PairSummary {
    PairSummary {
        psi: pair.psi.descriptor().clone(),
        psi_support: pair.psi.support().descriptor(),
        phi_support: pair.phi.support().descriptor(),
        coefficients: pair.coeffs.values().to_vec(),
        coefficients_valid: pair.coeffs.is_valid(),
        phi_scale: pair.phi_scale,
        time_domain_terms: pair.time_domain_terms(),
        separation: pair.separation.clone(),
    }
}

fn report(command: &str, cfg: &RunConfig, norm: &AssociatedNorm, timings: Timings) -> RunReport {
    RunReport {
        schema_version: SCHEMA_VERSION,
        command: command.to_string(),
        config: cfg.clone(),
        norm: NormSummary::new(norm),
        lattice: None,
        pair: None,
        verification: None,
        transform: None,
        timings: timings.0,
    }
}

fn with_total(mut timings: Timings, start: Instant) -> Timings {
    timings.0.insert("total".into(), start.elapsed().as_secs_f64());
    timings
}

pub fn inspect(cfg: &RunConfig) -> Result<RunReport> {
    let start = Instant::now();
    let mut t = Timings::default();
    let norm = t.time("norm", || build_norm(cfg))?;
    Ok(report("inspect", cfg, &norm, with_total(t, start)))
}

pub fn build(cfg: &RunConfig) -> Result<RunReport> {
    let start = Instant::now();
    let mut t = Timings::default();
    let built = build_pair(cfg, &mut t)?;
    let mut r = report("build", cfg, &built.norm, with_total(t, start));
    r.lattice = Some(lattice_summary(&built));
    r.pair = Some(pair_summary(&built.pair));
    Ok(r)
}

pub fn verify(cfg: &RunConfig) -> Result<RunReport> {
    let start = Instant::now();
    let mut t = Timings::default();
    let built = build_pair(cfg, &mut t)?;
    let v = t.time("verification", || full_report(&built.pair, &cfg.verification))?;
    let mut r = report("verify", cfg, &built.norm, with_total(t, start));
    r.lattice = Some(lattice_summary(&built));
    r.pair = Some(pair_summary(&built.pair));
    r.verification = Some(v);
    Ok(r)
}

pub fn transform(cfg: &RunConfig) -> Result<RunReport> {
    let start = Instant::now();
    let tc = cfg.transform()?.clone();
    let mut t = Timings::default();
    let built = build_pair(cfg, &mut t)?;
    let summary = t.time("transform", || {
        tc.signal.validate(tc.grid.lo.len())?;
        let grid = FrequencyGrid::from_fn(
            tc.grid.lo.clone(),
            tc.grid.extent.clone(),
            tc.grid.points_per_axis,
            |x| tc.signal.eval(x),
        )?;
        if grid.dim() != built.pair.psi.dim() {
            return Err(Error::DimensionMismatch {
                expected: built.pair.psi.dim(),
                found: grid.dim(),
            });
        }
        if grid.l2_norm() == 0.0 {
            return Err(Error::ZeroSignal);
        }
        let j_range = match tc.j_range {
            Some(r) => r,
            None => covering_scales(&grid, &built.pair).ok_or_else(|| {
                Error::Config("no scale of the frame meets the signal; give transform.j_range".into())
            })?,
        };
        let opts = AnalysisOptions {
            j_range,
            k_window: tc.k_window,
            drop_tol: tc.drop_tol,
        };
        let result = roundtrip(&grid, &built.pair, &opts)?;
        Ok(TransformSummary {
            grid: grid.header(),
            j_range_from_config: tc.j_range.is_some(),
            result,
        })
    })?;
    let mut r = report("transform", cfg, &built.norm, with_total(t, start));
    r.lattice = Some(lattice_summary(&built));
    r.pair = Some(pair_summary(&built.pair));
    r.transform = Some(summary);
    Ok(r)
}
