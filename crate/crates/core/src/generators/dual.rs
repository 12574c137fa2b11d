use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use super::{BandlimitedGenerator, GeneratorDescriptor, SupportSpec, Tile};
use crate::error::{Error, Result};
use crate::lattice::{verify_separation, Lattice, LatticePair, SeparationReport};
use crate::linalg;

/// Per-candidate sample budget for the separation check during construction.
pub const SEPARATION_SAMPLES: usize = 10_000;
pub const SEPARATION_SEED: u64 = 0x5EED;

const COEFF_TOL: f64 = 1e-12;

/// The weights `b_{−d} … b_d` combining dilates of `ψ̂` into `φ̂`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DualCoefficients {
    values: Vec<f64>,
}

impl DualCoefficients {
    /// Validated coefficients: `b₀ = 1` and `b_j + b_{−j} = 2`.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        let c = Self::unchecked(values)?;
        c.validate()?;
        Ok(c)
    }

    /// Accepts any odd-length vector; for negative controls.
    pub fn unchecked(values: Vec<f64>) -> Result<Self> {
        if values.len().is_multiple_of(2) {
            return Err(Error::BadCoefficients(format!(
                "expected 2d+1 values b_-d..b_d, got {}",
                values.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::BadCoefficients("non-finite coefficient".into()));
        }
        if values.iter().all(|v| *v == 0.0) {
            return Err(Error::BadCoefficients("all coefficients vanish".into()));
        }
        Ok(Self { values })
    }

    /// `b₀ = 1`, `b_j = 2`, `b_{−j} = 0` for `j = 1 … d`.
    pub fn special(d: i32) -> Self {
        let d = d.max(0) as usize;
        let mut values = vec![0.0; 2 * d + 1];
        values[d] = 1.0;
        for v in values.iter_mut().skip(d + 1) {
            *v = 2.0;
        }
        Self { values }
    }

    pub fn validate(&self) -> Result<()> {
        let d = self.d();
        if (self.get(0) - 1.0).abs() > COEFF_TOL {
            return Err(Error::BadCoefficients(format!(
                "b_0 = {} but must equal 1",
                self.get(0)
            )));
        }
        for j in 1..=d {
            let s = self.get(j) + self.get(-j);
            if (s - 2.0).abs() > COEFF_TOL {
                return Err(Error::BadCoefficients(format!("b_{j} + b_-{j} = {s} but must equal 2")));
            }
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    pub fn d(&self) -> i32 {
        (self.values.len() / 2) as i32
    }

    /// `b_j`, zero outside `−d … d`.
    pub fn get(&self, j: i32) -> f64 {
        let idx = j + self.d();
        if idx < 0 || idx as usize >= self.values.len() {
            0.0
        } else {
            self.values[idx as usize]
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `m̄ = max{j : b_j ≠ 0}`.
    pub fn m_over(&self) -> i32 {
        let d = self.d();
        (-d..=d).rev().find(|&j| self.get(j) != 0.0).unwrap_or(0)
    }

    /// `m̲ = −min{j : b_j ≠ 0}`.
    pub fn m_under(&self) -> i32 {
        let d = self.d();
        -(-d..=d).find(|&j| self.get(j) != 0.0).unwrap_or(0)
    }

    /// `Σ_{j,l=0}^{d} b_{l−j} x_j x_l`, which equals `(Σ x_j)²` for valid coefficients.
    pub fn symmetry_form(&self, x: &[f64]) -> f64 {
        let mut acc = 0.0;
        for (j, xj) in x.iter().enumerate() {
            for (l, xl) in x.iter().enumerate() {
                acc += self.get(l as i32 - j as i32) * xj * xl;
            }
        }
        acc
    }
}

/// A generator `ψ`, its dual `φ`, the coefficients and the translation lattice.
#[derive(Debug, Clone)]
pub struct DualFramePair {
    pub psi: BandlimitedGenerator,
    pub phi: BandlimitedGenerator,
    pub coeffs: DualCoefficients,
    pub lattice: LatticePair,
    /// Factor in front of the coefficient sum, `d(Γ)` unless the pair was standardized.
    pub phi_scale: f64,
    pub separation: Option<SeparationReport>,
}

impl DualFramePair {
    pub fn d_gamma(&self) -> f64 {
        self.lattice.d_gamma()
    }

    /// Time-side weights `(j, w_j)` with `φ = Σ_j w_j ψ(A^{−j}·)`.
    pub fn time_domain_terms(&self) -> Vec<(i32, f64)> {
        let det = self.psi.dilation().det_abs();
        (-self.coeffs.m_under()..=self.coeffs.m_over())
            .filter(|&j| self.coeffs.get(j) != 0.0)
            .map(|j| (j, self.phi_scale * self.coeffs.get(j) * det.powi(-j)))
            .collect()
    }

    /// `φ̂` evaluated through its defining sum, independent of the stored evaluator.
    pub fn phi_by_definition(&self, xi: &DVector<f64>) -> f64 {
        let dil = self.psi.dilation();
        let terms: f64 = (-self.coeffs.m_under()..=self.coeffs.m_over())
            .map(|j| self.coeffs.get(j) * self.psi.eval(&(dil.b_pow(j) * xi)))
            .sum();
        self.phi_scale * terms
    }
}

fn psi_thickness(psi: &BandlimitedGenerator) -> Result<i32> {
    let s = psi.support();
    if s.lo() != 0 {
        return Err(Error::Config("generator support must start at the outer tile".into()));
    }
    Ok(s.hi())
}

fn build_phi(psi: &BandlimitedGenerator, coeffs: &DualCoefficients, scale: f64) -> Result<BandlimitedGenerator> {
    let d = psi_thickness(psi)?;
    let (mu, mo) = (coeffs.m_under(), coeffs.m_over());
    let support = psi.support().span(-mu, mo + d)?;
    let dil = psi.dilation();
    let terms: Vec<(f64, DMatrix<f64>)> = (-mu..=mo)
        .filter(|&j| coeffs.get(j) != 0.0)
        .map(|j| (scale * coeffs.get(j), dil.b_pow(j)))
        .collect();
    let inner = psi.evaluator().clone();
    let eval = Arc::new(move |x: &DVector<f64>| terms.iter().map(|(w, m)| w * inner(&(m * x))).sum());
    let total: f64 = coeffs.values().iter().sum();
    Ok(BandlimitedGenerator::new(
        eval,
        support,
        GeneratorDescriptor::Dual {
            scale,
            coefficients: coeffs.values().to_vec(),
            base: Box::new(psi.descriptor().clone()),
        },
    )
    .with_partition_level(scale * total * psi.partition_level()))
}

/// Builds `φ̂ = d(Γ) Σ_j b_j ψ̂(B^j·)` after checking the coefficients and the
/// separation of the ψ- and φ-supports under `Γ* \ {0}`.
pub fn make_dual(
    psi: &BandlimitedGenerator,
    coeffs: &DualCoefficients,
    lattice: &LatticePair,
) -> Result<DualFramePair> {
    make_dual_with(psi, coeffs, lattice, SEPARATION_SAMPLES, SEPARATION_SEED)
}

pub fn make_dual_with(
    psi: &BandlimitedGenerator,
    coeffs: &DualCoefficients,
    lattice: &LatticePair,
    samples: usize,
    seed: u64,
) -> Result<DualFramePair> {
    coeffs.validate()?;
    let d = psi_thickness(psi)?;
    if coeffs.d() != d {
        return Err(Error::BadCoefficients(format!(
            "generator has thickness d = {d} but {} coefficients were given",
            coeffs.values().len()
        )));
    }
    if lattice.dim() != psi.dim() {
        return Err(Error::DimensionMismatch {
            expected: psi.dim(),
            found: lattice.dim(),
        });
    }
    let phi = build_phi(psi, coeffs, lattice.d_gamma())?;
    let report = verify_separation(&lattice.gamma_star, psi.support(), phi.support(), samples, seed);
    if !report.separated {
        return Err(Error::SeparationFailure {
            gamma: report.violations[0].clone(),
        });
    }
    Ok(DualFramePair {
        psi: psi.clone(),
        phi,
        coeffs: coeffs.clone(),
        lattice: lattice.clone(),
        phi_scale: lattice.d_gamma(),
        separation: Some(report),
    })
}

/// [`make_dual`] with `b₀ = 1`, `b_j = 2`, `b_{−j} = 0`.
pub fn make_dual_special(psi: &BandlimitedGenerator, lattice: &LatticePair) -> Result<DualFramePair> {
    make_dual(psi, &DualCoefficients::special(psi_thickness(psi)?), lattice)
}

/// Skips coefficient and separation checks; the result need not be a dual pair.
pub fn make_dual_unchecked(
    psi: &BandlimitedGenerator,
    coeffs: &DualCoefficients,
    lattice: &LatticePair,
) -> Result<DualFramePair> {
    let phi = build_phi(psi, coeffs, lattice.d_gamma())?;
    Ok(DualFramePair {
        psi: psi.clone(),
        phi,
        coeffs: coeffs.clone(),
        lattice: lattice.clone(),
        phi_scale: lattice.d_gamma(),
        separation: None,
    })
}

/// Largest admissible translation step `a^{−c} / (1 + a^{m̲})` on the line.
pub fn max_translation_1d(a: f64, c: i32, m_under: i32) -> f64 {
    let a = a.abs();
    a.powi(-c) / (1.0 + a.powi(m_under))
}

/// The one-dimensional construction on the lattice `b·ℤ`, with coefficients
/// normalized as `b₀ = b` and `b_j + b_{−j} = 2b`. Returns the pair and the
/// largest admissible step.
pub fn dual_pair_1d(psi: &BandlimitedGenerator, scaled: &[f64], b_trans: f64) -> Result<(DualFramePair, f64)> {
    if psi.dim() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            found: psi.dim(),
        });
    }
    if b_trans.is_nan() || b_trans <= 0.0 {
        return Err(Error::Config(format!("translation step {b_trans} must be positive")));
    }
    let normalized = DualCoefficients::unchecked(scaled.iter().map(|v| v / b_trans).collect())?;
    normalized
        .validate()
        .map_err(|_| Error::BadCoefficients(format!("need b_0 = {b_trans} and b_j + b_-j = {}", 2.0 * b_trans)))?;
    let c = match psi.support().tile() {
        Tile::Shell { c } => *c,
        Tile::Box { .. } => 0,
    };
    let a = psi.dilation().a()[(0, 0)];
    let max = max_translation_1d(a, c, normalized.m_under());
    if b_trans > max * (1.0 + 1e-12) {
        return Err(Error::TranslationTooCoarse { b_trans, max });
    }
    let lattice = LatticePair::from_gamma(Lattice::scaled_integer(1, b_trans)?);
    Ok((make_dual(psi, &normalized, &lattice)?, max))
}

fn standardized_generator(
    g: &BandlimitedGenerator,
    support: SupportSpec,
    p_inv_t: &DMatrix<f64>,
    det_p: f64,
) -> BandlimitedGenerator {
    let scale = det_p.powf(-0.5);
    let inner = g.evaluator().clone();
    let m = p_inv_t.clone();
    BandlimitedGenerator::new(
        Arc::new(move |x| scale * inner(&(&m * x))),
        support,
        GeneratorDescriptor::Standardized {
            det_p,
            base: Box::new(g.descriptor().clone()),
        },
    )
    .with_partition_level(g.partition_level() * scale)
}

/// Moves the pair to the integer lattice: with `Γ = Pℤⁿ` the new dilation is
/// `P⁻¹AP` and `ψ̃̂(ξ) = |det P|^{−1/2} ψ̂(P⁻ᵗξ)`, likewise for `φ`.
pub fn standardize(pair: &DualFramePair, p: &DMatrix<f64>) -> Result<DualFramePair> {
    let lat = Lattice::new(p.clone())?;
    if !lat.same_lattice(&pair.lattice.gamma, 1e-9) {
        return Err(Error::LatticeMismatch);
    }
    let det_p = lat.determinant();
    let p_inv_t = linalg::inverse(p)?.transpose();
    let new_norm = Arc::new(pair.psi.support().norm().transformed(p)?);
    let psi_support = pair.psi.support().transformed(new_norm.clone(), p)?;
    let phi_support = pair.phi.support().transformed(new_norm, p)?;
    let psi = standardized_generator(&pair.psi, psi_support, &p_inv_t, det_p);
    let phi = standardized_generator(&pair.phi, phi_support, &p_inv_t, det_p);
    let lattice = LatticePair::from_gamma(Lattice::scaled_integer(p.nrows(), 1.0)?);
    let separation = verify_separation(
        &lattice.gamma_star,
        psi.support(),
        phi.support(),
        SEPARATION_SAMPLES,
        SEPARATION_SEED,
    );
    Ok(DualFramePair {
        psi,
        phi,
        coeffs: pair.coeffs.clone(),
        lattice,
        phi_scale: pair.phi_scale,
        separation: Some(separation),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{quincunx_tent_generator, radial_profile_generator, ProfileKind};
    use crate::matrix::{build_associated_norm, DilationMatrix, NormOptions};

    fn half_integer() -> LatticePair {
        LatticePair::from_gamma(Lattice::scaled_integer(2, 0.5).unwrap())
    }

    #[test]
    fn coefficient_validation() {
        assert!(DualCoefficients::new(vec![0.0, 0.0, 1.0, 2.0, 2.0]).is_ok());
        assert!(matches!(
            DualCoefficients::new(vec![0.0, 1.0, 3.0]),
            Err(Error::BadCoefficients(_))
        ));
        assert!(matches!(
            DualCoefficients::new(vec![0.0, 1.0, 3.0]),
            Err(Error::BadCoefficients(_))
        ));
        assert!(matches!(
            DualCoefficients::new(vec![0.0, 1.0, 1.0, 3.0]),
            Err(Error::BadCoefficients(_))
        ));
        let c = DualCoefficients::new(vec![0.5, 0.0, 1.0, 2.0, 1.5]).unwrap();
        assert_eq!((c.m_under(), c.m_over()), (2, 2));
        let s = DualCoefficients::special(2);
        assert_eq!(s.values(), &[0.0, 0.0, 1.0, 2.0, 2.0]);
        assert_eq!((s.m_under(), s.m_over()), (0, 2));
    }

    #[test]
    fn tampered_first_coefficient_is_rejected() {
        assert!(matches!(
            DualCoefficients::new(vec![0.0, 0.0, 1.0, 3.0, 2.0]),
            Err(Error::BadCoefficients(_))
        ));
        assert!(DualCoefficients::new(vec![0.0, 1.0, 2.0])
            .and(DualCoefficients::new(vec![0.0, 1.0, 3.0]))
            .is_err());
    }

    #[test]
    fn quincunx_dual_time_weights() {
        let psi = quincunx_tent_generator();
        let coeffs = DualCoefficients::new(vec![0.0, 0.0, 1.0, 2.0, 2.0]).unwrap();
        let pair = make_dual(&psi, &coeffs, &half_integer()).unwrap();
        let w = pair.time_domain_terms();
        assert_eq!(w.len(), 3);
        assert_eq!(w[0], (0, 0.25));
        assert_eq!(w[1], (1, 0.25));
        assert_eq!(w[2], (2, 0.125));
        let xi = DVector::from_vec(vec![0.31, -0.18]);
        assert!((pair.phi.eval(&xi) - pair.phi_by_definition(&xi)).abs() < 1e-15);
    }

    #[test]
    fn special_matches_explicit_coefficients() {
        let psi = quincunx_tent_generator();
        let a = make_dual_special(&psi, &half_integer()).unwrap();
        let b = make_dual(
            &psi,
            &DualCoefficients::new(vec![0.0, 0.0, 1.0, 2.0, 2.0]).unwrap(),
            &half_integer(),
        )
        .unwrap();
        assert_eq!(a.coeffs, b.coeffs);
        for i in 0..50 {
            let xi = DVector::from_vec(vec![(i as f64 * 0.37).sin(), (i as f64 * 0.91).cos()]);
            assert_eq!(a.phi.eval(&xi), b.phi.eval(&xi));
        }
    }

    #[test]
    fn integer_lattice_fails_separation() {
        let psi = quincunx_tent_generator();
        let lat = LatticePair::from_gamma(Lattice::scaled_integer(2, 1.0).unwrap());
        let err = make_dual_special(&psi, &lat).unwrap_err();
        assert!(matches!(err, Error::SeparationFailure { .. }));
    }

    #[test]
    fn one_dimensional_corollary() {
        let d = DilationMatrix::from_rows(&[vec![2.0]]).unwrap();
        let norm = Arc::new(build_associated_norm(&d, &NormOptions::default()).unwrap());
        let psi = radial_profile_generator(norm, 0, ProfileKind::Cosine).unwrap();
        assert!((max_translation_1d(2.0, 0, 0) - 0.5).abs() < 1e-15);
        let (pair, max) = dual_pair_1d(&psi, &[0.0, 0.5, 1.0], 0.5).unwrap();
        assert!((max - 0.5).abs() < 1e-15);
        assert!((pair.d_gamma() - 0.5).abs() < 1e-15);
        assert!(matches!(
            dual_pair_1d(&psi, &[0.0, 0.51, 1.02], 0.51),
            Err(Error::TranslationTooCoarse { .. })
        ));
    }

    #[test]
    fn standardize_identity_is_noop() {
        let psi = quincunx_tent_generator();
        let pair = make_dual_special(&psi, &half_integer()).unwrap();
        assert!(matches!(
            standardize(&pair, &DMatrix::identity(2, 2)),
            Err(Error::LatticeMismatch)
        ));
        let p = DMatrix::identity(2, 2) * 0.5;
        let st = standardize(&pair, &p).unwrap();
        let xi = DVector::from_vec(vec![0.4, 0.9]);
        let expect = 2.0 * psi.eval(&(&xi * 2.0));
        assert!((st.psi.eval(&xi) - expect).abs() < 1e-15);
        assert!(st.separation.as_ref().unwrap().separated);
    }
}
