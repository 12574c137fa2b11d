use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generators::ProfileKind;
use crate::matrix::NormOptions;
use crate::transform::Signal;
use crate::verification::VerificationOptions;

/// Environment variable that replaces `verification.seed`.
pub const SEED_ENV: &str = "DUALFRAME_SEED";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GeneratorKind {
    Tent,
    Radial,
    Smooth,
}

/// Which generator to build. `c` and `d` default to 1; the radial family
/// only exists for `d = 1` and the tent ignores both.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorConfig {
    #[serde(rename = "type")]
    pub kind: GeneratorKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub profile: Option<ProfileKind>,
    #[serde(default = "one")]
    pub c: i32,
    #[serde(default = "one")]
    pub d: i32,
}

fn one() -> i32 {
    1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LatticeMode {
    Special,
    Crude,
    Hexagonal,
    Custom,
}

/// Translation lattice. `c` defaults to the generator's `c`; `basis` is the
/// row-major matrix `P` of `Γ = Pℤⁿ` (basis vectors are its columns) and is
/// required exactly for `custom`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeConfig {
    pub mode: LatticeMode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<i32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<Vec<f64>>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub lo: Vec<f64>,
    pub extent: Vec<f64>,
    pub points_per_axis: usize,
}

/// Reconstruction demo. Without `j_range` the scales that cover the signal
/// are used.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransformConfig {
    pub grid: GridConfig,
    #[serde(default, alias = "jRange", skip_serializing_if = "Option::is_none")]
    pub j_range: Option<(i32, i32)>,
    #[serde(alias = "kWindow")]
    pub k_window: i64,
    #[serde(default, alias = "dropTol")]
    pub drop_tol: f64,
    pub signal: Signal,
}

/// A complete run description.
///
/// | key | default |
/// |---|---|
/// | `norm.k_max` / `psd_tol` / `lambda_accuracy` | 64 / 1e-9 / 1e-6 |
/// | `verification.samples` / `seed` | 10 000 / 42 |
/// | `verification.tolerances` | partition 1e-8, calderon 1e-8, cross_term 1e-10 |
/// | `coefficients` | `b₀ = 1`, `b_j = 2`, `b_{−j} = 0` |
/// | `allow_invalid_coefficients` | false |
/// | `transform.drop_tol` | 0 |
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub matrix: Vec<Vec<f64>>,
    #[serde(default)]
    pub norm: NormOptions,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<GeneratorConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lattice: Option<LatticeConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<Vec<f64>>,
    /// Builds the pair even when the coefficients violate the duality
    /// conditions, so that verification can report the failure.
    #[serde(default)]
    pub allow_invalid_coefficients: bool,
    #[serde(default)]
    pub verification: VerificationOptions,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transform: Option<TransformConfig>,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text)
    }

    /// Applies `DUALFRAME_SEED` when set.
    pub fn apply_env(&mut self) -> Result<()> {
        if let Ok(v) = std::env::var(SEED_ENV) {
            self.verification.seed = v
                .trim()
                .parse()
                .map_err(|_| Error::Config(format!("{SEED_ENV}={v:?} is not an unsigned integer")))?;
        }
        Ok(())
    }

    pub fn generator(&self) -> Result<&GeneratorConfig> {
        self.generator
            .as_ref()
            .ok_or_else(|| Error::Config("config has no generator section".into()))
    }

    pub fn lattice(&self) -> Result<&LatticeConfig> {
        self.lattice
            .as_ref()
            .ok_or_else(|| Error::Config("config has no lattice section".into()))
    }

    pub fn transform(&self) -> Result<&TransformConfig> {
        self.transform
            .as_ref()
            .ok_or_else(|| Error::Config("config has no transform section".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_config_takes_defaults() {
        let c = RunConfig::from_json(r#"{"matrix": [[1, -1], [1, 1]]}"#).unwrap();
        assert_eq!(c.verification.samples, 10_000);
        assert_eq!(c.verification.seed, 42);
        assert_eq!(c.norm, NormOptions::default());
        assert!(!c.allow_invalid_coefficients);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(RunConfig::from_json(r#"{"matrix": [[2]], "colour": 1}"#).is_err());
        assert!(RunConfig::from_json(r#"{"matrix": [[2]], "generator": {"type": "tent", "e": 1}}"#).is_err());
        assert!(RunConfig::from_json(r#"{"matrix": [[2]], "verification": {"sample": 3}}"#).is_err());
        assert!(RunConfig::from_json(r#"{"matrix": [[2]], "lattice": {"mode": "weird"}}"#).is_err());
    }

    #[test]
    fn camel_case_transform_keys() {
        let c = RunConfig::from_json(
            r#"{"matrix": [[2]], "transform": {"grid": {"lo": [-2], "extent": [4], "points_per_axis": 64},
                "jRange": [-1, 1], "kWindow": 8, "dropTol": 0, "signal": {"type": "zero"}}}"#,
        )
        .unwrap();
        assert_eq!(c.transform.unwrap().j_range, Some((-1, 1)));
    }
}
