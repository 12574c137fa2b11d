use std::f64::consts::PI;

use nalgebra::DVector;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Test signals given by their Fourier transform.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum Signal {
    /// `exp(α(1 − 1/(1 − s²)))` for `s = ‖(ξ − center) / radius‖ < 1`, times
    /// `e^{−2πi⟨ξ, shift⟩}` (a time-domain translation by `shift`).
    /// `α = sharpness` defaults to 1.
    Bump {
        center: Vec<f64>,
        radius: Vec<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        sharpness: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        shift: Option<Vec<f64>>,
    },
    Zero,
}

impl Signal {
    pub fn validate(&self, dim: usize) -> Result<()> {
        if let Signal::Bump {
            center,
            radius,
            shift,
            sharpness,
        } = self
        {
            for (name, len) in [("center", center.len()), ("radius", radius.len())] {
                if len != dim {
                    return Err(Error::Config(format!(
                        "signal {name} has {len} entries, grid has dimension {dim}"
                    )));
                }
            }
            if let Some(s) = shift {
                if s.len() != dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        found: s.len(),
                    });
                }
            }
            if radius.iter().any(|r| r.is_nan() || *r <= 0.0) {
                return Err(Error::Config("signal radii must be positive".into()));
            }
            if sharpness.is_some_and(|a| !a.is_finite() || a <= 0.0) {
                return Err(Error::Config("signal sharpness must be positive".into()));
            }
        }
        Ok(())
    }

    pub fn eval(&self, xi: &DVector<f64>) -> Complex64 {
        match self {
            Signal::Zero => Complex64::new(0.0, 0.0),
            Signal::Bump {
                center,
                radius,
                shift,
                sharpness,
            } => {
                let s2: f64 = xi
                    .iter()
                    .zip(center)
                    .zip(radius)
                    .map(|((x, c), r)| ((x - c) / r).powi(2))
                    .sum();
                if s2 >= 1.0 {
                    return Complex64::new(0.0, 0.0);
                }
                let amp = (sharpness.unwrap_or(1.0) * (1.0 - 1.0 / (1.0 - s2))).exp();
                let phase = shift
                    .as_ref()
                    .map_or(0.0, |s| -2.0 * PI * xi.iter().zip(s).map(|(x, t)| x * t).sum::<f64>());
                Complex64::from_polar(amp, phase)
            }
        }
    }
}
