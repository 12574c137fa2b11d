//! Bandlimited generators `ψ̂` forming B-dilative partitions of unity, and
//! the dual generators derived from them.

mod dual;
mod radial;
mod smooth;
mod support;
mod tent;

use std::fmt;
use std::sync::Arc;

use nalgebra::DVector;
use serde::{Deserialize, Serialize};

use crate::matrix::DilationMatrix;

pub use dual::{
    dual_pair_1d, make_dual, make_dual_special, make_dual_unchecked, make_dual_with, max_translation_1d, standardize,
    DualCoefficients, DualFramePair, SEPARATION_SAMPLES, SEPARATION_SEED,
};
pub use radial::{profile_value, radial_profile_generator, RadialParts};
pub use smooth::{eta, smooth_generator, SmoothParts};
pub use support::{Gauge, SupportDescriptor, SupportSpec, Tile};
pub use tent::{quincunx_tent_generator, tent_value};

/// Radial transition profile between the inner and outer boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProfileKind {
    Linear,
    Cubic,
    Cosine,
}

impl ProfileKind {
    pub const ALL: [ProfileKind; 3] = [ProfileKind::Linear, ProfileKind::Cubic, ProfileKind::Cosine];
}

/// What a generator is, for reports and exports.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum GeneratorDescriptor {
    Tent,
    Radial {
        c: i32,
        profile: ProfileKind,
    },
    Smooth {
        c: i32,
        d: i32,
    },
    Indicator,
    Zero,
    Scaled {
        factor: f64,
        base: Box<GeneratorDescriptor>,
    },
    Dual {
        scale: f64,
        coefficients: Vec<f64>,
        base: Box<GeneratorDescriptor>,
    },
    Standardized {
        det_p: f64,
        base: Box<GeneratorDescriptor>,
    },
}

pub type FourierEval = Arc<dyn Fn(&DVector<f64>) -> f64 + Send + Sync>;

/// A real-valued, compactly supported Fourier-side function `ψ̂`.
#[derive(Clone)]
pub struct BandlimitedGenerator {
    eval: FourierEval,
    support: SupportSpec,
    descriptor: GeneratorDescriptor,
    partition_level: f64,
}

impl fmt::Debug for BandlimitedGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BandlimitedGenerator")
            .field("descriptor", &self.descriptor)
            .field("support", &self.support.descriptor())
            .field("partition_level", &self.partition_level)
            .finish()
    }
}

impl BandlimitedGenerator {
    pub fn new(eval: FourierEval, support: SupportSpec, descriptor: GeneratorDescriptor) -> Self {
        Self {
            eval,
            support,
            descriptor,
            partition_level: 1.0,
        }
    }

    /// Overrides the value the dilation sum `Σ_j ψ̂(B^jξ)` should attain.
    pub fn with_partition_level(mut self, level: f64) -> Self {
        self.partition_level = level;
        self
    }

    /// `ψ̂(ξ)`.
    #[inline]
    pub fn eval(&self, xi: &DVector<f64>) -> f64 {
        (self.eval)(xi)
    }

    pub fn evaluator(&self) -> &FourierEval {
        &self.eval
    }

    pub fn support(&self) -> &SupportSpec {
        &self.support
    }

    pub fn dilation(&self) -> &DilationMatrix {
        self.support.dilation()
    }

    pub fn dim(&self) -> usize {
        self.support.dim()
    }

    pub fn descriptor(&self) -> &GeneratorDescriptor {
        &self.descriptor
    }

    pub fn partition_level(&self) -> f64 {
        self.partition_level
    }

    /// `factor · ψ̂`, keeping the declared partition level.
    pub fn scaled(&self, factor: f64) -> Self {
        let inner = self.eval.clone();
        Self {
            eval: Arc::new(move |x| factor * inner(x)),
            support: self.support.clone(),
            descriptor: GeneratorDescriptor::Scaled {
                factor,
                base: Box::new(self.descriptor.clone()),
            },
            partition_level: self.partition_level,
        }
    }

    /// Indicator of a support region; a partition of unity when the region is a single tile.
    pub fn indicator(support: SupportSpec) -> Self {
        let s = support.clone();
        Self::new(
            Arc::new(move |x| if s.contains(x) { 1.0 } else { 0.0 }),
            support,
            GeneratorDescriptor::Indicator,
        )
    }

    /// The zero function on a declared support.
    pub fn zero(support: SupportSpec) -> Self {
        Self::new(Arc::new(|_| 0.0), support, GeneratorDescriptor::Zero)
    }
}
