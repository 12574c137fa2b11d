use std::f64::consts::PI;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector};

use super::{BandlimitedGenerator, GeneratorDescriptor, ProfileKind, SupportSpec};
use crate::error::Result;
use crate::linalg;
use crate::matrix::{AssociatedNorm, EllipsoidGeometry};

/// Transition from 1 at `r = r₁` to 0 at `r = r₂`.
pub fn profile_value(kind: ProfileKind, r: f64, r1: f64, r2: f64) -> f64 {
    let w = r2 - r1;
    let t = ((r - r1) / w).clamp(0.0, 1.0);
    match kind {
        ProfileKind::Linear => 1.0 - t,
        ProfileKind::Cubic => (1.0 - t) * (1.0 - t) * (2.0 * t + 1.0),
        ProfileKind::Cosine => 0.5 + 0.5 * (PI * t).cos(),
    }
}

/// The pieces of a radial generator with `d = 1`.
#[derive(Debug, Clone)]
pub struct RadialParts {
    kind: ProfileKind,
    b: DMatrix<f64>,
    /// Boundaries `∂B^c`, `∂B^{c−1}`, `∂B^{c−2}` of the dilated unit ball.
    outer: EllipsoidGeometry,
    middle: EllipsoidGeometry,
    inner: EllipsoidGeometry,
}

impl RadialParts {
    pub fn new(norm: &AssociatedNorm, c: i32, kind: ProfileKind) -> Self {
        Self {
            kind,
            b: norm.dilation().b().clone(),
            outer: EllipsoidGeometry::new(&norm.quadratic_form_for_power(c)),
            middle: EllipsoidGeometry::new(&norm.quadratic_form_for_power(c - 1)),
            inner: EllipsoidGeometry::new(&norm.quadratic_form_for_power(c - 2)),
        }
    }

    /// Angular radii `(r₁, r₂)` of `∂B^{c−1}(I_*)` and `∂B^c(I_*)` towards `x`.
    pub fn radii(&self, x: &DVector<f64>) -> (f64, f64) {
        (self.middle.radius_towards(x), self.outer.radius_towards(x))
    }

    /// The profile `f` on the outer layer, using the Euclidean length of `x`.
    pub fn f(&self, x: &DVector<f64>) -> f64 {
        let (r1, r2) = self.radii(x);
        profile_value(self.kind, x.norm(), r1, r2)
    }

    pub fn value(&self, x: &DVector<f64>) -> f64 {
        let q_out = linalg::quad_form(self.outer.form(), x);
        if q_out > 1.0 {
            return 0.0;
        }
        let q_mid = linalg::quad_form(self.middle.form(), x);
        if q_mid > 1.0 {
            return self.f(x);
        }
        let q_in = linalg::quad_form(self.inner.form(), x);
        if q_in > 1.0 {
            return 1.0 - self.f(&(&self.b * x));
        }
        0.0
    }
}

/// `g = f` on `B^c(I_*) \ B^{c−1}(I_*)`, `g = 1 − f(B·)` on
/// `B^{c−1}(I_*) \ B^{c−2}(I_*)`, zero elsewhere. Support `Shell(c, 1)`.
pub fn radial_profile_generator(norm: Arc<AssociatedNorm>, c: i32, kind: ProfileKind) -> Result<BandlimitedGenerator> {
    let parts = Arc::new(RadialParts::new(&norm, c, kind));
    let support = SupportSpec::shell(norm, c, 1)?;
    Ok(BandlimitedGenerator::new(
        Arc::new(move |x| parts.value(x)),
        support,
        GeneratorDescriptor::Radial { c, profile: kind },
    ))
}
