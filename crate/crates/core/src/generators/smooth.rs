use std::sync::Arc;

use nalgebra::{DMatrix, DVector};

use super::{BandlimitedGenerator, GeneratorDescriptor, SupportSpec};
use crate::error::{Error, Result};
use crate::matrix::{AssociatedNorm, EllipsoidGeometry};
use crate::sampling::ShiftedHalton;

/// `η(t) = e^{−1/t}` for `t > 0`, else 0.
#[inline]
pub fn eta(t: f64) -> f64 {
    if t > 0.0 {
        (-1.0 / t).exp()
    } else {
        0.0
    }
}

/// Bump `p` and its dilation-periodized normalization.
#[derive(Debug, Clone)]
pub struct SmoothParts {
    d: i32,
    inner: EllipsoidGeometry,
    outer: EllipsoidGeometry,
    /// `B^j` for `j = −d … d`.
    powers: Vec<DMatrix<f64>>,
}

impl SmoothParts {
    pub fn new(norm: &AssociatedNorm, c: i32, d: i32) -> Self {
        let dil = norm.dilation();
        Self {
            d,
            inner: EllipsoidGeometry::new(&norm.quadratic_form_for_power(c - d - 1)),
            outer: EllipsoidGeometry::new(&norm.quadratic_form_for_power(c)),
            powers: (-d..=d).map(|j| dil.b_pow(j)).collect(),
        }
    }

    /// `(r₁, r₂)`: radii of `∂B^{c−d−1}(I_*)` and `∂B^c(I_*)` towards `x`.
    pub fn radii(&self, x: &DVector<f64>) -> (f64, f64) {
        (self.inner.radius_towards(x), self.outer.radius_towards(x))
    }

    /// `p(x) = η(‖x‖ − r₁) η(r₂ − ‖x‖)`.
    pub fn p(&self, x: &DVector<f64>) -> f64 {
        let r = x.norm();
        if r == 0.0 {
            return 0.0;
        }
        let (r1, r2) = self.radii(x);
        eta(r - r1) * eta(r2 - r)
    }

    /// `Σ_{j=−d}^{d} p(B^j x)`.
    pub fn weight(&self, x: &DVector<f64>) -> f64 {
        self.powers.iter().map(|m| self.p(&(m * x))).sum()
    }

    /// Number of nonzero terms in [`weight`](Self::weight).
    pub fn nonzero_terms(&self, x: &DVector<f64>) -> usize {
        self.powers.iter().filter(|m| self.p(&(*m * x)) > 0.0).count()
    }

    pub fn value(&self, x: &DVector<f64>) -> f64 {
        let p = self.p(x);
        if p == 0.0 {
            return 0.0;
        }
        p / self.weight(x)
    }

    pub fn d(&self) -> i32 {
        self.d
    }
}

/// `g = p / Σ_{j=−d}^{d} p(B^j ·)` on `Shell(c, d)`, `C^∞` away from the origin.
pub fn smooth_generator(norm: Arc<AssociatedNorm>, c: i32, d: i32) -> Result<BandlimitedGenerator> {
    if d < 1 {
        return Err(Error::Config(format!("smooth generator needs d ≥ 1, got {d}")));
    }
    let parts = SmoothParts::new(&norm, c, d);
    let n = norm.dim();
    let mut dirs = ShiftedHalton::new(n, 0x5107);
    for _ in 0..2000 {
        let u = DVector::from_iterator(n, dirs.next_unit().into_iter().map(|v| 2.0 * v - 1.0));
        if u.norm() < 1e-6 {
            continue;
        }
        let (r1, r2) = parts.radii(&u);
        if r2 <= r1 {
            return Err(Error::DegenerateShell { inner: r1, outer: r2 });
        }
    }
    let support = SupportSpec::shell(norm, c, d)?;
    let parts = Arc::new(parts);
    Ok(BandlimitedGenerator::new(
        Arc::new(move |x| parts.value(x)),
        support,
        GeneratorDescriptor::Smooth { c, d },
    ))
}
