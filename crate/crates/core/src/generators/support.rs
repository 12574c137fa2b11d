use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg;
use crate::matrix::{AssociatedNorm, DilationMatrix};

/// A centrally symmetric convex body `{x : gauge(x) ≤ 1}`.
#[derive(Debug, Clone, PartialEq)]
pub enum Gauge {
    /// `√(xᵗMx)`.
    Quadratic(DMatrix<f64>),
    /// `‖Fx‖_∞`.
    Sup(DMatrix<f64>),
}

impl Gauge {
    #[inline]
    pub fn value(&self, x: &DVector<f64>) -> f64 {
        match self {
            Gauge::Quadratic(m) => linalg::quad_form(m, x).max(0.0).sqrt(),
            Gauge::Sup(f) => linalg::sup_norm(f, x),
        }
    }

    /// Largest Euclidean length on the body.
    pub fn outer_radius(&self) -> f64 {
        match self {
            Gauge::Quadratic(m) => linalg::sym_min_eigenvalue(m).powf(-0.5),
            Gauge::Sup(f) => {
                let f_inv = linalg::inverse(f).expect("gauge frame is invertible");
                linalg::cube_vertices(f.nrows())
                    .iter()
                    .map(|v| (&f_inv * v).norm())
                    .fold(0.0, f64::max)
            }
        }
    }

    /// Radius of a Euclidean ball contained in the body.
    pub fn inner_radius(&self) -> f64 {
        match self {
            Gauge::Quadratic(m) => linalg::sym_max_eigenvalue(m).powf(-0.5),
            Gauge::Sup(f) => 1.0 / (0..f.nrows()).map(|i| f.row(i).norm()).fold(0.0, f64::max),
        }
    }

    /// Half-widths of the axis-aligned bounding box.
    pub fn half_widths(&self) -> Vec<f64> {
        match self {
            Gauge::Quadratic(m) => {
                let inv = linalg::inverse(m).expect("quadratic gauge is definite");
                (0..m.nrows()).map(|i| inv[(i, i)].max(0.0).sqrt()).collect()
            }
            Gauge::Sup(f) => {
                let inv = linalg::inverse(f).expect("gauge frame is invertible");
                (0..f.nrows())
                    .map(|i| inv.row(i).iter().map(|v| v.abs()).sum())
                    .collect()
            }
        }
    }
}

/// The tiling set `E` a support is built from.
#[derive(Debug, Clone, PartialEq)]
pub enum Tile {
    /// `E = B^c(O_*)`, the dilated annulus of the associated norm.
    Shell { c: i32 },
    /// `E = C \ B⁻¹(C)` for the parallelotope `C = {x : ‖Fx‖_∞ ≤ 1}`.
    Box { frame: DMatrix<f64> },
}

/// Serializable summary of a support region.
#[derive(Debug, Clone, Serialize)]
pub struct SupportDescriptor {
    pub kind: &'static str,
    pub c: Option<i32>,
    pub lo: i32,
    pub hi: i32,
    pub outer_radius: f64,
    pub inner_radius: f64,
}

/// The region `⋃_{j=lo}^{hi} B^{−j}(E)`, described by an outer body it lies in
/// and an inner body it avoids.
#[derive(Debug, Clone)]
pub struct SupportSpec {
    norm: Arc<AssociatedNorm>,
    tile: Tile,
    lo: i32,
    hi: i32,
    outer: Gauge,
    inner: Gauge,
}

impl SupportSpec {
    /// `B^c(I_*) \ B^{c−d−1}(I_*)`.
    pub fn shell(norm: Arc<AssociatedNorm>, c: i32, d: i32) -> Result<Self> {
        if d < 0 {
            return Err(Error::Config(format!("shell thickness d = {d} is negative")));
        }
        Self::assemble(norm, Tile::Shell { c }, 0, d)
    }

    /// `⋃_{j=0}^{d} B^{−j}(E)` with `E = C \ B⁻¹(C)`, `C = {‖Fx‖_∞ ≤ 1}`.
    pub fn box_annulus(norm: Arc<AssociatedNorm>, frame: DMatrix<f64>, d: i32) -> Result<Self> {
        if d < 0 {
            return Err(Error::Config(format!("annulus thickness d = {d} is negative")));
        }
        let n = norm.dim();
        if frame.nrows() != n || frame.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: frame.nrows(),
            });
        }
        let f_inv = linalg::inverse(&frame)?;
        // The dilates B^j(E) only tile when B⁻¹(C) ⊂ C; test at the vertices.
        let shrink = &frame * norm.dilation().b_inv() * &f_inv;
        let nested = linalg::cube_vertices(n)
            .iter()
            .all(|v| (&shrink * v).amax() <= 1.0 + 1e-12);
        if !nested {
            return Err(Error::Config("B⁻¹ does not map the box into itself".into()));
        }
        Self::assemble(norm, Tile::Box { frame }, 0, d)
    }

    /// The quincunx-style box annulus with `F = I`.
    pub fn unit_box_annulus(norm: Arc<AssociatedNorm>, d: i32) -> Result<Self> {
        let n = norm.dim();
        Self::box_annulus(norm, DMatrix::identity(n, n), d)
    }

    fn assemble(norm: Arc<AssociatedNorm>, tile: Tile, lo: i32, hi: i32) -> Result<Self> {
        if lo > hi {
            return Err(Error::Config(format!("empty support range {lo}..={hi}")));
        }
        let (outer, inner) = match &tile {
            Tile::Shell { c } => (
                Gauge::Quadratic(norm.quadratic_form_for_power(c - lo)),
                Gauge::Quadratic(norm.quadratic_form_for_power(c - hi - 1)),
            ),
            Tile::Box { frame } => {
                let dil = norm.dilation();
                (Gauge::Sup(frame * dil.b_pow(lo)), Gauge::Sup(frame * dil.b_pow(hi + 1)))
            }
        };
        Ok(Self {
            norm,
            tile,
            lo,
            hi,
            outer,
            inner,
        })
    }

    /// The same tile over a different index range.
    pub fn span(&self, lo: i32, hi: i32) -> Result<Self> {
        Self::assemble(self.norm.clone(), self.tile.clone(), lo, hi)
    }

    /// The innermost single tile `B^{−hi}(E)`, used as the sampling set.
    pub fn sampler_region(&self) -> Self {
        self.span(self.hi, self.hi).expect("single tile range is valid")
    }

    /// The support seen through `ξ ↦ P⁻ᵗξ`, expressed with `new_norm`.
    pub fn transformed(&self, new_norm: Arc<AssociatedNorm>, p: &DMatrix<f64>) -> Result<Self> {
        let tile = match &self.tile {
            Tile::Shell { c } => Tile::Shell { c: *c },
            Tile::Box { frame } => Tile::Box {
                frame: frame * linalg::inverse(p)?.transpose(),
            },
        };
        Self::assemble(new_norm, tile, self.lo, self.hi)
    }

    pub fn norm(&self) -> &Arc<AssociatedNorm> {
        &self.norm
    }

    pub fn dilation(&self) -> &DilationMatrix {
        self.norm.dilation()
    }

    pub fn dim(&self) -> usize {
        self.norm.dim()
    }

    pub fn tile(&self) -> &Tile {
        &self.tile
    }

    pub fn lo(&self) -> i32 {
        self.lo
    }

    pub fn hi(&self) -> i32 {
        self.hi
    }

    pub fn outer_gauge(&self) -> &Gauge {
        &self.outer
    }

    pub fn inner_gauge(&self) -> &Gauge {
        &self.inner
    }

    #[inline]
    pub fn contains(&self, x: &DVector<f64>) -> bool {
        self.outer.value(x) <= 1.0 && self.inner.value(x) > 1.0
    }

    /// Membership at gauge distance more than `eps` from either boundary.
    #[inline]
    pub fn contains_interior(&self, x: &DVector<f64>, eps: f64) -> bool {
        self.outer.value(x) < 1.0 - eps && self.inner.value(x) > 1.0 + eps
    }

    /// Euclidean radius of the smallest centered ball containing the region.
    pub fn outer_radius(&self) -> f64 {
        self.outer.outer_radius()
    }

    /// Radius of a centered ball the region avoids.
    pub fn inner_radius(&self) -> f64 {
        self.inner.inner_radius()
    }

    /// Axis-aligned bounding box as `(lower, upper)` corners.
    pub fn bounding_box(&self) -> (DVector<f64>, DVector<f64>) {
        let hw = DVector::from_vec(self.outer.half_widths());
        (-hw.clone(), hw)
    }

    /// Whether both regions are built from the same tile of the same norm.
    pub fn same_family(&self, other: &SupportSpec) -> bool {
        let same_norm = Arc::ptr_eq(&self.norm, &other.norm)
            || (self.norm.k() == other.norm.k() && self.norm.dilation().a() == other.norm.dilation().a());
        same_norm && self.tile == other.tile
    }

    pub fn descriptor(&self) -> SupportDescriptor {
        let (kind, c) = match &self.tile {
            Tile::Shell { c } => ("shell", Some(*c)),
            Tile::Box { .. } => ("box", None),
        };
        SupportDescriptor {
            kind,
            c,
            lo: self.lo,
            hi: self.hi,
            outer_radius: self.outer_radius(),
            inner_radius: self.inner_radius(),
        }
    }
}
