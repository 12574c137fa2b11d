//! Expansive dilation matrices and the geometry of their associated norm.

mod dilation;
mod ellipsoid;
mod norm;

pub use dilation::{validate_expansive, DilationMatrix};
pub use ellipsoid::{angles_from_vector, ellipsoid_radius, unit_from_angles, EllipsoidGeometry};
pub use norm::{build_associated_norm, truncated_form, AssociatedNorm, EllipsoidShell, NormOptions};
