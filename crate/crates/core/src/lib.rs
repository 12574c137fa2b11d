//! Bandlimited dual wavelet frames for real expansive dilation matrices.

pub mod cli;
pub mod error;
pub mod generators;
pub mod lattice;
pub mod linalg;
pub mod matrix;
pub mod sampling;
pub mod transform;
pub mod verification;

pub use error::{Error, Result};
