//! Discretized analysis and synthesis with a dual frame pair on a frequency grid.

mod grid;
mod plan;
mod signal;

pub use grid::{FrequencyGrid, GridHeader};
pub use plan::{
    analyze, covering_scales, roundtrip, synthesize, uncovered_energy, undersampled_scales, AnalysisOptions,
    CoefficientTable, RoundTrip,
};
pub use signal::Signal;
