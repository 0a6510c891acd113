//! Single-mode phase space: Wigner functions, the scaling family of maps
//! acting on them, and the transforms to and from the position-space
//! density matrix.
//!
//! Integrals are midpoint sums over uniform cell centres; for the Gaussian
//! decaying integrands used here this converges spectrally once the grid
//! covers about eight standard deviations.

mod analytic;
mod density;
mod grid;
mod maps;

pub use analytic::{laguerre, sample_to_grid, AnalyticWigner};
pub use density::{density_to_wigner, wigner_to_density, PositionDensity};
pub use grid::{overlap, GridSpec, GridWigner, DEFAULT_POINTS};
pub use maps::{apply_partial_scaling, apply_scaling, apply_squeeze};
