//! Numerical toolkit for position–momentum uncertainty relations and
//! partial-scaling entanglement tests of continuous-variable states.
//!
//! The crate works in units `ħ = m = ω = 1` and is organised in four layers:
//!
//! * [`phase_space`]: single-mode Wigner functions (closed form and gridded),
//!   the scaling, squeezing and partial-scaling maps, phase-space overlaps and
//!   the Wigner ↔ position-density-matrix transforms.
//! * [`moments`]: first and second moments, Schrödinger–Robertson matrices and
//!   positivity decisions.
//! * [`fock`]: truncated number-basis operators, spectra and the
//!   `ρ ↦ ‖Tr(ρ A_ij)‖` moment-matrix map.
//! * [`gaussian`]: covariance matrices of N-mode Gaussian states, symplectic
//!   squeezing, partial scaling of second moments and the separability scan.
//!
//! All numerical types are generic over [`Real`] (`f32` or `f64`); the
//! aliases at the crate root fix the scalar to `f64`.

pub mod error;
pub mod fock;
pub mod gaussian;
pub mod moments;
pub mod phase_space;
pub mod real;

pub use error::{Error, Result};
pub use real::Real;

pub type GridSpec = phase_space::GridSpec<f64>;
pub type AnalyticWigner = phase_space::AnalyticWigner<f64>;
pub type GridWigner = phase_space::GridWigner<f64>;
pub type PositionDensity = phase_space::PositionDensity<f64>;
pub type SecondMoments = moments::SecondMoments<f64>;
pub type HermitianMatrix = moments::HermitianMatrix<f64>;
pub type Positivity = moments::Positivity<f64>;
pub type FockMatrix = fock::FockMatrix<f64>;
pub type Spectrum = fock::Spectrum<f64>;
pub type CovarianceMatrix = gaussian::CovarianceMatrix<f64>;
pub type SeparabilityReport = gaussian::SeparabilityReport<f64>;

pub use gaussian::Verdict;
