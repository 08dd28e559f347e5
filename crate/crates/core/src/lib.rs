//! Exact chain invariants and Drazin data for Gaussian-rational matrices,
//! together with a symbolic calculus of planar spectral sets and a rule
//! engine that derives the B-Fredholm family of spectra from known ones.
//!
//! Start with the runnable programs in `examples/`; each covers one
//! capability end to end.

pub mod catalog;
pub mod chain;
pub mod cli;
pub mod derive;
pub mod eigen;
pub mod error;
pub mod json;
pub mod linalg;
pub mod region;
pub mod scalar;
pub mod svg;

pub use error::{Error, Result};
pub use linalg::ExactMatrix;
pub use region::SpectralRegion;
pub use scalar::ExactScalar;
