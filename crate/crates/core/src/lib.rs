//! Exact Clifford/exterior algebra, Chern-Weil evaluation, Gaussian moments,
//! Duflo pairings, and a spectral index harness on SU(2)/T.
#![no_std]

extern crate alloc;

pub mod duflo;
pub mod error;
pub mod fit;
pub mod fixtures;
pub mod gaussmoment;
pub mod gradedalg;
pub mod indexlab;
pub mod liealg;
pub mod matrix;
pub mod report;
pub mod scalar;
pub mod weil;

pub use error::{Error, Result};
pub use matrix::Matrix;
pub use scalar::{Scalar, Series, SeriesMatrix};
