//! Universal R matrices of quantum groups computed from braid-group
//! representations: the Hecke algebra for the A series and the
//! Birman-Wenzl algebra for B, C and D.
//!
//! Everything is exact over [`scalar::Scalar`]; a floating-point path shares
//! the same code through [`coeff::Field`].

pub mod bmw;
pub mod coeff;
pub mod coupling;
pub mod error;
pub mod exec;
pub mod hecke;
pub mod report;
pub mod rmatrix;
pub mod scalar;
pub mod tensor;

pub use error::{Error, Result};
pub use scalar::Scalar;
