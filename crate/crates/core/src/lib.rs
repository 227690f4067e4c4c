//! Periodic fractional calculus on the torus: spectral multipliers, kernels,
//! transference checks, commutators and an inequality-verification harness.

// `!(x > 0.0)` guards also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commutator;
pub mod error;
pub mod exponent;
pub mod harness;
pub mod kernels;
pub mod quadrature;
pub mod spectral;
pub mod transference;

pub use error::{Error, Result};
pub use exponent::Exponent;
pub use spectral::{MultiplierSpec, SpectralField, TorusGrid};
