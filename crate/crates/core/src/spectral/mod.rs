//! Fourier representation of periodic fields and the multiplier operators acting on them.

pub mod fft;
mod field;
mod grid;
pub mod io;
pub mod lp;
mod multiplier;
mod norm;
mod product;

pub use field::{SpectralField, BANDWIDTH_THRESHOLD};
pub use grid::{norm3, TorusGrid, Wavenumber};
pub use multiplier::{
    apply_multiplier, bessel_operator, fractional_laplacian, lp_low, lp_project, lp_tail,
    project_mean, project_nonzero, MultiplierSpec,
};
pub use norm::{coefficient_l2, gradient_norm, lebesgue_norm, lebesgue_norm_of_values, sup_norm, MIN_EXPONENT};
pub use product::{pointwise_product, pointwise_product_with_limit, DEFAULT_MAX_PRODUCT_POINTS};
