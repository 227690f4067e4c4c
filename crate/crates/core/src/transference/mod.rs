//! Periodization, cutoffs and the Poisson-summation bridge between the line
//! and the circle.

mod cutoffs;
mod embed;
mod identity;
mod localization;
mod poisson;

pub use cutoffs::{build_cutoffs, CutoffFamily, MAX_MARGIN};
pub use embed::{localize, periodize, periodize_and_localize, EmbeddedField, Localized, MIN_BASE_RESOLUTION};
pub use identity::{
    fourier_agreement_check, lattice_tail_bound, mean_zero_split_check, missing_image_weight,
    transference_identity_check, CheckStatus, TransferenceReport, DEFAULT_PERIOD,
};
pub use localization::{
    kernel_split_check, localization_bound_check, KernelSplitPoint, KernelSplitReport, LocalizationReport,
    LocalizationTarget,
};
pub use poisson::{poisson_check, PoissonProfile, PoissonReport};
