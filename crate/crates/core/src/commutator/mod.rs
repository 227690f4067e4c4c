//! The dyadic commutator `[2^{-js} D^s Q_j, f]`, its paraproduct use, and
//! sweeps of its normalized size over `j`.

mod paraproduct;
mod sweep;

use std::f64::consts::PI;

use rustfft::num_complex::Complex64;

pub use paraproduct::{paraproduct_split, paraproduct_split_with_depth, ParaproductSplit};
pub use sweep::{commutator_ratio_sweep, multiplier_localization_check, CommutatorProbe, SweepReport, SweepRow, SweepSummary};

use crate::error::Result;
use crate::spectral::{apply_multiplier, lp, pointwise_product, project_nonzero, MultiplierSpec, SpectralField, Wavenumber};

/// `[2^{-js} D^s Q_j, f](g) = 2^{-js} D^s Q_j (fg) - f · 2^{-js} D^s Q_j g`.
///
/// Constants commute with every multiplier, so only the mean-free part of `f`
/// enters; a constant `f` gives exactly zero.
pub fn commutator_apply(f: &SpectralField, g: &SpectralField, s: f64, j: u32) -> Result<SpectralField> {
    let t = MultiplierSpec::dyadic_derivative(s, j);
    let f0 = project_nonzero(f);
    let first = apply_multiplier(&pointwise_product(&f0, g)?, &t)?;
    let second = pointwise_product(&f0, &apply_multiplier(g, &t)?)?;
    first.sub(&second)
}

/// `σ_j(ξ) = 2^{-js}(2π|ξ|)^s Φ_j(|ξ|)`.
pub fn dyadic_symbol(s: f64, j: u32, xi: &[f64; 3]) -> f64 {
    let r = crate::spectral::norm3(xi);
    let base = if r == 0.0 { if s == 0.0 { 1.0 } else { 0.0 } } else { (2.0 * PI * r).powf(s) };
    (-(j as f64) * s).exp2() * base * lp::lp_symbol(j, r)
}

/// Coefficient of `e_{m+n}` in `[2^{-js}D^sQ_j, e_m](e_n)` on the unit torus.
pub fn two_mode_coefficient(m: Wavenumber, n: Wavenumber, s: f64, j: u32) -> Complex64 {
    let to_xi = |w: Wavenumber| [w[0] as f64, w[1] as f64, w[2] as f64];
    let sum = [m[0] + n[0], m[1] + n[1], m[2] + n[2]];
    let v = if m == [0, 0, 0] {
        0.0
    } else {
        dyadic_symbol(s, j, &to_xi(sum)) - dyadic_symbol(s, j, &to_xi(n))
    };
    Complex64::new(v, 0.0)
}
