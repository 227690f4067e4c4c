use rustfft::num_complex::Complex64;

use super::field::SpectralField;
use crate::error::{Error, Result};

/// Default cap on the total sample count of a padded product grid.
pub const DEFAULT_MAX_PRODUCT_POINTS: usize = 1 << 24;

/// Exact product of two trigonometric polynomials. See
/// [`pointwise_product_with_limit`].
pub fn pointwise_product(f: &SpectralField, g: &SpectralField) -> Result<SpectralField> {
    pointwise_product_with_limit(f, g, DEFAULT_MAX_PRODUCT_POINTS)
}

/// Alias-free product. When the summed bandwidth fits strictly below the
/// Nyquist index the samples are multiplied in place; otherwise both factors
/// are zero-padded to the next power of two exceeding twice the summed
/// bandwidth and the result lives on that finer grid.
pub fn pointwise_product_with_limit(
    f: &SpectralField,
    g: &SpectralField,
    max_points: usize,
) -> Result<SpectralField> {
    let fg = f.grid();
    let gg = g.grid();
    if fg.dim() != gg.dim() || (fg.period() - gg.period()).abs() > 1e-12 * fg.period() {
        return Err(Error::config(
            "product of fields on incompatible lattices (dimension or period differ)",
        ));
    }
    let band = f.bandwidth() + g.bandwidth();
    let mut n = fg.n_per_axis().max(gg.n_per_axis());
    if band >= n / 2 {
        n = (2 * band + 1).next_power_of_two();
        let total = n.checked_pow(fg.dim() as u32).unwrap_or(usize::MAX);
        if total > max_points {
            return Err(Error::Resource(format!(
                "padded product grid needs {total} points (limit {max_points})"
            )));
        }
    }
    let a = f.resample(n)?;
    let b = g.resample(n)?;
    let is_real = a.is_real() && b.is_real();
    let samples: Vec<Complex64> = a
        .samples()
        .iter()
        .zip(b.samples())
        .map(|(x, y)| x * y)
        .collect();
    if is_real {
        SpectralField::from_real_samples(*a.grid(), samples.into_iter().map(|v| v.re).collect())
    } else {
        SpectralField::from_complex_samples(*a.grid(), samples)
    }
}
