use super::cutoffs::CutoffFamily;
use crate::error::{Error, Result};
use crate::spectral::{SpectralField, TorusGrid};

/// Smallest base resolution that resolves the cutoff transitions.
pub const MIN_BASE_RESOLUTION: usize = 64;

/// A function on the period-`L` torus standing in for a function on ℝ,
/// sampled at the base torus spacing so that base grid point `i` is big grid
/// point `i`.
#[derive(Clone, Debug)]
pub struct EmbeddedField {
    pub base_grid: TorusGrid,
    pub field: SpectralField,
}

impl EmbeddedField {
    pub fn period(&self) -> usize {
        self.field.grid().period().round() as usize
    }

    /// Big-grid index of the point `base_index + shift` (units of the base period).
    pub fn index(&self, base_index: usize, shift: i64) -> usize {
        let n = self.base_grid.n_per_axis() as i64;
        let total = self.field.grid().n_per_axis() as i64;
        (base_index as i64 + shift * n).rem_euclid(total) as usize
    }
}

/// Output of [`periodize_and_localize`].
#[derive(Clone, Debug)]
pub struct Localized {
    /// Periodic extension `F` of `f`.
    pub f_periodic: EmbeddedField,
    /// `G_1 = 1_{[0,1]} φ1 g`.
    pub g1: EmbeddedField,
    /// `G_2 = 1_{[-1/2,1/2]} φ2 g`.
    pub g2: EmbeddedField,
}

pub(crate) fn check_base(f: &SpectralField, what: &str) -> Result<()> {
    let g = f.grid();
    if g.dim() != 1 {
        return Err(Error::config(format!(
            "transference machinery is implemented on the line only ({what} has dimension {})",
            g.dim()
        )));
    }
    if (g.period() - 1.0).abs() > 1e-12 {
        return Err(Error::config(format!("{what} must live on the unit torus")));
    }
    if g.n_per_axis() < MIN_BASE_RESOLUTION {
        return Err(Error::config(format!(
            "{what} resolution {} is below {MIN_BASE_RESOLUTION}",
            g.n_per_axis()
        )));
    }
    if 4 * f.bandwidth() > g.n_per_axis() {
        return Err(Error::config(format!(
            "{what} bandwidth {} exceeds a quarter of the resolution {}",
            f.bandwidth(),
            g.n_per_axis()
        )));
    }
    Ok(())
}

pub(crate) fn big_grid(base: &TorusGrid, period: usize) -> Result<TorusGrid> {
    if period < 2 || !period.is_multiple_of(2) {
        return Err(Error::config(format!("embedding period must be an even integer ≥ 2, got {period}")));
    }
    TorusGrid::with_period(1, base.n_per_axis() * period, period as f64)
}

/// Embeds the samples of `f` restricted by `weight` (a function of the real
/// position in `[-L/2, L/2)`).
pub(crate) fn embed_with(f: &SpectralField, period: usize, weight: impl Fn(f64) -> f64) -> Result<EmbeddedField> {
    let base = *f.grid();
    let big = big_grid(&base, period)?;
    let n = base.n_per_axis();
    let samples = f.real_samples();
    let values: Vec<f64> = (0..big.len())
        .map(|k| {
            let x = big.centered_point(k)[0];
            let w = weight(x);
            if w == 0.0 {
                0.0
            } else {
                w * samples[k % n]
            }
        })
        .collect();
    Ok(EmbeddedField {
        base_grid: base,
        field: SpectralField::from_real_samples(big, values)?,
    })
}

/// Periodic extension `F` of `f` on the period-`L` torus.
pub fn periodize(f: &SpectralField, period: usize) -> Result<EmbeddedField> {
    check_base(f, "f")?;
    embed_with(f, period, |_| 1.0)
}

/// `G_j` for `j ∈ {1, 2}`.
pub fn localize(g: &SpectralField, cuts: &CutoffFamily, j: usize, period: usize) -> Result<EmbeddedField> {
    check_base(g, "g")?;
    let (lo, hi) = if j == 1 { (0.0, 1.0) } else { (-0.5, 0.5) };
    embed_with(g, period, |x| {
        if (lo..=hi).contains(&x) {
            cuts.phi(j, x)
        } else {
            0.0
        }
    })
}

/// Builds `F`, `G_1`, `G_2` on the period-`L` torus.
pub fn periodize_and_localize(
    f: &SpectralField,
    g: &SpectralField,
    cuts: &CutoffFamily,
    period: usize,
) -> Result<Localized> {
    if !f.grid().same_lattice(g.grid()) {
        return Err(Error::config("f and g must share a grid"));
    }
    Ok(Localized {
        f_periodic: periodize(f, period)?,
        g1: localize(g, cuts, 1, period)?,
        g2: localize(g, cuts, 2, period)?,
    })
}

/// Sample-wise product of two embedded fields on the same big grid.
pub(crate) fn embedded_product(a: &EmbeddedField, b: &EmbeddedField) -> Result<EmbeddedField> {
    if !a.field.grid().same_lattice(b.field.grid()) {
        return Err(Error::config("embedded fields live on different grids"));
    }
    let values = a
        .field
        .samples()
        .iter()
        .zip(b.field.samples())
        .map(|(x, y)| x.re * y.re)
        .collect();
    Ok(EmbeddedField {
        base_grid: a.base_grid,
        field: SpectralField::from_real_samples(*a.field.grid(), values)?,
    })
}
