use crate::error::{Error, Result};
use crate::spectral::lp::{bump, smooth_step};
use crate::spectral::{SpectralField, TorusGrid};

/// Periodic partition `φ1 + φ2 = 1` on the line together with the compactly
/// supported cutoffs `ψ1, ψ2` that equal 1 on the supports of `φ1, φ2`.
///
/// `φ1` rises on `[1/8 + m, 3/8 - m]`, is 1 on `[3/8, 5/8]` and falls on
/// `[5/8 + m, 7/8 - m]`, where `m` is the margin. `ψ_j` is 1 on
/// `[1/9, 8/9] - (j-1)/2` and vanishes outside `[1/10, 9/10] - (j-1)/2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CutoffFamily {
    margin: f64,
}

/// Largest admissible margin (the transition would collapse to a jump).
pub const MAX_MARGIN: f64 = 0.12;

impl CutoffFamily {
    pub fn new(margin: f64) -> Result<Self> {
        if !(0.0..=MAX_MARGIN).contains(&margin) {
            return Err(Error::config(format!(
                "cutoff margin must lie in [0, {MAX_MARGIN}], got {margin}"
            )));
        }
        Ok(CutoffFamily { margin })
    }

    pub fn margin(&self) -> f64 {
        self.margin
    }

    pub fn phi1(&self, x: f64) -> f64 {
        let y = x.rem_euclid(1.0);
        let m = self.margin;
        let (a, b) = (0.125 + m, 0.375 - m);
        let (c, d) = (0.625 + m, 0.875 - m);
        smooth_step((y - a) / (b - a)) * smooth_step((d - y) / (d - c))
    }

    pub fn phi2(&self, x: f64) -> f64 {
        1.0 - self.phi1(x)
    }

    /// `φ_j`, `j ∈ {1, 2}`.
    pub fn phi(&self, j: usize, x: f64) -> f64 {
        if j == 1 {
            self.phi1(x)
        } else {
            self.phi2(x)
        }
    }

    /// `ψ_j`, `j ∈ {1, 2}`; not periodic.
    pub fn psi(&self, j: usize, x: f64) -> f64 {
        let shift = if j == 1 { 0.0 } else { 0.5 };
        let y = x + shift;
        let (lo, lo_flat) = (0.1, 1.0 / 9.0);
        let (hi_flat, hi) = (8.0 / 9.0, 0.9);
        smooth_step((y - lo) / (lo_flat - lo)) * smooth_step((hi - y) / (hi - hi_flat))
    }

    /// Periodized `ψ_j` on the unit circle, with coefficients tapered by
    /// `φ(1.6|n| / band)` so the result has bandwidth below `band`.
    pub fn psi_field(&self, j: usize, grid: TorusGrid, band: usize) -> Result<SpectralField> {
        if grid.dim() != 1 || grid.period() != 1.0 {
            return Err(Error::config("cutoff fields live on the unit circle"));
        }
        if band == 0 || 2 * band > grid.n_per_axis() {
            return Err(Error::config(format!(
                "taper band {band} must lie in [1, {}]",
                grid.n_per_axis() / 2
            )));
        }
        let raw = SpectralField::from_fn(grid, |x| self.psi(j, x[0]) + self.psi(j, x[0] - 1.0));
        let coeffs = raw
            .coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let n = grid.wavenumber(i)[0].unsigned_abs() as f64;
                c * bump(1.6 * n / band as f64)
            })
            .collect();
        SpectralField::from_coeffs(grid, coeffs, true)
    }
}

impl Default for CutoffFamily {
    fn default() -> Self {
        CutoffFamily { margin: 0.0 }
    }
}

/// Builds the cutoff family on the line.
pub fn build_cutoffs(margin: f64) -> Result<CutoffFamily> {
    CutoffFamily::new(margin)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plateaus_and_supports() {
        let c = CutoffFamily::default();
        assert_eq!(c.phi1(0.5), 1.0);
        assert_eq!(c.phi2(0.0), 1.0);
        assert_eq!(c.phi1(0.1), 0.0);
        assert_eq!(c.phi1(0.9), 0.0);
        assert_eq!(c.psi(1, 0.5), 1.0);
        assert_eq!(c.psi(2, 0.0), 1.0);
        assert_eq!(c.psi(1, 0.05), 0.0);
        assert_eq!(c.psi(2, 0.45), 0.0);
    }
}
