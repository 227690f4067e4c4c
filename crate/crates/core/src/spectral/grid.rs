use crate::error::{Error, Result};

/// Lattice frequency; unused trailing components are zero.
pub type Wavenumber = [i64; 3];

/// Uniform discretization of the periodic box `[0, period)^dim`.
///
/// `period = 1` is the torus proper; larger periods model ℝ^d for compactly
/// supported functions. Sample `k` along an axis sits at `k * period / n`,
/// and frequency index `k` maps to the wavenumber `k` for `k < n/2`, `k - n`
/// otherwise, with physical frequency `wavenumber / period`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TorusGrid {
    dim: usize,
    n_per_axis: usize,
    period: f64,
}

impl TorusGrid {
    pub fn new(dim: usize, n_per_axis: usize) -> Result<Self> {
        Self::with_period(dim, n_per_axis, 1.0)
    }

    pub fn with_period(dim: usize, n_per_axis: usize, period: f64) -> Result<Self> {
        if !(1..=3).contains(&dim) {
            return Err(Error::config(format!("dimension must be 1, 2 or 3, got {dim}")));
        }
        if n_per_axis < 4 || !n_per_axis.is_multiple_of(2) {
            return Err(Error::config(format!(
                "n_per_axis must be even and at least 4, got {n_per_axis}"
            )));
        }
        if !(period.is_finite() && period > 0.0) {
            return Err(Error::config(format!("period must be positive, got {period}")));
        }
        Ok(TorusGrid {
            dim,
            n_per_axis,
            period,
        })
    }

    /// Desk-scale defaults: 1024, 256², 64³.
    pub fn default_for_dim(dim: usize) -> Result<Self> {
        let n = match dim {
            1 => 1024,
            2 => 256,
            3 => 64,
            _ => return Err(Error::config(format!("unsupported dimension {dim}"))),
        };
        Self::new(dim, n)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n_per_axis(&self) -> usize {
        self.n_per_axis
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    pub fn len(&self) -> usize {
        self.n_per_axis.pow(self.dim as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Volume of one grid cell.
    pub fn cell_volume(&self) -> f64 {
        (self.period / self.n_per_axis as f64).powi(self.dim as i32)
    }

    pub fn spacing(&self) -> f64 {
        self.period / self.n_per_axis as f64
    }

    /// Largest wavenumber magnitude representable symmetrically (`n/2`).
    pub fn nyquist(&self) -> usize {
        self.n_per_axis / 2
    }

    /// Same dimension and period, different resolution.
    pub fn resized(&self, n_per_axis: usize) -> Result<Self> {
        Self::with_period(self.dim, n_per_axis, self.period)
    }

    pub fn same_lattice(&self, other: &TorusGrid) -> bool {
        self.dim == other.dim
            && self.n_per_axis == other.n_per_axis
            && (self.period - other.period).abs() <= 1e-12 * self.period
    }

    #[inline]
    pub fn axis_wavenumber(&self, k: usize) -> i64 {
        let n = self.n_per_axis;
        if k < n / 2 {
            k as i64
        } else {
            k as i64 - n as i64
        }
    }

    /// Storage index along one axis for wavenumber `w`, if representable.
    #[inline]
    pub fn axis_index(&self, w: i64) -> Option<usize> {
        let n = self.n_per_axis as i64;
        if w >= -n / 2 && w < n / 2 {
            Some(w.rem_euclid(n) as usize)
        } else {
            None
        }
    }

    /// Splits a flat row-major index into per-axis indices.
    #[inline]
    pub fn unravel(&self, flat: usize) -> [usize; 3] {
        let n = self.n_per_axis;
        let mut out = [0usize; 3];
        let mut rem = flat;
        for axis in (0..self.dim).rev() {
            out[axis] = rem % n;
            rem /= n;
        }
        out
    }

    #[inline]
    pub fn ravel(&self, idx: [usize; 3]) -> usize {
        let n = self.n_per_axis;
        let mut flat = 0;
        for &i in idx.iter().take(self.dim) {
            flat = flat * n + i;
        }
        flat
    }

    #[inline]
    pub fn wavenumber(&self, flat: usize) -> Wavenumber {
        let idx = self.unravel(flat);
        let mut w = [0i64; 3];
        for axis in 0..self.dim {
            w[axis] = self.axis_wavenumber(idx[axis]);
        }
        w
    }

    /// Flat storage index of a wavenumber, if representable on this grid.
    pub fn index_of(&self, w: Wavenumber) -> Option<usize> {
        let mut idx = [0usize; 3];
        for axis in 0..self.dim {
            idx[axis] = self.axis_index(w[axis])?;
        }
        for &c in w.iter().skip(self.dim) {
            if c != 0 {
                return None;
            }
        }
        Some(self.ravel(idx))
    }

    /// Physical frequency `wavenumber / period`.
    #[inline]
    pub fn frequency(&self, flat: usize) -> [f64; 3] {
        let w = self.wavenumber(flat);
        let mut xi = [0.0; 3];
        for axis in 0..self.dim {
            xi[axis] = w[axis] as f64 / self.period;
        }
        xi
    }

    /// Physical position of sample `flat`, in `[0, period)^dim`.
    #[inline]
    pub fn point(&self, flat: usize) -> [f64; 3] {
        let idx = self.unravel(flat);
        let h = self.spacing();
        let mut x = [0.0; 3];
        for axis in 0..self.dim {
            x[axis] = idx[axis] as f64 * h;
        }
        x
    }

    /// Position of sample `flat` folded into `[-period/2, period/2)^dim`.
    #[inline]
    pub fn centered_point(&self, flat: usize) -> [f64; 3] {
        let idx = self.unravel(flat);
        let h = self.spacing();
        let mut x = [0.0; 3];
        for axis in 0..self.dim {
            x[axis] = self.axis_wavenumber(idx[axis]) as f64 * h;
        }
        x
    }
}

#[inline]
pub fn norm3(v: &[f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}
