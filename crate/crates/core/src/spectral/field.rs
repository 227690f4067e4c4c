use rustfft::num_complex::Complex64;

use super::fft;
use super::grid::{TorusGrid, Wavenumber};
use crate::error::{Error, Result};

/// Relative magnitude below which a coefficient counts as absent when
/// measuring bandwidth.
pub const BANDWIDTH_THRESHOLD: f64 = 1e-14;

/// A trigonometric polynomial on a [`TorusGrid`], held both as normalized
/// Fourier coefficients (FFT order) and as grid samples.
///
/// Coefficients follow `coeff(n) = period^{-d} ∫ f(x) e^{-2πi n·x/period} dx`.
/// Real fields keep real samples; their coefficients are conjugate symmetric.
#[derive(Clone, Debug)]
pub struct SpectralField {
    grid: TorusGrid,
    coeffs: Vec<Complex64>,
    samples: Vec<Complex64>,
    is_real: bool,
}

impl SpectralField {
    pub fn zeros(grid: TorusGrid) -> Self {
        let len = grid.len();
        SpectralField {
            grid,
            coeffs: vec![Complex64::default(); len],
            samples: vec![Complex64::default(); len],
            is_real: true,
        }
    }

    pub fn constant(grid: TorusGrid, value: f64) -> Self {
        let mut f = Self::zeros(grid);
        f.coeffs[0] = Complex64::new(value, 0.0);
        f.samples.iter_mut().for_each(|v| *v = Complex64::new(value, 0.0));
        f
    }

    pub fn from_real_samples(grid: TorusGrid, samples: Vec<f64>) -> Result<Self> {
        if samples.len() != grid.len() {
            return Err(Error::config(format!(
                "expected {} samples, got {}",
                grid.len(),
                samples.len()
            )));
        }
        let samples: Vec<Complex64> = samples.into_iter().map(|v| Complex64::new(v, 0.0)).collect();
        Ok(Self::from_samples_unchecked(grid, samples, true))
    }

    pub fn from_complex_samples(grid: TorusGrid, samples: Vec<Complex64>) -> Result<Self> {
        if samples.len() != grid.len() {
            return Err(Error::config(format!(
                "expected {} samples, got {}",
                grid.len(),
                samples.len()
            )));
        }
        Ok(Self::from_samples_unchecked(grid, samples, false))
    }

    fn from_samples_unchecked(grid: TorusGrid, samples: Vec<Complex64>, is_real: bool) -> Self {
        let mut coeffs = samples.clone();
        fft::forward(&mut coeffs, &grid);
        SpectralField {
            grid,
            coeffs,
            samples,
            is_real,
        }
    }

    /// Real field sampled from `f` at the grid points of `[0, period)^d`.
    pub fn from_fn(grid: TorusGrid, f: impl Fn([f64; 3]) -> f64) -> Self {
        let samples = (0..grid.len())
            .map(|k| Complex64::new(f(grid.point(k)), 0.0))
            .collect();
        Self::from_samples_unchecked(grid, samples, true)
    }

    /// Builds a field from FFT-ordered coefficients. With `is_real`, the
    /// imaginary parts of the synthesized samples are discarded.
    pub fn from_coeffs(grid: TorusGrid, coeffs: Vec<Complex64>, is_real: bool) -> Result<Self> {
        if coeffs.len() != grid.len() {
            return Err(Error::config(format!(
                "expected {} coefficients, got {}",
                grid.len(),
                coeffs.len()
            )));
        }
        let mut samples = coeffs.clone();
        fft::inverse(&mut samples, &grid);
        if is_real {
            samples.iter_mut().for_each(|v| v.im = 0.0);
        }
        Ok(SpectralField {
            grid,
            coeffs,
            samples,
            is_real,
        })
    }

    /// Complex exponential `e^{2πi n·x/period}`.
    pub fn mode(grid: TorusGrid, n: Wavenumber) -> Result<Self> {
        let idx = grid
            .index_of(n)
            .ok_or_else(|| Error::config(format!("wavenumber {n:?} not representable")))?;
        let mut coeffs = vec![Complex64::default(); grid.len()];
        coeffs[idx] = Complex64::new(1.0, 0.0);
        let real = n.iter().all(|&c| c == 0);
        Self::from_coeffs(grid, coeffs, real)
    }

    /// `cos(2π n·x/period)` as a real field.
    pub fn cos_mode(grid: TorusGrid, n: Wavenumber) -> Result<Self> {
        Self::real_pair(grid, n, Complex64::new(0.5, 0.0))
    }

    /// `sin(2π n·x/period)` as a real field.
    pub fn sin_mode(grid: TorusGrid, n: Wavenumber) -> Result<Self> {
        Self::real_pair(grid, n, Complex64::new(0.0, -0.5))
    }

    fn real_pair(grid: TorusGrid, n: Wavenumber, c: Complex64) -> Result<Self> {
        let neg = [-n[0], -n[1], -n[2]];
        let (i, j) = match (grid.index_of(n), grid.index_of(neg)) {
            (Some(i), Some(j)) if i != j => (i, j),
            (Some(i), Some(_)) => {
                // zero mode
                let mut coeffs = vec![Complex64::default(); grid.len()];
                coeffs[i] = Complex64::new(2.0 * c.re, 0.0);
                return Self::from_coeffs(grid, coeffs, true);
            }
            _ => {
                return Err(Error::config(format!(
                    "wavenumber {n:?} has no representable conjugate pair"
                )))
            }
        };
        let mut coeffs = vec![Complex64::default(); grid.len()];
        coeffs[i] += c;
        coeffs[j] += c.conj();
        Self::from_coeffs(grid, coeffs, true)
    }

    pub fn grid(&self) -> &TorusGrid {
        &self.grid
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn real_samples(&self) -> Vec<f64> {
        self.samples.iter().map(|v| v.re).collect()
    }

    pub fn is_real(&self) -> bool {
        self.is_real
    }

    /// Coefficient at wavenumber `n`; zero when `n` is off the grid.
    pub fn coeff(&self, n: Wavenumber) -> Complex64 {
        self.grid
            .index_of(n)
            .map(|i| self.coeffs[i])
            .unwrap_or_default()
    }

    /// Mean value over the period box.
    pub fn mean(&self) -> Complex64 {
        self.coeffs[0]
    }

    pub fn max_abs(&self) -> f64 {
        self.samples.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Largest per-axis wavenumber magnitude carrying a coefficient above
    /// [`BANDWIDTH_THRESHOLD`] relative to the largest coefficient.
    pub fn bandwidth(&self) -> usize {
        let peak = self.max_abs_coeff();
        if peak == 0.0 {
            return 0;
        }
        let cut = peak * BANDWIDTH_THRESHOLD;
        let mut band = 0i64;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.norm() > cut {
                let w = self.grid.wavenumber(k);
                for v in &w[..self.grid.dim()] {
                    band = band.max(v.abs());
                }
            }
        }
        band as usize
    }

    /// Rebuilds the field from coefficients after in-place edits.
    pub(crate) fn with_coeffs(&self, coeffs: Vec<Complex64>, is_real: bool) -> Self {
        Self::from_coeffs(self.grid, coeffs, is_real).expect("coefficient length matches grid")
    }

    /// Exact change of resolution. Upsampling zero-pads (splitting the Nyquist
    /// coefficient symmetrically); downsampling fails if content would be lost.
    pub fn resample(&self, n_per_axis: usize) -> Result<Self> {
        if n_per_axis == self.grid.n_per_axis() {
            return Ok(self.clone());
        }
        let target = self.grid.resized(n_per_axis)?;
        let old_n = self.grid.n_per_axis() as i64;
        let upsampling = n_per_axis > self.grid.n_per_axis();
        if !upsampling {
            let limit = target.nyquist() as i64;
            let peak = self.max_abs_coeff();
            for (k, c) in self.coeffs.iter().enumerate() {
                if c.norm() > peak * BANDWIDTH_THRESHOLD {
                    let w = self.grid.wavenumber(k);
                    if (0..self.grid.dim()).any(|a| w[a].abs() >= limit) {
                        return Err(Error::config(format!(
                            "cannot downsample to {n_per_axis}: content at wavenumber {w:?}"
                        )));
                    }
                }
            }
        }
        let mut coeffs = vec![Complex64::default(); target.len()];
        for (k, c) in self.coeffs.iter().enumerate() {
            if *c == Complex64::default() {
                continue;
            }
            let w = self.grid.wavenumber(k);
            if upsampling {
                // Spread each Nyquist component over ±n/2 so real interpolants stay real.
                let mut targets: Vec<(Wavenumber, f64)> = vec![(w, 1.0)];
                for axis in 0..self.grid.dim() {
                    if w[axis] == -old_n / 2 {
                        let mut next = Vec::with_capacity(targets.len() * 2);
                        for (t, wt) in targets {
                            let mut flipped = t;
                            flipped[axis] = old_n / 2;
                            next.push((t, wt * 0.5));
                            next.push((flipped, wt * 0.5));
                        }
                        targets = next;
                    }
                }
                for (t, wt) in targets {
                    let idx = target.index_of(t).expect("upsampled lattice contains source");
                    coeffs[idx] += *c * wt;
                }
            } else if let Some(idx) = target.index_of(w) {
                coeffs[idx] += *c;
            }
        }
        Self::from_coeffs(target, coeffs, self.is_real)
    }

    fn lifted_pair(&self, other: &Self) -> Result<(Self, Self)> {
        if self.grid.dim() != other.grid.dim()
            || (self.grid.period() - other.grid.period()).abs() > 1e-12 * self.grid.period()
        {
            return Err(Error::config(
                "fields live on incompatible lattices (dimension or period differ)",
            ));
        }
        let n = self.grid.n_per_axis().max(other.grid.n_per_axis());
        Ok((self.resample(n)?, other.resample(n)?))
    }

    /// `a·self + b·other`, lifting both to the finer grid.
    pub fn linear_combination(&self, a: f64, other: &Self, b: f64) -> Result<Self> {
        let (x, y) = if self.grid.same_lattice(&other.grid) {
            (self.clone(), other.clone())
        } else {
            self.lifted_pair(other)?
        };
        let coeffs = x
            .coeffs
            .iter()
            .zip(&y.coeffs)
            .map(|(u, v)| u * a + v * b)
            .collect();
        let is_real = x.is_real && y.is_real;
        let samples = x
            .samples
            .iter()
            .zip(&y.samples)
            .map(|(u, v)| {
                let s = u * a + v * b;
                if is_real {
                    Complex64::new(s.re, 0.0)
                } else {
                    s
                }
            })
            .collect();
        Ok(SpectralField {
            grid: x.grid,
            coeffs,
            samples,
            is_real,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.linear_combination(1.0, other, 1.0)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.linear_combination(1.0, other, -1.0)
    }

    pub fn scale(&self, a: f64) -> Self {
        SpectralField {
            grid: self.grid,
            coeffs: self.coeffs.iter().map(|c| c * a).collect(),
            samples: self.samples.iter().map(|c| c * a).collect(),
            is_real: self.is_real,
        }
    }

    /// Maximum pointwise distance between sample sets (after lifting).
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        Ok(self.sub(other)?.max_abs())
    }

    /// Evaluates the trigonometric polynomial at an arbitrary point, O(N).
    /// The Nyquist component is treated as the symmetric real interpolant.
    pub fn evaluate_at(&self, x: [f64; 3]) -> Complex64 {
        let n = self.grid.n_per_axis() as i64;
        let p = self.grid.period();
        let mut acc = Complex64::default();
        for (k, c) in self.coeffs.iter().enumerate() {
            if *c == Complex64::default() {
                continue;
            }
            let w = self.grid.wavenumber(k);
            let mut term = *c;
            for axis in 0..self.grid.dim() {
                let theta = 2.0 * std::f64::consts::PI * x[axis] / p;
                if w[axis] == -n / 2 {
                    term *= (theta * w[axis] as f64).cos();
                } else {
                    term *= Complex64::from_polar(1.0, theta * w[axis] as f64);
                }
            }
            acc += term;
        }
        if self.is_real {
            Complex64::new(acc.re, 0.0)
        } else {
            acc
        }
    }

    /// Spectral partial derivatives `∂_k f`, one field per axis.
    pub fn gradient(&self) -> Vec<SpectralField> {
        let two_pi = 2.0 * std::f64::consts::PI;
        let n = self.grid.n_per_axis() as i64;
        (0..self.grid.dim())
            .map(|axis| {
                let coeffs = self
                    .coeffs
                    .iter()
                    .enumerate()
                    .map(|(k, c)| {
                        let w = self.grid.wavenumber(k)[axis];
                        if w == -n / 2 {
                            Complex64::default()
                        } else {
                            c * Complex64::new(0.0, two_pi * w as f64 / self.grid.period())
                        }
                    })
                    .collect();
                self.with_coeffs(coeffs, self.is_real)
            })
            .collect()
    }

    /// Samples of the Euclidean length `|∇f|`.
    pub fn gradient_magnitude(&self) -> SpectralField {
        let parts = self.gradient();
        let samples: Vec<f64> = (0..self.grid.len())
            .map(|k| parts.iter().map(|p| p.samples[k].norm_sqr()).sum::<f64>().sqrt())
            .collect();
        SpectralField::from_real_samples(self.grid, samples).expect("sample count matches grid")
    }
}
