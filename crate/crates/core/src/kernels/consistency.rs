use std::f64::consts::PI;

use rayon::prelude::*;
use rustfft::num_complex::Complex64;
use statrs::function::gamma::{digamma, gamma};

use super::bessel::bessel_kernel_radial;
use super::riesz_constant;
use crate::error::{Error, Result};
use crate::quadrature::QuadratureConfig;
use crate::spectral::{fft, TorusGrid};

/// Result of comparing the transformed periodized kernel with its symbol.
#[derive(Clone, Debug, PartialEq)]
pub struct ConsistencyReport {
    pub sigma: f64,
    pub period: f64,
    pub n_per_axis: usize,
    /// Max over `|n| ≤ n_per_axis/4` of `|Ĝ(n/L) - m(n/L)| / |m(n/L)|`.
    pub max_rel_error: f64,
    pub worst_wavenumber: i64,
    /// Recovered `Ĝ(0)`, which should be 1.
    pub symbol_at_zero: f64,
}

/// Smooth model carrying the leading singular behaviour of `G_σ` at the
/// origin on the line, with a closed-form transform.
struct SingularModel {
    amplitude: f64,
    beta: f64,
    log: bool,
    poly: [f64; 5],
}

impl SingularModel {
    fn new(sigma: f64) -> Result<Self> {
        let odd = (sigma - sigma.round()).abs() < 1e-12 && (sigma.round() as i64) % 2 == 1;
        if odd && sigma > 1.5 {
            return Err(Error::config(format!(
                "kernel consistency check does not support odd integer order {sigma} > 1"
            )));
        }
        // Next-order coefficient of the singular expansion |x|^β (1 + c x² + …).
        let c = 0.5 / (sigma + 1.0);
        // e^{-t}(1 + t + t²/3) = 1 - t²/6 + O(t⁴), so this factor restores c.
        let c2 = c + 1.0 / 6.0;
        let poly = [1.0, 1.0, 1.0 / 3.0 + c2, c2, c2 / 3.0];
        Ok(if odd {
            SingularModel {
                amplitude: -1.0 / PI,
                beta: 0.0,
                log: true,
                poly,
            }
        } else {
            SingularModel {
                amplitude: riesz_constant(1, sigma),
                beta: sigma - 1.0,
                log: false,
                poly,
            }
        })
    }

    fn eval(&self, x: f64) -> f64 {
        let t = x.abs();
        let p = self.poly.iter().rev().fold(0.0, |acc, &c| acc * t + c);
        let sing = if self.log { t.ln() } else { t.powf(self.beta) };
        self.amplitude * sing * (-t).exp() * p
    }

    /// `∫ M(x) e^{-2πixξ} dx`.
    fn transform(&self, xi: f64) -> f64 {
        let z = Complex64::new(1.0, 2.0 * PI * xi);
        let lz = z.ln();
        let mut acc = 0.0;
        for (k, &pk) in self.poly.iter().enumerate() {
            let a = self.beta + k as f64;
            let power = (-(a + 1.0) * lz).exp();
            let term = if self.log {
                power * (digamma(a + 1.0) - lz) * gamma(a + 1.0)
            } else {
                power * gamma(a + 1.0)
            };
            acc += pk * 2.0 * term.re;
        }
        self.amplitude * acc
    }
}

/// Samples the periodized Bessel kernel `Σ_k G_σ(x + kL)` on an `L`-torus,
/// transforms it and compares with `(1 + 4π²|n/L|²)^{-σ/2}` for
/// `|n| ≤ n_per_axis/4`. The singular part at the origin is subtracted with a
/// model whose transform is known exactly; the smooth remainder is sampled on
/// a cell-centred grid. Only the line (`dim = 1`) is supported.
pub fn kernel_multiplier_consistency(
    sigma: f64,
    dim: usize,
    period: f64,
    n_per_axis: usize,
    cfg: &QuadratureConfig,
) -> Result<ConsistencyReport> {
    if dim != 1 {
        return Err(Error::config(format!(
            "kernel consistency check is implemented on the line only, got dimension {dim}"
        )));
    }
    if !(sigma > 0.0) {
        return Err(Error::domain(format!("order must be positive, got {sigma}")));
    }
    let grid = TorusGrid::with_period(1, n_per_axis, period)?;
    let images = 2i64;
    let tail = (-(images as f64 + 0.5) * period).exp();
    if tail > 1e-13 {
        return Err(Error::numeric(
            format!("period {period} too short: unrepresented image mass ~{tail:e}"),
            tail,
        ));
    }
    let per_unit = n_per_axis as f64 / period;
    if per_unit < 8.0 {
        return Err(Error::numeric(
            format!("resolution {per_unit} samples per unit length is below 8"),
            1.0 / per_unit,
        ));
    }
    let model = SingularModel::new(sigma)?;
    let h = grid.spacing();
    let samples: Vec<Complex64> = (0..n_per_axis)
        .into_par_iter()
        .map(|j| {
            let x = -0.5 * period + (j as f64 + 0.5) * h;
            let mut acc = 0.0;
            for k in -images..=images {
                let y = x + k as f64 * period;
                if y.abs() > 120.0 {
                    continue;
                }
                acc += bessel_kernel_radial(sigma, 1, y, cfg)? - model.eval(y);
            }
            Ok(Complex64::new(acc, 0.0))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut coeffs = samples;
    fft::forward(&mut coeffs, &grid);

    let limit = (n_per_axis / 4) as i64;
    let mut max_rel_error = 0.0f64;
    let mut worst_wavenumber = 0i64;
    let mut symbol_at_zero = f64::NAN;
    for n in -limit..=limit {
        let idx = grid.axis_index(n).expect("within lattice");
        let phase = Complex64::from_polar(1.0, PI * n as f64 * (1.0 - 1.0 / n_per_axis as f64));
        let xi = n as f64 / period;
        let estimate = model.transform(xi) + (period * phase * coeffs[idx]).re;
        let exact = (1.0 + 4.0 * PI * PI * xi * xi).powf(-0.5 * sigma);
        let rel = ((estimate - exact) / exact).abs();
        if n == 0 {
            symbol_at_zero = estimate;
        }
        if rel > max_rel_error {
            max_rel_error = rel;
            worst_wavenumber = n;
        }
    }
    Ok(ConsistencyReport {
        sigma,
        period,
        n_per_axis,
        max_rel_error,
        worst_wavenumber,
        symbol_at_zero,
    })
}
