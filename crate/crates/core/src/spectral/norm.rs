use std::f64::consts::PI;

use rustfft::num_complex::Complex64;

use super::field::SpectralField;
use crate::error::{Error, Result};
use crate::exponent::{Exponent, RECIPROCAL_TOL};

/// Smallest exponent accepted by the Lebesgue (quasi-)norms.
pub const MIN_EXPONENT: f64 = 0.5;

/// `(Σ |v_k|^p · cell)^{1/p}`, or `max |v_k|` for `p = ∞`.
pub fn lebesgue_norm_of_values(values: impl Iterator<Item = f64>, cell_volume: f64, p: Exponent) -> Result<f64> {
    if p.recip() > 1.0 / MIN_EXPONENT + RECIPROCAL_TOL {
        return Err(Error::domain(format!(
            "Lebesgue exponent must be at least 1/2, got {p}"
        )));
    }
    if p.is_infinite() {
        let mut m = 0.0f64;
        for v in values {
            if v.is_nan() {
                return Err(Error::numeric("NaN sample in sup norm", f64::NAN));
            }
            m = m.max(v.abs());
        }
        return Ok(m);
    }
    let pv = p.value();
    let mut sum = 0.0f64;
    if pv == 2.0 {
        for v in values {
            sum += v * v;
        }
    } else if pv == 1.0 {
        for v in values {
            sum += v.abs();
        }
    } else {
        for v in values {
            sum += v.abs().powf(pv);
        }
    }
    let norm = (sum * cell_volume).powf(1.0 / pv);
    if !norm.is_finite() {
        return Err(Error::numeric(
            format!("L^{p} norm is not finite (power sum {sum:e})"),
            sum,
        ));
    }
    Ok(norm)
}

/// Rectangle-rule `L^p` (quasi-)norm of the grid samples over the period box.
/// On the circle the `p = ∞` case is the true supremum of the interpolant,
/// see [`sup_norm`].
pub fn lebesgue_norm(f: &SpectralField, p: Exponent) -> Result<f64> {
    if p.is_infinite() {
        return sup_norm(f);
    }
    lebesgue_norm_of_values(
        f.samples().iter().map(|v| v.norm()),
        f.grid().cell_volume(),
        p,
    )
}

/// `L^p` norm of the Euclidean length of the spectral gradient.
pub fn gradient_norm(f: &SpectralField, p: Exponent) -> Result<f64> {
    if f.grid().dim() == 1 {
        return lebesgue_norm(&f.gradient()[0], p);
    }
    lebesgue_norm(&f.gradient_magnitude(), p)
}

const SUP_OVERSAMPLING: usize = 16;
const SUP_MAX_POINTS: usize = 1 << 22;
const SUP_CANDIDATES: usize = 32;

/// Supremum of `|f|`. In one dimension the trigonometric interpolant is
/// oversampled and its largest local maxima are polished by Newton steps on
/// `|f|²`; elsewhere this is the grid maximum.
pub fn sup_norm(f: &SpectralField) -> Result<f64> {
    let grid_max = lebesgue_norm_of_values(f.samples().iter().map(|v| v.norm()), 1.0, Exponent::INFINITY)?;
    if f.grid().dim() != 1 || grid_max == 0.0 {
        return Ok(grid_max);
    }
    let n = f.grid().n_per_axis();
    let factor = SUP_OVERSAMPLING.min(SUP_MAX_POINTS / n).max(1);
    let fine = f.resample(n * factor)?;
    let values: Vec<f64> = fine.samples().iter().map(|v| v.norm()).collect();
    let m = values.iter().copied().fold(grid_max, f64::max);
    let len = values.len();
    let mut candidates: Vec<usize> = (0..len)
        .filter(|&k| {
            let v = values[k];
            v >= 0.98 * m && v >= values[(k + len - 1) % len] && v >= values[(k + 1) % len]
        })
        .collect();
    candidates.sort_by(|a, b| values[*b].total_cmp(&values[*a]));
    candidates.truncate(SUP_CANDIDATES);
    let period = f.grid().period();
    let cell = period / len as f64;
    let mut best = m;
    for k in candidates {
        let start = k as f64 * cell;
        let mut x = start;
        for _ in 0..8 {
            let [h, h1, h2] = derivatives_1d(f, x);
            let d1 = 2.0 * (h.conj() * h1).re;
            let d2 = 2.0 * (h1.norm_sqr() + (h.conj() * h2).re);
            if !(d2 < 0.0) {
                break;
            }
            let step = -d1 / d2;
            if (x + step - start).abs() > cell {
                break;
            }
            x += step;
            if step.abs() < 1e-15 * period {
                break;
            }
        }
        best = best.max(derivatives_1d(f, x)[0].norm());
    }
    Ok(best)
}

/// Value and first two derivatives of a one-dimensional interpolant at `x`.
fn derivatives_1d(f: &SpectralField, x: f64) -> [Complex64; 3] {
    let grid = f.grid();
    let n = grid.n_per_axis() as i64;
    let scale = 2.0 * PI / grid.period();
    let mut out = [Complex64::default(); 3];
    for (k, c) in f.coeffs().iter().enumerate() {
        if *c == Complex64::default() {
            continue;
        }
        let w = grid.wavenumber(k)[0];
        let omega = scale * w as f64;
        if w == -n / 2 {
            let (sn, cs) = (omega * x).sin_cos();
            out[0] += c * cs;
            out[1] += c * (-omega * sn);
            out[2] += c * (-omega * omega * cs);
        } else {
            let e = Complex64::from_polar(1.0, omega * x);
            out[0] += c * e;
            out[1] += c * e * Complex64::new(0.0, omega);
            out[2] += c * e * (-omega * omega);
        }
    }
    if f.is_real() {
        for v in &mut out {
            v.im = 0.0;
        }
    }
    out
}

/// `ℓ²` norm of the coefficient sequence scaled by the box volume, which equals
/// the `L²` norm by Parseval.
pub fn coefficient_l2(f: &SpectralField) -> f64 {
    let vol = f.grid().period().powi(f.grid().dim() as i32);
    (f.coeffs().iter().map(|c| c.norm_sqr()).sum::<f64>() * vol).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::grid::TorusGrid;

    #[test]
    fn constants_have_unit_norm() {
        let g = TorusGrid::new(2, 16).unwrap();
        let one = SpectralField::constant(g, 1.0);
        for p in [0.5, 1.0, 2.0, 3.7, f64::INFINITY] {
            let v = lebesgue_norm(&one, Exponent::new(p).unwrap()).unwrap();
            assert!((v - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn sup_norm_finds_off_grid_peak() {
        let g = TorusGrid::new(1, 16).unwrap();
        let f = SpectralField::from_fn(g, |x| (2.0 * std::f64::consts::PI * (x[0] - 0.013)).cos());
        assert!((sup_norm(&f).unwrap() - 1.0).abs() < 1e-14);
        let grid_max = f.samples().iter().map(|v| v.norm()).fold(0.0, f64::max);
        assert!(grid_max < 1.0 - 1e-4);
    }

    #[test]
    fn rejects_small_exponents() {
        let g = TorusGrid::new(1, 16).unwrap();
        let one = SpectralField::constant(g, 1.0);
        assert!(lebesgue_norm(&one, Exponent::new(0.49).unwrap()).is_err());
    }
}
