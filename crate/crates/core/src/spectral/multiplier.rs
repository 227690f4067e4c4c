use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use rustfft::num_complex::Complex64;

use super::field::SpectralField;
use super::grid::{norm3, TorusGrid};
use super::lp;
use crate::error::{Error, Result};

type RadialFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
type VectorFn = Arc<dyn Fn(&[f64; 3]) -> Complex64 + Send + Sync>;

#[derive(Clone)]
enum Symbol {
    /// Real function of `|ξ|`; preserves realness.
    Radial(RadialFn),
    /// General symbol of the physical frequency.
    General { f: VectorFn, even_real: bool },
    /// Values tabulated on a specific lattice, FFT order.
    Table { grid: TorusGrid, values: Arc<Vec<Complex64>> },
}

/// A Fourier multiplier `m(ξ)` evaluated at the physical frequency
/// `ξ = n / period` of each lattice point.
#[derive(Clone)]
pub struct MultiplierSpec {
    label: String,
    symbol: Symbol,
}

impl fmt::Debug for MultiplierSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MultiplierSpec").field("label", &self.label).finish()
    }
}

impl MultiplierSpec {
    pub fn radial(label: impl Into<String>, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        MultiplierSpec {
            label: label.into(),
            symbol: Symbol::Radial(Arc::new(f)),
        }
    }

    /// Arbitrary symbol. `even_real` asserts `m(-ξ) = conj(m(ξ))`, so real inputs
    /// stay real.
    pub fn general(
        label: impl Into<String>,
        even_real: bool,
        f: impl Fn(&[f64; 3]) -> Complex64 + Send + Sync + 'static,
    ) -> Self {
        MultiplierSpec {
            label: label.into(),
            symbol: Symbol::General {
                f: Arc::new(f),
                even_real,
            },
        }
    }

    /// Symbol tabulated on `grid` in FFT order; only applies to fields on that lattice.
    pub fn tabulated(label: impl Into<String>, grid: TorusGrid, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::config(format!(
                "tabulated symbol has {} values for a grid of {}",
                values.len(),
                grid.len()
            )));
        }
        Ok(MultiplierSpec {
            label: label.into(),
            symbol: Symbol::Table {
                grid,
                values: Arc::new(values),
            },
        })
    }

    pub fn identity() -> Self {
        Self::radial("identity", |_| 1.0)
    }

    /// `D^s`, symbol `(2π|ξ|)^s`. The zero frequency maps to 0 unless `s = 0`.
    pub fn fractional_laplacian(s: f64) -> Self {
        Self::radial(format!("D^{s}"), move |r| {
            if s == 0.0 {
                1.0
            } else if r == 0.0 {
                0.0
            } else {
                (2.0 * PI * r).powf(s)
            }
        })
    }

    /// `J^s`, symbol `(1 + 4π²|ξ|²)^{s/2}`.
    pub fn bessel(s: f64) -> Self {
        Self::radial(format!("J^{s}"), move |r| {
            if r == 0.0 {
                1.0
            } else {
                (1.0 + 4.0 * PI * PI * r * r).powf(0.5 * s)
            }
        })
    }

    /// `Q_j`, symbol `Φ_j(|ξ|)`.
    pub fn littlewood_paley(j: u32) -> Self {
        Self::radial(format!("Q_{j}"), move |r| lp::lp_symbol(j, r))
    }

    /// `S_{j2} = Σ_{j ≤ j2-3} Q_j`.
    pub fn lp_low(j2: u32) -> Self {
        Self::radial(format!("S_{j2}"), move |r| lp::lp_low_symbol(j2, r))
    }

    /// `2^{-js} D^s Q_j`.
    pub fn dyadic_derivative(s: f64, j: u32) -> Self {
        let weight = (-(j as f64) * s).exp2();
        let ds = Self::fractional_laplacian(s);
        let q = Self::littlewood_paley(j);
        let mut m = ds.compose(&q);
        m.label = format!("2^(-{j}*{s}) D^{s} Q_{j}");
        m.scaled(weight)
    }

    /// Projector onto the zero frequency.
    pub fn mean() -> Self {
        Self::radial("P_0", |r| if r == 0.0 { 1.0 } else { 0.0 })
    }

    /// Projector onto nonzero frequencies.
    pub fn nonzero() -> Self {
        Self::radial("P_nonzero", |r| if r == 0.0 { 0.0 } else { 1.0 })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn preserves_realness(&self) -> bool {
        match &self.symbol {
            Symbol::Radial(_) => true,
            Symbol::General { even_real, .. } => *even_real,
            Symbol::Table { .. } => false,
        }
    }

    /// `c · m`.
    pub fn scaled(&self, c: f64) -> Self {
        let label = self.label.clone();
        match &self.symbol {
            Symbol::Radial(f) => {
                let f = f.clone();
                Self::radial(label, move |r| c * f(r))
            }
            Symbol::General { f, even_real } => {
                let f = f.clone();
                Self::general(label, *even_real, move |xi| f(xi) * c)
            }
            Symbol::Table { grid, values } => MultiplierSpec {
                label,
                symbol: Symbol::Table {
                    grid: *grid,
                    values: Arc::new(values.iter().map(|v| v * c).collect()),
                },
            },
        }
    }

    /// Product symbol `m1 · m2` (composition of the operators).
    pub fn compose(&self, other: &Self) -> Self {
        let label = format!("{} ∘ {}", self.label, other.label);
        match (&self.symbol, &other.symbol) {
            (Symbol::Radial(a), Symbol::Radial(b)) => {
                let (a, b) = (a.clone(), b.clone());
                Self::radial(label, move |r| a(r) * b(r))
            }
            (Symbol::Table { grid, .. }, _) | (_, Symbol::Table { grid, .. }) => {
                // A composition involving a table lives on that table's lattice.
                let grid = *grid;
                let values = (0..grid.len())
                    .map(|k| self.symbol_on(&grid, k) * other.symbol_on(&grid, k))
                    .collect();
                MultiplierSpec {
                    label,
                    symbol: Symbol::Table {
                        grid,
                        values: Arc::new(values),
                    },
                }
            }
            _ => {
                let even_real = self.preserves_realness() && other.preserves_realness();
                let (a, b) = (self.clone(), other.clone());
                Self::general(label, even_real, move |xi| a.symbol_at(xi) * b.symbol_at(xi))
            }
        }
    }

    /// Symbol at a physical frequency; tabulated symbols return NaN here.
    pub fn symbol_at(&self, xi: &[f64; 3]) -> Complex64 {
        match &self.symbol {
            Symbol::Radial(f) => Complex64::new(f(norm3(xi)), 0.0),
            Symbol::General { f, .. } => f(xi),
            Symbol::Table { .. } => Complex64::new(f64::NAN, 0.0),
        }
    }

    /// Symbol at storage index `flat` of `grid`.
    fn symbol_on(&self, grid: &TorusGrid, flat: usize) -> Complex64 {
        match &self.symbol {
            Symbol::Table { grid: own, values } if own.same_lattice(grid) => values[flat],
            Symbol::Table { .. } => Complex64::new(f64::NAN, 0.0),
            _ => self.symbol_at(&grid.frequency(flat)),
        }
    }

    /// Checks the multiplier can act on fields over `grid`.
    pub fn check_lattice(&self, grid: &TorusGrid) -> Result<()> {
        if let Symbol::Table { grid: own, .. } = &self.symbol {
            if !own.same_lattice(grid) {
                return Err(Error::config(format!(
                    "multiplier '{}' is tabulated on a different lattice",
                    self.label
                )));
            }
        }
        Ok(())
    }

    /// Full symbol table on `grid` in FFT order.
    pub fn table(&self, grid: &TorusGrid) -> Result<Vec<Complex64>> {
        self.check_lattice(grid)?;
        Ok((0..grid.len()).map(|k| self.symbol_on(grid, k)).collect())
    }
}

const PARALLEL_APPLY: usize = 1 << 15;

/// `coeff(n) ↦ m(n/period) · coeff(n)`.
pub fn apply_multiplier(f: &SpectralField, m: &MultiplierSpec) -> Result<SpectralField> {
    let grid = *f.grid();
    m.check_lattice(&grid)?;
    let coeffs_in = f.coeffs();
    let map = |k: usize| {
        let c = coeffs_in[k];
        if c == Complex64::default() {
            c
        } else {
            c * m.symbol_on(&grid, k)
        }
    };
    let coeffs: Vec<Complex64> = if grid.len() >= PARALLEL_APPLY {
        (0..grid.len()).into_par_iter().map(map).collect()
    } else {
        (0..grid.len()).map(map).collect()
    };
    let is_real = f.is_real() && m.preserves_realness();
    SpectralField::from_coeffs(grid, coeffs, is_real)
}

/// Tolerance for treating a mean as zero, relative to the largest coefficient.
const MEAN_ZERO_TOL: f64 = 1e-12;

/// `D^s f`. Negative `s` is the Riesz potential and needs mean-zero input.
pub fn fractional_laplacian(f: &SpectralField, s: f64) -> Result<SpectralField> {
    if s < 0.0 {
        let scale = f.max_abs_coeff().max(f64::MIN_POSITIVE);
        if f.mean().norm() > MEAN_ZERO_TOL * scale {
            return Err(Error::domain(
                "Riesz potential undefined at zero frequency: input has nonzero mean",
            ));
        }
    }
    apply_multiplier(f, &MultiplierSpec::fractional_laplacian(s))
}

/// `J^s f`.
pub fn bessel_operator(f: &SpectralField, s: f64) -> Result<SpectralField> {
    apply_multiplier(f, &MultiplierSpec::bessel(s))
}

/// Constant field carrying the mean of `f`.
pub fn project_mean(f: &SpectralField) -> SpectralField {
    let mut coeffs = vec![Complex64::default(); f.grid().len()];
    coeffs[0] = f.mean();
    SpectralField::from_coeffs(*f.grid(), coeffs, f.is_real()).expect("grid length")
}

/// `f - P_0 f`.
pub fn project_nonzero(f: &SpectralField) -> SpectralField {
    let mut coeffs = f.coeffs().to_vec();
    coeffs[0] = Complex64::default();
    SpectralField::from_coeffs(*f.grid(), coeffs, f.is_real()).expect("grid length")
}

/// `Q_j f`.
pub fn lp_project(f: &SpectralField, j: i32) -> Result<SpectralField> {
    if j < 0 {
        return Err(Error::domain(format!("Littlewood–Paley index must be ≥ 0, got {j}")));
    }
    apply_multiplier(f, &MultiplierSpec::littlewood_paley(j as u32))
}

/// `Σ_{j1 ≤ j2-3} Q_{j1} f`.
pub fn lp_low(f: &SpectralField, j2: u32) -> Result<SpectralField> {
    apply_multiplier(f, &MultiplierSpec::lp_low(j2))
}

/// `Σ_{j1 ≥ j2-2} Q_{j1} f`, computed as `f - lp_low(f, j2)`.
pub fn lp_tail(f: &SpectralField, j2: u32) -> Result<SpectralField> {
    f.sub(&lp_low(f, j2)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symbols_at_zero() {
        let z = [0.0; 3];
        assert_eq!(MultiplierSpec::fractional_laplacian(1.3).symbol_at(&z).re, 0.0);
        assert_eq!(MultiplierSpec::bessel(-2.0).symbol_at(&z).re, 1.0);
        assert_eq!(MultiplierSpec::fractional_laplacian(0.0).symbol_at(&z).re, 1.0);
    }

    #[test]
    fn tabulated_lattice_mismatch() {
        let g = TorusGrid::new(1, 8).unwrap();
        let m = MultiplierSpec::tabulated("t", g, vec![Complex64::new(1.0, 0.0); 8]).unwrap();
        let f = SpectralField::zeros(TorusGrid::new(1, 16).unwrap());
        assert!(matches!(apply_multiplier(&f, &m), Err(Error::Config(_))));
    }

    #[test]
    fn riesz_requires_mean_zero() {
        let g = TorusGrid::new(1, 8).unwrap();
        let f = SpectralField::constant(g, 1.0);
        assert!(matches!(fractional_laplacian(&f, -0.5), Err(Error::Domain(_))));
    }
}
