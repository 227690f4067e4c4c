//! Riesz and Bessel convolution kernels on ℝ^d and checks of their decay.

mod bessel;
mod consistency;
mod decay;

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use statrs::function::gamma::gamma;

pub use bessel::{bessel_derivative_kernel_eval, bessel_kernel_eval, bessel_kernel_radial, bessel_kernel_mass};
pub use consistency::{kernel_multiplier_consistency, ConsistencyReport};
pub use decay::{decay_bound_check, BoundKind, DecayFitReport};

use crate::error::{Error, Result};
use crate::quadrature::QuadratureConfig;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KernelKind {
    /// `K_σ`, kernel of `D^{-σ}`.
    Riesz,
    /// `G_σ`, kernel of `J^{-σ}`.
    Bessel,
    /// `𝒦_s`, kernel of `D^s` away from the origin.
    FracLaplacian,
    /// `𝒢_s = (1 - Δ) G_{2-s}`, kernel of `J^s` away from the origin.
    BesselDerivative,
}

impl KernelKind {
    pub fn name(self) -> &'static str {
        match self {
            KernelKind::Riesz => "riesz",
            KernelKind::Bessel => "bessel",
            KernelKind::FracLaplacian => "frac_laplacian",
            KernelKind::BesselDerivative => "bessel_derivative",
        }
    }
}

impl fmt::Display for KernelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for KernelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "riesz" => Ok(KernelKind::Riesz),
            "bessel" => Ok(KernelKind::Bessel),
            "frac_laplacian" => Ok(KernelKind::FracLaplacian),
            "bessel_derivative" => Ok(KernelKind::BesselDerivative),
            other => Err(Error::Parse(format!("unknown kernel kind '{other}'"))),
        }
    }
}

/// A kernel family member: kind, order (`σ` or `s`) and dimension.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KernelSpec {
    kind: KernelKind,
    order: f64,
    dim: usize,
}

impl KernelSpec {
    pub fn new(kind: KernelKind, order: f64, dim: usize) -> Result<Self> {
        if !(1..=3).contains(&dim) {
            return Err(Error::config(format!("kernel dimension must be 1, 2 or 3, got {dim}")));
        }
        let ok = match kind {
            KernelKind::Riesz => order > 0.0 && order < dim as f64,
            KernelKind::Bessel => order > 0.0 && order.is_finite(),
            KernelKind::FracLaplacian | KernelKind::BesselDerivative => order > 0.0 && order < 2.0,
        };
        if !ok {
            return Err(Error::domain(format!(
                "order {order} outside the validity window of the {kind} kernel in dimension {dim}"
            )));
        }
        Ok(KernelSpec { kind, order, dim })
    }

    pub fn kind(&self) -> KernelKind {
        self.kind
    }

    pub fn order(&self) -> f64 {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Value at radius `r = |x| > 0` (all kernels here are radial).
    pub fn eval_radius(&self, r: f64, cfg: &QuadratureConfig) -> Result<f64> {
        if r == 0.0 {
            return Err(Error::Singularity);
        }
        let r = r.abs();
        let d = self.dim;
        Ok(match self.kind {
            KernelKind::Riesz => riesz_constant(d, self.order) * r.powf(self.order - d as f64),
            KernelKind::FracLaplacian => -frac_laplacian_constant(d, self.order) * r.powf(-(d as f64) - self.order),
            KernelKind::Bessel => bessel_kernel_radial(self.order, d, r, cfg)?,
            KernelKind::BesselDerivative => bessel::bessel_derivative_radial(self.order, d, r, cfg)?,
        })
    }

    pub fn eval(&self, x: &[f64], cfg: &QuadratureConfig) -> Result<f64> {
        self.eval_radius(point_radius(x, self.dim)?, cfg)
    }
}

pub(crate) fn point_radius(x: &[f64], dim: usize) -> Result<f64> {
    if x.len() != dim {
        return Err(Error::config(format!(
            "point has {} coordinates, expected {dim}",
            x.len()
        )));
    }
    let r = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if r == 0.0 {
        return Err(Error::Singularity);
    }
    Ok(r)
}

/// `C_{d,σ} = Γ((d-σ)/2) / (π^{d/2} 2^σ Γ(σ/2))`, the constant making
/// `C_{d,σ}|x|^{σ-d}` the inverse transform of `(2π|ξ|)^{-σ}`. Evaluated by
/// analytic continuation outside `0 < σ < d`.
pub fn riesz_constant(dim: usize, sigma: f64) -> f64 {
    let d = dim as f64;
    gamma(0.5 * (d - sigma)) / (PI.powf(0.5 * d) * sigma.exp2() * gamma(0.5 * sigma))
}

/// `c_{d,s} = s 2^{s-1} Γ((d+s)/2) / (π^{d/2} Γ(1 - s/2))`, so that
/// `𝒦_s(x) = -c_{d,s} |x|^{-d-s}` off the origin.
pub fn frac_laplacian_constant(dim: usize, s: f64) -> f64 {
    let d = dim as f64;
    s * (s - 1.0).exp2() * gamma(0.5 * (d + s)) / (PI.powf(0.5 * d) * gamma(1.0 - 0.5 * s))
}

/// `K_σ(x) = C_{d,σ}|x|^{σ-d}` for `0 < σ < d`.
pub fn riesz_kernel_eval(sigma: f64, dim: usize, x: &[f64]) -> Result<f64> {
    KernelSpec::new(KernelKind::Riesz, sigma, dim)?.eval(x, &QuadratureConfig::default())
}

/// `𝒦_s(x)` for `0 < s < 2`, `x ≠ 0`.
pub fn frac_laplacian_kernel_eval(s: f64, dim: usize, x: &[f64]) -> Result<f64> {
    KernelSpec::new(KernelKind::FracLaplacian, s, dim)?.eval(x, &QuadratureConfig::default())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn riesz_constant_half_order_line() {
        let c = riesz_constant(1, 0.5);
        assert!((c - 1.0 / (2.0 * PI).sqrt()).abs() < 1e-14);
    }

    #[test]
    fn frac_laplacian_line_unit_order() {
        let v = frac_laplacian_kernel_eval(1.0, 1, &[2.0]).unwrap();
        assert!((v + 1.0 / (4.0 * PI)).abs() < 1e-15);
    }

    #[test]
    fn validity_windows() {
        assert!(KernelSpec::new(KernelKind::Riesz, 1.0, 1).is_err());
        assert!(KernelSpec::new(KernelKind::FracLaplacian, 2.0, 3).is_err());
        assert!(matches!(riesz_kernel_eval(0.5, 1, &[0.0]), Err(Error::Singularity)));
    }
}
