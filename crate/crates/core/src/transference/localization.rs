use std::fmt;

use super::cutoffs::CutoffFamily;
use super::embed::{check_base, embed_with, localize};
use super::identity::{big_derivative, require_mean_zero, zeta_tail};
use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::kernels::frac_laplacian_constant;
use crate::quadrature::{integrate, QuadratureConfig};
use crate::spectral::{fractional_laplacian, lebesgue_norm, SpectralField};

/// Which localized function the ratio measures.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LocalizationTarget {
    /// `‖D^s_ℝ(ψ1 F)‖_p / ‖D^s_T f‖_p`.
    PsiTimesPeriodic,
    /// `‖D^s_ℝ G_j‖_p / ‖D^s_T g‖_p`.
    Piece(usize),
}

impl fmt::Display for LocalizationTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LocalizationTarget::PsiTimesPeriodic => write!(f, "psi1_F"),
            LocalizationTarget::Piece(j) => write!(f, "G{j}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LocalizationReport {
    pub target: LocalizationTarget,
    pub s: f64,
    pub p: Exponent,
    pub period: usize,
    pub numerator: f64,
    pub denominator: f64,
    /// `numerator / denominator`, or 0 for the zero input.
    pub ratio: f64,
}

fn check_exponent(p: Exponent) -> Result<()> {
    if p.recip() > 1.0 + 1e-12 {
        return Err(Error::domain(format!("localization bound needs p ≥ 1, got {p}")));
    }
    Ok(())
}

/// Ratio between the `L^p(ℝ)` norm of the localized derivative (big-torus
/// approximation, whole box) and `‖D^s_T f‖_{L^p(T)}`.
pub fn localization_bound_check(
    f: &SpectralField,
    cuts: &CutoffFamily,
    s: f64,
    p: Exponent,
    period: usize,
    target: LocalizationTarget,
) -> Result<LocalizationReport> {
    check_base(f, "input")?;
    check_exponent(p)?;
    if !(s > 0.0) {
        return Err(Error::domain(format!("order s must be positive, got {s}")));
    }
    require_mean_zero(f, "input")?;
    let localized = match target {
        LocalizationTarget::PsiTimesPeriodic => embed_with(f, period, |x| cuts.psi(1, x))?,
        LocalizationTarget::Piece(j) if j == 1 || j == 2 => localize(f, cuts, j, period)?,
        LocalizationTarget::Piece(j) => {
            return Err(Error::config(format!("localized piece index must be 1 or 2, got {j}")))
        }
    };
    let numerator = lebesgue_norm(&big_derivative(&localized, s)?.field, p)?;
    let denominator = lebesgue_norm(&fractional_laplacian(f, s)?, p)?;
    let ratio = if denominator == 0.0 {
        if numerator == 0.0 {
            0.0
        } else {
            return Err(Error::numeric(
                "localized norm is positive while the torus norm vanishes",
                numerator,
            ));
        }
    } else {
        numerator / denominator
    };
    Ok(LocalizationReport {
        target,
        s,
        p,
        period,
        numerator,
        denominator,
        ratio,
    })
}

/// One evaluation point of [`kernel_split_check`].
#[derive(Clone, Debug, PartialEq)]
pub struct KernelSplitPoint {
    pub x: f64,
    /// `true` for points in `[0, 1)`, where the kernel integral is singular.
    pub inner: bool,
    pub kernel_value: f64,
    pub spectral_value: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct KernelSplitReport {
    pub s: f64,
    pub period: usize,
    pub points: Vec<KernelSplitPoint>,
    /// `max |kernel - spectral| / max |spectral|`.
    pub max_rel_error: f64,
}

/// Evaluates `D^s_ℝ(ψ1 F)` at sample points both from the kernel `𝒦_s`
/// (second-difference form on `[0, 1)`, plain integral elsewhere) and from the
/// big-torus multiplier, whose periodic images are removed with the same
/// kernel. `points` are base-grid offsets `(index, shift)` so the spectral
/// value is read off without interpolation.
pub fn kernel_split_check(
    f: &SpectralField,
    cuts: &CutoffFamily,
    s: f64,
    period: usize,
    points: &[(usize, i64)],
    cfg: &QuadratureConfig,
) -> Result<KernelSplitReport> {
    check_base(f, "f")?;
    if !(s > 0.0 && s < 2.0) {
        return Err(Error::domain(format!("kernel route needs 0 < s < 2, got {s}")));
    }
    let n = f.grid().n_per_axis();
    let embedded = embed_with(f, period, |x| cuts.psi(1, x))?;
    let spectral = big_derivative(&embedded, s)?;
    let c = frac_laplacian_constant(1, s);
    let h = |y: f64| {
        let w = cuts.psi(1, y);
        if w == 0.0 {
            0.0
        } else {
            w * f.evaluate_at([y, 0.0, 0.0]).re
        }
    };
    let (lo, hi) = (0.1, 0.9);
    let l = period as f64;
    // Σ_{m≠0} |t + mL|^{-1-s} for |t| < L/2.
    let image_weight = |t: f64| {
        let a = 1.0 + s;
        let mut acc = 0.0;
        for m in 1..=200i64 {
            let mf = m as f64 * l;
            acc += (mf + t).abs().powf(-a) + (mf - t).abs().powf(-a);
        }
        acc + l.powf(-a) * 2.0 * zeta_tail(201, a)
    };
    let mut out = Vec::with_capacity(points.len());
    let mut worst = 0.0f64;
    let mut scale = 0.0f64;
    for &(index, shift) in points {
        if index >= n {
            return Err(Error::config(format!("base index {index} outside the grid")));
        }
        let x = index as f64 / n as f64 + shift as f64;
        let inner = (0.0..1.0).contains(&x);
        let direct = if inner {
            let hx = h(x);
            let near = integrate(
                |z: f64| (2.0 * hx - h(x + z) - h(x - z)) * z.powf(-1.0 - s),
                0.0,
                1.0,
                cfg,
            )?;
            // Beyond |z| = 1 both translates leave the support of ψ1.
            c * (near.value + 2.0 * hx / s)
        } else {
            let v = integrate(|y: f64| h(y) * (x - y).abs().powf(-1.0 - s), lo, hi, cfg)?;
            -c * v.value
        };
        let images = integrate(|y: f64| h(y) * image_weight(x - y), lo, hi, cfg)?;
        let kernel_value = direct - c * images.value;
        let spectral_value = spectral.field.samples()[spectral.index(index, shift)].re;
        worst = worst.max((kernel_value - spectral_value).abs());
        scale = scale.max(spectral_value.abs());
        out.push(KernelSplitPoint {
            x,
            inner,
            kernel_value,
            spectral_value,
        });
    }
    Ok(KernelSplitReport {
        s,
        period,
        points: out,
        max_rel_error: if scale > 0.0 { worst / scale } else { worst },
    })
}
