use std::fmt;

use super::cutoffs::CutoffFamily;
use super::embed::{check_base, embedded_product, periodize_and_localize, EmbeddedField};
use crate::error::{Error, Result};
use crate::spectral::{
    apply_multiplier, fractional_laplacian, pointwise_product, project_mean, project_nonzero, MultiplierSpec,
    SpectralField,
};

/// Default embedding period.
pub const DEFAULT_PERIOD: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    /// The lattice tail alone exceeds the requested tolerance.
    Inconclusive,
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TransferenceReport {
    pub s: f64,
    pub period: usize,
    pub lattice_cutoff: usize,
    /// `max_x |LHS - RHS| / max_x |LHS|` (absolute when the LHS vanishes).
    pub max_error: f64,
    /// Mean over grid points of `|LHS - RHS| / max |LHS|`.
    pub mean_error: f64,
    pub max_abs_error: f64,
    pub lhs_scale: f64,
    /// `Σ_{|k|>K} |k|^{-1-s}`.
    pub tail_bound: f64,
    pub tolerance: f64,
    pub status: CheckStatus,
}

impl TransferenceReport {
    pub const CSV_HEADER: &'static str = "identity,s,p,L,K,seed,max_error,tail_bound,status";

    pub fn csv_row(&self, seed: Option<u64>) -> String {
        format!(
            "transference,{},,{},{},{},{:.12e},{:.12e},{}",
            self.s,
            self.period,
            self.lattice_cutoff,
            seed.map(|v| v.to_string()).unwrap_or_default(),
            self.max_error,
            self.tail_bound,
            self.status
        )
    }
}

/// `Σ_{k ≥ start} k^{-a}` by direct summation plus an Euler–Maclaurin tail.
pub(crate) fn zeta_tail(start: usize, a: f64) -> f64 {
    const DIRECT: usize = 2000;
    let m = start.max(1) + DIRECT;
    let head: f64 = (start.max(1)..m).map(|k| (k as f64).powf(-a)).sum();
    let mf = m as f64;
    head + mf.powf(1.0 - a) / (a - 1.0) + 0.5 * mf.powf(-a) + a * mf.powf(-a - 1.0) / 12.0
}

/// Lattice tail `Σ_{k ∈ ℤ, |k| > K} |k|^{-1-s}` on the line.
pub fn lattice_tail_bound(cutoff: usize, s: f64) -> f64 {
    2.0 * zeta_tail(cutoff + 1, 1.0 + s)
}

/// `Σ |k|^{-1-s}` over integers `k` whose residue mod `L` lies outside
/// `[-K, K]`, i.e. the image shifts missed by a `|k| ≤ K` sum on the
/// period-`L` torus.
pub fn missing_image_weight(cutoff: usize, period: usize, s: f64) -> f64 {
    let a = 1.0 + s;
    let l = period as i64;
    let k = cutoff as i64;
    let missing = |v: i64| {
        let r = v.rem_euclid(l);
        r > k && r < l - k
    };
    const SPAN: i64 = 200_000;
    let mut total = 0.0;
    for v in 1..=SPAN {
        if missing(v) {
            total += 2.0 * (v as f64).powf(-a);
        }
    }
    let fraction = (l - 2 * k - 1).max(0) as f64 / l as f64;
    total + 2.0 * fraction * (SPAN as f64).powf(1.0 - a) / (a - 1.0)
}

fn mean_zero_scale(f: &SpectralField) -> f64 {
    f.max_abs_coeff().max(f64::MIN_POSITIVE)
}

pub(crate) fn require_mean_zero(f: &SpectralField, what: &str) -> Result<()> {
    if f.mean().norm() > 1e-12 * mean_zero_scale(f) {
        return Err(Error::domain(format!("{what} must have zero mean")));
    }
    Ok(())
}

/// `D^s` on the period-`L` torus, the stand-in for `D^s_ℝ`.
pub(crate) fn big_derivative(h: &EmbeddedField, s: f64) -> Result<EmbeddedField> {
    Ok(EmbeddedField {
        base_grid: h.base_grid,
        field: apply_multiplier(&h.field, &MultiplierSpec::fractional_laplacian(s))?,
    })
}

/// Compares `D^s(fg)` on the torus with `Σ_j Σ_{|k|≤K} D^s_ℝ(F G_j)(x + k)`
/// at every base grid point.
pub fn transference_identity_check(
    f: &SpectralField,
    g: &SpectralField,
    cuts: &CutoffFamily,
    period: usize,
    s: f64,
    lattice_cutoff: usize,
    tolerance: f64,
) -> Result<TransferenceReport> {
    check_base(f, "f")?;
    check_base(g, "g")?;
    if !(s > 0.0) {
        return Err(Error::domain(format!("order s must be positive, got {s}")));
    }
    if 2 * lattice_cutoff + 1 > period {
        return Err(Error::config(format!(
            "lattice cutoff {lattice_cutoff} needs a period of at least {}",
            2 * lattice_cutoff + 1
        )));
    }
    require_mean_zero(f, "f")?;
    require_mean_zero(g, "g")?;
    let n = f.grid().n_per_axis();
    let lhs = fractional_laplacian(&pointwise_product(f, g)?, s)?.resample(n)?;
    let lhs_values = lhs.real_samples();

    let parts = periodize_and_localize(f, g, cuts, period)?;
    let pieces = [
        big_derivative(&embedded_product(&parts.f_periodic, &parts.g1)?, s)?,
        big_derivative(&embedded_product(&parts.f_periodic, &parts.g2)?, s)?,
    ];
    let k = lattice_cutoff as i64;
    let mut max_abs_error = 0.0f64;
    let mut sum_error = 0.0f64;
    for (i, lhs_i) in lhs_values.iter().enumerate() {
        let mut rhs = 0.0;
        for piece in &pieces {
            let samples = piece.field.samples();
            for shift in -k..=k {
                rhs += samples[piece.index(i, shift)].re;
            }
        }
        let e = (lhs_i - rhs).abs();
        max_abs_error = max_abs_error.max(e);
        sum_error += e;
    }
    let lhs_scale = lhs_values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let norm = if lhs_scale > 0.0 { lhs_scale } else { 1.0 };
    let max_error = max_abs_error / norm;
    let tail_bound = lattice_tail_bound(lattice_cutoff, s);
    let status = if tail_bound > tolerance {
        CheckStatus::Inconclusive
    } else if max_error <= tolerance {
        CheckStatus::Pass
    } else {
        CheckStatus::Fail
    };
    Ok(TransferenceReport {
        s,
        period,
        lattice_cutoff,
        max_error,
        mean_error: sum_error / (lhs_values.len() as f64 * norm),
        max_abs_error,
        lhs_scale,
        tail_bound,
        tolerance,
        status,
    })
}

/// Max over `|n| ≤ n_max` of `|ℱ_T(fg)(n) - Σ_j ℱ_ℝ(F G_j)(n)|`, the
/// Euclidean transforms read off the big-grid coefficients.
pub fn fourier_agreement_check(
    f: &SpectralField,
    g: &SpectralField,
    cuts: &CutoffFamily,
    period: usize,
    n_max: usize,
) -> Result<f64> {
    let parts = periodize_and_localize(f, g, cuts, period)?;
    let h1 = embedded_product(&parts.f_periodic, &parts.g1)?;
    let h2 = embedded_product(&parts.f_periodic, &parts.g2)?;
    let torus = pointwise_product(f, g)?;
    let l = period as i64;
    let mut worst = 0.0f64;
    for n in -(n_max as i64)..=(n_max as i64) {
        let w = [n * l, 0, 0];
        let euclid = (h1.field.coeff(w) + h2.field.coeff(w)) * period as f64;
        worst = worst.max((euclid - torus.coeff([n, 0, 0])).norm());
    }
    Ok(worst)
}

/// Max pointwise gap between `D^s(fg)` and its mean-zero reduction
/// `D^s(f₀g₀) + ⟨f⟩ D^s g₀ + ⟨g⟩ D^s f₀`, with `f₀ = P_{≠0} f`.
pub fn mean_zero_split_check(f: &SpectralField, g: &SpectralField, s: f64) -> Result<f64> {
    let direct = fractional_laplacian(&pointwise_product(f, g)?, s)?;
    let f0 = project_nonzero(f);
    let g0 = project_nonzero(g);
    let a = project_mean(f).mean().re;
    let b = project_mean(g).mean().re;
    let core = fractional_laplacian(&pointwise_product(&f0, &g0)?, s)?;
    let split = core
        .add(&fractional_laplacian(&g0, s)?.scale(a))?
        .add(&fractional_laplacian(&f0, s)?.scale(b))?;
    direct.max_abs_diff(&split)
}
