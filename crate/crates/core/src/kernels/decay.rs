use std::fmt;

use super::{KernelKind, KernelSpec};
use crate::error::{Error, Result};
use crate::quadrature::QuadratureConfig;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum BoundKind {
    /// `|x|^{exponent}`.
    Power { exponent: f64 },
    /// `e^{-|x|/2}`.
    Exponential,
}

impl BoundKind {
    pub fn eval(&self, r: f64) -> f64 {
        match *self {
            BoundKind::Power { exponent } => r.powf(exponent),
            BoundKind::Exponential => (-0.5 * r).exp(),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            BoundKind::Power { .. } => "power",
            BoundKind::Exponential => "exponential",
        }
    }
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundKind::Power { exponent } => write!(f, "power(|x|^{exponent})"),
            BoundKind::Exponential => write!(f, "exponential(e^(-|x|/2))"),
        }
    }
}

/// Outcome of fitting `|kernel(x)| ≤ C·bound(x)` over sampled radii.
#[derive(Clone, Debug, PartialEq)]
pub struct DecayFitReport {
    pub spec: KernelSpec,
    pub c0: f64,
    pub bound: BoundKind,
    /// `max |kernel|/bound` over the samples.
    pub fitted_constant: f64,
    pub max_ratio_location: f64,
    pub sample_range: (f64, f64),
    /// `(|x|, |kernel|/bound)` sorted by radius.
    pub profile: Vec<(f64, f64)>,
    /// Set when the ratio increases monotonically across the outer half.
    pub violation: bool,
}

/// Relative increase per step that counts as growth in the violation test.
const GROWTH_TOL: f64 = 1e-9;

impl DecayFitReport {
    pub const CSV_HEADER: &'static str = "kind,sigma_or_s,dim,c0,bound_kind,fitted_constant,max_ratio_location";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{:.12e},{}",
            self.spec.kind(),
            self.spec.order(),
            self.spec.dim(),
            self.c0,
            self.bound.name(),
            self.fitted_constant,
            self.max_ratio_location
        )
    }

    /// Whether the ratio never increases (up to rounding) along the profile.
    pub fn is_non_increasing(&self) -> bool {
        self.profile
            .windows(2)
            .all(|w| w[1].1 <= w[0].1 * (1.0 + GROWTH_TOL))
    }

    /// Running maximum of the ratio as the sample range extends outward.
    pub fn running_fit(&self) -> Vec<(f64, f64)> {
        let mut best = 0.0f64;
        self.profile
            .iter()
            .map(|&(r, v)| {
                best = best.max(v);
                (r, best)
            })
            .collect()
    }
}

/// Power-law exponent each kernel is measured against.
fn power_exponent(spec: &KernelSpec) -> f64 {
    let d = spec.dim() as f64;
    match spec.kind() {
        KernelKind::Riesz | KernelKind::Bessel => spec.order() - d,
        KernelKind::FracLaplacian | KernelKind::BesselDerivative => -d - spec.order(),
    }
}

/// Fits the decay constants of `spec` on the sampled radii. Every kernel is
/// tested against its power law; the Bessel-type kernels also against
/// `e^{-|x|/2}`.
pub fn decay_bound_check(
    spec: &KernelSpec,
    c0: f64,
    samples: &[f64],
    cfg: &QuadratureConfig,
) -> Result<Vec<DecayFitReport>> {
    if !(c0 > 0.0) {
        return Err(Error::config(format!("inner cutoff c0 must be positive, got {c0}")));
    }
    if samples.is_empty() {
        return Err(Error::config("no sample radii given"));
    }
    if let Some(bad) = samples.iter().find(|&&r| !(r >= c0)) {
        return Err(Error::config(format!("sample radius {bad} lies inside c0 = {c0}")));
    }
    let mut radii = samples.to_vec();
    radii.sort_by(f64::total_cmp);
    let values = radii
        .iter()
        .map(|&r| spec.eval_radius(r, cfg).map(f64::abs))
        .collect::<Result<Vec<f64>>>()?;

    let mut bounds = vec![BoundKind::Power {
        exponent: power_exponent(spec),
    }];
    if matches!(spec.kind(), KernelKind::Bessel | KernelKind::BesselDerivative) {
        bounds.push(BoundKind::Exponential);
    }
    Ok(bounds
        .into_iter()
        .map(|bound| {
            let profile: Vec<(f64, f64)> = radii
                .iter()
                .zip(&values)
                .map(|(&r, &v)| (r, v / bound.eval(r)))
                .collect();
            let (max_ratio_location, fitted_constant) = profile
                .iter()
                .copied()
                .fold((radii[0], f64::NEG_INFINITY), |acc, p| if p.1 > acc.1 { p } else { acc });
            let outer = &profile[profile.len() / 2..];
            let violation = outer.len() >= 2
                && outer
                    .windows(2)
                    .all(|w| w[1].1 > w[0].1 * (1.0 + GROWTH_TOL));
            DecayFitReport {
                spec: *spec,
                c0,
                bound,
                fitted_constant,
                max_ratio_location,
                sample_range: (radii[0], radii[radii.len() - 1]),
                profile,
                violation,
            }
        })
        .collect())
}
