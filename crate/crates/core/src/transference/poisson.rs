use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Test functions for the Poisson summation check.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PoissonProfile {
    /// `e^{-π|x|²}` in dimension `dim`; its own transform.
    Gaussian { dim: usize },
    /// `G_2(x) = e^{-|x|}/2` on the line, transform `1/(1 + 4π²ξ²)`.
    BesselTwo,
}

impl PoissonProfile {
    pub fn dim(&self) -> usize {
        match self {
            PoissonProfile::Gaussian { dim } => *dim,
            PoissonProfile::BesselTwo => 1,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            PoissonProfile::Gaussian { .. } => "gaussian",
            PoissonProfile::BesselTwo => "bessel2",
        }
    }

    fn spatial(&self, x: &[f64]) -> f64 {
        let r2: f64 = x.iter().map(|v| v * v).sum();
        match self {
            PoissonProfile::Gaussian { .. } => (-PI * r2).exp(),
            PoissonProfile::BesselTwo => 0.5 * (-r2.sqrt()).exp(),
        }
    }

    fn transform(&self, xi: &[f64]) -> f64 {
        let r2: f64 = xi.iter().map(|v| v * v).sum();
        match self {
            PoissonProfile::Gaussian { .. } => (-PI * r2).exp(),
            PoissonProfile::BesselTwo => 1.0 / (1.0 + 4.0 * PI * PI * r2),
        }
    }
}

impl fmt::Display for PoissonProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PoissonProfile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "gaussian" => Ok(PoissonProfile::Gaussian { dim: 1 }),
            "bessel2" | "bessel" => Ok(PoissonProfile::BesselTwo),
            other => Err(Error::Parse(format!("unknown Poisson profile '{other}'"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PoissonReport {
    pub profile: PoissonProfile,
    pub radius: usize,
    /// Max over test points of `|Fourier side - spatial side|`, after the
    /// Fourier tail correction where one is available.
    pub max_residual: f64,
    /// Same without any tail correction.
    pub raw_residual: f64,
    /// Residual at each test point, in input order.
    pub residuals: Vec<f64>,
    /// Bound on the omitted spatial terms `Σ_{|n|>R} |h(x+n)|`.
    pub spatial_tail: f64,
    /// Size of the omitted Fourier terms before correction.
    pub fourier_tail: f64,
}

fn lattice_points(dim: usize, radius: usize) -> Vec<[i64; 3]> {
    let r = radius as i64;
    let mut out = Vec::new();
    let range = |active: bool| if active { -r..=r } else { 0..=0 };
    for a in range(true) {
        for b in range(dim >= 2) {
            for c in range(dim >= 3) {
                if a * a + b * b + c * c <= r * r {
                    out.push([a, b, c]);
                }
            }
        }
    }
    out
}

/// Bernoulli polynomials `B_2, B_4, B_6`.
fn bernoulli_even(k: usize, x: f64) -> f64 {
    match k {
        1 => x * x - x + 1.0 / 6.0,
        2 => x.powi(4) - 2.0 * x.powi(3) + x * x - 1.0 / 30.0,
        3 => x.powi(6) - 3.0 * x.powi(5) + 2.5 * x.powi(4) - 0.5 * x * x + 1.0 / 42.0,
        _ => unreachable!("only B_2, B_4, B_6 are tabulated"),
    }
}

/// `Σ_{n≠0} |n|^{-2k} e^{2πinx} = (-1)^{k+1} (2π)^{2k} B_{2k}({x}) / (2k)!`.
fn even_zeta_series(k: usize, x: f64) -> f64 {
    let frac = x.rem_euclid(1.0);
    let fact: f64 = (1..=2 * k).map(|v| v as f64).product();
    let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
    sign * (2.0 * PI).powi(2 * k as i32) * bernoulli_even(k, frac) / fact
}

/// Compares `Σ_{|n|≤R} ĥ(n) e^{2πin·x}` with `Σ_{|n|≤R} h(x+n)` at each point.
///
/// For `G_2` the Fourier side decays only like `|n|^{-2}`, so the omitted
/// terms are restored from the expansion `ĥ(ξ) = Σ_k (-1)^{k+1}(4π²ξ²)^{-k}`
/// summed in closed form (three terms).
pub fn poisson_check(profile: PoissonProfile, radius: usize, points: &[Vec<f64>]) -> Result<PoissonReport> {
    let dim = profile.dim();
    if !(1..=3).contains(&dim) {
        return Err(Error::config(format!("dimension must be 1, 2 or 3, got {dim}")));
    }
    if radius == 0 {
        return Err(Error::config("truncation radius must be positive"));
    }
    if points.is_empty() {
        return Err(Error::config("no test points given"));
    }
    for p in points {
        if p.len() != dim {
            return Err(Error::config(format!("test point {p:?} is not {dim}-dimensional")));
        }
    }
    let lattice = lattice_points(dim, radius);
    let mut residuals = Vec::with_capacity(points.len());
    let mut raw_max = 0.0f64;
    for x in points {
        let mut spatial = 0.0;
        let mut fourier = 0.0;
        for n in &lattice {
            let shifted: Vec<f64> = (0..dim).map(|a| x[a] + n[a] as f64).collect();
            spatial += profile.spatial(&shifted);
            let xi: Vec<f64> = (0..dim).map(|a| n[a] as f64).collect();
            let phase = 2.0 * PI * (0..dim).map(|a| n[a] as f64 * x[a]).sum::<f64>();
            fourier += profile.transform(&xi) * phase.cos();
        }
        raw_max = raw_max.max((fourier - spatial).abs());
        if let PoissonProfile::BesselTwo = profile {
            for k in 1..=3usize {
                let a_k = if k % 2 == 1 { 1.0 } else { -1.0 } / (4.0 * PI * PI).powi(k as i32);
                let partial: f64 = (1..=radius)
                    .map(|n| 2.0 * (n as f64).powi(-2 * k as i32) * (2.0 * PI * n as f64 * x[0]).cos())
                    .sum();
                fourier += a_k * (even_zeta_series(k, x[0]) - partial);
            }
        }
        residuals.push((fourier - spatial).abs());
    }
    let r = radius as f64;
    let (spatial_tail, fourier_tail) = match profile {
        PoissonProfile::Gaussian { dim } => {
            let t = (-PI * (r - 0.5).powi(2)).exp() * 4f64.powi(dim as i32);
            (t, t)
        }
        PoissonProfile::BesselTwo => {
            let spatial = 2.0 * (-(r - 1.0)).exp() / (1.0 - (-1f64).exp());
            let fourier = 2.0 / (4.0 * PI * PI * r);
            (spatial, fourier)
        }
    };
    Ok(PoissonReport {
        profile,
        radius,
        max_residual: residuals.iter().copied().fold(0.0, f64::max),
        raw_residual: raw_max,
        residuals,
        spatial_tail,
        fourier_tail,
    })
}
