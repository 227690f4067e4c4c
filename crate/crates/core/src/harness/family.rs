use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustfft::num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::spectral::{lp, lp_project, SpectralField, TorusGrid, Wavenumber};

/// Profile of a concentrator bump.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Profile {
    /// `exp(-π|x|²)`; its periodization has closed-form coefficients.
    Gaussian,
    /// The Littlewood–Paley bump `φ(|x|)`, sampled and truncated.
    Bump,
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Profile::Gaussian => "gaussian",
            Profile::Bump => "bump",
        })
    }
}

impl FromStr for Profile {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        match text.trim() {
            "gaussian" => Ok(Profile::Gaussian),
            "bump" => Ok(Profile::Bump),
            other => Err(Error::Parse(format!("unknown profile '{other}'"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum FamilyKind {
    /// `c_n = |n|^{-α} e^{iθ_n}` with uniform random phases.
    RandomDecay { alpha: f64 },
    /// `cos 2π n·x` and `sin 2π n·x` for every lattice half-plane mode in the band.
    SingleModes,
    /// Nonzero constants.
    Constants,
    /// Periodized `λ^{d/p★} h(λ(x - c))` centered near the middle of the box.
    Concentrator { lambda: f64, profile: Profile, p_star: Exponent },
    /// A few random modes in the upper half of the band, so that products of
    /// two members put most of their mass at low frequency.
    ProductResonant,
    /// `Q_j` of a flat random field.
    SingleScale { j: u32 },
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyKind::RandomDecay { alpha } => write!(f, "random:alpha={alpha}"),
            FamilyKind::SingleModes => write!(f, "modes"),
            FamilyKind::Constants => write!(f, "constants"),
            FamilyKind::Concentrator { lambda, profile, p_star } => {
                write!(f, "concentrator:lambda={lambda},profile={profile},pstar={p_star}")
            }
            FamilyKind::ProductResonant => write!(f, "resonant"),
            FamilyKind::SingleScale { j } => write!(f, "scale:j={j}"),
        }
    }
}

/// A seeded, deterministic collection of real test functions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FunctionFamily {
    pub kind: FamilyKind,
    pub bandwidth: usize,
    pub seed: u64,
    pub count: usize,
    pub mean_zero: bool,
}

impl FunctionFamily {
    pub fn new(kind: FamilyKind, bandwidth: usize, seed: u64, count: usize) -> Self {
        FunctionFamily {
            kind,
            bandwidth,
            seed,
            count,
            mean_zero: false,
        }
    }

    pub fn mean_zero(mut self, on: bool) -> Self {
        self.mean_zero = on;
        self
    }

    pub fn with_bandwidth(mut self, bandwidth: usize) -> Self {
        self.bandwidth = bandwidth;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    /// Smallest power-of-two resolution (at least 64) whose Nyquist
    /// frequency is four times the bandwidth.
    pub fn grid_resolution(&self) -> usize {
        (8 * self.bandwidth).next_power_of_two().max(64)
    }

    /// Description of member `index`, used to identify maximizers.
    pub fn describe_member(&self, index: usize) -> String {
        format!("{}#bw={},seed={},i={}", self.kind, self.bandwidth, self.seed, index)
    }
}

impl fmt::Display for FunctionFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{},bandwidth={},seed={},count={},mean_zero={}",
            self.kind, self.bandwidth, self.seed, self.count, self.mean_zero
        )
    }
}

/// Parses `kind[:k=v,...]` where kind is one of `random`, `modes`,
/// `constants`, `concentrator`, `resonant`, `scale`. Shared keys are
/// `bandwidth` (default 16), `seed` (0), `count` (16) and `mean_zero`
/// (false); `random` takes `alpha` (1), `concentrator` takes `lambda` (4),
/// `profile` (gaussian) and `pstar` (2), `scale` takes `j`.
impl FromStr for FunctionFamily {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let (name, rest) = match text.split_once(':') {
            Some((n, r)) => (n.trim(), r),
            None => (text.trim(), ""),
        };
        let mut bandwidth = 16usize;
        let mut seed = 0u64;
        let mut count = 16usize;
        let mut mean_zero = false;
        let mut alpha = 1.0f64;
        let mut lambda = 4.0f64;
        let mut profile = Profile::Gaussian;
        let mut p_star = Exponent::TWO;
        let mut j: Option<u32> = None;
        fn parse<T: FromStr>(key: &str, v: &str) -> Result<T>
        where
            T::Err: fmt::Display,
        {
            v.parse::<T>()
                .map_err(|e| Error::Parse(format!("bad value '{v}' for {key}: {e}")))
        }
        for item in rest.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value in family, got '{item}'")))?;
            let (k, v) = (k.trim(), v.trim());
            match k {
                "bandwidth" => bandwidth = parse(k, v)?,
                "seed" => seed = parse(k, v)?,
                "count" => count = parse(k, v)?,
                "mean_zero" => mean_zero = parse(k, v)?,
                "alpha" if name == "random" => alpha = parse(k, v)?,
                "lambda" if name == "concentrator" => lambda = parse(k, v)?,
                "profile" if name == "concentrator" => profile = parse(k, v)?,
                "pstar" if name == "concentrator" => p_star = parse(k, v)?,
                "j" if name == "scale" => j = Some(parse(k, v)?),
                _ => return Err(Error::Parse(format!("unknown family key '{k}' for '{name}'"))),
            }
        }
        let kind = match name {
            "random" => FamilyKind::RandomDecay { alpha },
            "modes" => FamilyKind::SingleModes,
            "constants" => FamilyKind::Constants,
            "concentrator" => FamilyKind::Concentrator { lambda, profile, p_star },
            "resonant" => FamilyKind::ProductResonant,
            "scale" => FamilyKind::SingleScale {
                j: j.ok_or_else(|| Error::Parse("scale family needs j".into()))?,
            },
            other => return Err(Error::Parse(format!("unknown family kind '{other}'"))),
        };
        Ok(FunctionFamily {
            kind,
            bandwidth,
            seed,
            count,
            mean_zero,
        })
    }
}

fn member_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

/// Lattice points with `0 < |n|_∞ ≤ band` whose first nonzero component is
/// positive, in flat-index order.
fn half_band(grid: &TorusGrid, band: i64) -> Vec<Wavenumber> {
    (0..grid.len())
        .map(|k| grid.wavenumber(k))
        .filter(|w| {
            let inside = w.iter().all(|c| c.abs() <= band);
            let first = w.iter().find(|c| **c != 0);
            inside && matches!(first, Some(c) if *c > 0)
        })
        .collect()
}

fn set_pair(grid: &TorusGrid, coeffs: &mut [Complex64], w: Wavenumber, c: Complex64) {
    let at = |v: Wavenumber| grid.index_of(v).expect("band lies inside the lattice");
    coeffs[at(w)] = c;
    coeffs[at([-w[0], -w[1], -w[2]])] = c.conj();
}

fn radius(w: &Wavenumber) -> f64 {
    ((w[0] * w[0] + w[1] * w[1] + w[2] * w[2]) as f64).sqrt()
}

/// Generates the family on `grid`.
pub fn generate_family(fam: &FunctionFamily, grid: TorusGrid) -> Result<Vec<SpectralField>> {
    let band = fam.bandwidth;
    if band == 0 {
        return Err(Error::config("family bandwidth must be positive"));
    }
    if 4 * band > grid.nyquist() {
        return Err(Error::config(format!(
            "bandwidth {band} exceeds a quarter of the Nyquist frequency {} of the grid",
            grid.nyquist()
        )));
    }
    let band_i = band as i64;
    let mut out = match fam.kind {
        FamilyKind::RandomDecay { alpha } => {
            let modes = half_band(&grid, band_i);
            (0..fam.count)
                .map(|i| {
                    let mut rng = member_rng(fam.seed, i);
                    let mut coeffs = vec![Complex64::default(); grid.len()];
                    coeffs[0] = Complex64::new(if rng.random::<bool>() { 1.0 } else { -1.0 }, 0.0);
                    for w in &modes {
                        let theta = rng.random_range(0.0..2.0 * PI);
                        set_pair(&grid, &mut coeffs, *w, Complex64::from_polar(radius(w).powf(-alpha), theta));
                    }
                    SpectralField::from_coeffs(grid, coeffs, true)
                })
                .collect::<Result<Vec<_>>>()?
        }
        FamilyKind::SingleModes => {
            let mut fields = Vec::new();
            for w in half_band(&grid, band_i) {
                fields.push(SpectralField::cos_mode(grid, w)?);
                fields.push(SpectralField::sin_mode(grid, w)?);
            }
            if fam.count > 0 {
                fields.truncate(fam.count);
            }
            fields
        }
        FamilyKind::Constants => (0..fam.count)
            .map(|i| {
                let mut rng = member_rng(fam.seed, i);
                let v: f64 = rng.random_range(0.5..2.0);
                SpectralField::constant(grid, if rng.random::<bool>() { v } else { -v })
            })
            .collect(),
        FamilyKind::Concentrator { lambda, profile, p_star } => {
            if !(lambda >= 1.0) || lambda > band as f64 / 4.0 {
                return Err(Error::config(format!(
                    "concentrator scale {lambda} must lie in [1, bandwidth/4 = {}]",
                    band as f64 / 4.0
                )));
            }
            (0..fam.count.max(1))
                .map(|i| concentrator(grid, band_i, lambda, profile, p_star, i, fam.count.max(1)))
                .collect::<Result<Vec<_>>>()?
        }
        FamilyKind::ProductResonant => {
            let modes: Vec<Wavenumber> = half_band(&grid, band_i)
                .into_iter()
                .filter(|w| w.iter().map(|c| c.abs()).max().unwrap_or(0) * 2 > band_i)
                .collect();
            (0..fam.count)
                .map(|i| {
                    let mut rng = member_rng(fam.seed, i);
                    let mut coeffs = vec![Complex64::default(); grid.len()];
                    for _ in 0..3.min(modes.len()) {
                        let w = modes[rng.random_range(0..modes.len())];
                        let c = Complex64::from_polar(rng.random_range(0.5..1.0), rng.random_range(0.0..2.0 * PI));
                        set_pair(&grid, &mut coeffs, w, c);
                    }
                    SpectralField::from_coeffs(grid, coeffs, true)
                })
                .collect::<Result<Vec<_>>>()?
        }
        FamilyKind::SingleScale { j } => {
            let reach = lp::BUMP_SUPPORT * (j as f64).exp2();
            let lower = if j == 0 { 0.0 } else { lp::BUMP_FLAT * (j as f64 - 1.0).exp2() };
            if lower >= band as f64 {
                return Err(Error::config(format!(
                    "scale j = {j} lies above the bandwidth {band}"
                )));
            }
            let cap = (reach.ceil() as i64).min(band_i);
            let modes = half_band(&grid, cap);
            (0..fam.count)
                .map(|i| {
                    let mut rng = member_rng(fam.seed, i);
                    let mut coeffs = vec![Complex64::default(); grid.len()];
                    for w in &modes {
                        set_pair(&grid, &mut coeffs, *w, Complex64::from_polar(1.0, rng.random_range(0.0..2.0 * PI)));
                    }
                    lp_project(&SpectralField::from_coeffs(grid, coeffs, true)?, j as i32)
                })
                .collect::<Result<Vec<_>>>()?
        }
    };
    if fam.mean_zero {
        for f in &mut out {
            *f = crate::spectral::project_nonzero(f);
        }
    }
    Ok(out)
}

fn concentrator(
    grid: TorusGrid,
    band: i64,
    lambda: f64,
    profile: Profile,
    p_star: Exponent,
    index: usize,
    count: usize,
) -> Result<SpectralField> {
    let d = grid.dim();
    let period = grid.period();
    let shift = index as f64 / (count as f64 * 2.0 * lambda);
    let center = [0.5 * period + shift, 0.5 * period, 0.5 * period];
    let amplitude = lambda.powf(d as f64 * p_star.recip());
    let raw = match profile {
        Profile::Gaussian => {
            // Coefficients of Σ_k h(λ(x - c + kL)) with h = exp(-π|x|²).
            let vol = period.powi(d as i32);
            let coeffs = (0..grid.len())
                .map(|k| {
                    let w = grid.wavenumber(k);
                    if w[..d].iter().any(|c| c.abs() > band) {
                        return Complex64::default();
                    }
                    let mut phase = 0.0;
                    let mut r2 = 0.0;
                    for a in 0..d {
                        let xi = w[a] as f64 / period;
                        phase -= 2.0 * PI * xi * center[a];
                        r2 += xi * xi;
                    }
                    let mag = amplitude * lambda.powi(-(d as i32)) * (-PI * r2 / (lambda * lambda)).exp() / vol;
                    Complex64::from_polar(mag, phase)
                })
                .collect();
            SpectralField::from_coeffs(grid, coeffs, true)?
        }
        Profile::Bump => {
            let sampled = SpectralField::from_fn(grid, |x| {
                let mut r2 = 0.0;
                for a in 0..d {
                    let mut t = x[a] - center[a];
                    t -= period * (t / period).round();
                    r2 += t * t;
                }
                amplitude * lp::bump(lambda * r2.sqrt())
            });
            let coeffs = sampled
                .coeffs()
                .iter()
                .enumerate()
                .map(|(k, c)| {
                    let w = grid.wavenumber(k);
                    if w[..d].iter().any(|v| v.abs() > band) {
                        Complex64::default()
                    } else {
                        *c
                    }
                })
                .collect();
            SpectralField::from_coeffs(grid, coeffs, true)?
        }
    };
    Ok(raw)
}
