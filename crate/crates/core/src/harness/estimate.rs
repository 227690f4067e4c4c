use std::fmt;

use rayon::prelude::*;

use super::conditions::{check_leibniz_conditions, check_product_conditions, ConditionCase, ExponentTuple, Manifold, ProductTuple, Verdict};
use super::family::{generate_family, FamilyKind, FunctionFamily, Profile};
use super::ratio::{leibniz_ratio, product_ratio, Operator, RatioValue};
use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::spectral::{SpectralField, TorusGrid};

/// Period of the box that stands in for the whole space.
pub const EUCLIDEAN_PERIOD: f64 = 16.0;

/// Bandwidths of the default plateau curve.
pub const DEFAULT_BANDWIDTHS: [usize; 4] = [8, 16, 32, 64];

/// The inequality whose constant is estimated.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Target {
    Leibniz { tuple: ExponentTuple, op: Operator },
    Product { tuple: ProductTuple, manifold: Manifold },
}

impl Target {
    pub fn conditions(&self) -> ConditionCase {
        match self {
            Target::Leibniz { tuple, .. } => check_leibniz_conditions(tuple),
            Target::Product { tuple, manifold } => check_product_conditions(tuple, *manifold),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Target::Leibniz { tuple, .. } => tuple.dim,
            Target::Product { tuple, .. } => tuple.dim,
        }
    }

    pub fn ratio(&self, f: &SpectralField, g: &SpectralField) -> Result<RatioValue> {
        match self {
            Target::Leibniz { tuple, op } => leibniz_ratio(f, g, tuple, *op),
            Target::Product { tuple, .. } => product_ratio(f, g, tuple),
        }
    }

    fn period(&self) -> f64 {
        match self {
            Target::Product { manifold: Manifold::Euclidean, .. } => EUCLIDEAN_PERIOD,
            _ => 1.0,
        }
    }

    /// Grid used for families of the given bandwidth.
    pub fn grid_for(&self, bandwidth: usize) -> Result<TorusGrid> {
        let n = FunctionFamily::new(FamilyKind::SingleModes, bandwidth, 0, 0).grid_resolution();
        TorusGrid::with_period(self.dim(), n, self.period())
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Leibniz { tuple, op } => write!(f, "leibniz[{op}^s] {tuple}"),
            Target::Product { tuple, manifold } => write!(f, "product[{manifold}] {tuple}"),
        }
    }
}

/// Ratio of one evaluated pair.
#[derive(Clone, Debug, PartialEq)]
pub struct PairRatio {
    pub bandwidth: usize,
    pub f: String,
    pub g: String,
    pub seed: u64,
    pub value: RatioValue,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConstantEstimate {
    pub target: Target,
    pub verdict: Verdict,
    /// Maximum ratio over every evaluated pair.
    pub best_ratio: f64,
    pub argmax: String,
    pub argmax_seed: u64,
    /// `(bandwidth, running maximum over all bandwidths up to this one)`.
    pub bandwidth_curve: Vec<(usize, f64)>,
    /// `(bandwidth, maximum at this bandwidth alone)`.
    pub per_bandwidth: Vec<(usize, f64)>,
    pub pairs: Vec<PairRatio>,
    pub degenerate_pairs: usize,
}

impl ConstantEstimate {
    pub const CSV_HEADER: &'static str = "target,bandwidth,f,g,seed,ratio,degenerate";

    /// `max / min` of the running-maximum curve.
    pub fn curve_spread(&self) -> f64 {
        let first = self.bandwidth_curve.first().map(|v| v.1).unwrap_or(0.0);
        let last = self.bandwidth_curve.last().map(|v| v.1).unwrap_or(0.0);
        if first > 0.0 {
            last / first
        } else if last == 0.0 {
            1.0
        } else {
            f64::INFINITY
        }
    }

    pub fn csv_rows(&self) -> Vec<String> {
        self.pairs
            .iter()
            .map(|p| {
                format!(
                    "\"{}\",{},{},{},{},{:.12e},{}",
                    self.target, p.bandwidth, p.f, p.g, p.seed, p.value.ratio, p.value.degenerate
                )
            })
            .collect()
    }
}

/// `(f label, g label, seed, f, g)`.
type LabelledPair = (String, String, u64, SpectralField, SpectralField);

/// Pairs `(f, g)` for every ordered pair of families `(A, B)`: members of `A`
/// are zipped with members of `B` drawn with seed `seed + 1`.
fn build_pairs(
    families: &[FunctionFamily],
    bandwidth: usize,
    grid: TorusGrid,
) -> Result<Vec<LabelledPair>> {
    let mut lefts = Vec::with_capacity(families.len());
    let mut rights = Vec::with_capacity(families.len());
    for fam in families {
        let left = fam.with_bandwidth(bandwidth);
        let right = left.with_seed(fam.seed.wrapping_add(1));
        lefts.push((left, generate_family(&left, grid)?));
        rights.push((right, generate_family(&right, grid)?));
    }
    let mut pairs = Vec::new();
    for (fa, fs) in &lefts {
        for (gb, gs) in &rights {
            for (i, (f, g)) in fs.iter().zip(gs.iter()).enumerate() {
                pairs.push((fa.describe_member(i), gb.describe_member(i), fa.seed, f.clone(), g.clone()));
            }
        }
    }
    Ok(pairs)
}

fn evaluate(target: &Target, families: &[FunctionFamily], bandwidths: &[usize]) -> Result<ConstantEstimate> {
    if families.is_empty() {
        return Err(Error::config("at least one family is required"));
    }
    if bandwidths.is_empty() {
        return Err(Error::config("at least one bandwidth is required"));
    }
    let mut pairs_out = Vec::new();
    let mut per_bandwidth = Vec::new();
    let mut curve = Vec::new();
    let mut best = 0.0f64;
    let mut argmax = String::new();
    let mut argmax_seed = 0;
    let mut degenerate = 0;
    for &bw in bandwidths {
        let grid = target.grid_for(bw)?;
        let pairs = build_pairs(families, bw, grid)?;
        let values: Vec<RatioValue> = pairs
            .par_iter()
            .map(|(_, _, _, f, g)| target.ratio(f, g))
            .collect::<Result<_>>()?;
        let mut local = 0.0f64;
        for ((fd, gd, seed, _, _), v) in pairs.into_iter().zip(values) {
            if v.degenerate {
                degenerate += 1;
            }
            local = local.max(v.ratio);
            if v.ratio > best {
                best = v.ratio;
                argmax = format!("f={fd} g={gd}");
                argmax_seed = seed;
            }
            pairs_out.push(PairRatio {
                bandwidth: bw,
                f: fd,
                g: gd,
                seed,
                value: v,
            });
        }
        per_bandwidth.push((bw, local));
        curve.push((bw, best));
    }
    Ok(ConstantEstimate {
        target: *target,
        verdict: target.conditions().verdict,
        best_ratio: best,
        argmax,
        argmax_seed,
        bandwidth_curve: curve,
        per_bandwidth,
        pairs: pairs_out,
        degenerate_pairs: degenerate,
    })
}

/// Largest ratio over all pairs drawn from `families` at each bandwidth,
/// with the running-maximum curve for plateau assessment. The target's
/// exponent conditions must be accepted.
pub fn estimate_constant(target: &Target, families: &[FunctionFamily], bandwidths: &[usize]) -> Result<ConstantEstimate> {
    let case = target.conditions();
    if !case.verdict.is_accepted() {
        let violated: Vec<String> = case.violated().map(|c| c.name.to_string()).collect();
        return Err(Error::domain(format!(
            "{target} is rejected by its exponent conditions ({})",
            violated.join(", ")
        )));
    }
    evaluate(target, families, bandwidths)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SharpnessConfig {
    pub lambdas: Vec<f64>,
    pub profile: Profile,
    pub count: usize,
    pub op: Operator,
}

impl Default for SharpnessConfig {
    fn default() -> Self {
        SharpnessConfig {
            lambdas: vec![8.0, 16.0, 32.0, 64.0],
            profile: Profile::Gaussian,
            count: 1,
            op: Operator::Homogeneous,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SharpnessRow {
    pub s: f64,
    pub verdict: Verdict,
    /// `(λ, best ratio over concentrators at scale λ)`.
    pub curve: Vec<(f64, f64)>,
    /// Best ratio at the largest `λ` over that at the smallest.
    pub growth: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SharpnessScan {
    pub template: ExponentTuple,
    pub threshold: f64,
    pub rows: Vec<SharpnessRow>,
}

impl SharpnessScan {
    pub const CSV_HEADER: &'static str = "s,verdict,lambda,best_ratio,growth";

    pub fn csv_rows(&self) -> Vec<String> {
        self.rows
            .iter()
            .flat_map(|row| {
                row.curve.iter().map(move |(lambda, best)| {
                    format!("{},{},{},{:.12e},{:.12e}", row.s, row.verdict, lambda, best, row.growth)
                })
            })
            .collect()
    }

    pub fn row(&self, s: f64) -> Option<&SharpnessRow> {
        self.rows.iter().find(|r| (r.s - s).abs() < 1e-12)
    }
}

/// Runs Leibniz estimates on concentrators of increasing scale for each
/// order in `s_values`, ignoring the order clause of the conditions. The
/// template must have `r < 1` and finite `p_j, q_j`.
pub fn sharpness_scan(template: &ExponentTuple, s_values: &[f64], cfg: &SharpnessConfig) -> Result<SharpnessScan> {
    if template.r.recip() <= 1.0 {
        return Err(Error::config(format!("sharpness scans need r < 1, got r = {}", template.r)));
    }
    if [template.p1, template.q1, template.p2, template.q2].iter().any(|e| e.is_infinite()) {
        return Err(Error::config("sharpness scans need finite p_j and q_j"));
    }
    if cfg.lambdas.len() < 2 {
        return Err(Error::config("sharpness scans need at least two scales"));
    }
    let p_star: Exponent = template.p1;
    let mut rows = Vec::with_capacity(s_values.len());
    for &s in s_values {
        let tuple = template.with_order(s)?;
        let target = Target::Leibniz { tuple, op: cfg.op };
        let mut curve = Vec::with_capacity(cfg.lambdas.len());
        for &lambda in &cfg.lambdas {
            let bandwidth = (4.0 * lambda).ceil() as usize;
            let fam = FunctionFamily::new(
                FamilyKind::Concentrator {
                    lambda,
                    profile: cfg.profile,
                    p_star,
                },
                bandwidth,
                0,
                cfg.count,
            );
            let est = evaluate(&target, &[fam], &[bandwidth])?;
            curve.push((lambda, est.best_ratio));
        }
        let first = curve[0].1;
        let last = curve[curve.len() - 1].1;
        let growth = if first > 0.0 { last / first } else { f64::INFINITY };
        rows.push(SharpnessRow {
            s,
            verdict: check_leibniz_conditions(&tuple).verdict,
            curve,
            growth,
        });
    }
    Ok(SharpnessScan {
        template: *template,
        threshold: template.threshold(),
        rows,
    })
}
