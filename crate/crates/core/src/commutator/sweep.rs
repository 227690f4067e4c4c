use rayon::prelude::*;

use super::commutator_apply;
use crate::error::{Error, Result};
use crate::exponent::{Exponent, RECIPROCAL_TOL};
use crate::spectral::{fractional_laplacian, gradient_norm, lebesgue_norm, pointwise_product, SpectralField};

/// Parameters of a commutator sweep: order, dyadic range and the Hölder
/// triple `1/r = 1/p + 1/q`.
#[derive(Clone, Debug, PartialEq)]
pub struct CommutatorProbe {
    pub s: f64,
    pub j_min: u32,
    pub j_max: u32,
    pub p: Exponent,
    pub q: Exponent,
    pub r: Exponent,
}

impl CommutatorProbe {
    pub fn new(s: f64, j_min: u32, j_max: u32, p: Exponent, q: Exponent, r: Exponent) -> Result<Self> {
        if !(s >= 0.0) {
            return Err(Error::domain(format!("order s must be non-negative, got {s}")));
        }
        if j_min > j_max {
            return Err(Error::config(format!("empty dyadic range {j_min}..={j_max}")));
        }
        for (name, e) in [("p", p), ("q", q), ("r", r)] {
            if e.recip() > 1.0 + RECIPROCAL_TOL {
                return Err(Error::domain(format!("{name} = {e} is below 1")));
            }
        }
        if (r.recip() - p.recip() - q.recip()).abs() > RECIPROCAL_TOL {
            return Err(Error::domain(format!("Hölder relation 1/r = 1/p + 1/q fails for ({p}, {q}, {r})")));
        }
        Ok(CommutatorProbe { s, j_min, j_max, p, q, r })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub j: u32,
    pub sample: usize,
    pub seed: u64,
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepSummary {
    pub j: u32,
    pub max: f64,
    pub median: f64,
    pub count: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepReport {
    pub probe: CommutatorProbe,
    pub rows: Vec<SweepRow>,
    pub summaries: Vec<SweepSummary>,
    pub global_max: f64,
}

impl SweepReport {
    pub const CSV_HEADER: &'static str = "s,p,q,r,j,sample_seed,ratio";

    /// `max / median` of the per-`j` maxima.
    pub fn j_spread(&self) -> f64 {
        let maxima: Vec<f64> = self.summaries.iter().map(|s| s.max).collect();
        let med = median(&maxima);
        if med > 0.0 {
            maxima.iter().copied().fold(0.0, f64::max) / med
        } else {
            f64::INFINITY
        }
    }

    pub fn csv_rows(&self) -> Vec<String> {
        let pr = &self.probe;
        let mut out: Vec<String> = self
            .rows
            .iter()
            .map(|row| format!("{},{},{},{},{},{},{:.12e}", pr.s, pr.p, pr.q, pr.r, row.j, row.seed, row.ratio))
            .collect();
        for s in &self.summaries {
            out.push(format!("{},{},{},{},{},max,{:.12e}", pr.s, pr.p, pr.q, pr.r, s.j, s.max));
        }
        out
    }
}

fn median(values: &[f64]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

/// For each `j` and sample `(f, g, seed)`, the ratio
/// `‖[2^{-js}D^sQ_j, f](g)‖_r / (2^{-j} ‖∇f‖_p ‖g‖_q)`. A vanishing numerator
/// gives 0; a vanishing denominator with a nonzero numerator skips the sample.
pub fn commutator_ratio_sweep(probe: &CommutatorProbe, samples: &[(SpectralField, SpectralField, u64)]) -> Result<SweepReport> {
    let tasks: Vec<(u32, usize)> = (probe.j_min..=probe.j_max)
        .flat_map(|j| (0..samples.len()).map(move |i| (j, i)))
        .collect();
    let bases: Vec<(f64, f64)> = samples
        .par_iter()
        .map(|(f, g, _)| Ok((gradient_norm(f, probe.p)?, lebesgue_norm(g, probe.q)?)))
        .collect::<Result<_>>()?;
    let results: Vec<Option<SweepRow>> = tasks
        .par_iter()
        .map(|&(j, i)| {
            let (f, g, seed) = &samples[i];
            let num = lebesgue_norm(&commutator_apply(f, g, probe.s, j)?, probe.r)?;
            let den = (-(j as f64)).exp2() * bases[i].0 * bases[i].1;
            let ratio = if num == 0.0 {
                0.0
            } else if den == 0.0 {
                return Ok(None);
            } else {
                num / den
            };
            if !ratio.is_finite() {
                return Err(Error::numeric(format!("non-finite commutator ratio at j = {j}"), ratio));
            }
            Ok(Some(SweepRow { j, sample: i, seed: *seed, ratio }))
        })
        .collect::<Result<_>>()?;

    let mut rows = Vec::new();
    let mut summaries = Vec::new();
    for j in probe.j_min..=probe.j_max {
        let mut ratios = Vec::new();
        let mut skipped = 0;
        for (task, res) in tasks.iter().zip(&results) {
            if task.0 != j {
                continue;
            }
            match res {
                Some(row) => {
                    ratios.push(row.ratio);
                    rows.push(row.clone());
                }
                None => skipped += 1,
            }
        }
        summaries.push(SweepSummary {
            j,
            max: ratios.iter().copied().fold(0.0, f64::max),
            median: median(&ratios),
            count: ratios.len(),
            skipped,
        });
    }
    let global_max = summaries.iter().map(|s| s.max).fold(0.0, f64::max);
    Ok(SweepReport {
        probe: probe.clone(),
        rows,
        summaries,
        global_max,
    })
}

/// `‖D^s(ψ f)‖_p / ‖D^s f‖_p` for mean-zero `f`; `None` when `‖D^s f‖_p = 0`.
pub fn multiplier_localization_check(psi: &SpectralField, f: &SpectralField, s: f64, p: Exponent) -> Result<Option<f64>> {
    if !(s >= 0.0) {
        return Err(Error::domain(format!("order s must be non-negative, got {s}")));
    }
    if p.recip() > 1.0 + RECIPROCAL_TOL {
        return Err(Error::domain(format!("exponent p = {p} is below 1")));
    }
    if f.mean().norm() > 1e-12 * f.max_abs_coeff().max(f64::MIN_POSITIVE) {
        return Err(Error::domain("input f must have zero mean"));
    }
    let den = lebesgue_norm(&fractional_laplacian(f, s)?, p)?;
    if den == 0.0 {
        return Ok(None);
    }
    let num = lebesgue_norm(&fractional_laplacian(&pointwise_product(psi, f)?, s)?, p)?;
    Ok(Some(num / den))
}
