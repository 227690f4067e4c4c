use super::commutator_apply;
use crate::error::{Error, Result};
use crate::spectral::{fractional_laplacian, lp, lp_low, lp_project, lp_tail, pointwise_product, SpectralField};

/// Window `|j - j2| ≤ 5` over which `Q_j` reassembles `S_{j2}ψ · Q_{j2}f`.
const WINDOW: u32 = 5;

/// The three pieces of `D^s(ψ f)`:
/// `a11 = Σ_{j2} Σ_{|j-j2|≤5} 2^{js} [2^{-js}D^sQ_j, S_{j2}ψ](Q_{j2}f)`,
/// `a12 = Σ_{j2} S_{j2}ψ · D^sQ_{j2}f` and `a2 = D^s Σ_{j2} S⊥_{j2}ψ · Q_{j2}f`.
#[derive(Clone, Debug)]
pub struct ParaproductSplit {
    pub a11: SpectralField,
    pub a12: SpectralField,
    pub a2: SpectralField,
    /// Largest `j2` in the truncated sums.
    pub depth: u32,
}

impl ParaproductSplit {
    pub fn total(&self) -> Result<SpectralField> {
        self.a11.add(&self.a12)?.add(&self.a2)
    }
}

/// [`paraproduct_split_with_depth`] with the smallest depth covering the band
/// of `f`.
pub fn paraproduct_split(psi: &SpectralField, f: &SpectralField, s: f64) -> Result<ParaproductSplit> {
    paraproduct_split_with_depth(psi, f, s, lp::covering_depth(f.bandwidth() as f64))
}

/// Splits `D^s(ψ f)` with the sums over `j2` truncated at `depth`. The `a12`
/// piece is formed by the low-to-high switch
/// `ψ D^s f - Σ_{j2} S⊥_{j2}ψ · D^sQ_{j2}f`.
pub fn paraproduct_split_with_depth(psi: &SpectralField, f: &SpectralField, s: f64, depth: u32) -> Result<ParaproductSplit> {
    if !(s >= 0.0) {
        return Err(Error::domain(format!("order s must be non-negative, got {s}")));
    }
    if psi.grid().dim() != f.grid().dim() {
        return Err(Error::config("psi and f live on tori of different dimension"));
    }
    let band = f.bandwidth();
    let needed = lp::covering_depth(band as f64);
    if depth < needed {
        return Err(Error::config(format!(
            "depth {depth} leaves part of the band {band} uncovered; at least {needed} is needed"
        )));
    }

    let mut a11: Option<SpectralField> = None;
    let mut switch_tail: Option<SpectralField> = None;
    let mut high: Option<SpectralField> = None;
    let accumulate = |acc: &mut Option<SpectralField>, term: SpectralField| -> Result<()> {
        *acc = Some(match acc.take() {
            Some(a) => a.add(&term)?,
            None => term,
        });
        Ok(())
    };
    for j2 in 0..=depth {
        let qf = lp_project(f, j2 as i32)?;
        if qf.max_abs_coeff() == 0.0 {
            continue;
        }
        let low = lp_low(psi, j2)?;
        let tail = lp_tail(psi, j2)?;
        for j in j2.saturating_sub(WINDOW)..=j2 + WINDOW {
            let c = commutator_apply(&low, &qf, s, j)?.scale((j as f64 * s).exp2());
            accumulate(&mut a11, c)?;
        }
        accumulate(&mut switch_tail, pointwise_product(&tail, &fractional_laplacian(&qf, s)?)?)?;
        accumulate(&mut high, pointwise_product(&tail, &qf)?)?;
    }

    let zero = || SpectralField::zeros(*f.grid());
    let lead = pointwise_product(psi, &fractional_laplacian(f, s)?)?;
    let a12 = match switch_tail {
        Some(t) => lead.sub(&t)?,
        None => lead,
    };
    let a2 = match high {
        Some(h) => fractional_laplacian(&h, s)?,
        None => zero(),
    };
    Ok(ParaproductSplit {
        a11: a11.unwrap_or_else(zero),
        a12,
        a2,
        depth,
    })
}
