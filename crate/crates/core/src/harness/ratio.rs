use std::fmt;
use std::str::FromStr;

use super::conditions::{ExponentTuple, ProductTuple};
use crate::error::{Error, Result};
use crate::spectral::{bessel_operator, fractional_laplacian, lebesgue_norm, pointwise_product, SpectralField};

/// Derivative operator of a Leibniz ratio.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Operator {
    /// `D^s`, symbol `(2π|n|)^s`.
    Homogeneous,
    /// `J^s`, symbol `(1 + 4π²|n|²)^{s/2}`.
    Bessel,
}

impl Operator {
    pub fn apply(&self, f: &SpectralField, s: f64) -> Result<SpectralField> {
        match self {
            Operator::Homogeneous => fractional_laplacian(f, s),
            Operator::Bessel => bessel_operator(f, s),
        }
    }
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Operator::Homogeneous => "D",
            Operator::Bessel => "J",
        })
    }
}

impl FromStr for Operator {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        match text.trim() {
            "D" | "d" | "D^s" => Ok(Operator::Homogeneous),
            "J" | "j" | "J^s" => Ok(Operator::Bessel),
            other => Err(Error::Parse(format!("unknown operator '{other}' (expected D or J)"))),
        }
    }
}

/// A ratio `LHS / RHS` together with its parts.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RatioValue {
    pub ratio: f64,
    pub numerator: f64,
    pub denominator: f64,
    /// Both sides vanish; the ratio is reported as 0.
    pub degenerate: bool,
}

impl RatioValue {
    fn from_parts(numerator: f64, denominator: f64) -> Result<Self> {
        if !numerator.is_finite() || !denominator.is_finite() {
            return Err(Error::numeric(
                format!("non-finite ratio parts: numerator {numerator:e}, denominator {denominator:e}"),
                if numerator.is_finite() { denominator } else { numerator },
            ));
        }
        if denominator == 0.0 {
            if numerator == 0.0 {
                return Ok(RatioValue {
                    ratio: 0.0,
                    numerator,
                    denominator,
                    degenerate: true,
                });
            }
            return Err(Error::numeric(
                format!("right-hand side vanishes while the left-hand side is {numerator:e}"),
                numerator,
            ));
        }
        Ok(RatioValue {
            ratio: numerator / denominator,
            numerator,
            denominator,
            degenerate: false,
        })
    }
}

/// `‖Op(fg)‖_r / (‖Op f‖_{p1} ‖g‖_{q1} + ‖f‖_{p2} ‖Op g‖_{q2})`.
pub fn leibniz_ratio(f: &SpectralField, g: &SpectralField, t: &ExponentTuple, op: Operator) -> Result<RatioValue> {
    if f.grid().dim() != t.dim || g.grid().dim() != t.dim {
        return Err(Error::config(format!("fields do not live in dimension {}", t.dim)));
    }
    let numerator = lebesgue_norm(&op.apply(&pointwise_product(f, g)?, t.s)?, t.r)?;
    let first = lebesgue_norm(&op.apply(f, t.s)?, t.p1)? * lebesgue_norm(g, t.q1)?;
    let second = lebesgue_norm(f, t.p2)? * lebesgue_norm(&op.apply(g, t.s)?, t.q2)?;
    RatioValue::from_parts(numerator, first + second)
}

/// `‖J^{-s}(fg)‖_r / (‖J^{-s} f‖_p ‖J^s g‖_q)`. On a period-`L` grid the
/// norms are those of the box, which stands in for the whole space.
pub fn product_ratio(f: &SpectralField, g: &SpectralField, t: &ProductTuple) -> Result<RatioValue> {
    if f.grid().dim() != t.dim || g.grid().dim() != t.dim {
        return Err(Error::config(format!("fields do not live in dimension {}", t.dim)));
    }
    let numerator = lebesgue_norm(&bessel_operator(&pointwise_product(f, g)?, -t.s)?, t.r)?;
    let denominator = lebesgue_norm(&bessel_operator(f, -t.s)?, t.p)? * lebesgue_norm(&bessel_operator(g, t.s)?, t.q)?;
    RatioValue::from_parts(numerator, denominator)
}
