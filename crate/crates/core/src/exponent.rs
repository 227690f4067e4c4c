//! Extended-real Lebesgue exponents in `(0, ∞]`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Tolerance used when comparing reciprocals of exponents (Hölder relations).
pub const RECIPROCAL_TOL: f64 = 1e-12;

/// A Lebesgue exponent `p ∈ (0, ∞]`. Infinity is spelled `inf` in text.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct Exponent(f64);

impl Exponent {
    pub const INFINITY: Exponent = Exponent(f64::INFINITY);
    pub const ONE: Exponent = Exponent(1.0);
    pub const TWO: Exponent = Exponent(2.0);

    pub fn new(value: f64) -> Result<Self> {
        if value.is_nan() || value <= 0.0 {
            return Err(Error::domain(format!(
                "exponent must lie in (0, inf], got {value}"
            )));
        }
        Ok(Exponent(value))
    }

    /// Builds the exponent whose reciprocal is `recip` (0 gives infinity).
    pub fn from_recip(recip: f64) -> Result<Self> {
        if recip.is_nan() || recip < 0.0 {
            return Err(Error::domain(format!("invalid reciprocal exponent {recip}")));
        }
        if recip <= RECIPROCAL_TOL * 1e-3 {
            Ok(Exponent::INFINITY)
        } else {
            Exponent::new(1.0 / recip)
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// `1/p`, with `1/∞ = 0`.
    pub fn recip(self) -> f64 {
        if self.0.is_infinite() {
            0.0
        } else {
            1.0 / self.0
        }
    }

    pub fn is_infinite(self) -> bool {
        self.0.is_infinite()
    }

    /// Hölder conjugate `p'` with `1/p + 1/p' = 1`; requires `p ≥ 1`.
    pub fn conjugate(self) -> Result<Exponent> {
        if self.0 < 1.0 - RECIPROCAL_TOL {
            return Err(Error::domain(format!(
                "Hölder conjugate undefined for p = {self} < 1"
            )));
        }
        Exponent::from_recip((1.0 - self.recip()).max(0.0))
    }

    /// Equality up to [`RECIPROCAL_TOL`] on reciprocals.
    pub fn approx_eq(self, other: Exponent) -> bool {
        (self.recip() - other.recip()).abs() <= RECIPROCAL_TOL
    }

    pub fn approx_eq_value(self, value: f64) -> bool {
        let r = if value.is_infinite() { 0.0 } else { 1.0 / value };
        (self.recip() - r).abs() <= RECIPROCAL_TOL
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_infinite() {
            write!(f, "inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl FromStr for Exponent {
    type Err = Error;

    /// Accepts `inf`, `∞`, decimals, and fractions such as `2/3`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if matches!(t, "inf" | "Inf" | "INF" | "infinity" | "∞") {
            return Ok(Exponent::INFINITY);
        }
        if let Some((num, den)) = t.split_once('/') {
            let num: f64 = num
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent numerator in '{t}'")))?;
            let den: f64 = den
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent denominator in '{t}'")))?;
            if den == 0.0 {
                return Err(Error::Parse(format!("zero denominator in '{t}'")));
            }
            return Exponent::new(num / den);
        }
        let v: f64 = t
            .parse()
            .map_err(|_| Error::Parse(format!("bad exponent '{t}'")))?;
        Exponent::new(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_infinity_and_fractions() {
        assert!("inf".parse::<Exponent>().unwrap().is_infinite());
        let r: Exponent = "2/3".parse().unwrap();
        assert!((r.recip() - 1.5).abs() < 1e-15);
        assert!("0".parse::<Exponent>().is_err());
        assert!("x".parse::<Exponent>().is_err());
    }

    #[test]
    fn conjugates() {
        assert!(Exponent::ONE.conjugate().unwrap().is_infinite());
        assert_eq!(Exponent::INFINITY.conjugate().unwrap().value(), 1.0);
        assert!(Exponent::TWO.conjugate().unwrap().approx_eq(Exponent::TWO));
        assert!(Exponent::new(0.5).unwrap().conjugate().is_err());
    }
}
