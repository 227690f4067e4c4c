//! Plain-text field serialization: a header followed by one coefficient per
//! line in lexicographic frequency order.

use std::io::{BufRead, Write};

use rustfft::num_complex::Complex64;

use super::field::SpectralField;
use super::grid::TorusGrid;
use crate::error::{Error, Result};

const MAGIC: &str = "torus-leibniz-field 1";

pub fn write_field(f: &SpectralField, mut out: impl Write) -> Result<()> {
    let g = f.grid();
    writeln!(out, "{MAGIC}")?;
    writeln!(out, "dim {}", g.dim())?;
    writeln!(out, "n_per_axis {}", g.n_per_axis())?;
    writeln!(out, "period {}", g.period())?;
    writeln!(out, "is_real {}", f.is_real())?;
    let half = g.nyquist() as i64;
    let n = g.n_per_axis() as i64;
    let count = g.len();
    for lex in 0..count {
        // Lexicographic over wavenumbers -n/2..n/2-1 on each axis, first axis slowest.
        let mut w = [0i64; 3];
        let mut rem = lex as i64;
        for axis in (0..g.dim()).rev() {
            w[axis] = rem % n - half;
            rem /= n;
        }
        let c = f.coeff(w);
        let idx: Vec<String> = w[..g.dim()].iter().map(|v| v.to_string()).collect();
        writeln!(out, "{} {} {}", idx.join(" "), c.re, c.im)?;
    }
    Ok(())
}

fn header_value<'a>(line: Option<std::io::Result<String>>, key: &str, buf: &'a mut String) -> Result<&'a str> {
    *buf = line.ok_or_else(|| Error::Parse(format!("missing '{key}' header")))??;
    let rest = buf
        .strip_prefix(key)
        .ok_or_else(|| Error::Parse(format!("expected '{key}' header, got '{buf}'")))?;
    Ok(rest.trim())
}

pub fn read_field(input: impl BufRead) -> Result<SpectralField> {
    let mut lines = input.lines();
    let first = lines
        .next()
        .ok_or_else(|| Error::Parse("empty field file".into()))??;
    if first.trim() != MAGIC {
        return Err(Error::Parse(format!("unrecognized header '{first}'")));
    }
    let mut buf = String::new();
    let bad = |k: &str| Error::Parse(format!("bad value for '{k}'"));
    let dim: usize = header_value(lines.next(), "dim", &mut buf)?
        .parse()
        .map_err(|_| bad("dim"))?;
    let n: usize = header_value(lines.next(), "n_per_axis", &mut buf)?
        .parse()
        .map_err(|_| bad("n_per_axis"))?;
    let period: f64 = header_value(lines.next(), "period", &mut buf)?
        .parse()
        .map_err(|_| bad("period"))?;
    let is_real: bool = header_value(lines.next(), "is_real", &mut buf)?
        .parse()
        .map_err(|_| bad("is_real"))?;
    let grid = TorusGrid::with_period(dim, n, period)?;
    let mut coeffs = vec![Complex64::default(); grid.len()];
    let mut seen = 0usize;
    for line in lines {
        let line = line?;
        let t = line.trim();
        if t.is_empty() {
            continue;
        }
        let parts: Vec<&str> = t.split_whitespace().collect();
        if parts.len() != dim + 2 {
            return Err(Error::Parse(format!("malformed coefficient line '{t}'")));
        }
        let mut w = [0i64; 3];
        for axis in 0..dim {
            w[axis] = parts[axis]
                .parse()
                .map_err(|_| Error::Parse(format!("bad wavenumber in '{t}'")))?;
        }
        let re: f64 = parts[dim]
            .parse()
            .map_err(|_| Error::Parse(format!("bad real part in '{t}'")))?;
        let im: f64 = parts[dim + 1]
            .parse()
            .map_err(|_| Error::Parse(format!("bad imaginary part in '{t}'")))?;
        let idx = grid
            .index_of(w)
            .ok_or_else(|| Error::Parse(format!("wavenumber {w:?} outside the grid")))?;
        coeffs[idx] = Complex64::new(re, im);
        seen += 1;
    }
    if seen != grid.len() {
        return Err(Error::Parse(format!(
            "expected {} coefficients, found {seen}",
            grid.len()
        )));
    }
    SpectralField::from_coeffs(grid, coeffs, is_real)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip() {
        let g = TorusGrid::with_period(2, 4, 3.0).unwrap();
        let f = SpectralField::from_fn(g, |x| (x[0] * 1.3).sin() + x[1]);
        let mut buf = Vec::new();
        write_field(&f, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.lines().nth(5).unwrap().starts_with("-2 -2 "));
        let back = read_field(buf.as_slice()).unwrap();
        assert_eq!(back.coeffs(), f.coeffs());
        assert_eq!(back.grid(), f.grid());
    }
}
