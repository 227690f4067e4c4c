//! Independent reference computations shared by the integration tests.
//!
//! Everything here works from coefficient lists: products by direct
//! convolution, multipliers by explicit symbol formulas, point values by direct
//! summation and norms by composite Gauss–Legendre quadrature. No FFT and no
//! library norm is involved.
#![allow(dead_code)]

use std::collections::BTreeMap;
use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustfft::num_complex::Complex64;
use torus_leibniz::{SpectralField, TorusGrid};

/// Random real field of the given bandwidth with coefficient decay `|n|^{-alpha}`.
pub fn random_field(grid: TorusGrid, band: i64, alpha: f64, seed: u64) -> SpectralField {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut coeffs = vec![Complex64::default(); grid.len()];
    let nyq = grid.nyquist() as i64;
    for k in 0..grid.len() {
        let w = grid.wavenumber(k);
        let first = w.iter().find(|c| **c != 0).copied().unwrap_or(0);
        if first <= 0 || w.iter().any(|c| c.abs() > band || c.abs() >= nyq) {
            continue;
        }
        let r = ((w[0] * w[0] + w[1] * w[1] + w[2] * w[2]) as f64).sqrt();
        let c = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)) * r.powf(-alpha);
        coeffs[k] = c;
        coeffs[grid.index_of([-w[0], -w[1], -w[2]]).unwrap()] = c.conj();
    }
    coeffs[0] = Complex64::new(rng.random_range(-1.0..1.0), 0.0);
    SpectralField::from_coeffs(grid, coeffs, true).unwrap()
}

/// A one-dimensional trigonometric polynomial on the unit circle.
#[derive(Clone, Debug, Default)]
pub struct Poly {
    pub terms: BTreeMap<i64, Complex64>,
}

impl Poly {
    pub fn from_field(f: &SpectralField) -> Poly {
        assert_eq!(f.grid().dim(), 1);
        let n = f.grid().n_per_axis() as i64;
        let mut terms = BTreeMap::new();
        for k in -(n / 2) + 1..n / 2 {
            let c = f.coeff([k, 0, 0]);
            if c != Complex64::default() {
                terms.insert(k, c);
            }
        }
        Poly { terms }
    }

    pub fn from_terms(terms: &[(i64, Complex64)]) -> Poly {
        Poly {
            terms: terms.iter().copied().collect(),
        }
    }

    pub fn degree(&self) -> i64 {
        self.terms.keys().map(|k| k.abs()).max().unwrap_or(0)
    }

    pub fn eval(&self, x: f64) -> f64 {
        let mut acc = Complex64::default();
        for (k, c) in &self.terms {
            acc += c * Complex64::from_polar(1.0, 2.0 * PI * *k as f64 * x);
        }
        acc.re
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut terms: BTreeMap<i64, Complex64> = BTreeMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                *terms.entry(a + b).or_default() += ca * cb;
            }
        }
        Poly { terms }
    }

    pub fn map_symbol(&self, symbol: impl Fn(i64) -> f64) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(k, c)| (*k, c * symbol(*k))).collect(),
        }
    }
}

pub fn d_symbol(s: f64) -> impl Fn(i64) -> f64 {
    move |k| if k == 0 { 0.0 } else { (2.0 * PI * k.abs() as f64).powf(s) }
}

pub fn j_symbol(s: f64) -> impl Fn(i64) -> f64 {
    move |k| (1.0 + 4.0 * PI * PI * (k * k) as f64).powf(0.5 * s)
}

/// Gauss–Legendre nodes and weights on `[-1, 1]` by Newton iteration.
pub fn gauss_legendre(order: usize) -> Vec<(f64, f64)> {
    let n = order as f64;
    (0..order)
        .map(|i| {
            let mut x = (PI * (i as f64 + 0.75) / (n + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=order {
                    let kf = k as f64;
                    let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            (x, 2.0 / ((1.0 - x * x) * dp * dp))
        })
        .collect()
}

/// `∫_0^1 h` with `panels` equal panels of 16-point Gauss–Legendre.
pub fn integrate_unit(h: impl Fn(f64) -> f64, panels: usize) -> f64 {
    let rule = gauss_legendre(16);
    let width = 1.0 / panels as f64;
    let mut total = 0.0;
    for p in 0..panels {
        let mid = (p as f64 + 0.5) * width;
        for (x, w) in &rule {
            total += w * 0.5 * width * h(mid + 0.5 * width * x);
        }
    }
    total
}

/// `sup |P|` by dense sampling followed by golden-section refinement.
pub fn sup_abs(poly: &Poly) -> f64 {
    let samples = 64 * (poly.degree().max(1) as usize + 1);
    let h = 1.0 / samples as f64;
    let vals: Vec<f64> = (0..samples).map(|i| poly.eval(i as f64 * h).abs()).collect();
    let top = vals.iter().copied().fold(0.0, f64::max);
    let mut best = top;
    for (i, &v) in vals.iter().enumerate() {
        if v < 0.9 * top {
            continue;
        }
        let (mut a, mut b) = ((i as f64 - 1.0) * h, (i as f64 + 1.0) * h);
        let g = 0.5 * (5f64.sqrt() - 1.0);
        for _ in 0..80 {
            let c = b - g * (b - a);
            let d = a + g * (b - a);
            if poly.eval(c).abs() > poly.eval(d).abs() {
                b = d;
            } else {
                a = c;
            }
        }
        best = best.max(poly.eval(0.5 * (a + b)).abs());
    }
    best
}

/// `‖P‖_{L^p(T)}` by composite quadrature, or the supremum for `p = ∞`.
pub fn norm(poly: &Poly, p: f64) -> f64 {
    if p.is_infinite() {
        return sup_abs(poly);
    }
    let panels = 8 * (poly.degree().max(1) as usize + 1);
    integrate_unit(|x| poly.eval(x).abs().powf(p), panels).powf(1.0 / p)
}

/// Reference Leibniz ratio with operator symbol `op`.
pub fn leibniz_ratio(f: &Poly, g: &Poly, op: &dyn Fn(i64) -> f64, exps: [f64; 5]) -> f64 {
    let [p1, q1, p2, q2, r] = exps;
    let num = norm(&f.mul(g).map_symbol(op), r);
    let den = norm(&f.map_symbol(op), p1) * norm(g, q1) + norm(f, p2) * norm(&g.map_symbol(op), q2);
    num / den
}

/// Reference product ratio `‖J^{-s}(fg)‖_r / (‖J^{-s} f‖_p ‖J^s g‖_q)`.
pub fn product_ratio(f: &Poly, g: &Poly, s: f64, p: f64, q: f64, r: f64) -> f64 {
    let num = norm(&f.mul(g).map_symbol(j_symbol(-s)), r);
    num / (norm(&f.map_symbol(j_symbol(-s)), p) * norm(&g.map_symbol(j_symbol(s)), q))
}

/// Brute-force coefficient convolution on a d-dimensional lattice.
pub fn convolve(f: &SpectralField, g: &SpectralField) -> BTreeMap<[i64; 3], Complex64> {
    let mut out: BTreeMap<[i64; 3], Complex64> = BTreeMap::new();
    let grid_f = f.grid();
    let grid_g = g.grid();
    for a in 0..grid_f.len() {
        let ca = f.coeffs()[a];
        if ca == Complex64::default() {
            continue;
        }
        let wa = grid_f.wavenumber(a);
        for b in 0..grid_g.len() {
            let cb = g.coeffs()[b];
            if cb == Complex64::default() {
                continue;
            }
            let wb = grid_g.wavenumber(b);
            *out.entry([wa[0] + wb[0], wa[1] + wb[1], wa[2] + wb[2]]).or_default() += ca * cb;
        }
    }
    out
}

/// One row of the verdict fixture with the verdict computed by the library.
pub struct FixtureRow {
    pub line: String,
    pub expected: torus_leibniz::harness::Verdict,
    pub actual: torus_leibniz::harness::Verdict,
}

/// Reads `tests/fixtures/verdicts.csv` and classifies every row.
pub fn verdict_fixture() -> Vec<FixtureRow> {
    use torus_leibniz::harness::{check_leibniz_conditions, check_product_conditions, ExponentTuple, ProductTuple};
    use torus_leibniz::Exponent;

    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/verdicts.csv");
    let text = std::fs::read_to_string(path).expect("fixture file");
    let exp = |v: &str| v.parse::<Exponent>().expect("fixture exponent");
    text.lines()
        .skip(1)
        .filter(|l| !l.trim().is_empty())
        .map(|line| {
            let c: Vec<&str> = line.split(',').collect();
            let s: f64 = c[1].parse().expect("fixture order");
            let dim: usize = c[7].parse().expect("fixture dimension");
            let actual = match c[0] {
                "leibniz" => {
                    let t = ExponentTuple::new(s, exp(c[2]), exp(c[3]), exp(c[4]), exp(c[5]), exp(c[6]), dim)
                        .expect("fixture tuple");
                    check_leibniz_conditions(&t).verdict
                }
                "product" => {
                    let t = ProductTuple::new(s, exp(c[2]), exp(c[3]), exp(c[6]), dim).expect("fixture tuple");
                    check_product_conditions(&t, c[8].parse().expect("fixture manifold")).verdict
                }
                other => panic!("unknown fixture kind {other}"),
            };
            FixtureRow {
                line: line.to_string(),
                expected: c[9].parse().expect("fixture verdict"),
                actual,
            }
        })
        .collect()
}
