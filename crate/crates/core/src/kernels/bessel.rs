use std::f64::consts::PI;

use statrs::function::gamma::gamma;

use super::point_radius;
use crate::error::{Error, Result};
use crate::quadrature::{integrate, QuadratureConfig};

/// Depth (in natural-log units below the peak) at which the integrand is cut.
const TAIL_DEPTH: f64 = 75.0;

/// `∫_0^∞ e^{-t - r²/4t} t^{a} w(t) dt/t` with `t = e^u`, returned as
/// `(log_scale, scaled)` so that the integral equals `e^{log_scale}·scaled`.
fn subordination(a: f64, r: f64, weight: impl Fn(f64) -> f64, cfg: &QuadratureConfig) -> Result<(f64, f64)> {
    let q = 0.25 * r * r;
    let psi = |u: f64| -u.exp() - q * (-u).exp() + a * u;
    // ψ is concave; its maximum solves t² - a t - r²/4 = 0.
    let root = (a * a + r * r).sqrt();
    let t0 = if a >= 0.0 {
        0.5 * (a + root)
    } else {
        0.5 * r * r / (root - a)
    };
    if !(t0 > 0.0) {
        return Err(Error::Singularity);
    }
    let u0 = t0.ln();
    let peak = psi(u0);
    let mut step = 1.0;
    let mut lo = u0 - step;
    while psi(lo) > peak - TAIL_DEPTH {
        step *= 1.5;
        lo -= step;
    }
    step = 1.0;
    let mut hi = u0 + step;
    while psi(hi) > peak - TAIL_DEPTH {
        step *= 1.5;
        hi += step;
    }
    let integrand = |u: f64| (psi(u) - peak).exp() * weight(u.exp());
    // Splitting at the peak keeps both halves monotone for the positive weight.
    let left = integrate(integrand, lo, u0, cfg)?;
    let right = integrate(integrand, u0, hi, cfg)?;
    Ok((peak, left.value + right.value))
}

fn bessel_prefactor(dim: usize, sigma: f64) -> f64 {
    (4.0 * PI).powf(-0.5 * dim as f64) / gamma(0.5 * sigma)
}

/// `G_σ(r)`, `r = |x| > 0`, from the subordination integral.
pub fn bessel_kernel_radial(sigma: f64, dim: usize, r: f64, cfg: &QuadratureConfig) -> Result<f64> {
    if !(sigma > 0.0) {
        return Err(Error::domain(format!("Bessel kernel order must be positive, got {sigma}")));
    }
    if r == 0.0 {
        return Err(Error::Singularity);
    }
    let a = 0.5 * (sigma - dim as f64);
    let (scale, value) = subordination(a, r.abs(), |_| 1.0, cfg)?;
    Ok(bessel_prefactor(dim, sigma) * scale.exp() * value)
}

/// `𝒢_s(r) = (1 - Δ) G_{2-s}` evaluated off the origin, `0 < s < 2`.
pub(crate) fn bessel_derivative_radial(s: f64, dim: usize, r: f64, cfg: &QuadratureConfig) -> Result<f64> {
    if !(s > 0.0 && s < 2.0) {
        return Err(Error::domain(format!("Bessel derivative kernel needs 0 < s < 2, got {s}")));
    }
    if r == 0.0 {
        return Err(Error::Singularity);
    }
    let r = r.abs();
    let d = dim as f64;
    let sigma = 2.0 - s;
    let a = 0.5 * (sigma - d);
    // (1 - Δ) acting on e^{-r²/4t} multiplies it by 1 + d/(2t) - r²/(4t²).
    let weight = |t: f64| 1.0 + 0.5 * d / t - 0.25 * r * r / (t * t);
    let (scale, value) = subordination(a, r, weight, cfg)?;
    Ok(bessel_prefactor(dim, sigma) * scale.exp() * value)
}

/// `G_σ(x)` for a point `x ∈ ℝ^dim`, `x ≠ 0`.
pub fn bessel_kernel_eval(sigma: f64, dim: usize, x: &[f64], cfg: &QuadratureConfig) -> Result<f64> {
    bessel_kernel_radial(sigma, dim, point_radius(x, dim)?, cfg)
}

/// `𝒢_s(x)` for a point `x ∈ ℝ^dim`, `x ≠ 0`.
pub fn bessel_derivative_kernel_eval(s: f64, dim: usize, x: &[f64], cfg: &QuadratureConfig) -> Result<f64> {
    bessel_derivative_radial(s, dim, point_radius(x, dim)?, cfg)
}

/// `∫_{ℝ^d} G_σ` via the radial integral with `r = e^v`, truncated where the
/// integrand is below roughly `1e-11` of its scale.
pub fn bessel_kernel_mass(sigma: f64, dim: usize, cfg: &QuadratureConfig) -> Result<f64> {
    let d = dim as f64;
    let sphere = 2.0 * PI.powf(0.5 * d) / gamma(0.5 * d);
    let v_lo = -26.0 / sigma.min(d);
    let v_hi = 90f64.ln();
    let outer = QuadratureConfig {
        abs_tol: 1e-11,
        rel_tol: 1e-10,
        ..*cfg
    };
    let failure = std::cell::RefCell::new(None);
    let res = integrate(
        |v| {
            let r = v.exp();
            match bessel_kernel_radial(sigma, dim, r, cfg) {
                Ok(g) => g * r.powf(d),
                Err(e) => {
                    failure.borrow_mut().get_or_insert(e);
                    0.0
                }
            }
        },
        v_lo,
        v_hi,
        &outer,
    );
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    Ok(sphere * res?.value)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_two_on_the_line_is_exponential() {
        let cfg = QuadratureConfig::default();
        for x in [0.5, 1.0, 3.0, 7.5] {
            let g = bessel_kernel_radial(2.0, 1, x, &cfg).unwrap();
            let exact = 0.5 * (-x).exp();
            assert!(((g - exact) / exact).abs() < 1e-9, "x = {x}: {g} vs {exact}");
        }
    }

    #[test]
    fn order_d_plus_one_in_three_dims() {
        // G_2 in ℝ³ is e^{-|x|} / (4π|x|).
        let cfg = QuadratureConfig::default();
        for x in [0.2, 1.0, 4.0] {
            let g = bessel_kernel_radial(2.0, 3, x, &cfg).unwrap();
            let exact = (-x).exp() / (4.0 * PI * x);
            assert!(((g - exact) / exact).abs() < 1e-9);
        }
    }

    #[test]
    fn derivative_kernel_matches_negative_order_continuation() {
        // Off the origin, (1 - Δ)G_{2-s} equals the subordination formula at order -s.
        let cfg = QuadratureConfig::default();
        for (s, d) in [(0.5, 1usize), (1.0, 1), (1.5, 2)] {
            for r in [0.3, 1.0, 5.0] {
                let lhs = bessel_derivative_radial(s, d, r, &cfg).unwrap();
                let a = 0.5 * (-s - d as f64);
                let (scale, value) = subordination(a, r, |_| 1.0, &cfg).unwrap();
                let rhs = (4.0 * PI).powf(-0.5 * d as f64) / gamma(-0.5 * s) * scale.exp() * value;
                assert!(((lhs - rhs) / rhs).abs() < 1e-8, "s={s} d={d} r={r}: {lhs} vs {rhs}");
                assert!(lhs < 0.0);
            }
        }
    }
}
