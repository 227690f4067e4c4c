//! The fixed smooth bump and the dyadic Littlewood–Paley symbols built from it.

/// Inner radius of the flat region of the bump.
pub const BUMP_FLAT: f64 = 5.0 / 4.0;
/// Outer radius of the bump support.
pub const BUMP_SUPPORT: f64 = 8.0 / 5.0;

/// Canonical text of the bump definition; hashed into report provenance.
pub const BUMP_DEFINITION: &str = "phi(t) = S((8/5 - |t|) / (8/5 - 5/4)); \
S(u) = B(u) / (B(u) + B(1 - u)); B(u) = exp(-1/u) for u > 0, else 0";

#[inline]
fn b(u: f64) -> f64 {
    if u > 0.0 {
        (-1.0 / u).exp()
    } else {
        0.0
    }
}

/// C^∞ step: 0 for `u ≤ 0`, 1 for `u ≥ 1`.
#[inline]
pub fn smooth_step(u: f64) -> f64 {
    if u <= 0.0 {
        0.0
    } else if u >= 1.0 {
        1.0
    } else {
        let a = b(u);
        a / (a + b(1.0 - u))
    }
}

/// The bump `φ`: 1 on `[-5/4, 5/4]`, 0 outside `(-8/5, 8/5)`.
#[inline]
pub fn bump(t: f64) -> f64 {
    smooth_step((BUMP_SUPPORT - t.abs()) / (BUMP_SUPPORT - BUMP_FLAT))
}

/// `Φ_j(r)` for radius `r = |ξ|`.
#[inline]
pub fn lp_symbol(j: u32, r: f64) -> f64 {
    if j == 0 {
        bump(r)
    } else {
        let scale = (j as f64).exp2();
        bump(r / scale) - bump(2.0 * r / scale)
    }
}

/// `Σ_{j ≤ j2-3} Φ_j(r)`, which telescopes to `φ(r / 2^{j2-3})`.
#[inline]
pub fn lp_low_symbol(j2: u32, r: f64) -> f64 {
    if j2 < 3 {
        0.0
    } else {
        bump(r / ((j2 - 3) as f64).exp2())
    }
}

/// Smallest `J` with `Σ_{j ≤ J} Φ_j ≡ 1` on `|ξ| ≤ radius`.
pub fn covering_depth(radius: f64) -> u32 {
    let mut j = 0u32;
    while BUMP_FLAT * (j as f64).exp2() < radius {
        j += 1;
    }
    j
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bump_shape() {
        assert_eq!(bump(0.0), 1.0);
        assert_eq!(bump(1.25), 1.0);
        assert_eq!(bump(-1.25), 1.0);
        assert_eq!(bump(1.6), 0.0);
        let mid = bump(1.425);
        assert!((mid - 0.5).abs() < 1e-15);
        let mut prev = 1.0;
        for k in 0..=100 {
            let v = bump(1.25 + 0.35 * k as f64 / 100.0);
            assert!(v <= prev);
            prev = v;
        }
    }

    #[test]
    fn partition_of_unity_on_lattice() {
        for n in 0..=4096 {
            let r = n as f64;
            let total: f64 = (0..=covering_depth(r)).map(|j| lp_symbol(j, r)).sum();
            assert!((total - 1.0).abs() < 1e-14, "n = {n}: {total}");
        }
    }

    #[test]
    fn low_symbol_telescopes() {
        for n in 0..200 {
            let r = n as f64 * 0.37;
            let direct: f64 = (0..=4).map(|j| lp_symbol(j, r)).sum();
            assert!((direct - lp_low_symbol(7, r)).abs() < 1e-15);
        }
    }
}
