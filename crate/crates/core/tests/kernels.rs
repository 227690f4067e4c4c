use std::f64::consts::PI;

use statrs::function::gamma::gamma;
use torus_leibniz::kernels::{
    bessel_derivative_kernel_eval, bessel_kernel_eval, bessel_kernel_mass, bessel_kernel_radial, decay_bound_check,
    frac_laplacian_kernel_eval, kernel_multiplier_consistency, riesz_constant, riesz_kernel_eval, BoundKind, KernelKind,
    KernelSpec,
};
use torus_leibniz::quadrature::QuadratureConfig;
use torus_leibniz::Error;

fn cfg() -> QuadratureConfig {
    QuadratureConfig::default()
}

fn tight() -> QuadratureConfig {
    QuadratureConfig {
        abs_tol: 1e-15,
        rel_tol: 1e-13,
        max_subdivisions: 20000,
        ..Default::default()
    }
}

fn sphere_area(d: usize) -> f64 {
    2.0 * PI.powf(0.5 * d as f64) / gamma(0.5 * d as f64)
}

#[test]
fn riesz_constant_matches_gaussian_pairing() {
    // ∫ K_σ e^{-π|x|²} dx = ∫ (2π|ξ|)^{-σ} e^{-π|ξ|²} dξ, both sides radial.
    for d in 1..=3usize {
        for sigma in [0.25, 0.5, 0.9, 1.5, 2.5] {
            if sigma >= d as f64 {
                continue;
            }
            let lhs_per_c = sphere_area(d) * gamma(0.5 * sigma) / (2.0 * PI.powf(0.5 * sigma));
            let rhs = (2.0 * PI).powf(-sigma) * sphere_area(d) * gamma(0.5 * (d as f64 - sigma))
                / (2.0 * PI.powf(0.5 * (d as f64 - sigma)));
            let c = riesz_constant(d, sigma);
            assert!((c * lhs_per_c - rhs).abs() < 1e-13 * rhs, "d {d} σ {sigma}");
        }
    }
    let k = riesz_kernel_eval(0.5, 1, &[1.0]).unwrap();
    assert!((k - (2.0 * PI).powf(-0.5)).abs() < 1e-15);
}

#[test]
fn riesz_homogeneity() {
    for (d, sigma, x) in [(1usize, 0.5, vec![0.7]), (2, 1.3, vec![0.3, -1.1]), (3, 2.2, vec![1.0, 2.0, -0.5])] {
        let base = riesz_kernel_eval(sigma, d, &x).unwrap();
        let x2: Vec<f64> = x.iter().map(|v| 2.0 * v).collect();
        let scaled = riesz_kernel_eval(sigma, d, &x2).unwrap();
        let want = 2f64.powf(sigma - d as f64) * base;
        assert!((scaled - want).abs() < 1e-14 * want.abs());
    }
    let k1 = riesz_kernel_eval(0.5, 1, &[1.0]).unwrap();
    for x in [0.25, 3.0, 9.0] {
        let ratio = riesz_kernel_eval(0.5, 1, &[x]).unwrap() / k1;
        assert!((ratio - x.powf(-0.5)).abs() < 1e-14);
    }
}

#[test]
fn riesz_errors() {
    assert!(matches!(riesz_kernel_eval(0.5, 1, &[0.0]), Err(Error::Singularity)));
    assert!(matches!(riesz_kernel_eval(1.0, 1, &[1.0]), Err(Error::Domain(_))));
    assert!(matches!(riesz_kernel_eval(0.0, 2, &[1.0, 0.0]), Err(Error::Domain(_))));
    assert!(matches!(riesz_kernel_eval(0.5, 2, &[1.0]), Err(Error::Config(_))));
}

#[test]
fn bessel_order_two_closed_forms() {
    for x in [0.5, 1.0, 3.0] {
        let g = bessel_kernel_eval(2.0, 1, &[x], &cfg()).unwrap();
        let exact = 0.5 * (-x).exp();
        assert!((g - exact).abs() < 1e-8 * exact, "x {x}");
    }
    // In three dimensions G_2(x) = e^{-|x|} / (4π|x|).
    for x in [[0.5f64, 0.0, 0.0], [1.0, 1.0, 0.0], [2.0, -1.0, 2.0]] {
        let r = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
        let r = r.sqrt();
        let g = bessel_kernel_eval(2.0, 3, &x, &cfg()).unwrap();
        let exact = (-r).exp() / (4.0 * PI * r);
        assert!((g - exact).abs() < 1e-8 * exact, "x {x:?}");
    }
}

#[test]
fn bessel_mass_is_one() {
    for (sigma, d) in [(0.5, 1usize), (1.0, 1), (2.0, 1), (3.5, 1), (1.0, 2), (2.5, 2), (1.5, 3), (4.0, 3)] {
        let m = bessel_kernel_mass(sigma, d, &cfg()).unwrap();
        assert!((m - 1.0).abs() < 1e-6, "σ {sigma} d {d}: {m}");
    }
}

#[test]
fn bessel_is_positive_symmetric_and_decreasing() {
    for (sigma, d) in [(0.5, 1usize), (1.0, 2), (2.7, 3)] {
        let mut prev = f64::INFINITY;
        for i in 1..=40 {
            let r = 0.25 * i as f64;
            let mut x = vec![0.0; d];
            x[0] = r;
            let g = bessel_kernel_eval(sigma, d, &x, &cfg()).unwrap();
            x[0] = -r;
            let g_neg = bessel_kernel_eval(sigma, d, &x, &cfg()).unwrap();
            assert!(g > 0.0 && g < prev);
            assert_eq!(g, g_neg);
            prev = g;
        }
    }
    assert!(matches!(bessel_kernel_eval(1.0, 1, &[0.0], &cfg()), Err(Error::Singularity)));
    assert!(matches!(bessel_kernel_eval(-1.0, 1, &[1.0], &cfg()), Err(Error::Domain(_))));
}

#[test]
fn frac_laplacian_homogeneity_and_power_law() {
    for (d, s, x) in [(1usize, 1.5, vec![0.4]), (2, 0.5, vec![1.0, 0.5]), (3, 1.2, vec![0.2, 0.1, 0.7])] {
        let base = frac_laplacian_kernel_eval(s, d, &x).unwrap();
        let x2: Vec<f64> = x.iter().map(|v| 2.0 * v).collect();
        let want = 2f64.powf(-(d as f64) - s) * base;
        assert!((frac_laplacian_kernel_eval(s, d, &x2).unwrap() - want).abs() < 1e-14 * want.abs());
    }
    let scaled: Vec<f64> = [1.0, 2.0, 4.0]
        .iter()
        .map(|&r| frac_laplacian_kernel_eval(1.0, 2, &[r, 0.0]).unwrap().abs() * r * r * r)
        .collect();
    for v in &scaled {
        assert!((v - scaled[0]).abs() < 1e-14 * scaled[0]);
    }
}

#[test]
fn frac_laplacian_matches_finite_difference() {
    // 𝒦_s = -Δ K_{2-s}; five-point Laplacian with step 1e-4 at (1, 0).
    let (s, h) = (0.5, 1e-4);
    let k = |x: f64, y: f64| riesz_kernel_eval(2.0 - s, 2, &[x, y]).unwrap();
    let lap = (k(1.0 + h, 0.0) + k(1.0 - h, 0.0) + k(1.0, h) + k(1.0, -h) - 4.0 * k(1.0, 0.0)) / (h * h);
    let v = frac_laplacian_kernel_eval(s, 2, &[1.0, 0.0]).unwrap();
    assert!((v + lap).abs() < 1e-6 * v.abs(), "{v} vs {}", -lap);
    assert!(v < 0.0);
}

#[test]
fn bessel_derivative_matches_finite_difference() {
    // 𝒢_s = (1 - d²/dx²) G_{2-s} on the line, fourth-order stencil.
    for s in [0.5, 1.0, 1.5] {
        let g = |x: f64| bessel_kernel_radial(2.0 - s, 1, x, &tight()).unwrap();
        for x in [0.5, 1.0, 4.0] {
            let h = 1e-2;
            let d2 = (-g(x + 2.0 * h) + 16.0 * g(x + h) - 30.0 * g(x) + 16.0 * g(x - h) - g(x - 2.0 * h)) / (12.0 * h * h);
            let want = g(x) - d2;
            let got = bessel_derivative_kernel_eval(s, 1, &[x], &tight()).unwrap();
            assert!((got - want).abs() < 1e-6 * want.abs(), "s {s} x {x}: {got} vs {want}");
        }
    }
}

#[test]
fn kernel_spec_validity() {
    assert!(KernelSpec::new(KernelKind::FracLaplacian, 2.0, 1).is_err());
    assert!(KernelSpec::new(KernelKind::BesselDerivative, 0.0, 1).is_err());
    assert!(KernelSpec::new(KernelKind::Bessel, 7.0, 2).is_ok());
    assert!(matches!(KernelSpec::new(KernelKind::Riesz, 0.5, 4), Err(Error::Config(_))));
    assert_eq!("bessel_derivative".parse::<KernelKind>().unwrap(), KernelKind::BesselDerivative);
    assert!(matches!("gauss".parse::<KernelKind>(), Err(Error::Parse(_))));
}

#[test]
fn decay_of_bessel_derivative_on_the_line() {
    let samples: Vec<f64> = (1..=10).map(f64::from).collect();
    for s in [0.5, 1.0] {
        let spec = KernelSpec::new(KernelKind::BesselDerivative, s, 1).unwrap();
        let reports = decay_bound_check(&spec, 1.0, &samples, &cfg()).unwrap();
        assert_eq!(reports.len(), 2);
        for r in &reports {
            assert!(r.fitted_constant.is_finite() && r.fitted_constant > 0.0);
            assert!(!r.violation);
            assert!(r.profile.last().unwrap().1 <= r.profile[0].1);
        }
        assert!(matches!(reports[0].bound, BoundKind::Power { .. }));
        assert_eq!(reports[1].bound, BoundKind::Exponential);
        assert!(reports[0].is_non_increasing());
    }
}

#[test]
fn riesz_fit_is_its_constant() {
    let spec = KernelSpec::new(KernelKind::Riesz, 1.5, 3).unwrap();
    let samples = [1.0, 2.0, 3.5, 8.0];
    let reports = decay_bound_check(&spec, 0.5, &samples, &cfg()).unwrap();
    assert_eq!(reports.len(), 1);
    let c = riesz_constant(3, 1.5);
    assert!((reports[0].fitted_constant - c).abs() < 1e-14 * c);
}

#[test]
fn frac_laplacian_fit_ignores_cutoff() {
    let spec = KernelSpec::new(KernelKind::FracLaplacian, 1.0, 2).unwrap();
    let samples: Vec<f64> = (0..20).map(|i| 2.0 + 0.5 * i as f64).collect();
    let fits: Vec<f64> = [0.5, 1.0, 2.0]
        .iter()
        .map(|&c0| decay_bound_check(&spec, c0, &samples, &cfg()).unwrap()[0].fitted_constant)
        .collect();
    for f in &fits {
        assert!((f - fits[0]).abs() < 1e-10 * fits[0]);
    }
}

#[test]
fn decay_check_rejects_bad_input() {
    let spec = KernelSpec::new(KernelKind::Bessel, 1.0, 1).unwrap();
    assert!(matches!(decay_bound_check(&spec, 2.0, &[1.0, 3.0], &cfg()), Err(Error::Config(_))));
    assert!(matches!(decay_bound_check(&spec, 0.0, &[1.0], &cfg()), Err(Error::Config(_))));
    assert!(matches!(decay_bound_check(&spec, 1.0, &[], &cfg()), Err(Error::Config(_))));
}

#[test]
fn decay_report_csv_row() {
    let spec = KernelSpec::new(KernelKind::Bessel, 2.0, 1).unwrap();
    let reports = decay_bound_check(&spec, 1.0, &[1.0, 2.0], &cfg()).unwrap();
    let row = reports[1].csv_row();
    assert!(row.starts_with("bessel,2,1,1,exponential,"), "{row}");
    assert_eq!(row.split(',').count(), torus_leibniz::kernels::DecayFitReport::CSV_HEADER.split(',').count());
}

#[test]
fn periodized_kernel_matches_symbol() {
    let two = kernel_multiplier_consistency(2.0, 1, 40.0, 4096, &cfg()).unwrap();
    assert!(two.max_rel_error < 1e-6, "{two:?}");
    assert!((two.symbol_at_zero - 1.0).abs() < 1e-8);
    let half = kernel_multiplier_consistency(0.5, 1, 40.0, 4096, &cfg()).unwrap();
    assert!(half.max_rel_error < 1e-4, "{half:?}");
    let one = kernel_multiplier_consistency(1.0, 1, 40.0, 4096, &cfg()).unwrap();
    assert!(one.max_rel_error < 1e-4, "{one:?}");
}

#[test]
fn consistency_rejects_unsupported_setups() {
    assert!(matches!(kernel_multiplier_consistency(1.0, 2, 40.0, 256, &cfg()), Err(Error::Config(_))));
    assert!(matches!(kernel_multiplier_consistency(1.0, 1, 4.0, 256, &cfg()), Err(Error::Numeric { .. })));
    assert!(matches!(kernel_multiplier_consistency(1.0, 1, 40.0, 64, &cfg()), Err(Error::Numeric { .. })));
    assert!(matches!(kernel_multiplier_consistency(3.0, 1, 40.0, 4096, &cfg()), Err(Error::Config(_))));
}
