mod common;

use std::f64::consts::PI;

use proptest::prelude::*;
use rustfft::num_complex::Complex64;
use statrs::function::gamma::gamma;
use torus_leibniz::spectral::{
    apply_multiplier, bessel_operator, coefficient_l2, fractional_laplacian, io, lebesgue_norm, lp, lp_low,
    lp_project, lp_tail, pointwise_product, pointwise_product_with_limit, project_mean, project_nonzero,
};
use torus_leibniz::{Error, Exponent, MultiplierSpec, SpectralField, TorusGrid};

fn grid1(n: usize) -> TorusGrid {
    TorusGrid::new(1, n).unwrap()
}

fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol * b.norm().max(1.0)
}

#[test]
fn grid_rejects_bad_shapes() {
    assert!(matches!(TorusGrid::new(1, 2), Err(Error::Config(_))));
    assert!(matches!(TorusGrid::new(1, 7), Err(Error::Config(_))));
    assert!(matches!(TorusGrid::new(4, 8), Err(Error::Config(_))));
    assert!(matches!(TorusGrid::with_period(1, 8, 0.0), Err(Error::Config(_))));
    let g = TorusGrid::new(2, 8).unwrap();
    assert_eq!(g.len(), 64);
    assert_eq!(g.wavenumber(g.index_of([-4, 3, 0]).unwrap()), [-4, 3, 0]);
}

#[test]
fn multiplier_examples() {
    let g = grid1(32);
    let e3 = SpectralField::mode(g, [3, 0, 0]).unwrap();
    let out = apply_multiplier(&e3, &MultiplierSpec::fractional_laplacian(2.0)).unwrap();
    assert!(close(out.coeff([3, 0, 0]), Complex64::new((6.0 * PI).powi(2), 0.0), 1e-14));

    let f = common::random_field(g, 8, 1.0, 1);
    let same = apply_multiplier(&f, &MultiplierSpec::bessel(0.0)).unwrap();
    assert!(same.max_abs_diff(&f).unwrap() < 1e-15);

    let e1 = SpectralField::mode(g, [1, 0, 0]).unwrap();
    let out = bessel_operator(&e1, 1.0).unwrap();
    assert!(close(out.coeff([1, 0, 0]), Complex64::new((1.0 + 4.0 * PI * PI).sqrt(), 0.0), 1e-14));
    let out = bessel_operator(&e1, -1.0).unwrap();
    assert!(close(out.coeff([1, 0, 0]), Complex64::new((1.0 + 4.0 * PI * PI).powf(-0.5), 0.0), 1e-14));
}

#[test]
fn multiplier_on_other_lattice_is_rejected() {
    let g = grid1(16);
    let table = MultiplierSpec::tabulated("t", g, vec![Complex64::new(1.0, 0.0); 16]).unwrap();
    let f = SpectralField::constant(grid1(32), 1.0);
    assert!(matches!(apply_multiplier(&f, &table), Err(Error::Config(_))));
}

#[test]
fn fractional_laplacian_examples() {
    let g = grid1(32);
    let c = SpectralField::constant(g, 3.0);
    assert_eq!(fractional_laplacian(&c, 1.0).unwrap().max_abs(), 0.0);

    let cos = SpectralField::cos_mode(g, [1, 0, 0]).unwrap();
    let d = fractional_laplacian(&cos, 1.0).unwrap();
    assert!(d.max_abs_diff(&cos.scale(2.0 * PI)).unwrap() < 1e-12);

    let g2 = TorusGrid::new(2, 16).unwrap();
    let e = SpectralField::mode(g2, [3, 4, 0]).unwrap();
    let d = fractional_laplacian(&e, 0.5).unwrap();
    assert!(close(d.coeff([3, 4, 0]), Complex64::new((10.0 * PI).sqrt(), 0.0), 1e-14));

    let shifted = cos.add(&c).unwrap();
    assert!(matches!(fractional_laplacian(&shifted, -0.5), Err(Error::Domain(_))));
    assert!(fractional_laplacian(&cos, -0.5).is_ok());
}

#[test]
fn bessel_examples() {
    let g = grid1(64);
    let one = SpectralField::constant(g, 1.0);
    for s in [-2.0, -0.3, 0.7, 3.0] {
        assert!(bessel_operator(&one, s).unwrap().max_abs_diff(&one).unwrap() < 1e-15);
    }
    let f = common::random_field(g, 16, 0.5, 4);
    let back = bessel_operator(&bessel_operator(&f, 0.7).unwrap(), -0.7).unwrap();
    assert!(back.max_abs_diff(&f).unwrap() < 1e-12);
}

#[test]
fn mean_projections() {
    let g = grid1(16);
    let cos = SpectralField::cos_mode(g, [1, 0, 0]).unwrap();
    let f = cos.add(&SpectralField::constant(g, 3.0)).unwrap();
    assert!((project_mean(&f).mean().re - 3.0).abs() < 1e-15);
    assert!(project_nonzero(&f).max_abs_diff(&cos).unwrap() < 1e-15);
    assert_eq!(project_mean(&cos).max_abs(), 0.0);
}

#[test]
fn littlewood_paley_examples() {
    let g = grid1(64);
    let e1 = SpectralField::mode(g, [1, 0, 0]).unwrap();
    assert!(lp_project(&e1, 0).unwrap().max_abs_diff(&e1).unwrap() < 1e-15);
    assert_eq!(lp_project(&e1, 1).unwrap().max_abs(), 0.0);
    assert!(matches!(lp_project(&e1, -1), Err(Error::Domain(_))));

    let f = common::random_field(g, 31, 0.0, 9);
    let depth = lp::covering_depth(g.nyquist() as f64);
    let mut sum = SpectralField::zeros(g);
    for j in 0..=depth {
        sum = sum.add(&lp_project(&f, j as i32).unwrap()).unwrap();
    }
    assert!(sum.max_abs_diff(&f).unwrap() < 1e-13);

    assert_eq!(lp_low(&f, 0).unwrap().max_abs(), 0.0);
    assert!(lp_tail(&f, 0).unwrap().max_abs_diff(&f).unwrap() < 1e-15);
    let low = lp_low(&f, 5).unwrap();
    let tail = lp_tail(&f, 5).unwrap();
    assert!(low.add(&tail).unwrap().max_abs_diff(&f).unwrap() < 1e-14);
    assert!(lp_low(&e1, 10).unwrap().max_abs_diff(&e1).unwrap() < 1e-15);
}

#[test]
fn partition_of_unity_on_lattice() {
    for n in [16usize, 64, 256] {
        let g = grid1(n);
        let depth = lp::covering_depth(g.nyquist() as f64 * 2f64.sqrt());
        for k in 0..=g.nyquist() {
            let total: f64 = (0..=depth).map(|j| lp::lp_symbol(j, k as f64)).sum();
            assert!((total - 1.0).abs() < 1e-14, "n = {k}: {total}");
        }
    }
}

#[test]
fn product_examples() {
    let g = grid1(16);
    let e1 = SpectralField::mode(g, [1, 0, 0]).unwrap();
    let e2 = SpectralField::mode(g, [2, 0, 0]).unwrap();
    let e3 = SpectralField::mode(g, [3, 0, 0]).unwrap();
    assert!(pointwise_product(&e1, &e2).unwrap().max_abs_diff(&e3).unwrap() < 1e-15);
    let f = common::random_field(g, 4, 1.0, 2);
    let one = SpectralField::constant(g, 1.0);
    assert!(pointwise_product(&f, &one).unwrap().max_abs_diff(&f).unwrap() < 1e-15);
}

#[test]
fn product_matches_direct_convolution() {
    for (dim, n, band) in [(1usize, 32usize, 8i64), (2, 16, 8), (2, 32, 8)] {
        let g = TorusGrid::new(dim, n).unwrap();
        let f = common::random_field(g, band, 0.0, 10 + dim as u64);
        let h = common::random_field(g, band, 0.0, 20 + dim as u64);
        let prod = pointwise_product(&f, &h).unwrap();
        let direct = common::convolve(&f, &h);
        let pg = *prod.grid();
        let mut worst = 0.0f64;
        for k in 0..pg.len() {
            let w = pg.wavenumber(k);
            let want = direct.get(&w).copied().unwrap_or_default();
            worst = worst.max((prod.coeffs()[k] - want).norm());
        }
        for w in direct.keys() {
            assert!(pg.index_of(*w).is_some(), "product grid misses {w:?}");
        }
        assert!(worst < 1e-13, "dim {dim}: {worst:e}");
    }
}

#[test]
fn product_respects_point_limit() {
    let g = grid1(64);
    let f = common::random_field(g, 31, 0.0, 3);
    assert!(matches!(pointwise_product_with_limit(&f, &f, 64), Err(Error::Resource(_))));
}

#[test]
fn norm_examples() {
    let g = TorusGrid::new(2, 16).unwrap();
    let one = SpectralField::constant(g, 1.0);
    for p in [0.5, 1.0, 2.0, 7.0, f64::INFINITY] {
        assert!((lebesgue_norm(&one, Exponent::new(p).unwrap()).unwrap() - 1.0).abs() < 1e-14);
    }
    let e = SpectralField::mode(g, [2, -3, 0]).unwrap();
    assert!((lebesgue_norm(&e, Exponent::TWO).unwrap() - 1.0).abs() < 1e-14);
    assert!(matches!(lebesgue_norm(&one, Exponent::new(0.4).unwrap()), Err(Error::Domain(_))));
}

#[test]
fn half_norm_of_cosine_matches_quadrature() {
    // ∫|cos 2πx|^{1/2} dx = Γ(3/4) / (√π Γ(5/4)).
    let exact = (gamma(0.75) / (PI.sqrt() * gamma(1.25))).powi(2);
    let oracle = common::integrate_unit(|x| (2.0 * PI * x).cos().abs().sqrt(), 4096).powi(2);
    assert!((oracle - exact).abs() < 1e-8, "{oracle} vs {exact}");
    let f = SpectralField::cos_mode(grid1(1 << 20), [1, 0, 0]).unwrap();
    let v = lebesgue_norm(&f, Exponent::new(0.5).unwrap()).unwrap();
    assert!((v - oracle).abs() < 1e-8, "{v} vs {oracle}");
}

#[test]
fn sup_norm_matches_dense_search() {
    let g = grid1(64);
    for seed in 0..5 {
        let f = common::random_field(g, 8, 1.0, 40 + seed);
        let v = lebesgue_norm(&f, Exponent::INFINITY).unwrap();
        let oracle = common::sup_abs(&common::Poly::from_field(&f));
        assert!((v - oracle).abs() < 1e-12 * oracle, "{v} vs {oracle}");
    }
}

#[test]
fn parseval_and_roundtrip() {
    for dim in 1..=3usize {
        let n = [256, 32, 16][dim - 1];
        let g = TorusGrid::new(dim, n).unwrap();
        for seed in 0..10 {
            let f = common::random_field(g, (n / 4) as i64, 0.5, seed);
            let l2 = lebesgue_norm(&f, Exponent::TWO).unwrap();
            assert!((l2 - coefficient_l2(&f)).abs() < 1e-10 * l2);
            let back = SpectralField::from_complex_samples(g, f.samples().to_vec()).unwrap();
            let worst = back
                .coeffs()
                .iter()
                .zip(f.coeffs())
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max);
            assert!(worst < 1e-12 * f.max_abs_coeff());
        }
    }
}

#[test]
fn norm_equivalence_on_mean_zero_fields() {
    // ‖J^s f‖_p / ‖D^s f‖_p stays in a fixed window as the band doubles.
    for s in [0.5, 1.0, 2.0] {
        for p in [2.0, 4.0] {
            let p = Exponent::new(p).unwrap();
            let mut extremes = Vec::new();
            for band in [16i64, 32] {
                let g = grid1(8 * band as usize);
                let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
                for seed in 0..20 {
                    let f = project_nonzero(&common::random_field(g, band, 1.0, 100 + seed));
                    let j = lebesgue_norm(&bessel_operator(&f, s).unwrap(), p).unwrap();
                    let d = lebesgue_norm(&fractional_laplacian(&f, s).unwrap(), p).unwrap();
                    lo = lo.min(j / d);
                    hi = hi.max(j / d);
                }
                assert!(lo >= 1.0 - 1e-12 && hi.is_finite());
                extremes.push((lo, hi));
            }
            let spread_hi = extremes[1].1.max(extremes[0].1) / extremes[1].1.min(extremes[0].1);
            let spread_lo = extremes[1].0.max(extremes[0].0) / extremes[1].0.min(extremes[0].0);
            assert!(spread_hi < 2.0 && spread_lo < 2.0, "s {s} p {p}: {extremes:?}");
        }
    }
}

#[test]
fn field_io_round_trips() {
    let g = TorusGrid::with_period(2, 8, 3.0).unwrap();
    let f = common::random_field(g, 2, 0.0, 5);
    let mut buf = Vec::new();
    io::write_field(&f, &mut buf).unwrap();
    let back = io::read_field(buf.as_slice()).unwrap();
    assert_eq!(back.grid(), f.grid());
    assert!(back.max_abs_diff(&f).unwrap() < 1e-14);
    assert!(matches!(io::read_field(&b"nonsense\n"[..]), Err(Error::Parse(_))));
}

fn arb_field(n: usize) -> impl Strategy<Value = SpectralField> {
    (any::<u64>(), 1i64..(n as i64 / 4)).prop_map(move |(seed, band)| common::random_field(grid1(n), band, 0.5, seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn mean_split_is_exact(f in arb_field(64)) {
        let sum = project_mean(&f).add(&project_nonzero(&f)).unwrap();
        prop_assert!(sum.max_abs_diff(&f).unwrap() < 1e-15);
    }

    #[test]
    fn low_plus_tail_is_identity(f in arb_field(64), j2 in 0u32..9) {
        let sum = lp_low(&f, j2).unwrap().add(&lp_tail(&f, j2).unwrap()).unwrap();
        prop_assert!(sum.max_abs_diff(&f).unwrap() < 1e-14);
    }

    #[test]
    fn product_commutes(f in arb_field(32), g in arb_field(32)) {
        let a = pointwise_product(&f, &g).unwrap();
        let b = pointwise_product(&g, &f).unwrap();
        prop_assert!(a.max_abs_diff(&b).unwrap() < 1e-13);
    }

    #[test]
    fn multipliers_are_linear(f in arb_field(64), g in arb_field(64), s in 0.0f64..3.0, a in -2.0f64..2.0) {
        let lhs = fractional_laplacian(&f.linear_combination(a, &g, 1.0).unwrap(), s).unwrap();
        let rhs = fractional_laplacian(&f, s).unwrap().linear_combination(a, &fractional_laplacian(&g, s).unwrap(), 1.0).unwrap();
        prop_assert!(lhs.max_abs_diff(&rhs).unwrap() <= 1e-12 * lhs.max_abs().max(1.0));
    }

    #[test]
    fn upsampling_is_reversible(f in arb_field(32)) {
        let up = f.resample(128).unwrap();
        let back = up.resample(32).unwrap();
        prop_assert!(back.max_abs_diff(&f).unwrap() < 1e-14);
        for k in 0..32 {
            prop_assert!((up.samples()[4 * k] - f.samples()[k]).norm() < 1e-13);
        }
    }

    #[test]
    fn norms_are_nested(f in arb_field(64), p in 0.5f64..8.0, dq in 0.0f64..4.0) {
        let a = lebesgue_norm(&f, Exponent::new(p).unwrap()).unwrap();
        let b = lebesgue_norm(&f, Exponent::new(p + dq).unwrap()).unwrap();
        prop_assert!(a <= b * (1.0 + 1e-12));
    }
}
