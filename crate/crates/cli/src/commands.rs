use clap::Args;
use torus_leibniz::commutator::{commutator_ratio_sweep, paraproduct_split, CommutatorProbe, SweepReport};
use torus_leibniz::harness::{
    check_leibniz_conditions, check_product_conditions, estimate_constant, generate_family, sharpness_scan,
    ConditionCase, ConstantEstimate, ExponentTuple, FamilyKind, FunctionFamily, Manifold, Operator, ProductTuple,
    Profile, Report, SharpnessConfig, SharpnessScan, Target,
};
use torus_leibniz::kernels::{decay_bound_check, kernel_multiplier_consistency, DecayFitReport, KernelKind, KernelSpec};
use torus_leibniz::quadrature::QuadratureConfig;
use torus_leibniz::spectral::{fractional_laplacian, lebesgue_norm, pointwise_product};
use torus_leibniz::transference::{poisson_check, transference_identity_check, CutoffFamily, PoissonProfile, TransferenceReport};
use torus_leibniz::{Error, Exponent, Result, SpectralField, TorusGrid};

fn with_dim(text: &str, dim: usize) -> String {
    if text.split(',').any(|kv| kv.trim().starts_with("d=")) {
        text.to_string()
    } else {
        format!("{text},d={dim}")
    }
}

fn leibniz_tuple(text: &str, dim: usize) -> Result<ExponentTuple> {
    with_dim(text, dim).parse()
}

fn product_tuple(text: &str, dim: usize) -> Result<ProductTuple> {
    with_dim(text, dim).parse()
}

fn families(specs: &[String]) -> Result<Vec<FunctionFamily>> {
    specs.iter().map(|s| s.parse()).collect()
}

fn require_accepted(case: &ConditionCase, what: &str) -> Result<()> {
    if case.verdict.is_accepted() {
        return Ok(());
    }
    let violated: Vec<String> = case.violated().map(|c| c.to_string()).collect();
    Err(Error::Domain(format!("{what} is rejected: {}", violated.join("; "))))
}

fn add_conditions(report: &mut Report, case: &ConditionCase) {
    if let Some(t) = case.threshold {
        report.field("threshold", t);
    }
    if let Some(w) = &case.witnesses {
        report
            .field("witness_q_tilde", w.q_tilde)
            .field("witness_r_tilde_dual", w.r_tilde_dual)
            .field("sobolev_slack", format!("{:.6e},{:.6e}", w.sobolev_slack[0], w.sobolev_slack[1]));
    }
    for c in &case.reasons {
        report.field(
            format!("clause.{}", c.name),
            format!("{} ({})", if c.satisfied { "holds" } else { "violated" }, c.detail),
        );
    }
}

fn add_estimate(report: &mut Report, est: &ConstantEstimate, prefix: &str) {
    report
        .field(format!("{prefix}target"), est.target)
        .field(format!("{prefix}verdict"), est.verdict)
        .field(format!("{prefix}pairs"), est.pairs.len())
        .field(format!("{prefix}degenerate_pairs"), est.degenerate_pairs)
        .field(format!("{prefix}best_ratio"), format!("{:.12e}", est.best_ratio))
        .field(format!("{prefix}argmax"), &est.argmax)
        .field(format!("{prefix}argmax_seed"), est.argmax_seed)
        .field(format!("{prefix}curve_spread"), format!("{:.6}", est.curve_spread()));
}

fn curve_report(report: &mut Report, est: &ConstantEstimate) {
    report.set_csv(ConstantEstimate::CSV_HEADER, est.csv_rows()).set_plot(
        "bandwidth",
        "running_max_ratio",
        est.bandwidth_curve.iter().map(|(b, r)| (*b as f64, *r)).collect(),
    );
}

#[derive(Args, Debug)]
pub struct EstimateOptions {
    /// Test-function families, e.g. `random:alpha=2,seed=7`; repeatable.
    #[arg(long = "family", default_values_t = vec!["random:alpha=1".to_string()])]
    pub families: Vec<String>,
    /// Bandwidths of the plateau sweep; repeatable.
    #[arg(long = "bandwidth", default_values_t = vec![8usize, 16, 32])]
    pub bandwidths: Vec<usize>,
}

#[derive(Args, Debug)]
pub struct VerifyLeibniz {
    /// Exponent tuple, e.g. `s=1,p1=4,q1=4,p2=4,q2=4,r=2`.
    #[arg(long)]
    pub tuple: String,
    #[arg(long, default_value_t = 1)]
    pub dim: usize,
    /// `D` for the homogeneous derivative, `J` for the Bessel one.
    #[arg(long, default_value = "D")]
    pub op: Operator,
    #[command(flatten)]
    pub estimate: EstimateOptions,
}

pub fn verify_leibniz(a: &VerifyLeibniz, command: &str) -> Result<Report> {
    let tuple = leibniz_tuple(&a.tuple, a.dim)?;
    let case = check_leibniz_conditions(&tuple);
    require_accepted(&case, &format!("tuple {tuple}"))?;
    let target = Target::Leibniz { tuple, op: a.op };
    let est = estimate_constant(&target, &families(&a.estimate.families)?, &a.estimate.bandwidths)?;
    let mut report = Report::new("verify-leibniz", command);
    add_estimate(&mut report, &est, "");
    add_conditions(&mut report, &case);
    curve_report(&mut report, &est);
    Ok(report)
}

#[derive(Args, Debug)]
pub struct VerifyProduct {
    /// Exponent tuple, e.g. `s=0.5,p=inf,q=2,r=2`.
    #[arg(long)]
    pub tuple: String,
    #[arg(long, default_value_t = 1)]
    pub dim: usize,
    #[arg(long, default_value = "torus")]
    pub manifold: Manifold,
    #[command(flatten)]
    pub estimate: EstimateOptions,
}

pub fn verify_product(a: &VerifyProduct, command: &str) -> Result<Report> {
    let tuple = product_tuple(&a.tuple, a.dim)?;
    let case = check_product_conditions(&tuple, a.manifold);
    require_accepted(&case, &format!("tuple {a_tuple} on the {m}", a_tuple = a.tuple, m = a.manifold))?;
    let target = Target::Product {
        tuple,
        manifold: a.manifold,
    };
    let est = estimate_constant(&target, &families(&a.estimate.families)?, &a.estimate.bandwidths)?;
    let mut report = Report::new("verify-product", command);
    add_estimate(&mut report, &est, "");
    add_conditions(&mut report, &case);
    curve_report(&mut report, &est);
    Ok(report)
}

#[derive(Args, Debug)]
pub struct ExponentCheck {
    #[arg(long)]
    pub tuple: String,
    /// Check the product-estimate conditions instead of the Leibniz ones.
    #[arg(long)]
    pub product: bool,
    #[arg(long, default_value = "torus")]
    pub manifold: Manifold,
    #[arg(long, default_value_t = 1)]
    pub dim: usize,
}

pub fn exponent_check(a: &ExponentCheck, command: &str) -> Result<Report> {
    let (label, case) = if a.product {
        let t = product_tuple(&a.tuple, a.dim)?;
        (format!("product[{}] {}", a.manifold, a.tuple), check_product_conditions(&t, a.manifold))
    } else {
        let t = leibniz_tuple(&a.tuple, a.dim)?;
        (format!("leibniz {t}"), check_leibniz_conditions(&t))
    };
    let mut report = Report::new("exponent-check", command);
    report.field("tuple", label).field("verdict", case.verdict);
    add_conditions(&mut report, &case);
    let rows = case
        .reasons
        .iter()
        .map(|c| format!("{},{},\"{}\"", c.name, c.satisfied, c.detail))
        .collect();
    report.set_csv("clause,satisfied,detail", rows);
    Ok(report)
}

#[derive(Args, Debug)]
pub struct EstimateConstant {
    /// Exponent tuples; repeatable. All are validated before any estimate runs.
    #[arg(long = "tuple", required = true)]
    pub tuples: Vec<String>,
    /// Estimate product constants instead of Leibniz constants.
    #[arg(long)]
    pub product: bool,
    #[arg(long, default_value = "torus")]
    pub manifold: Manifold,
    #[arg(long, default_value = "D")]
    pub op: Operator,
    #[arg(long, default_value_t = 1)]
    pub dim: usize,
    #[command(flatten)]
    pub estimate: EstimateOptions,
}

pub fn estimate_constants(a: &EstimateConstant, command: &str) -> Result<Report> {
    let targets = a
        .tuples
        .iter()
        .map(|text| {
            let target = if a.product {
                Target::Product {
                    tuple: product_tuple(text, a.dim)?,
                    manifold: a.manifold,
                }
            } else {
                Target::Leibniz {
                    tuple: leibniz_tuple(text, a.dim)?,
                    op: a.op,
                }
            };
            require_accepted(&target.conditions(), &format!("tuple {text}"))?;
            Ok(target)
        })
        .collect::<Result<Vec<_>>>()?;
    let fams = families(&a.estimate.families)?;
    let mut report = Report::new("estimate-constant", command);
    let mut rows = Vec::new();
    for (i, target) in targets.iter().enumerate() {
        let est = estimate_constant(target, &fams, &a.estimate.bandwidths)?;
        add_estimate(&mut report, &est, &format!("[{i}]."));
        rows.extend(est.csv_rows());
    }
    report.set_csv(ConstantEstimate::CSV_HEADER, rows);
    Ok(report)
}

#[derive(Args, Debug)]
pub struct SharpnessScanArgs {
    /// Template tuple with r < 1 and finite p_j, q_j; its `s` is replaced.
    #[arg(long)]
    pub tuple: String,
    #[arg(long, default_value_t = 1)]
    pub dim: usize,
    /// Orders to scan; defaults to threshold - 0.2, threshold + 0.5 and 2.
    #[arg(long = "s")]
    pub orders: Vec<f64>,
    #[arg(long = "lambda", default_values_t = vec![8.0, 16.0, 32.0, 64.0])]
    pub lambdas: Vec<f64>,
    #[arg(long, default_value = "gaussian")]
    pub profile: Profile,
    #[arg(long, default_value_t = 1)]
    pub count: usize,
    #[arg(long, default_value = "D")]
    pub op: Operator,
}

pub fn sharpness(a: &SharpnessScanArgs, command: &str) -> Result<Report> {
    let template = leibniz_tuple(&a.tuple, a.dim)?;
    let star = template.threshold();
    let orders = if a.orders.is_empty() {
        vec![star - 0.2, star + 0.5, 2.0]
    } else {
        a.orders.clone()
    };
    let cfg = SharpnessConfig {
        lambdas: a.lambdas.clone(),
        profile: a.profile,
        count: a.count,
        op: a.op,
    };
    let scan = sharpness_scan(&template, &orders, &cfg)?;
    let mut report = Report::new("sharpness-scan", command);
    report.field("template", template).field("threshold", star);
    for row in &scan.rows {
        report.field(format!("growth[s={}]", row.s), format!("{:.6e} ({})", row.growth, row.verdict));
    }
    report.set_csv(SharpnessScan::CSV_HEADER, scan.csv_rows());
    Ok(report)
}

#[derive(Args, Debug)]
pub struct KernelDecay {
    #[arg(long, default_value = "bessel_derivative")]
    pub kind: KernelKind,
    /// Order `sigma` or `s` of the kernel.
    #[arg(long)]
    pub order: f64,
    #[arg(long, default_value_t = 1)]
    pub dim: usize,
    /// Inner cutoff; every sample radius must be at least this.
    #[arg(long, default_value_t = 1.0)]
    pub c0: f64,
    #[arg(long, default_value_t = 1.0)]
    pub rmin: f64,
    #[arg(long, default_value_t = 10.0)]
    pub rmax: f64,
    #[arg(long, default_value_t = 37)]
    pub samples: usize,
}

pub fn kernel_decay(a: &KernelDecay, command: &str) -> Result<Report> {
    if a.samples < 2 || a.rmax.partial_cmp(&a.rmin) != Some(std::cmp::Ordering::Greater) {
        return Err(Error::Config("need at least two samples on a non-empty radius range".into()));
    }
    let spec = KernelSpec::new(a.kind, a.order, a.dim)?;
    let step = (a.rmax - a.rmin) / (a.samples - 1) as f64;
    let radii: Vec<f64> = (0..a.samples).map(|i| a.rmin + step * i as f64).collect();
    let fits = decay_bound_check(&spec, a.c0, &radii, &QuadratureConfig::default())?;
    let mut report = Report::new("kernel-decay", command);
    for fit in &fits {
        let key = fit.bound.name();
        report
            .field(format!("{key}.fitted_constant"), format!("{:.12e}", fit.fitted_constant))
            .field(format!("{key}.max_ratio_location"), fit.max_ratio_location)
            .field(format!("{key}.non_increasing"), fit.is_non_increasing())
            .field(format!("{key}.violation"), fit.violation);
    }
    report
        .set_csv(DecayFitReport::CSV_HEADER, fits.iter().map(|f| f.csv_row()).collect())
        .set_plot("radius", "ratio_to_power_law", fits[0].profile.clone());
    Ok(report)
}

#[derive(Args, Debug)]
pub struct KernelConsistency {
    #[arg(long = "sigma", default_values_t = vec![0.5, 1.0, 2.0])]
    pub sigmas: Vec<f64>,
    #[arg(long, default_value_t = 40.0)]
    pub period: f64,
    /// Sample points on the period.
    #[arg(long, default_value_t = 4096)]
    pub n: usize,
}

pub fn kernel_consistency(a: &KernelConsistency, command: &str) -> Result<Report> {
    let cfg = QuadratureConfig::default();
    let mut report = Report::new("kernel-consistency", command);
    let mut rows = Vec::new();
    for &sigma in &a.sigmas {
        let r = kernel_multiplier_consistency(sigma, 1, a.period, a.n, &cfg)?;
        report.field(format!("max_rel_error[sigma={sigma}]"), format!("{:.6e}", r.max_rel_error));
        rows.push(format!(
            "{},{},{},{:.12e},{},{:.15e}",
            sigma, r.period, r.n_per_axis, r.max_rel_error, r.worst_wavenumber, r.symbol_at_zero
        ));
    }
    report.set_csv("sigma,period,n,max_rel_error,worst_wavenumber,symbol_at_zero", rows);
    Ok(report)
}

#[derive(Args, Debug)]
pub struct PoissonCheck {
    /// `gaussian` or `bessel2`.
    #[arg(long, default_value = "gaussian")]
    pub profile: String,
    #[arg(long, default_value_t = 1)]
    pub dim: usize,
    #[arg(long, default_value_t = 6)]
    pub radius: usize,
    /// Test point, comma-separated coordinates; repeatable. Defaults to the
    /// diagonal points 0, 0.3 and 0.7.
    #[arg(long = "point")]
    pub points: Vec<String>,
}

pub fn poisson(a: &PoissonCheck, command: &str) -> Result<Report> {
    let profile = match a.profile.parse::<PoissonProfile>()? {
        PoissonProfile::Gaussian { .. } => PoissonProfile::Gaussian { dim: a.dim },
        other => other,
    };
    let points: Vec<Vec<f64>> = if a.points.is_empty() {
        [0.0, 0.3, 0.7].iter().map(|&x| vec![x; profile.dim()]).collect()
    } else {
        a.points
            .iter()
            .map(|p| {
                p.split(',')
                    .map(|v| v.trim().parse::<f64>().map_err(|e| Error::Parse(format!("bad point '{p}': {e}"))))
                    .collect()
            })
            .collect::<Result<_>>()?
    };
    let r = poisson_check(profile, a.radius, &points)?;
    let mut report = Report::new("poisson-check", command);
    report
        .field("profile", profile.name())
        .field("dim", profile.dim())
        .field("radius", r.radius)
        .field("max_residual", format!("{:.6e}", r.max_residual))
        .field("raw_residual", format!("{:.6e}", r.raw_residual))
        .field("spatial_tail", format!("{:.6e}", r.spatial_tail))
        .field("fourier_tail", format!("{:.6e}", r.fourier_tail));
    let rows = points
        .iter()
        .zip(&r.residuals)
        .map(|(p, res)| {
            let coords: Vec<String> = p.iter().map(f64::to_string).collect();
            format!("\"{}\",{:.12e}", coords.join(","), res)
        })
        .collect();
    report.set_csv("point,residual", rows);
    Ok(report)
}

#[derive(Args, Debug)]
pub struct TransferenceCheck {
    #[arg(long, default_value_t = 1.0)]
    pub s: f64,
    /// Embedding period `L`.
    #[arg(long, default_value_t = 16)]
    pub period: usize,
    /// Lattice cutoff `K`; needs `2K + 1 <= L`.
    #[arg(long, default_value_t = 7)]
    pub cutoff: usize,
    #[arg(long, default_value_t = 1e-5)]
    pub tolerance: f64,
    /// `cos` for f = g = cos 2πx, or `random` for mean-zero random fields.
    #[arg(long, default_value = "cos")]
    pub field: String,
    #[arg(long, default_value_t = 256)]
    pub n: usize,
    #[arg(long, default_value_t = 8)]
    pub band: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Overlap margin of the cutoff family.
    #[arg(long, default_value_t = 0.0)]
    pub margin: f64,
}

pub fn transference(a: &TransferenceCheck, command: &str) -> Result<Report> {
    let grid = TorusGrid::new(1, a.n)?;
    let (f, g, seed) = match a.field.as_str() {
        "cos" => {
            let c = SpectralField::cos_mode(grid, [1, 0, 0])?;
            (c.clone(), c, None)
        }
        "random" => {
            let fam = FunctionFamily::new(FamilyKind::RandomDecay { alpha: 1.0 }, a.band, a.seed, 1).mean_zero(true);
            let f = generate_family(&fam, grid)?.remove(0);
            let g = generate_family(&fam.with_seed(a.seed.wrapping_add(1)), grid)?.remove(0);
            (f, g, Some(a.seed))
        }
        other => return Err(Error::Config(format!("unknown field '{other}' (expected cos or random)"))),
    };
    let cuts = CutoffFamily::new(a.margin)?;
    let r = transference_identity_check(&f, &g, &cuts, a.period, a.s, a.cutoff, a.tolerance)?;
    let mut report = Report::new("transference-check", command);
    report
        .field("field", &a.field)
        .field("s", r.s)
        .field("period", r.period)
        .field("lattice_cutoff", r.lattice_cutoff)
        .field("max_error", format!("{:.6e}", r.max_error))
        .field("mean_error", format!("{:.6e}", r.mean_error))
        .field("tail_bound", format!("{:.6e}", r.tail_bound))
        .field("tolerance", r.tolerance)
        .field("status", r.status);
    report.set_csv(TransferenceReport::CSV_HEADER, vec![r.csv_row(seed)]);
    Ok(report)
}

#[derive(Args, Debug)]
pub struct CommutatorSweep {
    #[arg(long, default_value_t = 1.0)]
    pub s: f64,
    #[arg(long, default_value_t = 0)]
    pub jmin: u32,
    #[arg(long, default_value_t = 8)]
    pub jmax: u32,
    #[arg(long, default_value = "inf")]
    pub p: Exponent,
    #[arg(long, default_value = "2")]
    pub q: Exponent,
    #[arg(long, default_value = "2")]
    pub r: Exponent,
    #[arg(long, default_value_t = 10)]
    pub samples: usize,
    #[arg(long, default_value_t = 64)]
    pub band: usize,
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

pub fn commutator(a: &CommutatorSweep, command: &str) -> Result<Report> {
    let probe = CommutatorProbe::new(a.s, a.jmin, a.jmax, a.p, a.q, a.r)?;
    let fam = FunctionFamily::new(FamilyKind::RandomDecay { alpha: a.alpha }, a.band, a.seed, a.samples);
    let grid = TorusGrid::new(1, fam.grid_resolution())?;
    let fs = generate_family(&fam, grid)?;
    let gs = generate_family(&fam.with_seed(a.seed.wrapping_add(1)), grid)?;
    let samples: Vec<_> = fs
        .into_iter()
        .zip(gs)
        .enumerate()
        .map(|(i, (f, g))| (f, g, a.seed.wrapping_add(i as u64)))
        .collect();
    let sweep = commutator_ratio_sweep(&probe, &samples)?;
    let mut report = Report::new("commutator-sweep", command);
    report
        .field("s", a.s)
        .field("exponents", format!("p={},q={},r={}", a.p, a.q, a.r))
        .field("samples", samples.len())
        .field("global_max", format!("{:.6e}", sweep.global_max))
        .field("j_spread", format!("{:.6}", sweep.j_spread()));
    report
        .set_csv(SweepReport::CSV_HEADER, sweep.csv_rows())
        .set_plot("j", "max_ratio", sweep.summaries.iter().map(|s| (s.j as f64, s.max)).collect());
    Ok(report)
}

#[derive(Args, Debug)]
pub struct ParaproductCheck {
    #[arg(long, default_value_t = 1.0)]
    pub s: f64,
    #[arg(long, default_value_t = 10)]
    pub samples: usize,
    /// Bandwidth of the random fields.
    #[arg(long, default_value_t = 60)]
    pub band: usize,
    #[arg(long, default_value_t = 512)]
    pub n: usize,
    /// Bandwidth of the smooth cutoff ψ.
    #[arg(long, default_value_t = 64)]
    pub psi_band: usize,
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

pub fn paraproduct(a: &ParaproductCheck, command: &str) -> Result<Report> {
    let grid = TorusGrid::new(1, a.n)?;
    let psi = CutoffFamily::default().psi_field(1, grid, a.psi_band)?;
    let fam = FunctionFamily::new(FamilyKind::RandomDecay { alpha: a.alpha }, a.band, a.seed, a.samples);
    let two = Exponent::TWO;
    let mut worst = 0.0f64;
    let mut rows = Vec::new();
    for (i, f) in generate_family(&fam, grid)?.iter().enumerate() {
        let split = paraproduct_split(&psi, f, a.s)?;
        let want = fractional_laplacian(&pointwise_product(&psi, f)?, a.s)?;
        let err = split.total()?.max_abs_diff(&want)?;
        let rel = if want.max_abs() > 0.0 { err / want.max_abs() } else { err };
        worst = worst.max(rel);
        rows.push(format!(
            "{i},{:.12e},{:.12e},{:.12e},{:.12e},{:.12e}",
            err,
            rel,
            lebesgue_norm(&split.a11, two)?,
            lebesgue_norm(&split.a12, two)?,
            lebesgue_norm(&split.a2, two)?
        ));
    }
    let mut report = Report::new("paraproduct-check", command);
    report
        .field("s", a.s)
        .field("samples", a.samples)
        .field("max_relative_error", format!("{worst:.6e}"));
    report.set_csv("sample,max_error,relative_error,a11_l2,a12_l2,a2_l2", rows);
    Ok(report)
}
