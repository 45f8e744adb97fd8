//! The four subcommands, each turning a validated config into a [`Report`].

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rug::{Float, Rational};

use sheffer_core::family::{
    analytic_bins, critical_params, density_mass, experiment_from_poly, histogram_distance, hn_polys, limiting_density,
    predicted_real_limits, structure_check, zeta, Experiment, FamilyParams, LineTolerance, Regime,
};
use sheffer_core::locus::{appell_line, classify, default_tol, LocusReport};
use sheffer_core::{
    cognate_map, conjugate_closure, find_roots, group_inv, group_mul, sheffer_poly, umbral_compose, vieta_check,
    DensePolynomial, RiordanPair, RootSet, Series, ShefferPair,
};

use crate::config::{Command, ExperimentConfig, RiordanOp, DEFAULT_BINS, DEFAULT_ORDER};
use crate::error::{CliError, CliResult};
use crate::output::{finite, shortest_decimal};
use crate::report::*;

/// Mass of the limiting density over `(0, T)`.
const DENSITY_MASS: f64 = 0.5;
const DENSITY_MASS_TOL: f64 = 1e-8;
/// Order of random pairs in `riordan check` when none is given.
const CHECK_ORDER: usize = 10;

pub fn execute(cfg: &ExperimentConfig) -> CliResult<Report> {
    cfg.validate()?;
    let (results, checks) = match cfg.command {
        Command::Generate => generate(cfg)?,
        Command::Zeros => zeros(cfg)?,
        Command::Density => density(cfg)?,
        Command::Riordan => riordan(cfg)?,
    };
    Ok(Report { config: cfg.clone(), results, checks })
}

fn pool(cfg: &ExperimentConfig) -> CliResult<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new().num_threads(cfg.jobs).build().map_err(|e| CliError::config("jobs", e.to_string()))
}

fn coeff_rows(n: usize, poly: &DensePolynomial<Rational>) -> impl Iterator<Item = CoeffRow> + '_ {
    (0..=n).map(move |k| CoeffRow { n, k, value: poly.coeffs().get(k).map(|c| c.to_string()).unwrap_or_else(|| "0".into()) })
}

fn generate(cfg: &ExperimentConfig) -> CliResult<(Results, Vec<Check>)> {
    let n = cfg.max_n();
    let (label, polys) = match (&cfg.pair, &cfg.family) {
        (Some(spec), _) => {
            let pair = spec.build(n.max(1), "pair")?;
            let polys = (0..=n).map(|m| sheffer_poly(&pair, m)).collect::<Result<Vec<_>, _>>().map_err(|e| CliError::from_core("n", e))?;
            (pair.label, polys)
        }
        (None, Some(family)) => {
            let params = family.build()?;
            (family_label(cfg), hn_polys(&params, n).map_err(|e| CliError::from_core("family", e))?)
        }
        (None, None) => unreachable!("validated"),
    };
    let bad: Vec<usize> = polys.iter().enumerate().filter(|(m, p)| p.degree() != *m || p.is_zero()).map(|(m, _)| m).collect();
    let mut checks = vec![Check::new("degree", bad.is_empty(), format!("rows with degree != n: {bad:?}"))];
    if let Some(family) = &cfg.family {
        let c = family.build()?.c();
        let failed: Vec<usize> = (1..=n).filter(|&m| !structure_check(&polys[m], m, &c).passed()).collect();
        checks.push(Check::new("structure", failed.is_empty(), format!("parity/degree/sign failures at n = {failed:?}")));
    }
    let rows = polys.iter().enumerate().flat_map(|(m, p)| coeff_rows(m, p)).collect();
    Ok((Results::Generate(GenerateResults { label, rows }), checks))
}

fn family_label(cfg: &ExperimentConfig) -> String {
    match &cfg.family {
        Some(crate::config::FamilySpec::Preset { name }) => name.clone(),
        Some(crate::config::FamilySpec::Custom { z1, z2, .. }) => format!("family({z1},{z2})"),
        None => String::new(),
    }
}

/// Roots of one polynomial with their classification against a line.
struct Located {
    n: usize,
    poly: DensePolynomial<Rational>,
    roots: RootSet,
    report: LocusReport,
    real_limits: Option<Vec<Rational>>,
    stragglers_allowed: usize,
}

fn locate_pair(cfg: &ExperimentConfig, n: usize) -> CliResult<Located> {
    let pair = cfg.pair.as_ref().expect("validated").build(n, "pair")?;
    let poly = sheffer_poly(&pair, n).map_err(|e| CliError::from_core("n", e))?;
    let line = match cfg.line_rational()? {
        Some(line) => line,
        None if pair.is_appell() => appell_line(&pair).map(|l| l.line).unwrap_or_default(),
        None => Rational::new(),
    };
    let roots = find_roots(&poly, &cfg.root_config()).map_err(|e| CliError::from_core("n", e))?;
    let report = classify(&roots, &line, default_tol(&roots)).map_err(|e| CliError::from_core("line", e))?;
    Ok(Located { n, poly, roots, report, real_limits: None, stragglers_allowed: 0 })
}

fn locate_family(cfg: &ExperimentConfig, params: &FamilyParams, n: usize, poly: DensePolynomial<Rational>) -> CliResult<Located> {
    let line = LineTolerance { k: cfg.line_k };
    let exp = experiment_from_poly(params, n, poly, &cfg.root_config(), line).map_err(|e| CliError::from_core("n", e))?;
    let limits = if params.c_plus_p() > 0 { predicted_real_limits(params) } else { Vec::new() };
    Ok(Located { n, poly: exp.poly, roots: exp.roots, report: exp.report, real_limits: Some(limits), stragglers_allowed: 2 })
}

/// Runs every degree of the ladder, in parallel up to `jobs`.
fn ladder<T: Send>(cfg: &ExperimentConfig, run: impl Fn(usize) -> CliResult<T> + Sync) -> CliResult<Vec<T>> {
    let mut ns = cfg.n.clone();
    ns.sort_unstable();
    ns.dedup();
    pool(cfg)?.install(|| ns.par_iter().map(|&n| run(n)).collect())
}

fn family_polys(params: &FamilyParams, cfg: &ExperimentConfig) -> CliResult<Vec<DensePolynomial<Rational>>> {
    hn_polys(params, cfg.max_n()).map_err(|e| CliError::from_core("family", e))
}

fn zeros(cfg: &ExperimentConfig) -> CliResult<(Results, Vec<Check>)> {
    let (label, located) = match &cfg.family {
        Some(family) => {
            let params = family.build()?;
            let polys = family_polys(&params, cfg)?;
            let located = ladder(cfg, |n| locate_family(cfg, &params, n, polys[n].clone()))?;
            (family_label(cfg), located)
        }
        None => (cfg.pair.as_ref().expect("validated").label(), ladder(cfg, |n| locate_pair(cfg, n))?),
    };
    let mut checks = Vec::new();
    let mut runs = Vec::new();
    let mut zeros = Vec::new();
    for run in &located {
        checks.extend(root_checks(run, cfg));
        if let Some(family) = &cfg.family {
            let c = family.build()?.c();
            let s = structure_check(&run.poly, run.n, &c);
            checks.push(Check::new("structure", s.passed(), format!("n = {}: {s:?}", run.n)));
        }
        if cfg.expect_locus {
            checks.push(locus_check(run));
        }
        runs.push(summary(run));
        zeros.extend(run.report.roots.iter().zip(&run.roots.roots).map(|(r, root)| ZeroRow {
            n: run.n,
            re: shortest_decimal(r.value.real()),
            im: shortest_decimal(r.value.imag()),
            residual: finite(root.residual),
            error: finite(root.error),
            multiplicity: r.multiplicity,
            class: r.class.as_str().to_string(),
            certified: run.roots.certified,
        }));
    }
    Ok((Results::Zeros(ZerosResults { label, runs, zeros }), checks))
}

fn root_checks(run: &Located, cfg: &ExperimentConfig) -> Vec<Check> {
    let n = run.n;
    let vieta = vieta_check(&run.poly, &run.roots);
    let (closed, mismatch) = conjugate_closure(&run.roots);
    let tol = 10.0 * cfg.cert_tol * (1.0 + run.roots.max_modulus());
    vec![
        Check::new(CERTIFIED, run.roots.certified, format!("n = {n}: {} bits", run.roots.precision_bits)),
        Check::bound("vieta", vieta.sum_deviation.max(vieta.product_deviation), vieta.tolerance, format!("n = {n}")),
        Check {
            passed: closed,
            ..Check::bound("conjugate_closure", mismatch, tol, format!("n = {n}"))
        },
    ]
}

/// Pairs: every zero on the line. Families: the predicted real zeros, the
/// rest on the line up to two stragglers.
fn locus_check(run: &Located) -> Check {
    let r = &run.report;
    match &run.real_limits {
        None => {
            let off = r.total() - r.on_line();
            Check::new("locus", off == 0, format!("n = {}: {off} zeros off Re s = {}", run.n, r.line_c))
        }
        Some(limits) => {
            let real = r.real();
            let passed = real == limits.len() && r.other() <= run.stragglers_allowed;
            Check::new(
                "locus",
                passed,
                format!("n = {}: {real} real (predicted {}), {} off line (allowed {})", run.n, limits.len(), r.other(), run.stragglers_allowed),
            )
        }
    }
}

fn summary(run: &Located) -> LocusSummary {
    let r = &run.report;
    LocusSummary {
        n: run.n,
        line: r.line_c.to_string(),
        line_tol: r.line_tol,
        real_tol: r.real_tol,
        precision_bits: run.roots.precision_bits,
        certified: run.roots.certified,
        real: r.real(),
        on_line: r.on_line(),
        other: r.other(),
        max_residual: finite(run.roots.max_residual()),
        max_line_distance: r.of_class(sheffer_core::locus::ZeroClass::OnLine).map(|x| x.line_distance).fold(0.0, f64::max),
        real_limits: run.real_limits.as_ref().map(|v| v.iter().map(|x| x.to_string()).collect()),
    }
}

fn density(cfg: &ExperimentConfig) -> CliResult<(Results, Vec<Check>)> {
    let params = cfg.family.as_ref().expect("validated").build()?;
    let cp = critical_params(&params.z1, &params.z2, cfg.precision_bits).map_err(|e| CliError::from_core("family", e))?;
    let t = cp.t_f64();
    let mass = density_mass(&cp).map_err(|e| CliError::from_core("family", e))?;
    let mut checks = vec![Check::bound("mass", (mass - DENSITY_MASS).abs(), DENSITY_MASS_TOL, format!("integral over (0, T) = {mass}"))];

    let mut curve = Vec::new();
    if let Some(grid) = cfg.grid {
        let mut worst = 0.0f64;
        let mut negative = 0usize;
        for i in 1..=grid {
            let x = t * i as f64 / (grid + 1) as f64;
            let saddle = zeta(&Float::with_val(cp.prec(), x), &cp).map_err(|e| CliError::from_core("grid", e))?;
            worst = worst.max(saddle.residual);
            let density = limiting_density(x, &cp).map_err(|e| CliError::from_core("grid", e))?;
            negative += usize::from(density < 0.0);
            curve.push(DensityRow { x, density });
        }
        checks.push(Check::bound("saddle_residual", worst, sheffer_core::family::saddle_tolerance(cp.prec()), format!("{grid} grid points")));
        checks.push(Check::new("nonnegative", negative == 0, format!("{negative} negative values")));
    }

    let mut bins = Vec::new();
    let mut distances = Vec::new();
    if !cfg.n.is_empty() {
        let polys = family_polys(&params, cfg)?;
        let line = LineTolerance { k: cfg.line_k };
        let runs: Vec<Experiment> = ladder(cfg, |n| {
            experiment_from_poly(&params, n, polys[n].clone(), &cfg.root_config(), line).map_err(|e| CliError::from_core("n", e))
        })?;
        let analytic = analytic_bins(&cp, cfg.bins.unwrap_or(DEFAULT_BINS)).map_err(|e| CliError::from_core("bins", e))?;
        for run in &runs {
            checks.push(Check::new(CERTIFIED, run.roots.certified, format!("n = {}: {} bits", run.n, run.roots.precision_bits)));
            let d = histogram_distance(run.n, &run.t_values, &analytic).map_err(|e| CliError::from_core("n", e))?;
            bins.extend(d.bins.iter().map(|b| BinRow { n: d.n, bin_lo: b.lo, bin_hi: b.hi, empirical_mass: b.empirical, analytic_mass: b.analytic }));
            distances.push(DistanceSummary { n: d.n, l1: d.l1, outside: d.outside, heights: run.t_values.iter().filter(|&&t| t > 0.0).count() });
        }
        if cfg.expect_convergence {
            checks.push(convergence_check(&distances));
        }
    }
    let regime = match cp.regime {
        Regime::T1 => "T1",
        Regime::T2 => "T2",
    };
    let results = DensityResults {
        z1: params.z1.to_string(),
        z2: params.z2.to_string(),
        t,
        regime: regime.to_string(),
        mass,
        curve,
        bins,
        distances,
    };
    Ok((Results::Density(results), checks))
}

/// L1 distance at the largest degree strictly below that at the smallest.
fn convergence_check(distances: &[DistanceSummary]) -> Check {
    match (distances.first(), distances.last()) {
        (Some(first), Some(last)) if distances.len() > 1 => Check {
            value: Some(last.l1),
            tolerance: Some(first.l1),
            ..Check::new("convergence", last.l1 < first.l1, format!("L1 {} at n = {} vs {} at n = {}", last.l1, last.n, first.l1, first.n))
        },
        _ => Check::new("convergence", false, "needs at least two degrees"),
    }
}

fn series_rows(label: &str, pair: &RiordanPair<Rational>) -> Vec<SeriesRow> {
    [("g", pair.g()), ("f", pair.f())]
        .into_iter()
        .flat_map(|(name, s)| {
            s.coeffs().iter().enumerate().map(move |(k, c)| SeriesRow { pair: label.to_string(), series: name.to_string(), k, value: c.to_string() })
        })
        .collect()
}

fn riordan(cfg: &ExperimentConfig) -> CliResult<(Results, Vec<Check>)> {
    let op = cfg.riordan_op.expect("validated");
    let order = cfg.order.unwrap_or(if op == RiordanOp::Check { CHECK_ORDER } else { DEFAULT_ORDER });
    let core = |field: &'static str| move |e| CliError::from_core(field, e);
    let pair_a = cfg.pair.as_ref().map(|s| s.build(order, "pair")).transpose()?;
    let pair_b = cfg.pair_b.as_ref().map(|s| s.build(order, "pair_b")).transpose()?;
    let mut checks = Vec::new();
    let mut series = Vec::new();
    let mut matrix = Vec::new();
    match op {
        RiordanOp::Materialize => {
            let a = pair_a.expect("validated");
            let m = a.pair.materialize(order).map_err(core("order"))?;
            for (n, row) in m.rows().iter().enumerate() {
                matrix.extend(row.iter().enumerate().map(|(k, v)| CoeffRow { n, k, value: v.to_string() }));
            }
        }
        RiordanOp::Cognate => {
            let a = pair_a.expect("validated");
            let c = cognate_map(&a.pair).map_err(core("pair"))?;
            series = series_rows(&format!("{}-cognate", a.label), &c);
        }
        RiordanOp::Mul => {
            let (a, b) = (pair_a.expect("validated"), pair_b.expect("validated"));
            let ab = group_mul(&a.pair, &b.pair).map_err(core("pair"))?;
            let lhs = a.pair.materialize(order).and_then(|x| x.matmul(&b.pair.materialize(order)?)).map_err(core("order"))?;
            let rhs = ab.materialize(order).map_err(core("order"))?;
            checks.push(Check::new("matrix_product", lhs == rhs, "materialize(AB) = materialize(A) materialize(B)"));
            series = series_rows(&format!("({})({})", a.label, b.label), &ab);
        }
        RiordanOp::Inv => {
            let a = pair_a.expect("validated");
            let inv = group_inv(&a.pair).map_err(core("pair"))?;
            let id = RiordanPair::identity(order, &Rational::new());
            let left = group_mul(&inv, &a.pair).map_err(core("pair"))? == id;
            let right = group_mul(&a.pair, &inv).map_err(core("pair"))? == id;
            checks.push(Check::new("inverse_law", left && right, "A^-1 A = A A^-1 = [1, z]"));
            series = series_rows(&format!("({})^-1", a.label), &inv);
        }
        RiordanOp::Check => {
            let mut cases = Vec::new();
            if let Some(a) = &pair_a {
                let b = pair_b.clone().unwrap_or_else(|| a.clone());
                cases.push((a.pair.clone(), b.pair.clone(), a.pair.clone()));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            for _ in 0..cfg.samples {
                cases.push((random_pair(&mut rng, order), random_pair(&mut rng, order), random_pair(&mut rng, order)));
            }
            checks = group_law_checks(&cases, order).map_err(core("pair"))?;
        }
    }
    Ok((Results::Riordan(RiordanResults { op, series, matrix }), checks))
}

fn random_rational(rng: &mut ChaCha8Rng, nonzero: bool) -> Rational {
    loop {
        let num: i64 = rng.gen_range(-9..=9);
        if nonzero && num == 0 {
            continue;
        }
        return Rational::from((num, rng.gen_range(1..=6i64)));
    }
}

/// Admissible pair with small random rational coefficients.
pub fn random_pair(rng: &mut ChaCha8Rng, order: usize) -> RiordanPair<Rational> {
    let g = (0..=order).map(|k| random_rational(rng, k == 0)).collect();
    let f = (0..=order).map(|k| if k == 0 { Rational::new() } else { random_rational(rng, k == 1) }).collect();
    RiordanPair::new(Series::from_coeffs(g).expect("nonempty"), Series::from_coeffs(f).expect("nonempty")).expect("admissible by construction")
}

type Triple = (RiordanPair<Rational>, RiordanPair<Rational>, RiordanPair<Rational>);

/// Associativity, inverses, the cognate homomorphism, and agreement of the
/// group product with matrix products and umbral composition.
fn group_law_checks(cases: &[Triple], order: usize) -> sheffer_core::Result<Vec<Check>> {
    let mut failures = [0usize; 5];
    let id = RiordanPair::identity(order, &Rational::new());
    for (a, b, c) in cases {
        let ab = group_mul(a, b)?;
        failures[0] += usize::from(group_mul(&ab, c)? != group_mul(a, &group_mul(b, c)?)?);
        let inv = group_inv(a)?;
        failures[1] += usize::from(group_mul(&inv, a)? != id || group_mul(a, &inv)? != id);
        failures[2] += usize::from(cognate_map(&ab)? != group_mul(&cognate_map(a)?, &cognate_map(b)?)?);
        failures[3] += usize::from(ab.materialize(order)? != a.materialize(order)?.matmul(&b.materialize(order)?)?);
        let (sa, sb) = (ShefferPair::new("a", a.clone()), ShefferPair::new("b", b.clone()));
        failures[4] += usize::from(umbral_compose(&sa, &sb, order)? != sheffer_poly(&ShefferPair::new("ab", ab), order)?);
    }
    let names = ["associativity", "inverse_law", "cognate_homomorphism", "matrix_product", "umbral_composition"];
    Ok(names
        .iter()
        .zip(failures)
        .map(|(name, bad)| Check::new(name, bad == 0, format!("{bad} of {} cases failed at order {order}", cases.len())))
        .collect())
}
