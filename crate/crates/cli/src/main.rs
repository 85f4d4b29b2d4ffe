use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use emin_core::{
    emin_bounds, emin_direct, geometric_min, marginal_basis, measure_local, passive,
    BipartiteState, HamiltonianSpec, MeasurementBasis, DEFAULT_DEGENERACY_TOL,
};
use serde_json::json;

use emin_lab::config::FileConfig;
use emin_lab::experiment::{
    run_prob, run_scatter, scatter_regime_checks, Ensemble, ProbParams, ScatterParams,
};
use emin_lab::golden::example_obs1;
use emin_lab::io;
use emin_lab::stats::{mann_kendall_increasing, saturation_onset};
use emin_lab::suites::{run_suite, Suite};
use emin_lab::svg;

/// Ergotropy and measurement-induced nonlocality laboratory.
#[derive(Parser)]
#[command(name = "emin-lab", version, about)]
struct Cli {
    /// Key=value config file; explicit flags take precedence over it.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample (n_geo, n_xi) pairs for the hybrid model at fixed coupling.
    Fig1Scatter(ScatterArgs),
    /// Sweep the coupling grid and tabulate P[n_xi < 0].
    Fig1Prob(ProbArgs),
    /// Run the verification suites (oracle, theorems, routes).
    Verify(VerifyArgs),
    /// Worked example of nonlocal energy locking: α|00⟩+β|11⟩ under σx⊗σz.
    ExampleObs1(Obs1Args),
    /// One-shot ergotropy report for a density matrix and Hamiltonian.
    Ergotropy(ErgotropyArgs),
    /// One-shot nonlocality report for a bipartite state.
    Emin(EminArgs),
}

#[derive(Copy, Clone, ValueEnum)]
enum EnsembleArg {
    Pure,
    Mixed,
}

impl From<EnsembleArg> for Ensemble {
    fn from(value: EnsembleArg) -> Ensemble {
        match value {
            EnsembleArg::Pure => Ensemble::Pure,
            EnsembleArg::Mixed => Ensemble::Mixed,
        }
    }
}

#[derive(Args)]
struct ScatterArgs {
    /// Coupling strength of the hybrid model.
    #[arg(long)]
    g: Option<f64>,
    /// Number of Monte Carlo samples.
    #[arg(long)]
    samples: Option<usize>,
    /// Master seed (fallback: EMIN_LAB_SEED, then config, then 42).
    #[arg(long)]
    seed: Option<u64>,
    /// Fock truncation of the field mode.
    #[arg(long = "field-dim")]
    field_dim: Option<usize>,
    /// Random state ensemble.
    #[arg(long, value_enum)]
    ensemble: Option<EnsembleArg>,
    /// Absolute gap below which marginal populations count as degenerate.
    #[arg(long = "degeneracy-tol")]
    degeneracy_tol: Option<f64>,
    /// Output directory.
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Also emit an SVG view of the CSV.
    #[arg(long)]
    svg: bool,
    /// Worker threads (default: all cores). Output is identical either way.
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Args)]
struct ProbArgs {
    #[arg(long = "g-min")]
    g_min: Option<f64>,
    #[arg(long = "g-max")]
    g_max: Option<f64>,
    /// Number of grid points, endpoints included.
    #[arg(long = "g-steps")]
    g_steps: Option<usize>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long = "field-dim")]
    field_dim: Option<usize>,
    #[arg(long, value_enum)]
    ensemble: Option<EnsembleArg>,
    #[arg(long = "degeneracy-tol")]
    degeneracy_tol: Option<f64>,
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
    #[arg(long)]
    svg: bool,
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Which suite to run.
    #[arg(value_enum, default_value_t = Suite::All)]
    suite: Suite,
    #[arg(long)]
    seed: Option<u64>,
    /// Write the machine-readable JSON report here.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Obs1Args {
    /// Amplitude of |00⟩, strictly inside (0, 1).
    #[arg(long)]
    alpha: Option<f64>,
}

#[derive(Args)]
struct ErgotropyArgs {
    /// Density matrix JSON file.
    #[arg(long, value_name = "FILE")]
    rho: PathBuf,
    /// Hamiltonian JSON file.
    #[arg(long, value_name = "FILE")]
    hamiltonian: PathBuf,
    /// Write the JSON report here as well as to stdout.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EminArgs {
    #[arg(long, value_name = "FILE")]
    rho: PathBuf,
    #[arg(long, value_name = "FILE")]
    hamiltonian: PathBuf,
    #[arg(long = "dim-a")]
    dim_a: usize,
    #[arg(long = "dim-b")]
    dim_b: usize,
    /// Explicit measurement basis: JSON array of projector matrices
    /// (escape hatch for degenerate marginals).
    #[arg(long, value_name = "FILE")]
    basis: Option<PathBuf>,
    #[arg(long = "degeneracy-tol")]
    degeneracy_tol: Option<f64>,
    /// Inverse temperature; when given, the entropy bound expressions are
    /// evaluated too.
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

fn main() {
    match run() {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            std::process::exit(2);
        }
    }
}

fn run() -> Result<i32> {
    let cli = Cli::parse();
    let cfg = match &cli.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    match cli.command {
        Command::Fig1Scatter(args) => cmd_fig1_scatter(&cfg, args),
        Command::Fig1Prob(args) => cmd_fig1_prob(&cfg, args),
        Command::Verify(args) => cmd_verify(&cfg, args),
        Command::ExampleObs1(args) => cmd_example_obs1(&cfg, args),
        Command::Ergotropy(args) => cmd_ergotropy(args),
        Command::Emin(args) => cmd_emin(&cfg, args),
    }
}

fn ensure_out_dir(cfg: &FileConfig, out: Option<PathBuf>) -> Result<PathBuf> {
    let dir = cfg.resolve(out, "out", PathBuf::from("emin-out"))?;
    std::fs::create_dir_all(&dir)
        .with_context(|| format!("creating output directory {}", dir.display()))?;
    Ok(dir)
}

fn resolve_ensemble(cfg: &FileConfig, flag: Option<EnsembleArg>) -> Result<Ensemble> {
    cfg.resolve(flag.map(Ensemble::from), "ensemble", Ensemble::Mixed)
}

fn resolve_threads(cfg: &FileConfig, flag: Option<usize>) -> Result<Option<usize>> {
    Ok(match flag {
        Some(n) => Some(n),
        None => cfg.get::<usize>("threads")?,
    })
}

fn resolve_svg(cfg: &FileConfig, flag: bool) -> Result<bool> {
    cfg.resolve(if flag { Some(true) } else { None }, "svg", false)
}

fn cmd_fig1_scatter(cfg: &FileConfig, args: ScatterArgs) -> Result<i32> {
    let started = Instant::now();
    let params = ScatterParams {
        g: cfg.resolve(args.g, "g", 0.05)?,
        samples: cfg.resolve(args.samples, "samples", 10_000)?,
        seed: cfg.resolve_seed(args.seed)?,
        field_dim: cfg.resolve(args.field_dim, "field-dim", 2)?,
        ensemble: resolve_ensemble(cfg, args.ensemble)?,
        degeneracy_tol: cfg.resolve(args.degeneracy_tol, "degeneracy-tol", DEFAULT_DEGENERACY_TOL)?,
        threads: resolve_threads(cfg, args.threads)?,
    };
    let out_dir = ensure_out_dir(cfg, args.out)?;
    let emit_svg = resolve_svg(cfg, args.svg)?;

    let records = run_scatter(&params)?;
    let csv_path = out_dir.join(format!("scatter_g{}.csv", params.g));
    io::write_scatter_csv(&csv_path, &records)?;

    let mut produced = vec![csv_path.clone()];
    if emit_svg {
        let points: Vec<(f64, f64)> = records.iter().map(|r| (r.n_geo, r.n_xi)).collect();
        let doc = svg::scatter_svg(
            &points,
            &format!("nonlocality vs geometric distance, g = {}", params.g),
            "n_geo",
            "n_xi",
        );
        let svg_path = out_dir.join(format!("scatter_g{}.svg", params.g));
        std::fs::write(&svg_path, doc)?;
        produced.push(svg_path);
    }

    let negative = records
        .iter()
        .filter(|r| r.n_xi < emin_lab::experiment::NEGATIVITY_THRESHOLD)
        .count();
    println!(
        "g = {}: {} samples, {} negative ({:.2}%), wrote {}",
        params.g,
        records.len(),
        negative,
        100.0 * negative as f64 / records.len().max(1) as f64,
        csv_path.display()
    );

    let checks = scatter_regime_checks(params.g, &records);
    let mut failed = false;
    for check in &checks {
        let status = if check.passed { "PASS" } else { "FAIL" };
        println!("check {}: {status} ({})", check.name, check.detail);
        failed |= !check.passed;
    }

    let mut manifest = io::Manifest::new(
        params.seed,
        json!({
            "g": params.g,
            "samples": params.samples,
            "field_dim": params.field_dim,
            "ensemble": params.ensemble.to_string(),
            "degeneracy_tol": params.degeneracy_tol,
        }),
        started.elapsed().as_secs_f64(),
    );
    for file in &produced {
        manifest.add_file(&out_dir, file)?;
    }
    io::write_manifest(&out_dir, &manifest)?;

    Ok(if failed { 1 } else { 0 })
}

fn cmd_fig1_prob(cfg: &FileConfig, args: ProbArgs) -> Result<i32> {
    let started = Instant::now();
    let params = ProbParams {
        g_min: cfg.resolve(args.g_min, "g-min", 0.05)?,
        g_max: cfg.resolve(args.g_max, "g-max", 3.0)?,
        g_steps: cfg.resolve(args.g_steps, "g-steps", 12)?,
        samples: cfg.resolve(args.samples, "samples", 2_000)?,
        seed: cfg.resolve_seed(args.seed)?,
        field_dim: cfg.resolve(args.field_dim, "field-dim", 2)?,
        ensemble: resolve_ensemble(cfg, args.ensemble)?,
        degeneracy_tol: cfg.resolve(args.degeneracy_tol, "degeneracy-tol", DEFAULT_DEGENERACY_TOL)?,
        threads: resolve_threads(cfg, args.threads)?,
    };
    let out_dir = ensure_out_dir(cfg, args.out)?;
    let emit_svg = resolve_svg(cfg, args.svg)?;

    let rows = run_prob(&params)?;
    let csv_path = out_dir.join("prob.csv");
    io::write_prob_csv(&csv_path, &rows)?;
    let mut produced = vec![csv_path.clone()];

    for row in &rows {
        println!(
            "g = {:<8.5} P[n_xi < 0] = {:.4}  ({}/{})",
            row.g, row.p_negative, row.n_negative, row.n_samples
        );
    }
    let probabilities: Vec<f64> = rows.iter().map(|r| r.p_negative).collect();
    let onset = saturation_onset(&probabilities, 0.45);
    let pre_saturation = &probabilities[..onset.max(2).min(probabilities.len())];
    let trend = mann_kendall_increasing(pre_saturation);
    println!(
        "trend up to saturation ({} of {} points): S = {}, z = {:.2}, increasing at 5%: {}",
        pre_saturation.len(),
        probabilities.len(),
        trend.s,
        trend.z,
        trend.increasing_at_5pct
    );

    if emit_svg {
        let points: Vec<(f64, f64)> = rows.iter().map(|r| (r.g, r.p_negative)).collect();
        let doc = svg::line_svg(&points, "negativity probability vs coupling", "g", "P[n_xi < 0]");
        let svg_path = out_dir.join("prob.svg");
        std::fs::write(&svg_path, doc)?;
        produced.push(svg_path);
    }

    let mut manifest = io::Manifest::new(
        params.seed,
        json!({
            "g_min": params.g_min,
            "g_max": params.g_max,
            "g_steps": params.g_steps,
            "samples": params.samples,
            "field_dim": params.field_dim,
            "ensemble": params.ensemble.to_string(),
            "degeneracy_tol": params.degeneracy_tol,
        }),
        started.elapsed().as_secs_f64(),
    );
    for file in &produced {
        manifest.add_file(&out_dir, file)?;
    }
    io::write_manifest(&out_dir, &manifest)?;

    Ok(0)
}

fn cmd_verify(cfg: &FileConfig, args: VerifyArgs) -> Result<i32> {
    let seed = cfg.resolve_seed(args.seed)?;
    let report = run_suite(args.suite, seed);
    for check in &report.checks {
        let status = if check.passed() { "PASS" } else { "FAIL" };
        println!(
            "check {:<32} {status}  cases {:>5}  failures {:>3}  max deviation {:.3e}",
            check.name, check.cases, check.failures, check.max_deviation
        );
    }
    println!(
        "suite {} with seed {}: {}",
        report.suite,
        report.seed,
        if report.passed { "PASS" } else { "FAIL" }
    );
    if let Some(path) = &args.out {
        std::fs::write(path, serde_json::to_string_pretty(&report)?)
            .with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(if report.passed { 0 } else { 1 })
}

fn cmd_example_obs1(cfg: &FileConfig, args: Obs1Args) -> Result<i32> {
    let alpha = cfg.resolve(args.alpha, "alpha", 0.6)?;
    let report = example_obs1(alpha)?;
    println!(
        "state α|00⟩ + β|11⟩ with α = {}, β = {:.12}",
        report.alpha, report.beta
    );
    println!("ergotropy before measurement : {:.12}", report.xi_before);
    println!("ergotropy after measurement  : {:.12}", report.xi_after);
    println!("nonlocality n_xi             : {:.3e}", report.n_xi);
    println!("geometric nonlocality n_geo  : {:.12}", report.n_geo);
    let mut failed = false;
    for check in &report.checks {
        let status = if check.passed { "PASS" } else { "FAIL" };
        println!("check {}: {status} ({})", check.name, check.detail);
        failed |= !check.passed;
    }
    Ok(if failed { 1 } else { 0 })
}

fn matrix_json(m: &emin_core::ComplexMatrix) -> serde_json::Value {
    json!({
        "rows": m.rows(),
        "cols": m.cols(),
        "data": m.data().iter().map(|z| [z.re, z.im]).collect::<Vec<_>>(),
    })
}

fn emit_report(report: &serde_json::Value, out: Option<&Path>) -> Result<()> {
    let text = serde_json::to_string_pretty(report)?;
    println!("{text}");
    if let Some(path) = out {
        std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn cmd_ergotropy(args: ErgotropyArgs) -> Result<i32> {
    let rho = io::read_matrix(&args.rho)?;
    let h = io::read_matrix(&args.hamiltonian)?;
    let spec = HamiltonianSpec::interacting(h, 1, rho.rows())?;
    let report = passive(&rho, &spec)?;
    let value = json!({
        "energy": report.energy,
        "passive_energy": report.passive_energy,
        "ergotropy": report.ergotropy,
        "passive_state": matrix_json(&report.passive_state),
    });
    emit_report(&value, args.out.as_deref())?;
    Ok(0)
}

fn read_basis(path: &Path) -> Result<MeasurementBasis> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading basis file {}", path.display()))?;
    let raw: Vec<serde_json::Value> = serde_json::from_str(&text)
        .with_context(|| format!("parsing basis JSON from {}", path.display()))?;
    let mut projectors = Vec::with_capacity(raw.len());
    for (k, value) in raw.iter().enumerate() {
        let file = matrix_from_value(value)
            .with_context(|| format!("{}: projector {k}", path.display()))?;
        projectors.push(file);
    }
    Ok(MeasurementBasis::from_projectors(projectors)?)
}

fn matrix_from_value(value: &serde_json::Value) -> Result<emin_core::ComplexMatrix> {
    let rows = value["rows"]
        .as_u64()
        .context("missing or invalid `rows`")? as usize;
    let cols = value["cols"]
        .as_u64()
        .context("missing or invalid `cols`")? as usize;
    let data = value["data"].as_array().context("missing `data` array")?;
    if data.len() != rows * cols {
        anyhow::bail!("expected {} entries, found {}", rows * cols, data.len());
    }
    let mut entries = Vec::with_capacity(data.len());
    for pair in data {
        let re = pair[0].as_f64().context("non-numeric entry")?;
        let im = pair[1].as_f64().context("non-numeric entry")?;
        if !re.is_finite() || !im.is_finite() {
            anyhow::bail!("non-finite entry");
        }
        entries.push(emin_core::C64::new(re, im));
    }
    Ok(emin_core::ComplexMatrix::from_vec(rows, cols, entries))
}

fn cmd_emin(cfg: &FileConfig, args: EminArgs) -> Result<i32> {
    let rho = io::read_matrix(&args.rho)?;
    let h = io::read_matrix(&args.hamiltonian)?;
    let state = BipartiteState::new(args.dim_a, args.dim_b, rho)?;
    let spec = HamiltonianSpec::interacting(h, args.dim_a, args.dim_b)?;
    let tol = cfg.resolve(args.degeneracy_tol, "degeneracy-tol", DEFAULT_DEGENERACY_TOL)?;

    let basis = match &args.basis {
        Some(path) => read_basis(path)?,
        None => {
            let basis = marginal_basis(&state, tol);
            if basis.degenerate_marginal() {
                eprintln!(
                    "warning: marginal populations are degenerate within {tol:.1e}; the \
                     eigenbasis is not unique — consider supplying --basis explicitly"
                );
            }
            basis
        }
    };

    let measured = measure_local(&state, &basis)?;
    let before = passive(state.rho(), &spec)?;
    let after = passive(measured.rho(), &spec)?;
    let n_xi = emin_direct(&state, &spec, &basis)?;
    let n_geo = geometric_min(&state, &basis)?;

    let mut value = json!({
        "dim_a": args.dim_a,
        "dim_b": args.dim_b,
        "n_xi": n_xi,
        "n_geo": n_geo,
        "e_before": before.energy,
        "e_after": after.energy,
        "ep_before": before.passive_energy,
        "ep_after": after.passive_energy,
        "degenerate_marginal": basis.degenerate_marginal(),
    });
    if let Some(beta) = args.beta {
        let bounds = emin_bounds(&state, &spec, &basis, beta)?;
        value["bounds"] = json!({
            "beta": bounds.beta,
            "first": bounds.first,
            "second": bounds.second,
            "scaled_emin": bounds.scaled_emin(),
            "first_le_scaled_emin": bounds.first_le_scaled_emin,
            "second_le_scaled_emin": bounds.second_le_scaled_emin,
        });
    }
    emit_report(&value, args.out.as_deref())?;
    Ok(0)
}
