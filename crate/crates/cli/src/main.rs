//! Command-line driver for the chimera quantum spatial search experiments:
//! graph generation, single probability probes, multistart optimization,
//! family sweeps with exponent fits, and spectral condition metrics.

mod config;
mod plot;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use chimera_qsearch::analysis::{
    family_sweep, filter_records, fit_alpha, fit_json, minima_csv, per_order_minima, FamilyKind,
    FamilySpec,
};
use chimera_qsearch::evolution::{build_setup, success_probability};
use chimera_qsearch::graph::{build_chimera, marked_vertex, ChimeraParams};
use chimera_qsearch::optimizer::{parse_records_csv, qss_optimization, records_csv, MultistartGrid};
use chimera_qsearch::spectral::{family_condition_metrics, fit_metric, ConditionMetricKind};
use chimera_qsearch::{CostParams64, QssOptions64, SweepOptions64};
use config::Config;

#[derive(Parser)]
#[command(
    name = "chimera-qsearch",
    version,
    about = "Continuous-time quantum spatial search experiments on chimera graphs",
    disable_help_subcommand = true
)]
struct Cli {
    /// Flat `key = value` config file; command-line flags take precedence.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Worker threads (fallback: CHIMERA_QSEARCH_WORKERS, then all cores).
    #[arg(long, global = true, value_name = "N")]
    workers: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a chimera graph and write its JSON description.
    Generate {
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
        #[arg(long)]
        shore: usize,
        /// Output path for the graph JSON.
        #[arg(long, value_name = "PATH")]
        out: PathBuf,
    },
    /// Evaluate a single success probability p(gamma, t).
    Probe {
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
        #[arg(long)]
        shore: usize,
        /// Hopping rate gamma >= 0.
        #[arg(long)]
        gamma: f64,
        /// Evolution time t >= 0.
        #[arg(long)]
        time: f64,
        /// Optional JSON output path.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Multistart optimization of the penalized cost on one graph.
    Optimize {
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
        #[arg(long)]
        shore: usize,
        /// Penalty coefficient c in t_penalty = c*ln(n) (default 1).
        #[arg(long, value_name = "C")]
        penalty_coeff: Option<f64>,
        /// Number of gamma start values (default 40).
        #[arg(long, value_name = "N")]
        gamma_grid: Option<usize>,
        /// Number of time start values (default 16).
        #[arg(long, value_name = "N")]
        time_grid: Option<usize>,
        /// Output path for the records CSV.
        #[arg(long, value_name = "PATH")]
        out: PathBuf,
    },
    /// Sweep a chimera family: records, per-order minima and the alpha fit.
    Sweep {
        /// One of: local, global, grid-quadratic, balanced, cell-quadratic.
        #[arg(long)]
        family: String,
        /// Fixed parameter for local (shore l) or global (grid k) families.
        #[arg(long, value_name = "K")]
        fixed: Option<usize>,
        /// Inclusive index range, e.g. 2..6.
        #[arg(long, value_name = "LO..HI")]
        range: String,
        #[arg(long, value_name = "C")]
        penalty_coeff: Option<f64>,
        #[arg(long, value_name = "N")]
        gamma_grid: Option<usize>,
        #[arg(long, value_name = "N")]
        time_grid: Option<usize>,
        /// Skip family members with more vertices than this (default 700).
        #[arg(long, value_name = "N")]
        size_cap: Option<usize>,
        /// Directory for the three output files.
        #[arg(long, value_name = "DIR")]
        out_dir: PathBuf,
    },
    /// Spectral condition metrics and per-metric scaling fits for a family.
    Conditions {
        #[arg(long)]
        family: String,
        #[arg(long, value_name = "K")]
        fixed: Option<usize>,
        #[arg(long, value_name = "LO..HI")]
        range: String,
        #[arg(long, value_name = "N")]
        size_cap: Option<usize>,
        #[arg(long, value_name = "DIR")]
        out_dir: PathBuf,
        /// Also write one SVG scatter-with-fit per metric.
        #[arg(long)]
        plot: bool,
    },
    /// Re-run filtering, minima extraction and the alpha fit on a records CSV.
    Analyze {
        /// Records CSV produced by `optimize` or `sweep`.
        #[arg(long, value_name = "PATH")]
        records: PathBuf,
        /// Family label used in the output files (default "custom").
        #[arg(long, value_name = "NAME")]
        family_label: Option<String>,
        #[arg(long, value_name = "DIR")]
        out_dir: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            eprintln!("{e}");
            return ExitCode::from(1);
        }
    };

    let cfg = match &cli.config {
        Some(path) => match Config::load(path) {
            Ok(cfg) => cfg,
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
        },
        None => Config::default(),
    };

    match run(cli, &cfg) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli, cfg: &Config) -> Result<u8, String> {
    let workers = cfg.resolve_workers(cli.workers)?;
    if let Some(w) = workers {
        if w == 0 {
            return Err("--workers must be at least 1".into());
        }
        chimera_qsearch::configure_workers(w);
    }

    match cli.command {
        Command::Generate {
            rows,
            cols,
            shore,
            out,
        } => cmd_generate(rows, cols, shore, &out),
        Command::Probe {
            rows,
            cols,
            shore,
            gamma,
            time,
            out,
        } => cmd_probe(rows, cols, shore, gamma, time, out.as_deref()),
        Command::Optimize {
            rows,
            cols,
            shore,
            penalty_coeff,
            gamma_grid,
            time_grid,
            out,
        } => {
            let opts = qss_options(cfg, penalty_coeff, gamma_grid, time_grid)?;
            cmd_optimize(rows, cols, shore, &opts, &out)
        }
        Command::Sweep {
            family,
            fixed,
            range,
            penalty_coeff,
            gamma_grid,
            time_grid,
            size_cap,
            out_dir,
        } => {
            let qss = qss_options(cfg, penalty_coeff, gamma_grid, time_grid)?;
            let size_cap = cfg.resolve(size_cap, "size-cap", 700usize)?;
            let spec = family_spec(&family, fixed, &range)?;
            cmd_sweep(&spec, &SweepOptions64 { qss, size_cap }, &out_dir)
        }
        Command::Conditions {
            family,
            fixed,
            range,
            size_cap,
            out_dir,
            plot,
        } => {
            let size_cap = cfg.resolve(size_cap, "size-cap", 700usize)?;
            let spec = family_spec(&family, fixed, &range)?;
            cmd_conditions(&spec, size_cap, &out_dir, plot)
        }
        Command::Analyze {
            records,
            family_label,
            out_dir,
        } => {
            let label = family_label.unwrap_or_else(|| "custom".to_string());
            cmd_analyze(&records, &label, &out_dir)
        }
    }
}

fn qss_options(
    cfg: &Config,
    penalty_coeff: Option<f64>,
    gamma_grid: Option<usize>,
    time_grid: Option<usize>,
) -> Result<QssOptions64, String> {
    let coefficient = cfg.resolve(penalty_coeff, "penalty-coeff", 1.0f64)?;
    if coefficient < 0.0 {
        return Err("penalty coefficient must be nonnegative".into());
    }
    let gamma_count = cfg.resolve(gamma_grid, "gamma-grid", 40usize)?;
    let time_count = cfg.resolve(time_grid, "time-grid", 16usize)?;
    if gamma_count == 0 || time_count == 0 {
        return Err("grid sizes must be at least 1".into());
    }
    Ok(QssOptions64 {
        cost: CostParams64::new(coefficient),
        grid: MultistartGrid {
            gamma_count,
            time_count,
        },
        ..QssOptions64::default()
    })
}

fn family_spec(name: &str, fixed: Option<usize>, range: &str) -> Result<FamilySpec, String> {
    let kind = FamilyKind::parse(name).map_err(|e| e.to_string())?;
    let (lo, hi) = parse_range(range)?;
    FamilySpec::new(kind, fixed, lo, hi).map_err(|e| e.to_string())
}

fn parse_range(text: &str) -> Result<(usize, usize), String> {
    let (lo, hi) = text
        .split_once("..")
        .ok_or_else(|| format!("range `{text}` must look like LO..HI"))?;
    let lo = lo
        .trim()
        .parse::<usize>()
        .map_err(|_| format!("bad range start `{lo}`"))?;
    let hi = hi
        .trim()
        .parse::<usize>()
        .map_err(|_| format!("bad range end `{hi}`"))?;
    Ok((lo, hi))
}

fn params(rows: usize, cols: usize, shore: usize) -> Result<ChimeraParams, String> {
    ChimeraParams::new(rows, cols, shore).map_err(|e| e.to_string())
}

fn write_file(path: &Path, contents: &str) -> Result<(), String> {
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            std::fs::create_dir_all(dir)
                .map_err(|e| format!("cannot create {}: {e}", dir.display()))?;
        }
    }
    std::fs::write(path, contents).map_err(|e| format!("cannot write {}: {e}", path.display()))
}

/// File-name-safe variant of a family label: `local(2)` -> `local-2`.
fn file_label(label: &str) -> String {
    label.replace('(', "-").replace(')', "")
}

fn cmd_generate(rows: usize, cols: usize, shore: usize, out: &Path) -> Result<u8, String> {
    let params = params(rows, cols, shore)?;
    let g = build_chimera(&params);
    write_file(out, &g.to_json_string())?;
    println!(
        "wrote {} (chimera {}x{} shore {}, {} vertices, {} edges)",
        out.display(),
        rows,
        cols,
        shore,
        g.vertex_count(),
        g.edges().len()
    );
    Ok(0)
}

fn cmd_probe(
    rows: usize,
    cols: usize,
    shore: usize,
    gamma: f64,
    time: f64,
    out: Option<&Path>,
) -> Result<u8, String> {
    let params = params(rows, cols, shore)?;
    let g = build_chimera(&params);
    let w = marked_vertex(&params);
    let setup = build_setup(&g, w, gamma).map_err(|e| e.to_string())?;
    let p = success_probability(&setup, time).map_err(|e| e.to_string())?;
    println!("p = {p:.11e}");
    if let Some(path) = out {
        let json = serde_json::json!({
            "rows": rows,
            "cols": cols,
            "shore": shore,
            "n": g.vertex_count(),
            "gamma": gamma,
            "time": time,
            "probability": p,
        });
        write_file(path, &format!("{json}\n"))?;
    }
    Ok(0)
}

fn cmd_optimize(
    rows: usize,
    cols: usize,
    shore: usize,
    opts: &QssOptions64,
    out: &Path,
) -> Result<u8, String> {
    let params = params(rows, cols, shore)?;
    let outcome = qss_optimization(&params, opts).map_err(|e| e.to_string())?;
    write_file(out, &records_csv(&outcome.records))?;
    println!(
        "wrote {} ({} records, {} failed starts, t_bound = {:.6})",
        out.display(),
        outcome.records.len(),
        outcome.failed_starts,
        outcome.t_bound
    );
    if let Some(best) = outcome
        .records
        .iter()
        .min_by(|a, b| a.cost_value.partial_cmp(&b.cost_value).unwrap())
    {
        println!(
            "best: gamma = {:.6}, t = {:.6}, p = {:.6}, cost = {:.6}, t/p = {:.6}",
            best.gamma, best.time, best.probability, best.cost_value, best.raw_ratio
        );
    }
    Ok(if outcome.failed_starts > 0 { 2 } else { 0 })
}

fn cmd_sweep(spec: &FamilySpec, opts: &SweepOptions64, out_dir: &Path) -> Result<u8, String> {
    let sweep = family_sweep(spec, opts).map_err(|e| e.to_string())?;
    let label = spec.label();
    let stem = file_label(&label);
    write_file(
        &out_dir.join(format!("{stem}_records.csv")),
        &records_csv(&sweep.records),
    )?;
    write_file(
        &out_dir.join(format!("{stem}_minima.csv")),
        &minima_csv(&label, &sweep.minima),
    )?;
    write_file(
        &out_dir.join(format!("{stem}_fit.json")),
        &format!("{}\n", fit_json(&label, &sweep.fit, sweep.filtered_out)),
    )?;
    for n in &sweep.skipped_orders {
        println!("warning: no record survived the filter for n = {n}; order omitted");
    }
    println!(
        "{label}: alpha = {:.6} (intercept {:.6}, r2 {:.6}, {} orders, {} records, {} filtered out)",
        sweep.fit.slope,
        sweep.fit.intercept,
        sweep.fit.r_squared,
        sweep.minima.len(),
        sweep.records.len(),
        sweep.filtered_out
    );
    Ok(if sweep.failed_starts > 0 { 2 } else { 0 })
}

fn cmd_conditions(
    spec: &FamilySpec,
    size_cap: usize,
    out_dir: &Path,
    plot: bool,
) -> Result<u8, String> {
    let rows = family_condition_metrics::<f64>(spec, size_cap).map_err(|e| e.to_string())?;
    let label = spec.label();
    let stem = file_label(&label);
    write_file(
        &out_dir.join(format!("{stem}_conditions.csv")),
        &chimera_qsearch::spectral::conditions_csv(&rows),
    )?;

    let mut fits = serde_json::Map::new();
    for kind in ConditionMetricKind::ALL {
        let fit = fit_metric(&rows, kind).map_err(|e| e.to_string())?;
        println!(
            "{label}: {} slope = {:+.6} (r2 {:.6})",
            kind.name(),
            fit.slope,
            fit.r_squared
        );
        fits.insert(
            kind.name().to_string(),
            serde_json::json!({
                "slope": fit.slope,
                "intercept": fit.intercept,
                "r2": fit.r_squared,
            }),
        );
        if plot {
            let points: Vec<(f64, f64)> = rows
                .iter()
                .map(|r| (r.n as f64, kind.extract(&r.metrics)))
                .collect();
            let svg = plot::scatter_with_fit(
                &format!("{label}: {} vs n", kind.name()),
                "n",
                kind.name(),
                &points,
                &fit,
            );
            write_file(&out_dir.join(format!("{stem}_{}.svg", kind.name())), &svg)?;
        }
    }
    let json = serde_json::json!({ "family": label, "n_points": rows.len(), "fits": fits });
    write_file(
        &out_dir.join(format!("{stem}_condition_fits.json")),
        &format!("{json}\n"),
    )?;
    Ok(0)
}

fn cmd_analyze(records_path: &Path, label: &str, out_dir: &Path) -> Result<u8, String> {
    let text = std::fs::read_to_string(records_path)
        .map_err(|e| format!("cannot read {}: {e}", records_path.display()))?;
    let records = parse_records_csv::<f64>(&text).map_err(|e| e.to_string())?;
    let kept = filter_records(&records);
    let filtered_out = records.len() - kept.len();
    let minima = per_order_minima(&kept);
    let mut orders: Vec<usize> = records.iter().map(|r| r.graph_order).collect();
    orders.sort_unstable();
    orders.dedup();
    for n in orders.iter().filter(|n| !minima.contains_key(n)) {
        println!("warning: no record survived the filter for n = {n}; order omitted");
    }
    let fit = fit_alpha(&minima).map_err(|e| e.to_string())?;
    let stem = file_label(label);
    write_file(
        &out_dir.join(format!("{stem}_minima.csv")),
        &minima_csv(label, &minima),
    )?;
    write_file(
        &out_dir.join(format!("{stem}_fit.json")),
        &format!("{}\n", fit_json(label, &fit, filtered_out)),
    )?;
    println!(
        "{label}: alpha = {:.6} (r2 {:.6}, {} orders, {} records, {} filtered out)",
        fit.slope,
        fit.r_squared,
        minima.len(),
        records.len(),
        filtered_out
    );
    Ok(0)
}
