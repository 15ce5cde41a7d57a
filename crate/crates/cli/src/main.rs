//! `radix` — ground states of the screened Coulomb (Yukawa) potential by a
//! Hulthén variational fit plus Green-function iterative refinement.
//!
//! Exit codes: 0 success (converged or variational-only), 2 divergence
//! detected by the iteration, 1 usage or domain errors.

mod output;

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use radix_core::iteration::{solve_ground_state, IterationReport, SolverConfig, StopReason};
use radix_core::oracle::{shoot_ground_state, ShootingConfig};
use radix_core::quadrature::{build_grid, GridFunction};
use radix_core::{HulthenTrial, RadialPotential, VariationalResult};

use output::{csv_document, RunRecord};

/// The benchmark screening values, ascending.
const DEFAULT_ALPHAS: [f64; 14] = [
    0.1, 0.2, 0.25, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0, 1.05, 1.1, 1.15,
];

#[derive(Parser)]
#[command(
    name = "radix",
    about = "Variational-iterative ground states for the screened Coulomb potential",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a single screening value and emit one run record
    Solve(SolveArgs),
    /// Solve a list of screening values and emit the benchmark table
    Table(TableArgs),
}

#[derive(Args)]
struct SolveArgs {
    /// Yukawa screening parameter (≥ 0)
    #[arg(long)]
    alpha: f64,
    /// Iteration orders after the variational stage (0 = variational only)
    #[arg(long, default_value_t = 2)]
    orders: usize,
    /// Stop when |Δ_n - Δ_{n-1}| drops below this
    #[arg(long = "tol-delta", default_value_t = 1e-9)]
    tol_delta: f64,
    /// Also compute the shooting-method reference energy
    #[arg(long)]
    oracle: bool,
    /// Export the normalized wavefunction (two-column text) to this path
    #[arg(long)]
    wavefunction: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the record here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TableArgs {
    /// Comma-separated screening values; defaults to the 14 benchmark rows
    #[arg(long)]
    alphas: Option<String>,
    #[arg(long, default_value_t = 2)]
    orders: usize,
    #[arg(long = "tol-delta", default_value_t = 1e-9)]
    tol_delta: f64,
    /// Fill the E_exact column from the shooting solver
    #[arg(long)]
    oracle: bool,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output path (stdout when absent)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help/version are not usage errors
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return 0;
            }
            let _ = e.print();
            return 1;
        }
    };
    let outcome = match cli.command {
        Command::Solve(args) => run_solve(args),
        Command::Table(args) => run_table(args),
    };
    match outcome {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            1
        }
    }
}

fn solver_config(orders: usize, tol_delta: f64) -> SolverConfig {
    SolverConfig {
        tol_delta,
        max_order: orders.max(1),
        min_order: 1,
        ..SolverConfig::default()
    }
}

/// Shooting configuration sized from the expected binding energy: the box
/// must hold several decay lengths of e^{-√(-2E) r}.
fn oracle_config(e_estimate: f64) -> ShootingConfig {
    let s = (-2.0 * e_estimate.min(-1e-6)).sqrt();
    ShootingConfig {
        r_max: (30.0 / s).clamp(120.0, 2000.0),
        ..ShootingConfig::default()
    }
}

struct Solved {
    variational: VariationalResult,
    report: Option<IterationReport>,
    e_oracle: Option<f64>,
    wall_time_s: f64,
}

fn solve_one(alpha: f64, orders: usize, tol_delta: f64, oracle: bool) -> Result<Solved, String> {
    if alpha.is_nan() || alpha < 0.0 {
        return Err(format!("alpha must be non-negative, got {alpha}"));
    }
    let start = Instant::now();
    let cfg = solver_config(orders, tol_delta);
    let (variational, report) = if orders == 0 {
        let v = radix_core::minimize_lambda(alpha, cfg.lambda_bounds, cfg.lambda_tol, &cfg.grid)
            .map_err(|e| e.to_string())?;
        (v, None)
    } else {
        let (v, r) = solve_ground_state(alpha, &cfg).map_err(|e| e.to_string())?;
        (v, Some(r))
    };
    let e_oracle = if oracle {
        let target = RadialPotential::Yukawa { alpha };
        let cfg = oracle_config(variational.e_1);
        Some(shoot_ground_state(&target, &cfg).map_err(|e| e.to_string())?)
    } else {
        None
    };
    Ok(Solved {
        variational,
        report,
        e_oracle,
        wall_time_s: start.elapsed().as_secs_f64(),
    })
}

fn to_record(s: &Solved) -> RunRecord {
    let orders = s
        .report
        .iter()
        .flat_map(|r| r.states.iter().skip(1))
        .map(|st| output::OrderRecord {
            order: st.order,
            delta: st.delta,
            energy: st.energy,
            residual: if st.order > 0 {
                s.report.as_ref().expect("present").residuals[st.order - 1]
            } else {
                f64::NAN
            },
        })
        .collect();
    RunRecord {
        alpha: s.variational.alpha,
        lambda: s.variational.lambda_star,
        e_lambda: s.variational.e_lambda,
        orders,
        residuals: s
            .report
            .as_ref()
            .map(|r| r.residuals.clone())
            .unwrap_or_default(),
        e_oracle: s.e_oracle,
        converged: s.report.as_ref().map(|r| r.converged),
        stop_reason: s.report.as_ref().map(|r| {
            match r.stop_reason {
                StopReason::DeltaTol => "delta_tol",
                StopReason::MaxOrder => "max_order",
                StopReason::Divergence => "divergence",
            }
            .to_string()
        }),
        near_threshold: s.variational.near_threshold,
        evaluations: s.variational.evaluations,
        wall_time_s: s.wall_time_s,
    }
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), String> {
    match out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))
        }
        None => {
            println!("{}", text.trim_end_matches('\n'));
            Ok(())
        }
    }
}

fn run_solve(args: SolveArgs) -> Result<i32, String> {
    let solved = solve_one(args.alpha, args.orders, args.tol_delta, args.oracle)?;
    if let Some(path) = &args.wavefunction {
        export_wavefunction(&solved, path)?;
    }
    let record = to_record(&solved);
    let text = match args.format {
        Format::Json => serde_json::to_string_pretty(&record).map_err(|e| e.to_string())?,
        Format::Csv => csv_document(&[record.to_table_row()]),
    };
    emit(&text, args.out.as_deref())?;
    let diverged = solved
        .report
        .as_ref()
        .is_some_and(|r| r.stop_reason == StopReason::Divergence);
    Ok(if diverged { 2 } else { 0 })
}

fn run_table(args: TableArgs) -> Result<i32, String> {
    let mut alphas = match &args.alphas {
        None => DEFAULT_ALPHAS.to_vec(),
        Some(list) => parse_alphas(list)?,
    };
    alphas.sort_by(|a, b| a.partial_cmp(b).expect("finite"));

    let solve = |&alpha: &f64| solve_one(alpha, args.orders, args.tol_delta, args.oracle);
    let solved: Vec<Result<Solved, String>> = match thread_cap() {
        Some(0) | Some(1) => alphas.iter().map(solve).collect(),
        cap => {
            let mut builder = rayon::ThreadPoolBuilder::new();
            if let Some(n) = cap {
                builder = builder.num_threads(n);
            }
            let pool = builder.build().map_err(|e| e.to_string())?;
            pool.install(|| {
                use rayon::prelude::*;
                alphas.par_iter().map(solve).collect()
            })
        }
    };

    let mut rows = Vec::with_capacity(solved.len());
    let mut diverged = false;
    for s in solved {
        let s = s?;
        diverged |= s
            .report
            .as_ref()
            .is_some_and(|r| r.stop_reason == StopReason::Divergence);
        rows.push(to_record(&s).to_table_row());
    }

    let text = match args.format {
        Format::Csv => csv_document(&rows),
        Format::Json => serde_json::to_string_pretty(&rows).map_err(|e| e.to_string())?,
    };
    emit(&text, args.out.as_deref())?;
    Ok(if diverged { 2 } else { 0 })
}

fn parse_alphas(list: &str) -> Result<Vec<f64>, String> {
    let parsed: Result<Vec<f64>, String> = list
        .split(',')
        .map(|tok| {
            let tok = tok.trim();
            if tok.is_empty() {
                return Err("empty entry in --alphas".to_string());
            }
            let v: f64 = tok
                .parse()
                .map_err(|e| format!("invalid alpha {tok:?}: {e}"))?;
            if v >= 0.0 {
                Ok(v)
            } else {
                Err(format!("alpha must be non-negative, got {v}"))
            }
        })
        .collect();
    let parsed = parsed?;
    if parsed.is_empty() {
        return Err("--alphas must name at least one value".to_string());
    }
    Ok(parsed)
}

/// RADIX_THREADS caps table parallelism; 0 (or 1) forces the serial path.
fn thread_cap() -> Option<usize> {
    std::env::var("RADIX_THREADS")
        .ok()
        .and_then(|v| v.parse().ok())
}

/// Writes `# r psi` followed by node samples of the unit-norm wavefunction
/// Ψ = Φ_λ·f, normalized so that re-integrating the exported samples under
/// the r²dr measure gives 1.
fn export_wavefunction(solved: &Solved, path: &Path) -> Result<(), String> {
    let lambda = solved.variational.lambda_star;
    let trial = HulthenTrial::new(lambda).map_err(|e| e.to_string())?;
    let cfg = SolverConfig::default();
    let grid = build_grid(lambda, &cfg.grid).map_err(|e| e.to_string())?;
    let psi_values: Vec<f64> = match &solved.report {
        Some(report) => {
            let f = &report.states.last().expect("state 0 always present").f;
            f.nodes()
                .iter()
                .zip(f.values())
                .map(|(&r, &fv)| trial.phi(r) * fv)
                .collect()
        }
        None => grid.nodes().iter().map(|&r| trial.phi(r)).collect(),
    };
    let psi = GridFunction::new(&grid, psi_values).map_err(|e| e.to_string())?;
    let norm_sq = grid.integrate(|r| {
        let p = psi.eval(r) * r;
        p * p
    });
    let norm = norm_sq.sqrt();
    let mut text = String::from("# r psi\n");
    for (&r, &p) in psi.nodes().iter().zip(psi.values()) {
        text.push_str(&format!("{r:.16e} {:.16e}\n", p / norm));
    }
    std::fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))
}
