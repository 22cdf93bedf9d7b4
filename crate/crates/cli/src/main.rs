//! `succonv` command-line driver: benchmark runs, convergence tables,
//! stability scans and reference comparisons, all written as CSV.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use succonv::config::{beta_max_combined, beta_max_table, EquationKind};
use succonv::problems::{
    convergence_orders, error_norms, interpolate, make_problem, reference_solution, BenchmarkCase, CaseParams, CaseSpec,
    CASE_NAMES,
};
use succonv::solver2d::axis_bounds;
use succonv::stability::{scan_beta_max, stability_report, write_contours, ScanGrid, ScanSpec, SymbolMode};
use succonv::{compute_bounds, Execution, Quadrature, RkOrder, SchemeConfig, SolutionField};

#[derive(Parser, Debug)]
#[command(name = "succonv", version, about = "Successive-convolution solver for degenerate advection-diffusion equations")]
struct Cli {
    /// Worker threads for 2D sweeps and stability scans (1 runs sequentially).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run one benchmark case and write the final solution.
    Run(RunArgs),
    /// L∞ errors and observed orders over a list of resolutions.
    Convergence(ConvergenceArgs),
    /// |λ| over the (κΔx, step ratio) plane, optionally with the β_max scan.
    Stability(StabilityArgs),
    /// Compare a 1D run with the first-order reference scheme on a fine grid.
    CompareReference(CompareArgs),
}

#[derive(Args, Debug, Clone)]
struct CaseArgs {
    /// Benchmark name.
    #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(CASE_NAMES))]
    case: String,
    /// Advection speed (linear_advdiff).
    #[arg(long)]
    c: Option<f64>,
    /// Diffusion coefficient (linear_advdiff).
    #[arg(long)]
    b: Option<f64>,
    /// PME exponent.
    #[arg(long)]
    m: Option<f64>,
    /// Buckley-Leverett with gravity.
    #[arg(long)]
    gravity: bool,
    /// Diffusion strength of the Buckley-Leverett and degenerate cases.
    #[arg(long)]
    epsilon: Option<f64>,
}

#[derive(Args, Debug, Clone)]
struct SchemeArgs {
    /// Runge-Kutta order and number of partial-sum terms (1..3).
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    cfl: Option<f64>,
    /// Defaults to the case setting, or to the tabulated bound when --k changes the order.
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long, value_enum, default_value_t = QuadArg::Weno5)]
    quadrature: QuadArg,
    #[arg(long)]
    no_filter: bool,
    #[arg(long)]
    no_cross_term: bool,
    /// Final time (defaults to the case setting).
    #[arg(long = "T")]
    t_end: Option<f64>,
}

#[derive(Args, Debug)]
struct RunArgs {
    #[command(flatten)]
    case: CaseArgs,
    #[command(flatten)]
    scheme: SchemeArgs,
    /// Cells (both axes in 2D unless --Nx/--Ny are given).
    #[arg(long = "N")]
    n: Option<usize>,
    #[arg(long = "Nx")]
    nx: Option<usize>,
    #[arg(long = "Ny")]
    ny: Option<usize>,
    /// Extra output times, comma separated; each is written next to --out.
    #[arg(long, value_delimiter = ',')]
    snapshots: Vec<f64>,
    /// Output CSV (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ConvergenceArgs {
    #[command(flatten)]
    case: CaseArgs,
    #[command(flatten)]
    scheme: SchemeArgs,
    /// Resolutions, comma separated.
    #[arg(long = "N", value_delimiter = ',', default_values_t = [40, 80, 160, 320, 640])]
    n: Vec<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CompareArgs {
    #[command(flatten)]
    case: CaseArgs,
    #[command(flatten)]
    scheme: SchemeArgs,
    #[arg(long = "N")]
    n: Option<usize>,
    /// Cells of the reference grid.
    #[arg(long, default_value_t = 3000)]
    n_ref: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct StabilityArgs {
    #[arg(long, value_enum)]
    kind: KindArg,
    #[arg(long, default_value_t = 3)]
    k: u32,
    /// Defaults to the tabulated bound for (k, kind).
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long, value_enum, default_value_t = ModeArg::Linear6)]
    mode: ModeArg,
    #[arg(long)]
    no_cross_term: bool,
    #[arg(long, default_value_t = 512)]
    n_kappa: usize,
    #[arg(long, default_value_t = 256)]
    n_ratio: usize,
    /// Also bisect for β_max and report it on stderr.
    #[arg(long)]
    beta_max: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum QuadArg {
    Weno5,
    Linear6,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum KindArg {
    Advection,
    Diffusion,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum ModeArg {
    Linear6,
    Semi,
}

impl From<KindArg> for EquationKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Advection => EquationKind::Advection,
            KindArg::Diffusion => EquationKind::Diffusion,
        }
    }
}

fn case_params(a: &CaseArgs, n: Option<usize>, ny: Option<usize>) -> CaseParams {
    CaseParams { n, ny, c: a.c, b: a.b, m: a.m, gravity: a.gravity, epsilon: a.epsilon }
}

/// `β_max` for `k` and the kinds of terms present in the case, halved in 2D.
fn tabulated_beta(case: &BenchmarkCase, k: RkOrder) -> Result<f64> {
    let u0 = case.initial_field();
    let (c, b) = match &case.spec {
        CaseSpec::OneD { problem, .. } => {
            let wb = compute_bounds(problem, &u0)?;
            (wb.c, wb.b_diff)
        }
        CaseSpec::TwoD { problem, .. } => {
            let (bx, by) = axis_bounds(problem, &u0.values)?;
            (bx.c.max(by.c), bx.b_diff.max(by.b_diff))
        }
    };
    let beta = match (c > 0.0, b > 0.0) {
        (true, false) => beta_max_table(k, EquationKind::Advection),
        (false, true) => beta_max_table(k, EquationKind::Diffusion),
        _ => beta_max_combined(k),
    };
    Ok(if case.is_2d() { 0.5 * beta } else { beta })
}

fn scheme_config(case: &BenchmarkCase, s: &SchemeArgs) -> Result<SchemeConfig> {
    let order = match s.k {
        Some(k) => RkOrder::new(k)?,
        None => case.order,
    };
    let beta = match s.beta {
        Some(b) => b,
        None if order == case.order => case.beta,
        None => tabulated_beta(case, order)?,
    };
    let quad = match s.quadrature {
        QuadArg::Weno5 => Quadrature::Weno5,
        QuadArg::Linear6 => Quadrature::Linear6,
    };
    let mut cfg = SchemeConfig::new(order, beta, s.cfl.unwrap_or(case.cfl))?.with_quadrature(quad);
    if s.no_filter {
        cfg = cfg.with_filter(false);
    }
    if s.no_cross_term {
        cfg = cfg.with_cross_term(false);
    }
    Ok(cfg)
}

fn open_out(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).with_context(|| format!("cannot create {}", p.display()))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

/// `out.csv` at time 0.5 becomes `out_t0.5.csv`.
fn snapshot_path(out: &Path, t: f64) -> PathBuf {
    let stem = out.file_stem().and_then(|s| s.to_str()).unwrap_or("solution");
    let ext = out.extension().and_then(|s| s.to_str()).unwrap_or("csv");
    out.with_file_name(format!("{stem}_t{t}.{ext}"))
}

fn write_solution(w: &mut dyn Write, case: &BenchmarkCase, field: &SolutionField) -> Result<()> {
    match &case.spec {
        CaseSpec::OneD { grid, .. } => match &case.exact {
            Some(exact) => {
                writeln!(w, "x,u,u_exact,error")?;
                for (&x, &u) in grid.nodes().iter().zip(&field.values) {
                    let e = exact(x, field.time);
                    writeln!(w, "{x:.16e},{u:.16e},{e:.16e},{:.16e}", u - e)?;
                }
            }
            None => {
                writeln!(w, "x,u")?;
                for (&x, &u) in grid.nodes().iter().zip(&field.values) {
                    writeln!(w, "{x:.16e},{u:.16e}")?;
                }
            }
        },
        CaseSpec::TwoD { grid, .. } => {
            writeln!(w, "x,y,u")?;
            let nx = grid.gx.len();
            for (j, &y) in grid.gy.nodes().iter().enumerate() {
                for (i, &x) in grid.gx.nodes().iter().enumerate() {
                    writeln!(w, "{x:.16e},{y:.16e},{:.16e}", field.values[j * nx + i])?;
                }
            }
        }
    }
    w.flush()?;
    Ok(())
}

fn run(a: &RunArgs, exec: Execution) -> Result<()> {
    let n = a.nx.or(a.n);
    let ny = a.ny.or(a.n);
    let case = make_problem(&a.case.case, &case_params(&a.case, n, ny))?;
    let cfg = scheme_config(&case, &a.scheme)?;
    let t_end = a.scheme.t_end.unwrap_or(case.t_final);
    if !a.snapshots.is_empty() && a.out.is_none() {
        bail!("--snapshots needs --out to name the snapshot files");
    }
    let tr = case.run(&cfg, t_end, &a.snapshots, exec)?;
    if let Some(out) = &a.out {
        for s in &tr.snapshots {
            let path = snapshot_path(out, s.time);
            write_solution(&mut *open_out(Some(&path))?, &case, s)?;
        }
    }
    write_solution(&mut *open_out(a.out.as_deref())?, &case, &tr.last)?;
    eprintln!("{}: {} steps to t = {}", case.name, tr.steps, tr.last.time);
    Ok(())
}

fn convergence(a: &ConvergenceArgs, exec: Execution) -> Result<()> {
    if a.n.is_empty() {
        bail!("--N needs at least one resolution");
    }
    let mut reports = Vec::new();
    for &n in &a.n {
        let case = make_problem(&a.case.case, &case_params(&a.case, Some(n), Some(n)))?;
        let Some(exact) = case.exact.clone() else {
            bail!("case {} has no exact solution; use compare-reference", case.name);
        };
        let Some(grid) = case.grid_1d() else {
            bail!("convergence tables are one-dimensional");
        };
        let cfg = scheme_config(&case, &a.scheme)?;
        let t_end = a.scheme.t_end.unwrap_or(case.t_final);
        let tr = case.run(&cfg, t_end, &[], exec)?;
        let truth: Vec<f64> = grid.nodes().iter().map(|&x| exact(x, t_end)).collect();
        reports.push(error_norms(&tr.last.values, &truth, grid.dx())?);
    }
    convergence_orders(&mut reports);
    let mut w = open_out(a.out.as_deref())?;
    writeln!(w, "N,linf_error,order")?;
    for r in &reports {
        match r.order_vs_previous {
            Some(o) => writeln!(w, "{},{:.16e},{o:.16e}", r.n_cells, r.linf)?,
            None => writeln!(w, "{},{:.16e},", r.n_cells, r.linf)?,
        }
    }
    w.flush()?;
    Ok(())
}

fn compare_reference(a: &CompareArgs, exec: Execution) -> Result<()> {
    let case = make_problem(&a.case.case, &case_params(&a.case, a.n, a.n))?;
    let Some(grid) = case.grid_1d() else {
        bail!("reference comparison is one-dimensional");
    };
    let cfg = scheme_config(&case, &a.scheme)?;
    let t_end = a.scheme.t_end.unwrap_or(case.t_final);
    let tr = case.run(&cfg, t_end, &[], exec)?;
    let (rgrid, reference) = reference_solution(&case, t_end, a.n_ref)?;
    let r = interpolate(&rgrid, &reference.values, grid);
    let report = error_norms(&tr.last.values, &r, grid.dx())?;
    let mut w = open_out(a.out.as_deref())?;
    writeln!(w, "x,u,u_reference,error")?;
    for ((&x, &u), &ur) in grid.nodes().iter().zip(&tr.last.values).zip(&r) {
        writeln!(w, "{x:.16e},{u:.16e},{ur:.16e},{:.16e}", u - ur)?;
    }
    w.flush()?;
    eprintln!("{}: L∞ = {:.6e}, L1 = {:.6e} against {} reference cells", case.name, report.linf, report.l1, a.n_ref);
    Ok(())
}

fn stability(a: &StabilityArgs, exec: Execution) -> Result<()> {
    let k = RkOrder::new(a.k)?;
    let kind = EquationKind::from(a.kind);
    let mode = match a.mode {
        ModeArg::Linear6 => SymbolMode::FullyDiscreteLinear6,
        ModeArg::Semi => SymbolMode::SemiDiscrete,
    };
    let mut spec = ScanSpec::new(k, kind, mode);
    spec.grid = ScanGrid { n_kappa: a.n_kappa, n_ratio: a.n_ratio, ..ScanGrid::default() };
    spec.exec = exec;
    if a.no_cross_term {
        spec.cross_term = false;
    }
    let beta = a.beta.unwrap_or_else(|| beta_max_table(k, kind));
    let report = stability_report(&spec, beta, false)?;
    let mut w = open_out(a.out.as_deref())?;
    write_contours(&report, &mut w)?;
    w.flush()?;
    eprintln!("max |λ| = {:.12} at β = {beta}", report.max_abs_lambda);
    if a.beta_max {
        eprintln!("β_max ≈ {:.4}", scan_beta_max(&spec)?);
    }
    Ok(())
}

fn dispatch(cli: &Cli) -> Result<()> {
    let exec = match cli.threads {
        Some(0) => bail!("--threads must be at least 1"),
        Some(1) => Execution::Sequential,
        _ => Execution::Parallel,
    };
    let body = || match &cli.command {
        Command::Run(a) => run(a, exec),
        Command::Convergence(a) => convergence(a, exec),
        Command::Stability(a) => stability(a, exec),
        Command::CompareReference(a) => compare_reference(a, exec),
    };
    match cli.threads {
        Some(t) if t > 1 => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .context("cannot start the thread pool")?
            .install(body),
        _ => body(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let msg = format!("{e:#}").replace('\n', " ");
            eprintln!("succonv: error: {msg}");
            ExitCode::FAILURE
        }
    }
}
