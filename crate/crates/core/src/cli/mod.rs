//! `stancu-lab` command-line front end.
//!
//! Exit codes: 0 success, 1 a checked property failed, 2 usage or
//! validation error.

pub mod figure;
pub mod svg;
pub mod table;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bounds::{convergence_scan, theorem4_experiment, BoundConfig, RatioFamily, DEFAULT_C1};
use crate::function::FunctionSpec;
use crate::nodes::{check_theorem1, check_theorem2, check_theorem3};
use crate::operators::{uniform_grid, StancuOperator, StancuParams};

use figure::{nodes_csv_table, FigureId, FigureJob};
use table::{fmt_num, Table};

pub const GRID_ENV: &str = "STANCU_LAB_GRID";

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "stancu-lab",
    version,
    about = "Bernstein-Stancu operator experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate f, its Bernstein and its Bernstein-Stancu polynomial
    Eval(EvalArgs),
    /// List Bernstein and Bernstein-Stancu nodes
    Nodes(NodesArgs),
    /// Check a node-geometry or parameter-limit property
    Check(CheckArgs),
    /// Reproduce a figure as CSV and SVG
    Figure(FigureArgs),
    /// Error quantities along a degree sequence
    Converge(ConvergeArgs),
}

#[derive(Debug, Args)]
struct OperatorArgs {
    #[arg(long, default_value = "sin15")]
    function: String,
    #[arg(long)]
    n: u32,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    alpha: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    beta: f64,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("at").required(true).args(["x", "grid"]))]
struct EvalArgs {
    #[command(flatten)]
    op: OperatorArgs,
    /// Single evaluation point in [0,1]
    #[arg(long, allow_negative_numbers = true)]
    x: Option<f64>,
    /// Number of uniform grid points on [0,1]
    #[arg(long)]
    grid: Option<usize>,
}

#[derive(Debug, Args)]
struct NodesArgs {
    #[arg(long)]
    n: u32,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    alpha: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    beta: f64,
    /// Write the CSV here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Theorem {
    /// Node-gap bound (alpha+beta)/(n+beta) along --n
    T1,
    /// Clustering around alpha/beta
    T2,
    /// Nested clustering for --pair sets with equal ratio
    T3,
    /// Distance to f(alpha/beta) along scaled parameters
    T4,
}

#[derive(Debug, Args)]
struct CheckArgs {
    theorem: Theorem,
    #[arg(long, value_delimiter = ',', required = true)]
    n: Vec<u32>,
    #[arg(long, allow_negative_numbers = true)]
    alpha: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    beta: Option<f64>,
    /// `alpha,beta` parameter set (t3); repeat for each family
    #[arg(long)]
    pair: Vec<String>,
    #[arg(long, default_value = "sin15")]
    function: String,
    /// Scale factors applied to (alpha, beta) (t4)
    #[arg(long, value_delimiter = ',', default_values_t = [1.0, 10.0, 100.0, 1000.0])]
    scales: Vec<f64>,
    /// Also require some level to come within this distance of f(m) (t4)
    #[arg(long)]
    eps: Option<f64>,
    /// Per-k or per-level data as CSV
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct FigureArgs {
    /// f1..f10, or `all`
    id: String,
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Override the preset degree
    #[arg(long)]
    n: Option<u32>,
    /// Points of the curve grid
    #[arg(long)]
    grid: Option<usize>,
}

#[derive(Debug, Args)]
struct ConvergeArgs {
    #[arg(long, default_value = "sin15")]
    function: String,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    alpha: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    beta: f64,
    #[arg(long, value_delimiter = ',', required = true)]
    n: Vec<u32>,
    #[arg(long, default_value_t = DEFAULT_C1)]
    c1: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Failed(String),
}

impl From<crate::Error> for CliError {
    fn from(e: crate::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

type CliResult<T = ()> = Result<T, CliError>;

/// Parses `STANCU_LAB_GRID=<mod_grid>,<sup_grid>`.
pub fn bound_config_from_env(value: Option<&str>, c1: f64) -> crate::Result<BoundConfig> {
    let Some(value) = value else {
        let d = BoundConfig::default();
        return BoundConfig::new(c1, d.mod_grid_size(), d.sup_grid_size());
    };
    let parts: Vec<&str> = value.split(',').map(str::trim).collect();
    let parsed: Option<Vec<usize>> = parts.iter().map(|p| p.parse().ok()).collect();
    match parsed.as_deref() {
        Some([m, s]) => BoundConfig::new(c1, *m, *s),
        _ => Err(crate::Error::InvalidArgument(format!(
            "{GRID_ENV} must be `<mod_grid>,<sup_grid>` (got `{value}`)"
        ))),
    }
}

/// Runs one invocation; `grid_env` is the value of `STANCU_LAB_GRID`.
pub fn run<I, T>(args: I, grid_env: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return code;
        }
    };
    let result = match cli.command {
        Command::Eval(a) => cmd_eval(a, out),
        Command::Nodes(a) => cmd_nodes(a, out),
        Command::Check(a) => cmd_check(a, grid_env, out),
        Command::Figure(a) => cmd_figure(a, out),
        Command::Converge(a) => cmd_converge(a, grid_env, out),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(CliError::Failed(msg)) => {
            let _ = writeln!(err, "violation: {msg}");
            EXIT_FAILED
        }
    }
}

fn emit(table: &Table, path: Option<&Path>, out: &mut dyn Write) -> CliResult {
    let csv = table.to_csv();
    match path {
        Some(p) => fs::write(p, csv)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", p.display()))),
        None => out.write_all(csv.as_bytes()).map_err(Into::into),
    }
}

fn cmd_eval(a: EvalArgs, out: &mut dyn Write) -> CliResult {
    let f: FunctionSpec = a.op.function.parse()?;
    let p = StancuParams::new(a.op.n, a.op.alpha, a.op.beta)?;
    let xs = match (a.x, a.grid) {
        (Some(x), _) => {
            if !(0.0..=1.0).contains(&x) {
                return Err(CliError::Usage(format!("x = {x} is outside [0,1]")));
            }
            vec![x]
        }
        (None, Some(g)) => uniform_grid(g)?,
        (None, None) => unreachable!("clap requires --x or --grid"),
    };
    let stancu = StancuOperator::new(&f, p)?;
    let plain = StancuOperator::new(&f, StancuParams::bernstein(p.n())?)?;
    let mut table = Table::new(&["x", "f", "bernstein", "stancu"]);
    for x in xs {
        table.push_values(&[x, f.eval(x)?, plain.eval(x)?, stancu.eval(x)?]);
    }
    emit(&table, None, out)
}

fn cmd_nodes(a: NodesArgs, out: &mut dyn Write) -> CliResult {
    let p = StancuParams::new(a.n, a.alpha, a.beta)?;
    emit(&nodes_csv_table(p)?, a.out.as_deref(), out)
}

fn single_degree(ns: &[u32]) -> CliResult<u32> {
    match ns {
        [n] => Ok(*n),
        _ => Err(CliError::Usage("this check takes a single --n".into())),
    }
}

fn required(v: Option<f64>, name: &str) -> CliResult<f64> {
    v.ok_or_else(|| CliError::Usage(format!("--{name} is required for this check")))
}

fn parse_pair(s: &str) -> CliResult<(f64, f64)> {
    let bad = || CliError::Usage(format!("--pair expects `alpha,beta` (got `{s}`)"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    Ok((
        a.trim().parse().map_err(|_| bad())?,
        b.trim().parse().map_err(|_| bad())?,
    ))
}

fn cmd_check(a: CheckArgs, grid_env: Option<&str>, out: &mut dyn Write) -> CliResult {
    match a.theorem {
        Theorem::T1 => {
            let alpha = required(a.alpha, "alpha")?;
            let beta = required(a.beta, "beta")?;
            let r = check_theorem1(alpha, beta, &a.n)?;
            writeln!(out, "t1 alpha={} beta={}", fmt_num(alpha), fmt_num(beta))?;
            let mut t = Table::new(&["n", "max_gap", "argmax_k", "bound", "attains_bound"]);
            for row in &r.rows {
                writeln!(
                    out,
                    "n={} max_gap={} argmax_k={} bound={}{}",
                    row.n,
                    fmt_num(row.max_gap),
                    row.argmax_k,
                    fmt_num(row.bound),
                    if row.attains_bound { " (equality)" } else { "" }
                )?;
                t.push_values(&[
                    f64::from(row.n),
                    row.max_gap,
                    f64::from(row.argmax_k),
                    row.bound,
                    f64::from(u8::from(row.attains_bound)),
                ]);
            }
            finish_check(&t, a.csv.as_deref(), out, r.holds(), || {
                match r.first_violation() {
                    Some(n) => format!("max gap exceeds bound at n={n}"),
                    None => "bound sequence is not strictly decreasing".into(),
                }
            })
        }
        Theorem::T2 => {
            let p = StancuParams::new(
                single_degree(&a.n)?,
                required(a.alpha, "alpha")?,
                required(a.beta, "beta")?,
            )?;
            let r = check_theorem2(p)?;
            writeln!(
                out,
                "t2 n={} alpha={} beta={} m={} factor={} max_gap={} max_identity_residual={} crossings={:?}",
                p.n(),
                fmt_num(p.alpha()),
                fmt_num(p.beta()),
                fmt_num(r.ratio_m),
                fmt_num(r.contraction_factor),
                fmt_num(r.max_gap),
                fmt_num(r.max_identity_residual),
                r.crossing_indices
            )?;
            let mut t = Table::new(&[
                "k",
                "bernstein_node",
                "stancu_node",
                "gap",
                "dist_bern_to_m",
                "dist_stancu_to_m",
                "identity_residual",
            ]);
            for row in &r.rows {
                t.push_values(&[
                    f64::from(row.k),
                    row.bernstein_node,
                    row.stancu_node,
                    row.gap,
                    row.dist_bernstein,
                    row.dist_stancu,
                    row.identity_residual,
                ]);
            }
            finish_check(&t, a.csv.as_deref(), out, r.holds(), || {
                format!(
                    "clustering fails at k={}",
                    r.first_violation().unwrap_or_default()
                )
            })
        }
        Theorem::T3 => {
            let n = single_degree(&a.n)?;
            if a.pair.len() < 2 {
                return Err(CliError::Usage(
                    "t3 needs at least two --pair values".into(),
                ));
            }
            let sets = a
                .pair
                .iter()
                .map(|s| {
                    parse_pair(s).and_then(|(x, y)| StancuParams::new(n, x, y).map_err(Into::into))
                })
                .collect::<CliResult<Vec<_>>>()?;
            let mut t = Table::new(&[
                "pair",
                "k",
                "node1",
                "node2",
                "dist1",
                "dist2",
                "distance_ratio",
                "difference_residual",
            ]);
            let mut failure = None;
            for (i, w) in sets.windows(2).enumerate() {
                let r = check_theorem3(w[0], w[1])?;
                writeln!(
                    out,
                    "t3 n={n} ({},{}) vs ({},{}) m={} expected_ratio={} max_ratio_residual={} max_difference_residual={}",
                    fmt_num(w[0].alpha()),
                    fmt_num(w[0].beta()),
                    fmt_num(w[1].alpha()),
                    fmt_num(w[1].beta()),
                    fmt_num(r.ratio_m),
                    fmt_num(r.expected_ratio),
                    fmt_num(r.max_ratio_residual),
                    fmt_num(r.max_difference_residual)
                )?;
                for row in &r.rows {
                    t.push(vec![
                        Some(i as f64),
                        Some(f64::from(row.k)),
                        Some(row.node1),
                        Some(row.node2),
                        Some(row.dist1),
                        Some(row.dist2),
                        row.distance_ratio,
                        Some(row.difference_residual),
                    ]);
                }
                if failure.is_none() && !r.holds() {
                    failure = Some(format!(
                        "pair {i}: nesting fails at k={}",
                        r.first_violation().unwrap_or_default()
                    ));
                }
            }
            let holds = failure.is_none();
            finish_check(&t, a.csv.as_deref(), out, holds, || {
                failure.clone().unwrap_or_default()
            })
        }
        Theorem::T4 => {
            let n = single_degree(&a.n)?;
            let f: FunctionSpec = a.function.parse()?;
            let fam = RatioFamily::new(
                required(a.alpha, "alpha")?,
                required(a.beta, "beta")?,
                a.scales.clone(),
            )?;
            let cfg = bound_config_from_env(grid_env, DEFAULT_C1)?;
            let r = theorem4_experiment(&f, n, &fam, &cfg)?;
            writeln!(
                out,
                "t4 f={} n={n} m={} f(m)={} slack={}",
                f.name(),
                fmt_num(r.ratio_m),
                fmt_num(r.f_at_m),
                fmt_num(r.slack)
            )?;
            let mut t = Table::new(&[
                "scale",
                "alpha",
                "beta",
                "d_at_m",
                "d_sup",
                "max_node_distance",
                "delta_bound",
                "omega_bound",
            ]);
            for l in &r.levels {
                writeln!(
                    out,
                    "scale={} alpha={} beta={} d_at_m={} d_sup={} omega_bound={}",
                    fmt_num(l.scale),
                    fmt_num(l.alpha),
                    fmt_num(l.beta),
                    fmt_num(l.d_at_m),
                    fmt_num(l.d_sup),
                    fmt_num(l.omega_bound)
                )?;
                t.push_values(&[
                    l.scale,
                    l.alpha,
                    l.beta,
                    l.d_at_m,
                    l.d_sup,
                    l.max_node_distance,
                    l.delta_bound,
                    l.omega_bound,
                ]);
            }
            let reached = a.eps.map(|eps| r.first_level_below(eps));
            let holds = r.holds() && !matches!(reached, Some(None));
            finish_check(&t, a.csv.as_deref(), out, holds, || {
                match (r.first_violation(), a.eps) {
                    (Some(j), _) => format!("level {j} breaks the bound or the decrease"),
                    (None, Some(eps)) => format!("no level comes within {eps} of f(m)"),
                    (None, None) => "check failed".into(),
                }
            })
        }
    }
}

fn finish_check(
    t: &Table,
    csv: Option<&Path>,
    out: &mut dyn Write,
    holds: bool,
    violation: impl FnOnce() -> String,
) -> CliResult {
    if let Some(p) = csv {
        emit(t, Some(p), out)?;
    }
    if holds {
        writeln!(out, "result: holds")?;
        Ok(())
    } else {
        writeln!(out, "result: violated")?;
        Err(CliError::Failed(violation()))
    }
}

fn cmd_figure(a: FigureArgs, out: &mut dyn Write) -> CliResult {
    let ids: Vec<FigureId> = if a.id == "all" {
        FigureId::all().collect()
    } else {
        vec![a.id.parse().map_err(CliError::Usage)?]
    };
    if let Some(g) = a.grid {
        if g < 2 {
            return Err(CliError::Usage("--grid must be at least 2".into()));
        }
    }
    fs::create_dir_all(&a.out)
        .map_err(|e| CliError::Usage(format!("cannot create {}: {e}", a.out.display())))?;
    for id in ids {
        let mut job = FigureJob::preset(id);
        if let Some(n) = a.n {
            job = job.with_degree(n);
        }
        if let Some(g) = a.grid {
            job = job.with_grid(g);
        }
        let (csv, svg) = job.render()?;
        for (ext, body) in [("csv", csv), ("svg", svg)] {
            let path = a.out.join(format!("{id}.{ext}"));
            fs::write(&path, body)
                .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?;
            writeln!(out, "{}", path.display())?;
        }
    }
    Ok(())
}

fn cmd_converge(a: ConvergeArgs, grid_env: Option<&str>, out: &mut dyn Write) -> CliResult {
    let f: FunctionSpec = a.function.parse()?;
    let cfg = bound_config_from_env(grid_env, a.c1)?;
    let rows = convergence_scan(&f, a.alpha, a.beta, &a.n, &cfg)?;
    let mut t = Table::new(&[
        "n",
        "sup_error",
        "operator_distance",
        "corollary2_bound",
        "t1_bound",
    ]);
    for r in &rows {
        t.push_values(&[
            f64::from(r.n),
            r.sup_error,
            r.operator_distance,
            r.corollary2_bound,
            r.t1_bound,
        ]);
    }
    emit(&t, a.out.as_deref(), out)?;
    match rows.iter().find(|r| !r.dominated()) {
        Some(r) => Err(CliError::Failed(format!(
            "sup_error {} exceeds corollary2_bound {} at n={}",
            fmt_num(r.sup_error),
            fmt_num(r.corollary2_bound),
            r.n
        ))),
        None => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["stancu-lab"];
        full.extend_from_slice(args);
        let code = run(full, None, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn env_grid_parsing() {
        let cfg = bound_config_from_env(Some("2001,501"), DEFAULT_C1).unwrap();
        assert_eq!((cfg.mod_grid_size(), cfg.sup_grid_size()), (2001, 501));
        assert!(bound_config_from_env(Some("2001"), DEFAULT_C1).is_err());
        assert!(bound_config_from_env(Some("a,b"), DEFAULT_C1).is_err());
        assert!(bound_config_from_env(Some("50,50"), DEFAULT_C1).is_err());
        assert_eq!(
            bound_config_from_env(None, DEFAULT_C1).unwrap(),
            BoundConfig::default()
        );
    }

    #[test]
    fn eval_requires_point_or_grid() {
        let (code, _, _) = call(&["eval", "--function", "e0", "--n", "3"]);
        assert_eq!(code, EXIT_USAGE);
    }

    #[test]
    fn eval_rejects_x_outside() {
        let (code, _, err) = call(&["eval", "--n", "3", "--x", "1.5"]);
        assert_eq!(code, EXIT_USAGE);
        assert_eq!(err.lines().count(), 1);
    }

    #[test]
    fn unknown_function() {
        let (code, _, err) = call(&["eval", "--function", "cos", "--n", "3", "--x", "0.5"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("cos"));
    }

    #[test]
    fn t2_single_degree_only() {
        let (code, _, _) = call(&[
            "check", "t2", "--n", "25,50", "--alpha", "17", "--beta", "100",
        ]);
        assert_eq!(code, EXIT_USAGE);
    }

    #[test]
    fn t3_bad_pair() {
        let (code, _, _) = call(&[
            "check", "t3", "--n", "100", "--pair", "4.7", "--pair", "47,100",
        ]);
        assert_eq!(code, EXIT_USAGE);
        let (code, _, _) = call(&[
            "check", "t3", "--n", "100", "--pair", "4.7,10", "--pair", "50,100",
        ]);
        assert_eq!(code, EXIT_USAGE);
    }

    #[test]
    fn t4_unreachable_eps_fails() {
        let (code, out, err) = call(&[
            "check", "t4", "--n", "100", "--alpha", "4.7", "--beta", "10", "--scales", "1,10",
            "--eps", "1e-6",
        ]);
        assert_eq!(code, EXIT_FAILED, "{out}{err}");
        assert!(err.starts_with("violation:"));
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = call(&["--help"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("figure"));
    }
}
