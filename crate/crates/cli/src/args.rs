use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cstre::separability::{geometric_grid, linear_grid, Criterion};
use cstre::states::Family;

/// Entanglement criteria for multi-qubit density matrices.
///
/// Exit status: 0 success, 2 some table row did not converge, 64 usage
/// error, 65 malformed input matrix, 1 other failures.
#[derive(Debug, Parser)]
#[command(name = "cstre", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Separability thresholds x* for families, partitions and criteria.
    ///
    /// Without --family/--nqubits all ten W/GHZ rows on three and four qubits
    /// are computed. CSV columns: family,n_qubits,partition,criterion,kind,q,x_star,converged
    /// with one `sample` row per scheduled q and one `summary` row per report.
    Table(TableArgs),
    /// A criterion evaluated along the mixing parameter at fixed q.
    ///
    /// CSV columns: x,value (empty value where undefined).
    Curve(CurveArgs),
    /// The threshold x*(q) along a q grid.
    ///
    /// CSV columns: criterion,q,x_star
    Implicit(ImplicitArgs),
    /// One entropic quantity (or the smallest partial-transpose eigenvalue) of a state.
    Entropy(StateArgs),
    /// Prints ENTANGLED, INCONCLUSIVE or (PPT on two qubits) SEPARABLE.
    Check(StateArgs),
    /// CSTRE of the isospectral two-qubit pair side by side.
    ///
    /// CSV columns: q,entangled,separable (the q = 1 row is von Neumann).
    Isospectral(IsospectralArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Builtin {
    IsoEntangled,
    IsoSeparable,
}

#[derive(Debug, Args)]
pub struct Output {
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write to FILE instead of standard output.
    #[arg(long, value_name = "FILE")]
    pub output: Option<PathBuf>,
    #[arg(long)]
    pub verbose: bool,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long)]
    pub family: Option<Family>,
    #[arg(long)]
    pub nqubits: Option<usize>,
    /// Partitions such as `A:BC` or `0:1,2` (X given Y); repeat the flag or
    /// separate letter forms with commas (`A:BC,AB:C`).
    #[arg(long = "partitions", alias = "partition", value_parser = partition_text)]
    pub partitions: Vec<String>,
    #[arg(long = "criteria", alias = "criterion", value_delimiter = ',', default_value = "cstre,ar,vn,ppt")]
    pub criteria: Vec<Criterion>,
    /// Geometric q schedule `lo:hi:n` replacing the default one.
    #[arg(long, value_parser = parse_qgrid)]
    pub qgrid: Option<Grid>,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Args)]
pub struct CurveArgs {
    #[arg(long)]
    pub family: Family,
    #[arg(long)]
    pub nqubits: usize,
    #[arg(long, alias = "partitions", value_parser = partition_text)]
    pub partition: Option<String>,
    #[arg(long, alias = "criteria", default_value = "cstre")]
    pub criterion: Criterion,
    #[arg(long, default_value_t = 2.0)]
    pub q: f64,
    /// Mixing-parameter grid `lo:hi:step`.
    #[arg(long, value_parser = parse_xgrid, default_value = "0:1:0.01")]
    pub xgrid: Grid,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Args)]
pub struct ImplicitArgs {
    #[arg(long)]
    pub family: Family,
    #[arg(long)]
    pub nqubits: usize,
    #[arg(long, alias = "partitions", value_parser = partition_text)]
    pub partition: Option<String>,
    #[arg(long = "criteria", alias = "criterion", value_delimiter = ',', default_value = "cstre,ar")]
    pub criteria: Vec<Criterion>,
    /// Geometric q grid `lo:hi:n`; defaults to the table schedule.
    #[arg(long, value_parser = parse_qgrid)]
    pub qgrid: Option<Grid>,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Args)]
pub struct StateArgs {
    /// Density matrix in the text format (`dim d` header, `re+imj` entries).
    #[arg(long, value_name = "FILE", conflicts_with_all = ["builtin", "family"])]
    pub input: Option<PathBuf>,
    #[arg(long, value_enum, conflicts_with = "family")]
    pub builtin: Option<Builtin>,
    #[arg(long, requires = "x")]
    pub family: Option<Family>,
    #[arg(long, default_value_t = 3)]
    pub nqubits: usize,
    /// Mixing parameter for --family.
    #[arg(long)]
    pub x: Option<f64>,
    /// Defaults to the first qubit given the rest.
    #[arg(long, alias = "partitions", value_parser = partition_text)]
    pub partition: Option<String>,
    #[arg(long, alias = "criteria", default_value = "cstre")]
    pub criterion: Criterion,
    #[arg(long, default_value_t = 2.0)]
    pub q: f64,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Args)]
pub struct IsospectralArgs {
    /// Geometric q grid `lo:hi:n`; defaults to 1.1, 1.5, 2, 3, 5, 10.
    #[arg(long, value_parser = parse_qgrid)]
    pub qgrid: Option<Grid>,
    #[command(flatten)]
    pub out: Output,
}

/// A validated, strictly increasing, non-empty grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid(pub Vec<f64>);

fn three_fields(s: &str) -> Result<(f64, f64, &str), String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [lo, hi, third] = parts[..] else {
        return Err(format!("expected lo:hi:{{step|n}}, got {s:?}"));
    };
    let num = |t: &str| t.trim().parse::<f64>().map_err(|_| format!("not a number: {t:?}"));
    Ok((num(lo)?, num(hi)?, third.trim()))
}

fn parse_xgrid(s: &str) -> Result<Grid, String> {
    let (lo, hi, step) = three_fields(s)?;
    let step: f64 = step.parse().map_err(|_| format!("not a number: {step:?}"))?;
    let g = linear_grid(lo, hi, step).map_err(|e| e.to_string())?;
    if lo < 0.0 || g.last().is_some_and(|&v| v > 1.0 + 1e-12) {
        return Err("x grid must lie in [0, 1]".into());
    }
    Ok(Grid(g))
}

fn parse_qgrid(s: &str) -> Result<Grid, String> {
    let (lo, hi, n) = three_fields(s)?;
    let n: usize = n.parse().map_err(|_| format!("not a count: {n:?}"))?;
    geometric_grid(lo, hi, n).map(Grid).map_err(|e| e.to_string())
}

/// Splits `A:BC,AB:C` into its partitions; `0:1,2` stays whole.
pub fn split_partitions(items: &[String]) -> Vec<String> {
    items
        .iter()
        .flat_map(|s| {
            let pieces: Vec<&str> = s.split(',').collect();
            if pieces.iter().all(|p| p.contains(':')) {
                pieces.into_iter().map(|p| p.trim().to_string()).collect()
            } else {
                vec![s.clone()]
            }
        })
        .collect()
}

fn partition_text(s: &str) -> Result<String, String> {
    if s.contains(':') {
        Ok(s.trim().to_string())
    } else {
        Err(format!("partition {s:?} needs the form X:Y"))
    }
}
