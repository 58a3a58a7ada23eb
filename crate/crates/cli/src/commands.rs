use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::time::Instant;

use cstre::entropy::{ar_q_conditional, cstre, vn_conditional, QIndex};
use cstre::io::{curve_to_csv, curve_to_json, fmt_sig, parse_matrix, reports_to_csv, reports_to_json};
use cstre::qlinalg::{DensityMatrix, Partition};
use cstre::separability::{
    criteria_table, curve_data, detects, isospectral_verdict_at, limit_threshold, ppt_min_eigenvalue, Criterion,
    SweepConfig, TableRow, ISOSPECTRAL_QS,
};
use cstre::states::{isospectral_pair, noisy_family, Family, FamilySpec};
use serde::Serialize;

use crate::args::{split_partitions, Builtin, Cli, Command, CurveArgs, Format, ImplicitArgs, IsospectralArgs, Output, StateArgs, TableArgs};
use crate::error::{usage, CliError, EXIT_NOT_CONVERGED};

type Status = Result<u8, CliError>;

const MAX_QUBITS: usize = 8;

pub fn run(cli: &Cli) -> Status {
    match &cli.command {
        Command::Table(a) => table(a),
        Command::Curve(a) => curve(a),
        Command::Implicit(a) => implicit(a),
        Command::Entropy(a) => entropy(a),
        Command::Check(a) => check(a),
        Command::Isospectral(a) => isospectral(a),
    }
}

fn emit(out: &Output, text: &str) -> Result<(), CliError> {
    match &out.output {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

fn check_qubits(n: usize) -> Result<usize, CliError> {
    if (2..=MAX_QUBITS).contains(&n) {
        Ok(n)
    } else {
        Err(usage(format!("--nqubits must be between 2 and {MAX_QUBITS}, got {n}")))
    }
}

fn partition_or_first(text: Option<&str>, n: usize) -> Result<Partition, CliError> {
    match text {
        Some(t) => Partition::parse(t, n).map_err(|e| usage(e.to_string())),
        None => Partition::prefix(n, 1).map_err(|e| usage(e.to_string())),
    }
}

fn q_index(q: f64) -> Result<QIndex, CliError> {
    QIndex::new(q).map_err(|e| usage(e.to_string()))
}

fn table(a: &TableArgs) -> Status {
    let families = a.family.map_or(vec![Family::W, Family::Ghz], |f| vec![f]);
    let sizes = match a.nqubits {
        Some(n) => vec![check_qubits(n)?],
        None => vec![3, 4],
    };
    let names = split_partitions(&a.partitions);
    let mut rows = vec![];
    for &n in &sizes {
        let cuts = if names.is_empty() {
            Partition::all_prefixes(n)
        } else {
            names
                .iter()
                .map(|p| Partition::parse(p, n))
                .collect::<Result<_, _>>()
                .map_err(|e| usage(e.to_string()))?
        };
        for &f in &families {
            rows.extend(cuts.iter().map(|p| TableRow::new(f, p.clone())));
        }
    }
    let mut cfg = SweepConfig::default();
    if let Some(g) = &a.qgrid {
        cfg.q_schedule = g.0.clone();
    }

    let start = Instant::now();
    let reports = criteria_table(&rows, &a.criteria, &cfg)?;
    if a.out.verbose {
        eprintln!("{} reports in {:.2?}", reports.len(), start.elapsed());
        for r in &reports {
            eprintln!(
                "{}{} {} {}: x* = {:.5} ({})",
                r.family,
                r.n_qubits,
                r.partition,
                r.criterion,
                r.x_star,
                if r.converged { "converged" } else { "not converged" }
            );
        }
    }
    let text = match a.out.format.unwrap_or(Format::Json) {
        Format::Json => reports_to_json(&reports).expect("reports serialize"),
        Format::Csv => reports_to_csv(&reports).map_err(std::io::Error::other)?,
    };
    emit(&a.out, &text)?;
    Ok(if reports.iter().all(|r| r.converged) { 0 } else { EXIT_NOT_CONVERGED })
}

fn curve(a: &CurveArgs) -> Status {
    let n = check_qubits(a.nqubits)?;
    let p = partition_or_first(a.partition.as_deref(), n)?;
    q_index(a.q)?;
    let points = curve_data(a.family, &p, a.criterion, a.q, &a.xgrid.0)?;
    let text = match a.out.format.unwrap_or(Format::Json) {
        Format::Json => curve_to_json(&points).expect("curve serializes"),
        Format::Csv => curve_to_csv(&points),
    };
    emit(&a.out, &text)?;
    Ok(0)
}

#[derive(Serialize)]
struct ImplicitPoint {
    criterion: Criterion,
    q: f64,
    x_star: f64,
}

fn implicit(a: &ImplicitArgs) -> Status {
    let n = check_qubits(a.nqubits)?;
    let p = partition_or_first(a.partition.as_deref(), n)?;
    let mut cfg = SweepConfig::default();
    if let Some(g) = &a.qgrid {
        cfg.q_schedule = g.0.clone();
    }
    let mut points = vec![];
    for &c in &a.criteria {
        let r = limit_threshold(a.family, &p, c, &cfg)?;
        if c.depends_on_q() {
            points.extend(r.samples.iter().map(|s| ImplicitPoint {
                criterion: c,
                q: s.q,
                x_star: s.x_star,
            }));
        } else {
            // q-independent: a constant line over the same grid
            points.extend(cfg.q_schedule.iter().map(|&q| ImplicitPoint {
                criterion: c,
                q,
                x_star: r.x_star,
            }));
        }
    }
    let text = match a.out.format.unwrap_or(Format::Json) {
        Format::Json => json(&points),
        Format::Csv => {
            let mut s = String::from("criterion,q,x_star\n");
            for pt in &points {
                writeln!(s, "{},{},{}", pt.criterion, fmt_sig(pt.q), fmt_sig(pt.x_star)).unwrap();
            }
            s
        }
    };
    emit(&a.out, &text)?;
    Ok(0)
}

fn load_matrix(path: &Path) -> Result<DensityMatrix, CliError> {
    let text = fs::read_to_string(path)?;
    let m = parse_matrix(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let dim = m.dim();
    if !dim.is_power_of_two() || dim < 4 {
        return Err(CliError::Input(format!(
            "{}: dimension {dim} is not that of two or more qubits",
            path.display()
        )));
    }
    let n = dim.trailing_zeros() as usize;
    DensityMatrix::new(m, n).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn load_state(a: &StateArgs) -> Result<DensityMatrix, CliError> {
    if let Some(path) = &a.input {
        return load_matrix(path);
    }
    if let Some(b) = a.builtin {
        let (entangled, separable) = isospectral_pair();
        return Ok(match b {
            Builtin::IsoEntangled => entangled,
            Builtin::IsoSeparable => separable,
        });
    }
    let (Some(family), Some(x)) = (a.family, a.x) else {
        return Err(usage("one of --input, --builtin or --family with --x is required"));
    };
    let n = check_qubits(a.nqubits)?;
    let spec = FamilySpec::new(family, n, x).map_err(|e| usage(e.to_string()))?;
    noisy_family(&spec).map_err(|e| CliError::Runtime(e.into()))
}

#[derive(Serialize)]
struct EntropyOutput {
    criterion: Criterion,
    partition: String,
    q: f64,
    value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    gammas: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    q_tilde: Option<f64>,
}

fn evaluate(rho: &DensityMatrix, p: &Partition, c: Criterion, q: QIndex, verbose: bool) -> Result<EntropyOutput, CliError> {
    let numeric = |e: cstre::Error| CliError::Runtime(e.into());
    let mut out = EntropyOutput {
        criterion: c,
        partition: p.to_string(),
        q: if c.depends_on_q() { q.value() } else { 1.0 },
        value: 0.0,
        gammas: None,
        q_tilde: None,
    };
    match c {
        Criterion::Cstre => {
            let r = cstre(rho, p, q).map_err(numeric)?;
            out.value = r.value;
            if verbose {
                out.gammas = r.gammas;
                out.q_tilde = r.q_tilde;
            }
        }
        Criterion::Ar => out.value = ar_q_conditional(rho, p, q).map_err(numeric)?,
        Criterion::Vn => out.value = vn_conditional(rho, p).map_err(numeric)?,
        Criterion::Ppt => out.value = ppt_min_eigenvalue(rho, p).map_err(numeric)?,
    }
    Ok(out)
}

fn entropy(a: &StateArgs) -> Status {
    let rho = load_state(a)?;
    let p = partition_or_first(a.partition.as_deref(), rho.n_qubits())?;
    let q = q_index(a.q)?;
    let r = evaluate(&rho, &p, a.criterion, q, a.out.verbose)?;
    let text = match a.out.format {
        Some(Format::Json) => json(&r),
        Some(Format::Csv) => format!(
            "criterion,partition,q,value\n{},{},{},{}\n",
            r.criterion,
            r.partition,
            fmt_sig(r.q),
            fmt_sig(r.value)
        ),
        None => {
            let mut s = format!("{}\n", fmt_sig(r.value));
            if let Some(g) = &r.gammas {
                let g: Vec<String> = g.iter().map(|&v| fmt_sig(v)).collect();
                writeln!(s, "gammas: {}", g.join(" ")).unwrap();
            }
            if let Some(t) = r.q_tilde {
                writeln!(s, "q_tilde: {}", fmt_sig(t)).unwrap();
            }
            s
        }
    };
    emit(&a.out, &text)?;
    Ok(0)
}

#[derive(Serialize)]
#[serde(rename_all = "UPPERCASE")]
enum Verdict {
    Entangled,
    Inconclusive,
    Separable,
}

#[derive(Serialize)]
struct CheckOutput {
    verdict: Verdict,
    criterion: Criterion,
    partition: String,
    q: f64,
    value: f64,
}

fn check(a: &StateArgs) -> Status {
    let rho = load_state(a)?;
    let p = partition_or_first(a.partition.as_deref(), rho.n_qubits())?;
    let q = q_index(a.q)?;
    let r = evaluate(&rho, &p, a.criterion, q, false)?;
    let entangled = detects(&rho, &p, a.criterion, q).map_err(|e| CliError::Runtime(e.into()))?;
    let verdict = match (entangled, a.criterion) {
        (true, _) => Verdict::Entangled,
        // PPT is necessary and sufficient only for two qubits
        (false, Criterion::Ppt) if rho.n_qubits() == 2 => Verdict::Separable,
        (false, _) => Verdict::Inconclusive,
    };
    let out = CheckOutput {
        verdict,
        criterion: r.criterion,
        partition: r.partition,
        q: r.q,
        value: r.value,
    };
    let word = serde_json::to_value(&out.verdict).expect("verdict serializes");
    let word = word.as_str().expect("verdict is a string");
    let text = match a.out.format {
        Some(Format::Json) => json(&out),
        Some(Format::Csv) => format!(
            "verdict,criterion,partition,q,value\n{word},{},{},{},{}\n",
            out.criterion,
            out.partition,
            fmt_sig(out.q),
            fmt_sig(out.value)
        ),
        None if a.out.verbose => format!("{word}\n{} = {}\n", out.criterion, fmt_sig(out.value)),
        None => format!("{word}\n"),
    };
    emit(&a.out, &text)?;
    Ok(0)
}

fn isospectral(a: &IsospectralArgs) -> Status {
    let qs = a.qgrid.as_ref().map_or(ISOSPECTRAL_QS.to_vec(), |g| g.0.clone());
    let r = isospectral_verdict_at(&qs)?;
    let all_rows = std::iter::once(&r.q_one).chain(&r.rows);
    let text = match a.out.format {
        Some(Format::Json) => json(&r),
        Some(Format::Csv) => {
            let mut s = String::from("q,entangled,separable\n");
            for row in all_rows {
                writeln!(s, "{},{},{}", fmt_sig(row.q), fmt_sig(row.entangled), fmt_sig(row.separable)).unwrap();
            }
            s
        }
        None => {
            let mut s = format!("{:>8}  {:>16}  {:>16}\n", "q", "entangled", "separable");
            for row in all_rows {
                writeln!(s, "{:>8}  {:>16.9}  {:>16.9}", row.q, row.entangled, row.separable).unwrap();
            }
            writeln!(
                s,
                "entangled state detected at every q: {}\nseparable state never flagged: {}",
                r.entangled_detected, r.separable_consistent
            )
            .unwrap();
            s
        }
    };
    emit(&a.out, &text)?;
    Ok(0)
}
