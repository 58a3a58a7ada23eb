//! The demo computations, kept free of wasm types so they run natively too.

use cstre::qlinalg::Partition;
use cstre::separability::{
    curve_data, geometric_grid, isospectral_verdict_at, limit_threshold, linear_grid, Criterion, SweepConfig,
};
use cstre::states::Family;

const MAX_QUBITS: usize = 6;

fn setup(family: &str, n_qubits: usize, partition: &str, criterion: &str) -> Result<(Family, Partition, Criterion), String> {
    if !(2..=MAX_QUBITS).contains(&n_qubits) {
        return Err(format!("qubit count must be between 2 and {MAX_QUBITS}"));
    }
    let family: Family = family.parse()?;
    let criterion: Criterion = criterion.parse()?;
    let partition = Partition::parse(partition, n_qubits).map_err(|e| e.to_string())?;
    Ok((family, partition, criterion))
}

pub fn curve(
    family: &str,
    n_qubits: usize,
    partition: &str,
    criterion: &str,
    q: f64,
    step: f64,
) -> Result<Vec<f64>, String> {
    let (family, partition, criterion) = setup(family, n_qubits, partition, criterion)?;
    let grid = linear_grid(0.0, 1.0, step).map_err(|e| e.to_string())?;
    let points = curve_data(family, &partition, criterion, q, &grid).map_err(|e| e.to_string())?;
    Ok(points.iter().flat_map(|p| [p.x, p.value.unwrap_or(f64::NAN)]).collect())
}

pub fn implicit(
    family: &str,
    n_qubits: usize,
    partition: &str,
    criterion: &str,
    q_max: f64,
    count: usize,
) -> Result<Vec<f64>, String> {
    let (family, partition, criterion) = setup(family, n_qubits, partition, criterion)?;
    let schedule = geometric_grid(1.0, q_max, count).map_err(|e| e.to_string())?;
    let cfg = SweepConfig::default().with_schedule(schedule.clone());
    let report = limit_threshold(family, &partition, criterion, &cfg).map_err(|e| e.to_string())?;
    if criterion.depends_on_q() {
        Ok(report.samples.iter().flat_map(|s| [s.q, s.x_star]).collect())
    } else {
        Ok(schedule.iter().flat_map(|&q| [q, report.x_star]).collect())
    }
}

pub fn isospectral(q_min: f64, q_max: f64, count: usize) -> Result<Vec<f64>, String> {
    let qs = geometric_grid(q_min, q_max, count).map_err(|e| e.to_string())?;
    let r = isospectral_verdict_at(&qs).map_err(|e| e.to_string())?;
    Ok(r.rows.iter().flat_map(|row| [row.q, row.entangled, row.separable]).collect())
}
