//! Separability thresholds for the noisy W/GHZ families.
//!
//! Each criterion is turned into a predicate "detects entanglement at x",
//! which is bisected on the mixing parameter. For the q-dependent criteria the
//! crossing is tracked along a geometric q schedule to approximate q -> inf.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::entropy::{self, cstre, vn_conditional, QIndex, WITNESS_TOL};
use crate::error::Error;
use crate::qlinalg::{eig_hermitian, partial_transpose, DensityMatrix, Partition};
use crate::states::{isospectral_pair, noisy_family, Family, FamilySpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Criterion {
    Cstre,
    Ar,
    Vn,
    Ppt,
}

impl Criterion {
    pub const ALL: [Criterion; 4] = [Criterion::Cstre, Criterion::Ar, Criterion::Vn, Criterion::Ppt];

    pub fn depends_on_q(self) -> bool {
        matches!(self, Criterion::Cstre | Criterion::Ar)
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Criterion::Cstre => "cstre",
            Criterion::Ar => "ar",
            Criterion::Vn => "vn",
            Criterion::Ppt => "ppt",
        })
    }
}

impl FromStr for Criterion {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim().to_ascii_lowercase().as_str() {
            "cstre" => Ok(Criterion::Cstre),
            "ar" => Ok(Criterion::Ar),
            "vn" => Ok(Criterion::Vn),
            "ppt" => Ok(Criterion::Ppt),
            other => Err(format!("unknown criterion {other:?} (expected cstre, ar, vn or ppt)")),
        }
    }
}

#[derive(Debug, Error)]
pub enum SepError {
    #[error(transparent)]
    Numeric(#[from] Error),

    #[error(
        "{criterion} shows no sign change on [{lo}, {hi}] at q = {q} \
         (values {lo_value:e} and {hi_value:e})"
    )]
    NoSignChange {
        criterion: Criterion,
        q: f64,
        lo: f64,
        hi: f64,
        lo_value: f64,
        hi_value: f64,
    },

    #[error("invalid sweep configuration: {0}")]
    BadConfig(String),
}

/// Knobs for the threshold search.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    /// Strictly increasing q values; the last one stands in for q -> inf.
    pub q_schedule: Vec<f64>,
    pub x_bracket: (f64, f64),
    pub bisection_tol: f64,
    /// Successive x*(q) closer than this count as converged.
    pub limit_tol: f64,
    pub max_bisections: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            q_schedule: vec![
                1.0, 2.0, 5.0, 10.0, 20.0, 50.0, 100.0, 200.0, 400.0, 800.0, 1600.0, 3200.0,
                6400.0, 12800.0,
            ],
            x_bracket: (0.0, 1.0),
            bisection_tol: 1e-5,
            limit_tol: 5e-4,
            max_bisections: 60,
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<(), SepError> {
        let bad = |m: &str| Err(SepError::BadConfig(m.to_string()));
        if self.q_schedule.is_empty() {
            return bad("empty q schedule");
        }
        if self.q_schedule.iter().any(|q| !(q.is_finite() && *q > 0.0)) {
            return bad("q values must be finite and positive");
        }
        if self.q_schedule.windows(2).any(|w| w[1] <= w[0]) {
            return bad("q schedule must be strictly increasing");
        }
        let (lo, hi) = self.x_bracket;
        if !(0.0..=1.0).contains(&lo) || !(0.0..=1.0).contains(&hi) || lo >= hi {
            return bad("x bracket must satisfy 0 <= lo < hi <= 1");
        }
        if !(self.bisection_tol > 0.0 && self.limit_tol > 0.0) {
            return bad("tolerances must be positive");
        }
        if self.max_bisections == 0 {
            return bad("max_bisections must be positive");
        }
        Ok(())
    }

    pub fn with_schedule(mut self, q_schedule: Vec<f64>) -> Self {
        self.q_schedule = q_schedule;
        self
    }
}

/// Smallest eigenvalue of the partial transpose over the smaller side of the partition.
pub fn ppt_min_eigenvalue(rho: &DensityMatrix, partition: &Partition) -> Result<f64, Error> {
    let pt = partial_transpose(rho, partition.smaller_side())?;
    Ok(eig_hermitian(&pt)?.min())
}

/// The criterion's scalar value at one state. PPT reports the smallest
/// partial-transpose eigenvalue; the others report the conditional entropy.
pub fn criterion_value(
    rho: &DensityMatrix,
    partition: &Partition,
    criterion: Criterion,
    q: QIndex,
) -> Result<f64, Error> {
    match criterion {
        Criterion::Cstre => Ok(cstre(rho, partition, q)?.value),
        Criterion::Ar => entropy::ar_q_conditional(rho, partition, q),
        Criterion::Vn => vn_conditional(rho, partition),
        Criterion::Ppt => ppt_min_eigenvalue(rho, partition),
    }
}

/// Whether the criterion certifies entanglement of `rho`.
pub fn detects(
    rho: &DensityMatrix,
    partition: &Partition,
    criterion: Criterion,
    q: QIndex,
) -> Result<bool, Error> {
    match criterion {
        Criterion::Cstre => Ok(cstre(rho, partition, q)?.is_negative()),
        Criterion::Ar => entropy::ar_is_negative(rho, partition, q),
        Criterion::Vn => Ok(vn_conditional(rho, partition)? < -WITNESS_TOL),
        Criterion::Ppt => Ok(ppt_min_eigenvalue(rho, partition)? < -WITNESS_TOL),
    }
}

fn family_state(family: Family, partition: &Partition, x: f64) -> Result<DensityMatrix, Error> {
    noisy_family(&FamilySpec::new(family, partition.n_qubits(), x)?)
}

/// Bisects for the mixing parameter where the criterion starts detecting entanglement.
pub fn zero_crossing_x(
    family: Family,
    partition: &Partition,
    criterion: Criterion,
    q: f64,
    cfg: &SweepConfig,
) -> Result<f64, SepError> {
    cfg.validate()?;
    let qi = QIndex::new(q)?;
    let eval = |x: f64| -> Result<bool, Error> {
        detects(&family_state(family, partition, x)?, partition, criterion, qi)
    };
    let (mut lo, mut hi) = cfg.x_bracket;
    if eval(lo)? || !eval(hi)? {
        let value = |x| {
            family_state(family, partition, x)
                .and_then(|r| criterion_value(&r, partition, criterion, qi))
                .unwrap_or(f64::NAN)
        };
        return Err(SepError::NoSignChange {
            criterion,
            q,
            lo,
            hi,
            lo_value: value(lo),
            hi_value: value(hi),
        });
    }
    for _ in 0..cfg.max_bisections {
        if hi - lo < cfg.bisection_tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if eval(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub q: f64,
    pub x_star: f64,
}

/// Separability endpoint x* for one (family, partition, criterion).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "ThresholdRecord", try_from = "ThresholdRecord")]
pub struct ThresholdReport {
    pub family: Family,
    pub n_qubits: usize,
    pub partition: Partition,
    pub criterion: Criterion,
    pub x_star: f64,
    pub q_at_convergence: Option<f64>,
    pub converged: bool,
    pub samples: Vec<Sample>,
}

/// Wire form of [`ThresholdReport`] with the partition written as text.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ThresholdRecord {
    pub family: Family,
    pub n_qubits: usize,
    pub partition: String,
    pub criterion: Criterion,
    pub x_star: f64,
    pub q_at_convergence: Option<f64>,
    pub converged: bool,
    pub samples: Vec<Sample>,
}

impl From<ThresholdReport> for ThresholdRecord {
    fn from(r: ThresholdReport) -> Self {
        Self {
            family: r.family,
            n_qubits: r.n_qubits,
            partition: r.partition.to_string(),
            criterion: r.criterion,
            x_star: r.x_star,
            q_at_convergence: r.q_at_convergence,
            converged: r.converged,
            samples: r.samples,
        }
    }
}

impl TryFrom<ThresholdRecord> for ThresholdReport {
    type Error = Error;

    fn try_from(r: ThresholdRecord) -> Result<Self, Error> {
        Ok(Self {
            family: r.family,
            n_qubits: r.n_qubits,
            partition: Partition::parse(&r.partition, r.n_qubits)?,
            criterion: r.criterion,
            x_star: r.x_star,
            q_at_convergence: r.q_at_convergence,
            converged: r.converged,
            samples: r.samples,
        })
    }
}

/// Tracks x*(q) along the q schedule (CSTRE, AR) or computes the single
/// q-independent threshold (VN, PPT).
///
/// `converged` reflects the last two scheduled samples; `x_star` is the last sample.
pub fn limit_threshold(
    family: Family,
    partition: &Partition,
    criterion: Criterion,
    cfg: &SweepConfig,
) -> Result<ThresholdReport, SepError> {
    cfg.validate()?;
    let n_qubits = partition.n_qubits();
    let report = |x_star, q_at_convergence, converged, samples| ThresholdReport {
        family,
        n_qubits,
        partition: partition.clone(),
        criterion,
        x_star,
        q_at_convergence,
        converged,
        samples,
    };
    match criterion {
        Criterion::Ppt => ppt_threshold(family, partition, cfg),
        Criterion::Vn => {
            let x = zero_crossing_x(family, partition, criterion, 1.0, cfg)?;
            Ok(report(x, None, true, vec![Sample { q: 1.0, x_star: x }]))
        }
        Criterion::Cstre | Criterion::Ar => {
            let samples = cfg
                .q_schedule
                .iter()
                .map(|&q| {
                    zero_crossing_x(family, partition, criterion, q, cfg).map(|x_star| Sample { q, x_star })
                })
                .collect::<Result<Vec<_>, _>>()?;
            let steps: Vec<bool> = samples
                .windows(2)
                .map(|w| (w[1].x_star - w[0].x_star).abs() < cfg.limit_tol)
                .collect();
            let converged = steps.last().copied().unwrap_or(false);
            let q_at_convergence = if converged {
                let first_stable = steps.iter().rposition(|ok| !ok).map_or(0, |i| i + 1);
                Some(samples[first_stable + 1].q)
            } else {
                None
            };
            let x_star = samples.last().expect("nonempty schedule").x_star;
            Ok(report(x_star, q_at_convergence, converged, samples))
        }
    }
}

/// Threshold where the partial transpose first acquires a negative eigenvalue.
pub fn ppt_threshold(
    family: Family,
    partition: &Partition,
    cfg: &SweepConfig,
) -> Result<ThresholdReport, SepError> {
    let x = zero_crossing_x(family, partition, Criterion::Ppt, 1.0, cfg)?;
    Ok(ThresholdReport {
        family,
        n_qubits: partition.n_qubits(),
        partition: partition.clone(),
        criterion: Criterion::Ppt,
        x_star: x,
        q_at_convergence: None,
        converged: true,
        samples: vec![],
    })
}

/// One row of the threshold table.
#[derive(Debug, Clone, PartialEq)]
pub struct TableRow {
    pub family: Family,
    pub partition: Partition,
}

impl TableRow {
    pub fn new(family: Family, partition: Partition) -> Self {
        Self { family, partition }
    }

    /// All prefix partitions of one family.
    pub fn for_family(family: Family, n_qubits: usize) -> Vec<Self> {
        Partition::all_prefixes(n_qubits)
            .into_iter()
            .map(|p| Self::new(family, p))
            .collect()
    }
}

/// The ten rows: W and GHZ on three and four qubits, every prefix cut.
pub fn default_table_rows() -> Vec<TableRow> {
    [(Family::W, 3), (Family::Ghz, 3), (Family::W, 4), (Family::Ghz, 4)]
        .into_iter()
        .flat_map(|(f, n)| TableRow::for_family(f, n))
        .collect()
}

/// Cross product of rows and criteria, ordered (row, criterion).
pub fn criteria_table(
    rows: &[TableRow],
    criteria: &[Criterion],
    cfg: &SweepConfig,
) -> Result<Vec<ThresholdReport>, SepError> {
    cfg.validate()?;
    let jobs: Vec<(&TableRow, Criterion)> = rows
        .iter()
        .flat_map(|r| criteria.iter().map(move |&c| (r, c)))
        .collect();
    let run = |(row, c): &(&TableRow, Criterion)| limit_threshold(row.family, &row.partition, *c, cfg);
    #[cfg(feature = "parallel")]
    let results: Vec<_> = {
        use rayon::prelude::*;
        jobs.par_iter().map(run).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let results: Vec<_> = jobs.iter().map(run).collect();
    results.into_iter().collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub x: f64,
    /// `None` where the value is undefined or not finite.
    pub value: Option<f64>,
}

/// The criterion evaluated on a grid of mixing parameters.
pub fn curve_data(
    family: Family,
    partition: &Partition,
    criterion: Criterion,
    q: f64,
    x_grid: &[f64],
) -> Result<Vec<CurvePoint>, SepError> {
    let qi = QIndex::new(q)?;
    let eval = |x: f64| CurvePoint {
        x,
        value: family_state(family, partition, x)
            .and_then(|r| criterion_value(&r, partition, criterion, qi))
            .ok()
            .filter(|v| v.is_finite()),
    };
    #[cfg(feature = "parallel")]
    let points = {
        use rayon::prelude::*;
        x_grid.par_iter().map(|&x| eval(x)).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let points = x_grid.iter().map(|&x| eval(x)).collect();
    Ok(points)
}

/// `lo, lo + step, ...` up to `hi` inclusive (within half a step of roundoff).
pub fn linear_grid(lo: f64, hi: f64, step: f64) -> Result<Vec<f64>, SepError> {
    if !(step > 0.0 && lo.is_finite() && hi.is_finite() && hi > lo) {
        return Err(SepError::BadConfig("grid needs lo < hi and step > 0".into()));
    }
    let n = ((hi - lo) / step + 1e-9).floor() as usize;
    Ok((0..=n).map(|i| lo + i as f64 * step).collect())
}

/// `count` geometrically spaced values from `lo` to `hi`.
pub fn geometric_grid(lo: f64, hi: f64, count: usize) -> Result<Vec<f64>, SepError> {
    if !(lo > 0.0 && hi > lo && hi.is_finite()) || count < 2 {
        return Err(SepError::BadConfig("geometric grid needs 0 < lo < hi and count >= 2".into()));
    }
    let ratio = (hi / lo).ln() / (count - 1) as f64;
    Ok((0..count)
        .map(|i| if i + 1 == count { hi } else { lo * (ratio * i as f64).exp() })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NestingReport {
    pub family: Family,
    pub n_qubits: usize,
    pub partition: String,
    pub q: f64,
    pub ppt: f64,
    pub cstre: f64,
    pub ar: f64,
    pub pass: bool,
}

/// Checks `x*_PPT <= x*_CSTRE(q) <= x*_AR(q)` at the largest q of `q_list`.
///
/// The largest-q thresholds stand in for the q -> infinity limits, so the
/// comparison carries a slack of `cfg.limit_tol`.
pub fn nesting_check(
    family: Family,
    partition: &Partition,
    q_list: &[f64],
    cfg: &SweepConfig,
) -> Result<NestingReport, SepError> {
    let q = q_list
        .iter()
        .copied()
        .fold(f64::NAN, f64::max);
    if !q.is_finite() {
        return Err(SepError::BadConfig("empty q list".into()));
    }
    let ppt = ppt_threshold(family, partition, cfg)?.x_star;
    let cs = zero_crossing_x(family, partition, Criterion::Cstre, q, cfg)?;
    let ar = zero_crossing_x(family, partition, Criterion::Ar, q, cfg)?;
    let slack = cfg.limit_tol;
    Ok(NestingReport {
        family,
        n_qubits: partition.n_qubits(),
        partition: partition.to_string(),
        q,
        ppt,
        cstre: cs,
        ar,
        pass: ppt <= cs + slack && cs <= ar + slack,
    })
}

/// q values at which the isospectral pair is compared.
pub const ISOSPECTRAL_QS: [f64; 6] = [1.1, 1.5, 2.0, 3.0, 5.0, 10.0];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IsospectralRow {
    pub q: f64,
    pub entangled: f64,
    pub separable: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IsospectralReport {
    /// CSTRE of both states at each q in the list.
    pub rows: Vec<IsospectralRow>,
    /// The q = 1 (von Neumann) values.
    pub q_one: IsospectralRow,
    /// Every listed q gives a negative CSTRE on the entangled state.
    pub entangled_detected: bool,
    /// No listed q gives a negative CSTRE on the separable state.
    pub separable_consistent: bool,
}

/// CSTRE of the isospectral pair (conditioning on the second qubit) across `qs`.
pub fn isospectral_verdict_at(qs: &[f64]) -> Result<IsospectralReport, SepError> {
    let (rho, varrho) = isospectral_pair();
    let p = Partition::new(2, &[1])?;
    let mut rows = Vec::with_capacity(qs.len());
    let mut entangled_detected = true;
    let mut separable_consistent = true;
    for &q in qs {
        let qi = QIndex::new(q)?;
        let e = cstre(&rho, &p, qi)?;
        let s = cstre(&varrho, &p, qi)?;
        entangled_detected &= e.is_negative();
        separable_consistent &= !s.is_negative();
        rows.push(IsospectralRow {
            q,
            entangled: e.value,
            separable: s.value,
        });
    }
    let q_one = IsospectralRow {
        q: 1.0,
        entangled: vn_conditional(&rho, &p)?,
        separable: vn_conditional(&varrho, &p)?,
    };
    Ok(IsospectralReport {
        rows,
        q_one,
        entangled_detected,
        separable_consistent,
    })
}

pub fn isospectral_verdict() -> Result<IsospectralReport, SepError> {
    isospectral_verdict_at(&ISOSPECTRAL_QS)
}
