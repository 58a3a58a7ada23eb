//! Generalized entropies and the conditional sandwiched Tsallis relative entropy.
//!
//! Sign conventions follow the Tsallis form `(Tr(...) - 1) / (1 - q)`
//! throughout, so the conditional quantities behave like conditional entropies:
//! non-negative on separable states, and a value below [`WITNESS_TOL`] in the
//! negative direction certifies entanglement. All logarithms are natural.
//!
//! Power sums `sum_i v_i^q` are accumulated in the log domain
//! ([`log_power_sum`]) so that very large `q` neither overflows nor
//! underflows the comparison against 1.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qlinalg::{
    eig_hermitian, embed_conditioning, partial_trace, power_on_support, support_power,
    ComplexMatrix, DensityMatrix, Partition, Spectrum, PSD_TOL, SUPPORT_CUTOFF,
};

/// A conditional entropy below `-WITNESS_TOL` counts as negative.
pub const WITNESS_TOL: f64 = 1e-9;

/// Entropic index `q > 0`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct QIndex(f64);

impl QIndex {
    pub const ONE: QIndex = QIndex(1.0);

    pub fn new(q: f64) -> Result<Self> {
        if q.is_finite() && q > 0.0 {
            Ok(Self(q))
        } else {
            Err(Error::BadQ(q))
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    /// Exactly 1; the von Neumann limit is used there instead of the q-forms.
    #[inline]
    pub fn is_one(self) -> bool {
        self.0 == 1.0
    }
}

/// An entropy value together with the sandwiched-trace intermediates, when any.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntropyResult {
    pub value: f64,
    pub q: f64,
    /// Eigenvalues of the sandwiched operator, ascending.
    pub gammas: Option<Vec<f64>>,
    /// `sum_i gamma_i^q` over the support.
    pub q_tilde: Option<f64>,
    /// `ln q_tilde`, kept separately because `q_tilde` overflows at large q.
    pub log_q_tilde: Option<f64>,
}

impl EntropyResult {
    fn scalar(value: f64, q: f64) -> Self {
        Self {
            value,
            q,
            gammas: None,
            q_tilde: None,
            log_q_tilde: None,
        }
    }

    /// Whether this value witnesses entanglement. Uses the log-domain trace when present.
    pub fn is_negative(&self) -> bool {
        match self.log_q_tilde {
            Some(l) if self.q != 1.0 => tsallis_form_negative(l, self.q),
            _ => self.value < -WITNESS_TOL,
        }
    }
}

/// `ln sum_{v > cutoff} v^q`, or `None` when nothing is in the support.
pub fn log_power_sum(values: &[f64], q: f64) -> Option<f64> {
    let logs: Vec<f64> = values
        .iter()
        .filter(|&&v| v > SUPPORT_CUTOFF)
        .map(|&v| q * v.ln())
        .collect();
    let max = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return None;
    }
    Some(max + logs.iter().map(|l| (l - max).exp()).sum::<f64>().ln())
}

/// `(e^log_trace - 1) / (1 - q) < -WITNESS_TOL`, decided without forming e^log_trace.
pub fn tsallis_form_negative(log_trace: f64, q: f64) -> bool {
    if q > 1.0 {
        log_trace > (WITNESS_TOL * (q - 1.0)).ln_1p()
    } else {
        log_trace < (-WITNESS_TOL * (1.0 - q)).ln_1p()
    }
}

fn tsallis_from_log(log_trace: f64, q: f64) -> f64 {
    log_trace.exp_m1() / (1.0 - q)
}

fn shannon(values: &[f64]) -> f64 {
    -values
        .iter()
        .filter(|&&v| v > SUPPORT_CUTOFF)
        .map(|&v| v * v.ln())
        .sum::<f64>()
}

pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    shannon(rho.eigenvalues())
}

/// `(Tr rho^q - 1) / (1 - q)`; von Neumann entropy at q = 1.
pub fn tsallis_entropy(rho: &DensityMatrix, q: QIndex) -> f64 {
    if q.is_one() {
        return von_neumann_entropy(rho);
    }
    let l = log_power_sum(rho.eigenvalues(), q.value()).expect("unit trace");
    tsallis_from_log(l, q.value())
}

/// `ln(Tr rho^q) / (1 - q)`; von Neumann entropy at q = 1.
pub fn renyi_entropy(rho: &DensityMatrix, q: QIndex) -> f64 {
    if q.is_one() {
        return von_neumann_entropy(rho);
    }
    log_power_sum(rho.eigenvalues(), q.value()).expect("unit trace") / (1.0 - q.value())
}

/// `Tr(rho^q sigma^(1-q))` with both powers taken on their supports.
pub fn traditional_trace(rho: &DensityMatrix, sigma: &ComplexMatrix, q: QIndex) -> Result<f64> {
    if q.is_one() {
        return Err(Error::QIsOne);
    }
    let q = q.value();
    if q > 1.0 {
        let s = eig_hermitian(sigma)?;
        let v = &s.eigenvectors;
        let m = rho.matrix();
        let mut weight = 0.0;
        for (k, &l) in s.eigenvalues.iter().enumerate() {
            if l <= SUPPORT_CUTOFF {
                for i in 0..m.dim() {
                    for j in 0..m.dim() {
                        weight += (v[(i, k)].conj() * m[(i, j)] * v[(j, k)]).re;
                    }
                }
            }
        }
        if weight > PSD_TOL {
            return Err(Error::SupportViolation(weight));
        }
    }
    let rho_q = power_on_support(rho.matrix(), q)?;
    let sigma_q = power_on_support(sigma, 1.0 - q)?;
    Ok((&rho_q * &sigma_q).trace().re)
}

/// `(Tr(rho^q sigma^(1-q)) - 1) / (1 - q)`.
pub fn traditional_relative_tsallis(
    rho: &DensityMatrix,
    sigma: &ComplexMatrix,
    q: QIndex,
) -> Result<f64> {
    let t = traditional_trace(rho, sigma, q)?;
    Ok((t - 1.0) / (1.0 - q.value()))
}

/// `ln Tr(rho^q sigma^(1-q)) / (q - 1)`.
pub fn traditional_relative_renyi(
    rho: &DensityMatrix,
    sigma: &ComplexMatrix,
    q: QIndex,
) -> Result<f64> {
    let t = traditional_trace(rho, sigma, q)?;
    if t <= SUPPORT_CUTOFF {
        return Err(Error::DegenerateSupport);
    }
    Ok(t.ln() / (q.value() - 1.0))
}

/// The sandwiched operator in the eigenbasis of sigma:
/// `Gamma = sigma_D U rho U^dagger sigma_D`, where `U` diagonalizes sigma and
/// `sigma_D = diag(lambda_i^((1-q)/2q))` (zero off the support).
pub fn sandwich_gamma(rho: &DensityMatrix, sigma: &Spectrum, q: QIndex) -> Result<ComplexMatrix> {
    if q.is_one() {
        return Err(Error::QIsOne);
    }
    let m = rho.matrix();
    if sigma.dim() != m.dim() {
        return Err(Error::DimensionMismatch {
            expected: m.dim(),
            got: sigma.dim(),
        });
    }
    if sigma.min() < -PSD_TOL {
        return Err(Error::NotPsd(sigma.min()));
    }
    let exponent = (1.0 - q.value()) / (2.0 * q.value());
    let sigma_d: Vec<f64> = sigma
        .eigenvalues
        .iter()
        .map(|&l| support_power(l, exponent))
        .collect();
    let u = sigma.eigenvectors.adjoint();
    let rotated = &(&u * m) * &sigma.eigenvectors;
    let gamma = ComplexMatrix::from_fn(m.dim(), |i, j| rotated[(i, j)] * (sigma_d[i] * sigma_d[j]));
    Ok(gamma.hermitian_part())
}

/// `Q~ = Tr (sigma^((1-q)/2q) rho sigma^((1-q)/2q))^q = sum_i gamma_i^q`.
///
/// The returned `value` is `Q~` itself.
pub fn q_tilde(rho: &DensityMatrix, sigma: &ComplexMatrix, q: QIndex) -> Result<EntropyResult> {
    q_tilde_with_spectrum(rho, &eig_hermitian(sigma)?, q)
}

/// [`q_tilde`] with a precomputed eigendecomposition of sigma.
pub fn q_tilde_with_spectrum(
    rho: &DensityMatrix,
    sigma: &Spectrum,
    q: QIndex,
) -> Result<EntropyResult> {
    let gamma = sandwich_gamma(rho, sigma, q)?;
    let gammas = eig_hermitian(&gamma)?.eigenvalues;
    let log_q = log_power_sum(&gammas, q.value());
    let qt = log_q.map_or(0.0, f64::exp);
    Ok(EntropyResult {
        value: qt,
        q: q.value(),
        gammas: Some(gammas),
        q_tilde: Some(qt),
        log_q_tilde: log_q,
    })
}

fn with_tsallis_value(mut r: EntropyResult) -> Result<EntropyResult> {
    let l = r.log_q_tilde.ok_or(Error::DegenerateSupport)?;
    r.value = tsallis_from_log(l, r.q);
    Ok(r)
}

/// `(Q~ - 1) / (1 - q)`.
pub fn sandwiched_relative_tsallis(
    rho: &DensityMatrix,
    sigma: &ComplexMatrix,
    q: QIndex,
) -> Result<f64> {
    Ok(with_tsallis_value(q_tilde(rho, sigma, q)?)?.value)
}

/// `ln Q~ / (q - 1)`.
pub fn sandwiched_relative_renyi(
    rho: &DensityMatrix,
    sigma: &ComplexMatrix,
    q: QIndex,
) -> Result<f64> {
    let r = q_tilde(rho, sigma, q)?;
    let l = r.log_q_tilde.ok_or(Error::DegenerateSupport)?;
    Ok(l / (q.value() - 1.0))
}

/// `I_X ⊗ rho_Y` for the partition `X:Y`.
pub fn conditioning_operator(rho: &DensityMatrix, partition: &Partition) -> Result<ComplexMatrix> {
    check_register(rho, partition)?;
    let marginal = partial_trace(rho, partition.conditioning())?;
    embed_conditioning(marginal.matrix(), partition)
}

fn check_register(rho: &DensityMatrix, partition: &Partition) -> Result<()> {
    if rho.n_qubits() != partition.n_qubits() {
        return Err(Error::DimensionMismatch {
            expected: partition.n_qubits(),
            got: rho.n_qubits(),
        });
    }
    Ok(())
}

/// Conditional sandwiched Tsallis relative entropy `D~_q(rho || I_X ⊗ rho_Y)`.
///
/// At q = 1 this is the von Neumann conditional entropy `S(XY) - S(Y)`.
/// Conditioning on the other block (`rho_X ⊗ I_Y`) is `cstre(rho, &partition.swapped(), q)`.
pub fn cstre(rho: &DensityMatrix, partition: &Partition, q: QIndex) -> Result<EntropyResult> {
    if q.is_one() {
        return Ok(EntropyResult::scalar(vn_conditional(rho, partition)?, 1.0));
    }
    let sigma = conditioning_operator(rho, partition)?;
    with_tsallis_value(q_tilde(rho, &sigma, q)?)
}

/// `ln Tr rho^q - ln Tr rho_Y^q`.
pub fn ar_log_ratio(rho: &DensityMatrix, partition: &Partition, q: QIndex) -> Result<f64> {
    check_register(rho, partition)?;
    let marginal = partial_trace(rho, partition.conditioning())?;
    let lg = log_power_sum(rho.eigenvalues(), q.value()).ok_or(Error::DegenerateSupport)?;
    let lm = log_power_sum(marginal.eigenvalues(), q.value()).ok_or(Error::DegenerateSupport)?;
    Ok(lg - lm)
}

/// Abe–Rajagopal q-conditional entropy `(1 - Tr rho^q / Tr rho_Y^q) / (q - 1)`.
pub fn ar_q_conditional(rho: &DensityMatrix, partition: &Partition, q: QIndex) -> Result<f64> {
    if q.is_one() {
        return vn_conditional(rho, partition);
    }
    let r = ar_log_ratio(rho, partition, q)?;
    Ok(-r.exp_m1() / (q.value() - 1.0))
}

/// Whether the AR q-conditional entropy is below `-WITNESS_TOL`.
pub fn ar_is_negative(rho: &DensityMatrix, partition: &Partition, q: QIndex) -> Result<bool> {
    if q.is_one() {
        return Ok(vn_conditional(rho, partition)? < -WITNESS_TOL);
    }
    // sign of (1 - R)/(q - 1) equals sign of (R - 1)/(1 - q)
    Ok(tsallis_form_negative(ar_log_ratio(rho, partition, q)?, q.value()))
}

/// `S(rho) - S(rho_Y)`.
pub fn vn_conditional(rho: &DensityMatrix, partition: &Partition) -> Result<f64> {
    check_register(rho, partition)?;
    let marginal = partial_trace(rho, partition.conditioning())?;
    Ok(von_neumann_entropy(rho) - von_neumann_entropy(&marginal))
}
