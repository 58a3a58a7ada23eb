use num_complex::Complex64;

use super::eig::{eig_hermitian, Spectrum};
use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

/// Default tolerance for Hermiticity, unit trace and PSD checks.
pub const DENSITY_TOL: f64 = 1e-10;

/// A validated n-qubit density matrix. Eigenvalues are computed once on
/// construction, with roundoff negatives clamped to zero.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    n_qubits: usize,
    eigenvalues: Vec<f64>,
}

impl DensityMatrix {
    pub fn new(matrix: ComplexMatrix, n_qubits: usize) -> Result<Self> {
        validate_density(matrix, n_qubits, DENSITY_TOL)
    }

    pub fn from_pure(state: &[Complex64]) -> Result<Self> {
        let n_qubits = state.len().trailing_zeros() as usize;
        Self::new(ComplexMatrix::outer(state), n_qubits)
    }

    pub fn maximally_mixed(n_qubits: usize) -> Self {
        let d = 1usize << n_qubits;
        Self {
            matrix: ComplexMatrix::identity(d).scale(1.0 / d as f64),
            n_qubits,
            eigenvalues: vec![1.0 / d as f64; d],
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// Ascending, non-negative.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }
}

impl AsRef<ComplexMatrix> for DensityMatrix {
    fn as_ref(&self) -> &ComplexMatrix {
        &self.matrix
    }
}

/// Checks Hermiticity, unit trace and positivity of `m` as an `n_qubits` register state.
///
/// Eigenvalues in `[-tol, 0)` are clamped to zero and the matrix rebuilt from
/// the clamped spectrum; anything below `-tol` is rejected.
pub fn validate_density(m: ComplexMatrix, n_qubits: usize, tol: f64) -> Result<DensityMatrix> {
    let expected = 1usize
        .checked_shl(n_qubits as u32)
        .ok_or(Error::DimensionMismatch { expected: usize::MAX, got: m.dim() })?;
    if m.dim() != expected {
        return Err(Error::DimensionMismatch {
            expected,
            got: m.dim(),
        });
    }
    let herm = m.hermiticity_error();
    if herm > tol {
        return Err(Error::NotHermitian(herm));
    }
    let tr = m.trace();
    if (tr.re - 1.0).abs() > tol || tr.im.abs() > tol {
        return Err(Error::TraceNotOne(tr.re));
    }
    let spectrum = eig_hermitian(&m)?;
    let min = spectrum.min();
    if min < -tol {
        return Err(Error::NotPsd(min));
    }
    let (matrix, eigenvalues) = if min < 0.0 {
        let clamped = Spectrum {
            eigenvalues: spectrum.eigenvalues.iter().map(|&l| l.max(0.0)).collect(),
            eigenvectors: spectrum.eigenvectors,
        };
        (clamped.reconstruct(), clamped.eigenvalues)
    } else {
        (m.hermitian_part(), spectrum.eigenvalues)
    };
    Ok(DensityMatrix {
        matrix,
        n_qubits,
        eigenvalues,
    })
}
