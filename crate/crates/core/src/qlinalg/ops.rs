//! Register-level operations. Qubit 0 is the most significant tensor factor:
//! in a basis index of an n-qubit register, qubit k lives in bit `n - 1 - k`.

use num_complex::Complex64;

use super::density::DensityMatrix;
use super::eig::{eig_hermitian, HERMITIAN_TOL};
use super::matrix::ComplexMatrix;
use super::partition::{check_index_set, Partition};
use crate::error::{Error, Result};

/// Eigenvalues at or below this are treated as outside the support.
pub const SUPPORT_CUTOFF: f64 = 1e-12;
/// Negative eigenvalues down to this are accepted as roundoff.
pub const PSD_TOL: f64 = 1e-10;

/// Spreads the bits of a sub-register index over the given qubits.
#[inline]
fn scatter(value: usize, qubits: &[usize], n_qubits: usize) -> usize {
    let m = qubits.len();
    qubits.iter().enumerate().fold(0, |acc, (pos, &k)| {
        acc | (((value >> (m - 1 - pos)) & 1) << (n_qubits - 1 - k))
    })
}

/// Inverse of [`scatter`].
#[inline]
fn gather(index: usize, qubits: &[usize], n_qubits: usize) -> usize {
    qubits
        .iter()
        .fold(0, |acc, &k| (acc << 1) | ((index >> (n_qubits - 1 - k)) & 1))
}

fn qubit_mask(qubits: &[usize], n_qubits: usize) -> usize {
    qubits.iter().fold(0, |acc, &k| acc | (1 << (n_qubits - 1 - k)))
}

/// Reduced state on `keep` (kept in ascending register order).
pub fn partial_trace(rho: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix> {
    let n = rho.n_qubits();
    let keep = check_index_set(n, keep)?;
    let traced: Vec<usize> = (0..n).filter(|k| !keep.contains(k)).collect();
    let m = rho.matrix();
    let dk = 1usize << keep.len();
    let dt = 1usize << traced.len();
    let traced_offsets: Vec<usize> = (0..dt).map(|t| scatter(t, &traced, n)).collect();
    let reduced = ComplexMatrix::from_fn(dk, |i, j| {
        let (bi, bj) = (scatter(i, &keep, n), scatter(j, &keep, n));
        traced_offsets
            .iter()
            .map(|&t| m[(bi | t, bj | t)])
            .sum::<Complex64>()
    });
    DensityMatrix::new(reduced, keep.len())
}

/// Transposes the tensor factors listed in `transpose_set`.
pub fn partial_transpose(rho: &DensityMatrix, transpose_set: &[usize]) -> Result<ComplexMatrix> {
    partial_transpose_matrix(rho.matrix(), rho.n_qubits(), transpose_set)
}

/// [`partial_transpose`] on an arbitrary register operator (which need not be a state).
pub fn partial_transpose_matrix(
    m: &ComplexMatrix,
    n_qubits: usize,
    transpose_set: &[usize],
) -> Result<ComplexMatrix> {
    if m.dim() != 1 << n_qubits {
        return Err(Error::DimensionMismatch {
            expected: 1 << n_qubits,
            got: m.dim(),
        });
    }
    let set = check_index_set(n_qubits, transpose_set)?;
    let mask = qubit_mask(&set, n_qubits);
    Ok(ComplexMatrix::from_fn(m.dim(), |i, j| {
        let ii = (i & !mask) | (j & mask);
        let jj = (j & !mask) | (i & mask);
        m[(ii, jj)]
    }))
}

/// `I_X ⊗ op_Y` laid out in register order, where `op_Y` acts on `partition.conditioning()`.
pub fn embed_conditioning(op: &ComplexMatrix, partition: &Partition) -> Result<ComplexMatrix> {
    let n = partition.n_qubits();
    let y = partition.conditioning();
    let expected = 1usize << y.len();
    if op.dim() != expected {
        return Err(Error::DimensionMismatch {
            expected,
            got: op.dim(),
        });
    }
    let x_mask = qubit_mask(partition.remainder(), n);
    Ok(ComplexMatrix::from_fn(1 << n, |i, j| {
        if i & x_mask != j & x_mask {
            Complex64::new(0.0, 0.0)
        } else {
            op[(gather(i, y, n), gather(j, y, n))]
        }
    }))
}

/// `h^exponent` on the support of `h`; eigenvalues at or below [`SUPPORT_CUTOFF`] map to 0.
pub fn power_on_support(h: &ComplexMatrix, exponent: f64) -> Result<ComplexMatrix> {
    let herm = h.hermiticity_error();
    if herm > HERMITIAN_TOL {
        return Err(Error::NotHermitian(herm));
    }
    let spectrum = eig_hermitian(h)?;
    if spectrum.min() < -PSD_TOL {
        return Err(Error::NotPsd(spectrum.min()));
    }
    Ok(spectrum.apply(|l| support_power(l, exponent)))
}

#[inline]
pub(crate) fn support_power(l: f64, exponent: f64) -> f64 {
    if l > SUPPORT_CUTOFF {
        l.powf(exponent)
    } else {
        0.0
    }
}
