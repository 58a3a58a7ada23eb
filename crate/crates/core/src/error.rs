use thiserror::Error;

/// Errors raised by the linear algebra, state and entropy layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max |M - M^dagger| = {0:e})")]
    NotHermitian(f64),

    #[error("trace is not 1 (got {0})")]
    TraceNotOne(f64),

    #[error("not positive semi-definite (eigenvalue {0:e})")]
    NotPsd(f64),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("bad qubit index set {indices:?} for a {n_qubits}-qubit register: {reason}")]
    BadIndexSet {
        indices: Vec<usize>,
        n_qubits: usize,
        reason: &'static str,
    },

    #[error("invalid partition {0:?}")]
    BadPartition(String),

    #[error("excitation number {k} out of range for {n} qubits")]
    BadExcitationNumber { n: usize, k: usize },

    #[error("mixing parameter x = {0} outside [0, 1]")]
    BadMixing(f64),

    #[error("entropic index q = {0} must be finite and positive")]
    BadQ(f64),

    #[error("operation undefined at q = 1")]
    QIsOne,

    #[error("support of rho is not contained in support of sigma (weight {0:e} on ker sigma)")]
    SupportViolation(f64),

    #[error("sandwiched trace vanishes on the support")]
    DegenerateSupport,

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off:e})")]
    EigenNoConvergence { sweeps: usize, off: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
