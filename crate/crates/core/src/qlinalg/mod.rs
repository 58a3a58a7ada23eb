//! Dense complex-Hermitian linear algebra on qubit registers.

mod density;
mod eig;
mod matrix;
mod ops;
mod partition;

pub use density::{validate_density, DensityMatrix, DENSITY_TOL};
pub use eig::{eig_hermitian, Spectrum, HERMITIAN_TOL, MAX_SWEEPS, OFF_DIAGONAL_TOL};
pub use matrix::{kron, kron_vec, ComplexMatrix};
pub use ops::{
    embed_conditioning, partial_trace, partial_transpose, partial_transpose_matrix,
    power_on_support, PSD_TOL,
    SUPPORT_CUTOFF,
};
pub(crate) use ops::support_power;
pub use partition::{check_index_set, Partition};
