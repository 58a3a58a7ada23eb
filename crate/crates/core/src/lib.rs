//! Bipartite entanglement detection for multi-qubit density matrices.
//!
//! The central quantity is the conditional sandwiched Tsallis relative entropy
//!
//! ```text
//! D~_q(rho || I_X ⊗ rho_Y) = (Tr[(s rho s)^q] - 1) / (1 - q),   s = (I_X ⊗ rho_Y)^((1-q)/2q)
//! ```
//!
//! whose negative values certify entanglement across the cut `X:Y`. It is
//! compared against the Abe–Rajagopal q-conditional entropy, the von Neumann
//! conditional entropy and the partial-transpose test on noisy W and GHZ
//! families.
//!
//! | Module | Contents |
//! |--------|----------|
//! | [`qlinalg`] | complex matrices, Jacobi eigensolver, partial trace/transpose, spectral powers |
//! | [`states`] | Dicke/W/GHZ states, symmetric projector, noisy families, isospectral pair |
//! | [`entropy`] | Rényi/Tsallis/von Neumann entropies, relative entropies, CSTRE, AR |
//! | [`separability`] | threshold bisection, q sweeps, tables, curves |
//! | [`io`] | matrix text format, CSV and JSON emission |
//!
//! ```
//! use cstre::{entropy::{cstre, QIndex}, qlinalg::Partition, states::isospectral_pair};
//!
//! let (entangled, separable) = isospectral_pair();
//! let cut = Partition::parse("A:B", 2).unwrap();
//! let q = QIndex::new(2.0).unwrap();
//! assert!(cstre(&entangled, &cut, q).unwrap().is_negative());
//! assert!(!cstre(&separable, &cut, q).unwrap().is_negative());
//! ```

#![forbid(unsafe_code)]

pub mod entropy;
mod error;
pub mod io;
pub mod qlinalg;
pub mod separability;
pub mod states;

pub use error::{Error, Result};
