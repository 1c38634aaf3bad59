//! # qdiv
//!
//! Quantum Rényi divergences in finite-dimensional matrix algebras.
//!
//! The crate computes the classical two-state families (relative entropy,
//! Petz, sandwiched, the two-parameter (θ,r) family, operator-monotone
//! f-divergences) together with their three-state and n-state
//! generalizations built from Kubo-Ando operator means of relative modular
//! operators. Every divergence has two evaluation routes:
//!
//! * a **matrix route** working directly with d×d density matrices, and
//! * a **modular route** working with d²×d² relative modular superoperators
//!   and weighted (p,ω)-norms on the GNS Hilbert space.
//!
//! The two routes agree on a dense set of inputs and serve as each other's
//! oracle. On top of the calculators sits a seeded randomized property
//! harness ([`verify`]) that certifies data processing, operator
//! monotonicity, Hölder and contraction-norm inequalities, and entropy
//! limits at desk scale, plus a state-discrimination module
//! ([`discrimination`]) for Chernoff/Hoeffding/Stein-type exponents.
//!
//! All logarithms are natural; divergences are reported in nats.
//! Vectorization is row-major throughout: `vec(AXB) = (A ⊗ Bᵀ) vec(X)`.
//!
//! ```
//! use qdiv::states::{random_density, DensityMatrix};
//! use qdiv::divergences::{relative_entropy, theta_r};
//!
//! let psi = random_density(2, 2, 7).unwrap();
//! let omega = DensityMatrix::maximally_mixed(2);
//! let s = relative_entropy(&psi, &omega).unwrap();
//! let s_half = theta_r(0.5, 1.0, &psi, &omega).unwrap();
//! assert!(s.value >= 0.0 && s_half.value >= 0.0);
//! ```

// parameter guards use `!(x >= bound)` so that NaN inputs are rejected too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use thiserror::Error;

pub mod cli;
pub mod discrimination;
pub mod divergences;
pub mod linops;
pub mod multistate;
pub mod states;
pub mod verify;

#[cfg(doctest)]
pub mod guide;

/// Error type shared by all modules.
#[derive(Debug, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("matrix is not Hermitian: asymmetry {asymmetry:.3e} exceeds {tol:.3e}")]
    NotHermitian { asymmetry: f64, tol: f64 },

    #[error("matrix is not positive semidefinite: min eigenvalue {min_eig:.3e}")]
    NotPsd { min_eig: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("state is rank-deficient: min eigenvalue {min_eig:.3e}")]
    RankDeficient { min_eig: f64 },

    #[error("degenerate instance: {0}")]
    DegenerateInstance(String),

    #[error("dimension cap exceeded: requested {requested}, cap {cap}")]
    CapExceeded { requested: usize, cap: usize },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
