//! Strict dominant eigenvalues of non-Hermitian dual quaternion matrices.
//!
//! The crate provides the dual scalar algebra (dual numbers, dual complex
//! numbers, dual quaternions), dense linear algebra over them, the dual
//! complex adjoint machinery, two power-iteration solvers, generators for
//! graph-Laplacian and prescribed-spectrum test matrices, and an independent
//! verification oracle built on a dense complex eigensolver.

pub mod cli;
pub mod dcam;
pub mod dual;
pub mod eig;
pub mod error;
pub mod graphgen;
pub mod io;
pub mod linalg;
pub mod oracle;
pub mod quaternion;

pub use dual::{DualComplex, DualNumber, DualQuaternion, APPRECIABLE_TOL};
pub use eig::{dcam_power_method, estimate_rate, power_method, EigResult, SolverConfig, Status};
pub use error::{DqError, Result};
pub use linalg::{residual_2r, DQMatrix, DQVector, QMatrix};
pub use quaternion::Quaternion;
