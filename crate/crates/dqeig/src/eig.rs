//! Power iteration for strict dominant eigenvalues, on the dual quaternion
//! side and on the dual complex adjoint side.
//!
//! Both solvers run the same loop: normalize the iterate by its dual 2-norm,
//! apply the matrix, take the Rayleigh quotient `lambda = v* (A v)` and stop
//! when the residual `||A v - v lambda||_{2^R}` drops below the tolerance.
//! The returned pair is always the `(v, lambda)` from the iterate that
//! satisfied the test, so the reported residual is the tested one.

use crate::dcam::{adjoint, embed, extract};
use crate::dual::DualQuaternion;
use crate::error::{DqError, Result};
use crate::linalg::{DQMatrix, DQVector};
use serde::{Deserialize, Serialize};
use std::time::Instant;

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct SolverConfig {
    /// Maximum number of iterations.
    pub k_max: usize,
    /// Residual tolerance for convergence.
    pub tol: f64,
    /// Standard-part norm below which the iterate counts as broken down.
    pub breakdown_tol: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            k_max: 1000,
            tol: 1e-10,
            breakdown_tol: 1e-150,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Converged,
    MaxIter,
    Breakdown,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EigResult {
    pub eigenvalue: DualQuaternion,
    pub eigenvector: Vec<DualQuaternion>,
    pub status: Status,
    /// Number of matrix applications performed.
    pub iterations: usize,
    /// Residual after each iteration (`trace[k]` is iteration `k+1`).
    pub trace: Vec<f64>,
    /// Wall-clock seconds spent in the iteration loop.
    pub wall_time: f64,
}

impl EigResult {
    pub fn eigenvector(&self) -> DQVector {
        DQVector::from_entries(self.eigenvector.clone())
    }

    pub fn final_residual(&self) -> Option<f64> {
        self.trace.last().copied()
    }
}

/// Power iteration on the dual quaternion matrix itself.
pub fn power_method(a: &DQMatrix, v0: &DQVector, cfg: &SolverConfig) -> Result<EigResult> {
    if !a.is_square() {
        return Err(DqError::DimensionMismatch {
            expected: "square matrix".into(),
            got: format!("{}x{}", a.nrows, a.ncols),
        });
    }
    if a.ncols != v0.len() {
        return Err(DqError::DimensionMismatch {
            expected: format!("vector of length {}", a.ncols),
            got: format!("{}", v0.len()),
        });
    }
    let start = Instant::now();
    let mut v = v0.normalize()?;
    let mut trace = Vec::new();
    let mut status = Status::MaxIter;
    let mut lambda = DualQuaternion::ZERO;
    let mut iterations = 0;
    for k in 1..=cfg.k_max {
        let y = a.matvec(&v)?;
        iterations = k;
        if y.standard_norm() < cfg.breakdown_tol {
            status = Status::Breakdown;
            lambda = v.inner(&y);
            trace.push(y.sub(&v.scale_right(&lambda)).norm2r());
            break;
        }
        lambda = v.inner(&y);
        let res = y.sub(&v.scale_right(&lambda)).norm2r();
        trace.push(res);
        if res <= cfg.tol {
            status = Status::Converged;
            break;
        }
        v = y.normalize()?;
    }
    Ok(EigResult {
        eigenvalue: lambda,
        eigenvector: v.entries,
        status,
        iterations,
        trace,
        wall_time: start.elapsed().as_secs_f64(),
    })
}

/// Power iteration on the dual complex adjoint, mapped back to the dual
/// quaternion side. Both eigenvalue and eigenvector are reported as dual
/// quaternions; the residual trace transfers exactly because the embedding
/// preserves the 2^R quantity.
pub fn dcam_power_method(a: &DQMatrix, v0: &DQVector, cfg: &SolverConfig) -> Result<EigResult> {
    if !a.is_square() {
        return Err(DqError::DimensionMismatch {
            expected: "square matrix".into(),
            got: format!("{}x{}", a.nrows, a.ncols),
        });
    }
    if a.ncols != v0.len() {
        return Err(DqError::DimensionMismatch {
            expected: format!("vector of length {}", a.ncols),
            got: format!("{}", v0.len()),
        });
    }
    let start = Instant::now();
    let b = adjoint(a);
    let mut w = embed(v0).normalize()?;
    let mut trace = Vec::new();
    let mut status = Status::MaxIter;
    let mut lambda = crate::dual::DualComplex::ZERO;
    let mut iterations = 0;
    for k in 1..=cfg.k_max {
        let y = b.matvec(&w)?;
        iterations = k;
        if y.standard_norm() < cfg.breakdown_tol {
            status = Status::Breakdown;
            lambda = w.inner(&y);
            trace.push(y.sub(&w.scale(&lambda)).norm2r());
            break;
        }
        lambda = w.inner(&y);
        let res = y.sub(&w.scale(&lambda)).norm2r();
        trace.push(res);
        if res <= cfg.tol {
            status = Status::Converged;
            break;
        }
        w = y.normalize()?;
    }
    let v = extract(&w)?;
    Ok(EigResult {
        eigenvalue: lambda.to_dual_quaternion(),
        eigenvector: v.entries,
        status,
        iterations,
        trace,
        wall_time: start.elapsed().as_secs_f64(),
    })
}

/// Least-squares estimate of the linear convergence rate from a residual
/// trace: the slope of `log10(residual)` against the iteration index over a
/// trusted window, exponentiated back.
///
/// The window drops the first 10% of entries (transient), entries outside
/// `(1e-14, 1e-2)` (floor and pre-asymptotic regime) and entries within a
/// factor 10 of the final residual (stagnation plateau). Fewer than 10
/// surviving points is an error.
pub fn estimate_rate(trace: &[f64]) -> Result<f64> {
    let skip = trace.len() / 10;
    let last = *trace.last().ok_or(DqError::UndefinedRate)?;
    let mut pts: Vec<(f64, f64)> = Vec::new();
    for (k, &r) in trace.iter().enumerate() {
        if k < skip || r <= 1e-14 || r >= 1e-2 || r < 10.0 * last {
            continue;
        }
        pts.push((k as f64, r.log10()));
    }
    if pts.len() < 10 {
        return Err(DqError::UndefinedRate);
    }
    let n = pts.len() as f64;
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for &(x, y) in &pts {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    Ok(10f64.powf(slope))
}
