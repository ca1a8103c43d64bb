//! File formats: JSON matrices/vectors/results, CSV residual traces.
//! All writes are atomic (temp file in the target directory + rename).

use crate::dual::DualQuaternion;
use crate::eig::{EigResult, Status};
use crate::error::{DqError, Result};
use crate::linalg::{DQMatrix, DQVector, QMatrix};
use crate::quaternion::Quaternion;
use serde::{Deserialize, Serialize};
use std::io::Write;
use std::path::Path;

pub const FORMAT_VERSION: u32 = 1;

pub type Quad = [f64; 4];

fn quad(q: Quaternion) -> Quad {
    [q.w, q.x, q.y, q.z]
}

fn unquad(q: Quad) -> Quaternion {
    Quaternion::new(q[0], q[1], q[2], q[3])
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<serde_json::Value>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatrixFile {
    pub format_version: u32,
    pub n: usize,
    /// Row-major n x n array of quaternion quadruples [w, x, y, z].
    pub standard: Vec<Vec<Quad>>,
    pub dual: Vec<Vec<Quad>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Metadata>,
}

impl MatrixFile {
    pub fn from_matrix(a: &DQMatrix, metadata: Option<Metadata>) -> Self {
        let row = |part: &QMatrix, i: usize| (0..a.ncols).map(|j| quad(part[(i, j)])).collect();
        let s = a.standard_part();
        let d = a.dual_part();
        MatrixFile {
            format_version: FORMAT_VERSION,
            n: a.nrows,
            standard: (0..a.nrows).map(|i| row(&s, i)).collect(),
            dual: (0..a.nrows).map(|i| row(&d, i)).collect(),
            metadata,
        }
    }

    pub fn to_matrix(&self) -> Result<DQMatrix> {
        let check = |name: &str, part: &Vec<Vec<Quad>>| -> Result<()> {
            if part.len() != self.n || part.iter().any(|r| r.len() != self.n) {
                return Err(DqError::InvalidParameter(format!(
                    "{name} part is not {0}x{0}",
                    self.n
                )));
            }
            Ok(())
        };
        check("standard", &self.standard)?;
        check("dual", &self.dual)?;
        let mut a = DQMatrix::zeros(self.n, self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                a[(i, j)] = DualQuaternion::new(
                    unquad(self.standard[i][j]),
                    unquad(self.dual[i][j]),
                );
            }
        }
        Ok(a)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VectorFile {
    pub format_version: u32,
    pub n: usize,
    pub standard: Vec<Quad>,
    pub dual: Vec<Quad>,
}

impl VectorFile {
    pub fn from_vector(v: &DQVector) -> Self {
        VectorFile {
            format_version: FORMAT_VERSION,
            n: v.len(),
            standard: v.entries.iter().map(|e| quad(e.s)).collect(),
            dual: v.entries.iter().map(|e| quad(e.d)).collect(),
        }
    }

    pub fn to_vector(&self) -> Result<DQVector> {
        if self.standard.len() != self.n || self.dual.len() != self.n {
            return Err(DqError::InvalidParameter(format!(
                "vector parts are not length {}",
                self.n
            )));
        }
        Ok(DQVector::from_entries(
            self.standard
                .iter()
                .zip(&self.dual)
                .map(|(s, d)| DualQuaternion::new(unquad(*s), unquad(*d)))
                .collect(),
        ))
    }
}

/// Dual complex eigenvalue list for `gen spectrum`:
/// rows of [s_re, s_im, d_re, d_im].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EigsFile {
    pub eigs: Vec<[f64; 4]>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DualQuad {
    pub standard: Quad,
    pub dual: Quad,
}

impl DualQuad {
    pub fn from_dq(q: &DualQuaternion) -> Self {
        DualQuad {
            standard: quad(q.s),
            dual: quad(q.d),
        }
    }

    pub fn to_dq(&self) -> DualQuaternion {
        DualQuaternion::new(unquad(self.standard), unquad(self.dual))
    }
}

/// Result summary emitted by `run` on standard output (and consumed by
/// `verify`).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunSummary {
    pub format_version: u32,
    pub algorithm: String,
    pub status: Status,
    pub iterations: usize,
    pub wall_time: f64,
    pub eigenvalue: DualQuad,
    /// Dual complex class representative [s_re, s_im, d_re, d_im], absent
    /// when undefined for this eigenvalue.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class_rep: Option<[f64; 4]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub estimated_rate: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub final_residual: Option<f64>,
    pub eigenvector: Vec<DualQuad>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TraceHeader {
    pub algorithm: String,
    pub n: usize,
    pub seed: u64,
    pub delta: f64,
    pub kmax: usize,
    pub status: Status,
    pub iterations: usize,
    pub wall_time: f64,
}

#[derive(Clone, Debug)]
pub struct TraceRow {
    pub iter: usize,
    pub res: f64,
    pub lambda_s: Quad,
    pub lambda_d: Quad,
}

#[derive(Clone, Debug)]
pub struct TraceFile {
    pub header: TraceHeader,
    pub rows: Vec<TraceRow>,
}

fn status_str(s: Status) -> &'static str {
    match s {
        Status::Converged => "converged",
        Status::MaxIter => "max_iter",
        Status::Breakdown => "breakdown",
    }
}

fn status_parse(s: &str) -> Result<Status> {
    match s {
        "converged" => Ok(Status::Converged),
        "max_iter" => Ok(Status::MaxIter),
        "breakdown" => Ok(Status::Breakdown),
        other => Err(DqError::InvalidParameter(format!("unknown status {other}"))),
    }
}

/// Writes a file atomically: temp file in the same directory, then rename.
pub fn atomic_write(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
    let mut tmp = match dir {
        Some(d) => tempfile::NamedTempFile::new_in(d)?,
        None => tempfile::NamedTempFile::new_in(".")?,
    };
    tmp.write_all(bytes)?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

pub fn save_json<T: Serialize>(path: &Path, value: &T) -> std::io::Result<()> {
    let mut body = serde_json::to_vec_pretty(value)?;
    body.push(b'\n');
    atomic_write(path, &body)
}

pub fn load_json<T: for<'de> Deserialize<'de>>(path: &Path) -> std::io::Result<T> {
    let body = std::fs::read(path)?;
    Ok(serde_json::from_slice(&body)?)
}

/// CSV trace: `#`-prefixed header lines followed by
/// `iter,res,lambda_s(4),lambda_d(4)` rows. Trace entry `k` pairs with the
/// per-iteration residual; the eigenvalue columns repeat the final estimate
/// (the solver does not retain per-iteration eigenvalues).
pub fn save_trace(path: &Path, header: &TraceHeader, result: &EigResult) -> std::io::Result<()> {
    let mut out = String::new();
    out.push_str(&format!("# algorithm={}\n", header.algorithm));
    out.push_str(&format!("# n={}\n", header.n));
    out.push_str(&format!("# seed={}\n", header.seed));
    out.push_str(&format!("# delta={:e}\n", header.delta));
    out.push_str(&format!("# kmax={}\n", header.kmax));
    out.push_str(&format!("# status={}\n", status_str(header.status)));
    out.push_str(&format!("# iterations={}\n", header.iterations));
    out.push_str(&format!("# wall_time={:e}\n", header.wall_time));
    out.push_str("iter,res,ls_w,ls_x,ls_y,ls_z,ld_w,ld_x,ld_y,ld_z\n");
    let l = result.eigenvalue;
    for (k, res) in result.trace.iter().enumerate() {
        out.push_str(&format!(
            "{},{:e},{},{},{},{},{},{},{},{}\n",
            k + 1,
            res,
            l.s.w,
            l.s.x,
            l.s.y,
            l.s.z,
            l.d.w,
            l.d.x,
            l.d.y,
            l.d.z
        ));
    }
    atomic_write(path, out.as_bytes())
}

pub fn load_trace(path: &Path) -> Result<TraceFile> {
    let body = std::fs::read_to_string(path)
        .map_err(|e| DqError::InvalidParameter(format!("cannot read {}: {e}", path.display())))?;
    let mut fields = std::collections::HashMap::new();
    let mut rows = Vec::new();
    for line in body.lines() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('#') {
            if let Some((k, v)) = rest.trim().split_once('=') {
                fields.insert(k.trim().to_string(), v.trim().to_string());
            }
            continue;
        }
        if line.starts_with("iter,") {
            continue;
        }
        let cols: Vec<&str> = line.split(',').collect();
        if cols.len() != 10 {
            return Err(DqError::InvalidParameter(format!(
                "trace row has {} columns, expected 10",
                cols.len()
            )));
        }
        let parse =
            |s: &str| -> Result<f64> { s.parse().map_err(|_| DqError::InvalidParameter(format!("bad number {s}"))) };
        rows.push(TraceRow {
            iter: cols[0]
                .parse()
                .map_err(|_| DqError::InvalidParameter(format!("bad iter {}", cols[0])))?,
            res: parse(cols[1])?,
            lambda_s: [parse(cols[2])?, parse(cols[3])?, parse(cols[4])?, parse(cols[5])?],
            lambda_d: [parse(cols[6])?, parse(cols[7])?, parse(cols[8])?, parse(cols[9])?],
        });
    }
    let get = |k: &str| -> Result<String> {
        fields
            .get(k)
            .cloned()
            .ok_or_else(|| DqError::InvalidParameter(format!("trace header missing {k}")))
    };
    let num = |k: &str| -> Result<f64> {
        get(k)?
            .parse()
            .map_err(|_| DqError::InvalidParameter(format!("bad header value for {k}")))
    };
    let header = TraceHeader {
        algorithm: get("algorithm")?,
        n: num("n")? as usize,
        seed: num("seed")? as u64,
        delta: num("delta")?,
        kmax: num("kmax")? as usize,
        status: status_parse(&get("status")?)?,
        iterations: num("iterations")? as usize,
        wall_time: num("wall_time")?,
    };
    Ok(TraceFile { header, rows })
}
