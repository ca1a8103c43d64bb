//! Dual complex adjoint: maps dual quaternion matrices and vectors into the
//! commutative dual-complex world.
//!
//! Writing each quaternion as `q = q1 + q2 j` with complex `q1`, `q2`, an
//! `m x n` dual quaternion matrix maps to the `2m x 2n` dual complex block
//! matrix `[[Q1, Q2], [-conj(Q2), conj(Q1)]]` (applied per dual part), and a
//! vector `v = v1 + v2 j` maps to the stacked `(v1; -conj(v2))`. The adjoint
//! is a homomorphism and intertwines with the vector map:
//! `adjoint(A) * embed(v) = embed(A * v)`, and the embedding preserves both
//! the 2-norm and the 2^R quantity, so residuals transfer exactly.

use crate::dual::{DualComplex, DualNumber, DualQuaternion};
use crate::error::{DqError, Result};
use crate::linalg::{DQMatrix, DQVector, KahanSum};
use crate::quaternion::Quaternion;

#[derive(Clone, Debug, PartialEq)]
pub struct DCVector {
    pub entries: Vec<DualComplex>,
}

impl DCVector {
    pub fn from_entries(entries: Vec<DualComplex>) -> Self {
        DCVector { entries }
    }

    pub fn zeros(n: usize) -> Self {
        DCVector {
            entries: vec![DualComplex::ZERO; n],
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn sub(&self, rhs: &DCVector) -> DCVector {
        DCVector::from_entries(
            self.entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| *a - *b)
                .collect(),
        )
    }

    pub fn scale(&self, alpha: &DualComplex) -> DCVector {
        DCVector::from_entries(self.entries.iter().map(|e| *e * *alpha).collect())
    }

    /// Inner product with conjugated entries of self on the left.
    pub fn inner(&self, rhs: &DCVector) -> DualComplex {
        let mut acc = DualComplex::ZERO;
        for (a, b) in self.entries.iter().zip(&rhs.entries) {
            acc += a.conj() * *b;
        }
        acc
    }

    pub fn standard_norm(&self) -> f64 {
        let mut acc = KahanSum::default();
        for e in &self.entries {
            acc.add(e.s.norm_sqr());
        }
        acc.value().sqrt()
    }

    /// 2-norm as a dual number.
    pub fn norm2(&self) -> DualNumber {
        let ns = self.standard_norm();
        if ns > 0.0 {
            let mut sym = KahanSum::default();
            for e in &self.entries {
                sym.add((e.s.conj() * e.d + e.d.conj() * e.s).re);
            }
            DualNumber::new(ns, sym.value() / (2.0 * ns))
        } else {
            let mut acc = KahanSum::default();
            for e in &self.entries {
                acc.add(e.d.norm_sqr());
            }
            DualNumber::new(0.0, acc.value().sqrt())
        }
    }

    pub fn norm2r(&self) -> f64 {
        let mut acc = KahanSum::default();
        for e in &self.entries {
            acc.add(e.s.norm_sqr());
            acc.add(e.d.norm_sqr());
        }
        acc.value().sqrt()
    }

    pub fn normalize(&self) -> Result<DCVector> {
        let n = self.norm2();
        if n.s == 0.0 {
            return Err(DqError::Breakdown);
        }
        let entries = self
            .entries
            .iter()
            .map(|e| e.div_dual(&n))
            .collect::<Result<Vec<_>>>()?;
        Ok(DCVector::from_entries(entries))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DCMatrix {
    pub nrows: usize,
    pub ncols: usize,
    pub data: Vec<DualComplex>,
}

impl DCMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        DCMatrix {
            nrows,
            ncols,
            data: vec![DualComplex::ZERO; nrows * ncols],
        }
    }

    pub fn matvec(&self, x: &DCVector) -> Result<DCVector> {
        if self.ncols != x.len() {
            return Err(DqError::DimensionMismatch {
                expected: format!("vector of length {}", self.ncols),
                got: format!("{}", x.len()),
            });
        }
        let mut out = DCVector::zeros(self.nrows);
        for i in 0..self.nrows {
            let mut acc = DualComplex::ZERO;
            for j in 0..self.ncols {
                acc += self[(i, j)] * x.entries[j];
            }
            out.entries[i] = acc;
        }
        Ok(out)
    }

    pub fn mul(&self, rhs: &DCMatrix) -> Result<DCMatrix> {
        if self.ncols != rhs.nrows {
            return Err(DqError::DimensionMismatch {
                expected: format!("inner dimension {}", self.ncols),
                got: format!("{}", rhs.nrows),
            });
        }
        let mut out = DCMatrix::zeros(self.nrows, rhs.ncols);
        for i in 0..self.nrows {
            for k in 0..self.ncols {
                let a = self[(i, k)];
                for j in 0..rhs.ncols {
                    let t = a * rhs[(k, j)];
                    out[(i, j)] += t;
                }
            }
        }
        Ok(out)
    }

    pub fn conj_transpose(&self) -> DCMatrix {
        let mut out = DCMatrix::zeros(self.ncols, self.nrows);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }
}

impl std::ops::Index<(usize, usize)> for DCMatrix {
    type Output = DualComplex;
    fn index(&self, (i, j): (usize, usize)) -> &DualComplex {
        &self.data[i * self.ncols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for DCMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut DualComplex {
        &mut self.data[i * self.ncols + j]
    }
}

/// Dual complex adjoint of a dual quaternion matrix (`m x n` -> `2m x 2n`).
pub fn adjoint(a: &DQMatrix) -> DCMatrix {
    let (m, n) = (a.nrows, a.ncols);
    let mut out = DCMatrix::zeros(2 * m, 2 * n);
    for i in 0..m {
        for j in 0..n {
            let e = a[(i, j)];
            let (s1, s2) = e.s.complex_split();
            let (d1, d2) = e.d.complex_split();
            out[(i, j)] = DualComplex::new(s1, d1);
            out[(i, j + n)] = DualComplex::new(s2, d2);
            out[(i + m, j)] = DualComplex::new(-s2.conj(), -d2.conj());
            out[(i + m, j + n)] = DualComplex::new(s1.conj(), d1.conj());
        }
    }
    out
}

/// Vector embedding: `v = v1 + v2 j` maps to the stacked `(v1; -conj(v2))`.
pub fn embed(v: &DQVector) -> DCVector {
    let n = v.len();
    let mut out = DCVector::zeros(2 * n);
    for (i, e) in v.entries.iter().enumerate() {
        let (s1, s2) = e.s.complex_split();
        let (d1, d2) = e.d.complex_split();
        out.entries[i] = DualComplex::new(s1, d1);
        out.entries[i + n] = DualComplex::new(-s2.conj(), -d2.conj());
    }
    out
}

/// Inverse of the vector embedding (`2n` -> `n`).
pub fn extract(u: &DCVector) -> Result<DQVector> {
    if u.len() % 2 != 0 {
        return Err(DqError::DimensionMismatch {
            expected: "even length".into(),
            got: format!("{}", u.len()),
        });
    }
    let n = u.len() / 2;
    let mut out = DQVector::zeros(n);
    for i in 0..n {
        let top = u.entries[i];
        let bot = u.entries[i + n];
        out.entries[i] = DualQuaternion::new(
            Quaternion::from_complex_split(top.s, -bot.s.conj()),
            Quaternion::from_complex_split(top.d, -bot.d.conj()),
        );
    }
    Ok(out)
}
