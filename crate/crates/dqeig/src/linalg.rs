//! Dense vectors and matrices over dual quaternions.
//!
//! Scalar multiplication is applied on the right throughout (`x * lambda`),
//! matching the right-eigenvalue convention; left-scalar multiplication is
//! deliberately not exposed.

use crate::dual::{DualNumber, DualQuaternion, APPRECIABLE_TOL};
use crate::error::{DqError, Result};
use crate::quaternion::Quaternion;

/// Kahan compensated accumulator for the norm sums.
#[derive(Default, Clone, Copy)]
pub(crate) struct KahanSum {
    sum: f64,
    c: f64,
}

impl KahanSum {
    pub(crate) fn add(&mut self, v: f64) {
        let y = v - self.c;
        let t = self.sum + y;
        self.c = (t - self.sum) - y;
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum
    }
}

// ---------------------------------------------------------------------------
// Quaternion matrices (no dual part) — elimination kernel lives here
// ---------------------------------------------------------------------------

/// Dense quaternion matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct QMatrix {
    pub nrows: usize,
    pub ncols: usize,
    pub data: Vec<Quaternion>,
}

impl QMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        QMatrix {
            nrows,
            ncols,
            data: vec![Quaternion::ZERO; nrows * ncols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Quaternion::ONE;
        }
        m
    }

    pub fn norm_f(&self) -> f64 {
        let mut acc = KahanSum::default();
        for q in &self.data {
            acc.add(q.norm_sqr());
        }
        acc.value().sqrt()
    }

    pub fn mul(&self, rhs: &QMatrix) -> Result<QMatrix> {
        if self.ncols != rhs.nrows {
            return Err(DqError::DimensionMismatch {
                expected: format!("inner dimension {}", self.ncols),
                got: format!("{}", rhs.nrows),
            });
        }
        let mut out = QMatrix::zeros(self.nrows, rhs.ncols);
        for i in 0..self.nrows {
            for k in 0..self.ncols {
                let a = self[(i, k)];
                for j in 0..rhs.ncols {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        Ok(out)
    }

    /// Gauss-Jordan inverse with left-multiplied row operations and partial
    /// pivoting on the largest entry magnitude (ties broken by lowest row).
    pub fn inverse(&self) -> Result<QMatrix> {
        if self.nrows != self.ncols {
            return Err(DqError::DimensionMismatch {
                expected: "square matrix".into(),
                got: format!("{}x{}", self.nrows, self.ncols),
            });
        }
        let n = self.nrows;
        let scale = self.norm_f().max(f64::MIN_POSITIVE);
        let mut a = self.clone();
        let mut inv = QMatrix::identity(n);
        for col in 0..n {
            // pivot: largest magnitude at or below the diagonal
            let mut piv = col;
            let mut best = a[(col, col)].abs();
            for r in col + 1..n {
                let m = a[(r, col)].abs();
                if m > best {
                    best = m;
                    piv = r;
                }
            }
            if best < 1e-12 * scale {
                return Err(DqError::SingularMatrix);
            }
            if piv != col {
                for j in 0..n {
                    a.data.swap(col * n + j, piv * n + j);
                    inv.data.swap(col * n + j, piv * n + j);
                }
            }
            // left-multiply the pivot row by pivot^{-1}
            let pinv = a[(col, col)].inv()?;
            for j in 0..n {
                a[(col, j)] = pinv * a[(col, j)];
                inv[(col, j)] = pinv * inv[(col, j)];
            }
            // eliminate the column elsewhere
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a[(r, col)];
                if f.abs() == 0.0 {
                    continue;
                }
                for j in 0..n {
                    let t = f * a[(col, j)];
                    a[(r, j)] = a[(r, j)] - t;
                    let t = f * inv[(col, j)];
                    inv[(r, j)] = inv[(r, j)] - t;
                }
            }
        }
        Ok(inv)
    }
}

impl std::ops::Index<(usize, usize)> for QMatrix {
    type Output = Quaternion;
    fn index(&self, (i, j): (usize, usize)) -> &Quaternion {
        &self.data[i * self.ncols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Quaternion {
        &mut self.data[i * self.ncols + j]
    }
}

// ---------------------------------------------------------------------------
// Dual quaternion vectors
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq)]
pub struct DQVector {
    pub entries: Vec<DualQuaternion>,
}

impl DQVector {
    pub fn from_entries(entries: Vec<DualQuaternion>) -> Self {
        DQVector { entries }
    }

    pub fn zeros(n: usize) -> Self {
        DQVector {
            entries: vec![DualQuaternion::ZERO; n],
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn add(&self, rhs: &DQVector) -> DQVector {
        DQVector::from_entries(
            self.entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| *a + *b)
                .collect(),
        )
    }

    pub fn sub(&self, rhs: &DQVector) -> DQVector {
        DQVector::from_entries(
            self.entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| *a - *b)
                .collect(),
        )
    }

    /// Right scalar multiplication `x * alpha`.
    pub fn scale_right(&self, alpha: &DualQuaternion) -> DQVector {
        DQVector::from_entries(self.entries.iter().map(|e| *e * *alpha).collect())
    }

    /// Inner product `self* rhs` (conjugate entries of self on the left).
    pub fn inner(&self, rhs: &DQVector) -> DualQuaternion {
        let mut acc = DualQuaternion::ZERO;
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

    pub fn dual_norm(&self) -> f64 {
        let mut acc = KahanSum::default();
        for e in &self.entries {
            acc.add(e.d.norm_sqr());
        }
        acc.value().sqrt()
    }

    /// 2-norm as a dual number. The symmetric sum `x_s* x_d + x_d* x_s`
    /// is real and equals twice the scalar dot of the parts.
    pub fn norm2(&self) -> DualNumber {
        let ns = self.standard_norm();
        if ns > 0.0 {
            let mut sym = KahanSum::default();
            for e in &self.entries {
                sym.add((e.s.conj() * e.d).w + (e.d.conj() * e.s).w);
            }
            DualNumber::new(ns, sym.value() / (2.0 * ns))
        } else {
            DualNumber::new(0.0, self.dual_norm())
        }
    }

    /// Root-sum-square of both parts (fails the scaling axiom; real-valued).
    pub fn norm2r(&self) -> f64 {
        let mut acc = KahanSum::default();
        for e in &self.entries {
            acc.add(e.s.norm_sqr());
            acc.add(e.d.norm_sqr());
        }
        acc.value().sqrt()
    }

    /// Divides every entry by the dual-number 2-norm.
    pub fn normalize(&self) -> Result<DQVector> {
        let n = self.norm2();
        if n.s <= APPRECIABLE_TOL {
            return Err(DqError::Breakdown);
        }
        let entries = self
            .entries
            .iter()
            .map(|e| e.div_dual(&n))
            .collect::<Result<Vec<_>>>()?;
        Ok(DQVector::from_entries(entries))
    }

    pub fn standard_part(&self) -> Vec<Quaternion> {
        self.entries.iter().map(|e| e.s).collect()
    }
}

// ---------------------------------------------------------------------------
// Dual quaternion matrices
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq)]
pub struct DQMatrix {
    pub nrows: usize,
    pub ncols: usize,
    pub data: Vec<DualQuaternion>,
}

impl DQMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        DQMatrix {
            nrows,
            ncols,
            data: vec![DualQuaternion::ZERO; nrows * ncols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = DQMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = DualQuaternion::ONE;
        }
        m
    }

    pub fn from_parts(s: &QMatrix, d: &QMatrix) -> Result<Self> {
        if s.nrows != d.nrows || s.ncols != d.ncols {
            return Err(DqError::DimensionMismatch {
                expected: format!("{}x{}", s.nrows, s.ncols),
                got: format!("{}x{}", d.nrows, d.ncols),
            });
        }
        let data = s
            .data
            .iter()
            .zip(&d.data)
            .map(|(a, b)| DualQuaternion::new(*a, *b))
            .collect();
        Ok(DQMatrix {
            nrows: s.nrows,
            ncols: s.ncols,
            data,
        })
    }

    pub fn standard_part(&self) -> QMatrix {
        QMatrix {
            nrows: self.nrows,
            ncols: self.ncols,
            data: self.data.iter().map(|e| e.s).collect(),
        }
    }

    pub fn dual_part(&self) -> QMatrix {
        QMatrix {
            nrows: self.nrows,
            ncols: self.ncols,
            data: self.data.iter().map(|e| e.d).collect(),
        }
    }

    pub fn is_square(&self) -> bool {
        self.nrows == self.ncols
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        if !self.is_square() {
            return false;
        }
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                if (self[(i, j)] - self[(j, i)].conj()).norm2r() > tol {
                    return false;
                }
            }
        }
        true
    }

    pub fn mul(&self, rhs: &DQMatrix) -> Result<DQMatrix> {
        if self.ncols != rhs.nrows {
            return Err(DqError::DimensionMismatch {
                expected: format!("inner dimension {}", self.ncols),
                got: format!("{}", rhs.nrows),
            });
        }
        let mut out = DQMatrix::zeros(self.nrows, rhs.ncols);
        for i in 0..self.nrows {
            for k in 0..self.ncols {
                let a = self[(i, k)];
                for j in 0..rhs.ncols {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn matvec(&self, x: &DQVector) -> Result<DQVector> {
        if self.ncols != x.len() {
            return Err(DqError::DimensionMismatch {
                expected: format!("vector of length {}", self.ncols),
                got: format!("{}", x.len()),
            });
        }
        let mut out = DQVector::zeros(self.nrows);
        for i in 0..self.nrows {
            let mut acc = DualQuaternion::ZERO;
            for j in 0..self.ncols {
                acc += self[(i, j)] * x.entries[j];
            }
            out.entries[i] = acc;
        }
        Ok(out)
    }

    pub fn conj_transpose(&self) -> DQMatrix {
        let mut out = DQMatrix::zeros(self.ncols, self.nrows);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn add(&self, rhs: &DQMatrix) -> DQMatrix {
        DQMatrix {
            nrows: self.nrows,
            ncols: self.ncols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| *a + *b)
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &DQMatrix) -> DQMatrix {
        DQMatrix {
            nrows: self.nrows,
            ncols: self.ncols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| *a - *b)
                .collect(),
        }
    }

    /// F-norm as a dual number.
    ///
    /// The dual-part denominator is `2 ||A_s||_F`, the form consistent with
    /// the vector 2-norm analogue.
    pub fn norm_f(&self) -> DualNumber {
        let ns = self.standard_part().norm_f();
        if ns > 0.0 {
            let mut sym = KahanSum::default();
            for e in &self.data {
                sym.add((e.s.conj() * e.d).w + (e.d.conj() * e.s).w);
            }
            DualNumber::new(ns, sym.value() / (2.0 * ns))
        } else {
            DualNumber::new(0.0, self.dual_part().norm_f())
        }
    }

    /// Root-sum-square of the F-norms of both parts.
    pub fn norm_fr(&self) -> f64 {
        let mut acc = KahanSum::default();
        for e in &self.data {
            acc.add(e.s.norm_sqr());
            acc.add(e.d.norm_sqr());
        }
        acc.value().sqrt()
    }

    /// Inverse via the block rule: standard `A_s^{-1}`,
    /// dual `-A_s^{-1} A_d A_s^{-1}`.
    pub fn inverse(&self) -> Result<DQMatrix> {
        if !self.is_square() {
            return Err(DqError::DimensionMismatch {
                expected: "square matrix".into(),
                got: format!("{}x{}", self.nrows, self.ncols),
            });
        }
        let si = self.standard_part().inverse()?;
        let d = si.mul(&self.dual_part())?.mul(&si)?;
        let neg_d = QMatrix {
            nrows: d.nrows,
            ncols: d.ncols,
            data: d.data.iter().map(|q| -*q).collect(),
        };
        DQMatrix::from_parts(&si, &neg_d)
    }

    pub fn column(&self, j: usize) -> DQVector {
        DQVector::from_entries((0..self.nrows).map(|i| self[(i, j)]).collect())
    }
}

impl std::ops::Index<(usize, usize)> for DQMatrix {
    type Output = DualQuaternion;
    fn index(&self, (i, j): (usize, usize)) -> &DualQuaternion {
        &self.data[i * self.ncols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for DQMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut DualQuaternion {
        &mut self.data[i * self.ncols + j]
    }
}

/// Residual `||A v - v lambda||_{2^R}` (right multiplication by lambda).
pub fn residual_2r(a: &DQMatrix, v: &DQVector, lambda: &DualQuaternion) -> Result<f64> {
    let av = a.matvec(v)?;
    Ok(av.sub(&v.scale_right(lambda)).norm2r())
}
