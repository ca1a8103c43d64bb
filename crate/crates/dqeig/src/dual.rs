//! Dual scalars: dual numbers, dual complex numbers and dual quaternions.
//!
//! Every dual quantity is a pair `standard + dual * eps` with `eps^2 = 0`;
//! the eps-squared term is never materialized. Dual numbers carry the
//! lexicographic total order (standard part first, dual part as tie break).

use crate::error::{DqError, Result};
use crate::quaternion::Quaternion;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

/// Threshold below which a standard part counts as vanishing ("appreciable"
/// tests never compare floats to exact zero). Scaled by the caller when the
/// enclosing computation has a different magnitude.
pub const APPRECIABLE_TOL: f64 = 1e-12;

// ---------------------------------------------------------------------------
// Dual numbers
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct DualNumber {
    /// Standard part.
    pub s: f64,
    /// Dual part.
    pub d: f64,
}

impl DualNumber {
    pub const ZERO: DualNumber = DualNumber::new(0.0, 0.0);
    pub const ONE: DualNumber = DualNumber::new(1.0, 0.0);

    pub const fn new(s: f64, d: f64) -> Self {
        DualNumber { s, d }
    }

    /// Lexicographic comparison: standard part first, dual part breaks ties.
    pub fn cmp(&self, other: &DualNumber) -> Ordering {
        match self.s.total_cmp(&other.s) {
            Ordering::Equal => self.d.total_cmp(&other.d),
            ord => ord,
        }
    }

    pub fn is_nonnegative(&self) -> bool {
        self.s > 0.0 || (self.s == 0.0 && self.d >= 0.0)
    }

    /// Division of `b` by `a` (self = b).
    ///
    /// Defined when the divisor standard part is nonzero, or when both
    /// standard parts vanish and the divisor dual part is nonzero. In the
    /// degenerate branch the free real constant is fixed to zero.
    pub fn div(&self, a: &DualNumber) -> Result<DualNumber> {
        let b = self;
        if a.s != 0.0 {
            let q = b.s / a.s;
            Ok(DualNumber::new(q, b.d / a.s - q * (a.d / a.s)))
        } else if b.s == 0.0 && a.d != 0.0 {
            Ok(DualNumber::new(b.d / a.d, 0.0))
        } else {
            Err(DqError::DegenerateDivision)
        }
    }

    pub fn recip(&self) -> Result<DualNumber> {
        DualNumber::ONE.div(self)
    }
}

impl Add for DualNumber {
    type Output = DualNumber;
    fn add(self, r: DualNumber) -> DualNumber {
        DualNumber::new(self.s + r.s, self.d + r.d)
    }
}

impl Sub for DualNumber {
    type Output = DualNumber;
    fn sub(self, r: DualNumber) -> DualNumber {
        DualNumber::new(self.s - r.s, self.d - r.d)
    }
}

impl Mul for DualNumber {
    type Output = DualNumber;
    fn mul(self, r: DualNumber) -> DualNumber {
        DualNumber::new(self.s * r.s, self.s * r.d + self.d * r.s)
    }
}

impl Neg for DualNumber {
    type Output = DualNumber;
    fn neg(self) -> DualNumber {
        DualNumber::new(-self.s, -self.d)
    }
}

// ---------------------------------------------------------------------------
// Dual complex numbers
// ---------------------------------------------------------------------------

/// A commutative dual scalar. Kept as a distinct type (not a dual quaternion
/// with zero j,k parts) so commutativity is a type-level guarantee for the
/// adjoint solver.
#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct DualComplex {
    pub s: Complex64,
    pub d: Complex64,
}

impl DualComplex {
    pub const ZERO: DualComplex = DualComplex {
        s: Complex64::new(0.0, 0.0),
        d: Complex64::new(0.0, 0.0),
    };
    pub const ONE: DualComplex = DualComplex {
        s: Complex64::new(1.0, 0.0),
        d: Complex64::new(0.0, 0.0),
    };

    pub const fn new(s: Complex64, d: Complex64) -> Self {
        DualComplex { s, d }
    }

    pub fn from_parts(s_re: f64, s_im: f64, d_re: f64, d_im: f64) -> Self {
        DualComplex::new(Complex64::new(s_re, s_im), Complex64::new(d_re, d_im))
    }

    pub fn conj(&self) -> Self {
        DualComplex::new(self.s.conj(), self.d.conj())
    }

    pub fn norm2r(&self) -> f64 {
        (self.s.norm_sqr() + self.d.norm_sqr()).sqrt()
    }

    /// Division by a dual real number (entrywise first-order expansion).
    pub fn div_dual(&self, a: &DualNumber) -> Result<DualComplex> {
        if a.s == 0.0 {
            return Err(DqError::DegenerateDivision);
        }
        let r = a.d / (a.s * a.s);
        Ok(DualComplex::new(
            self.s / a.s,
            self.d / a.s - self.s * r,
        ))
    }

    /// Embeds into the dual quaternions (zero j,k parts).
    pub fn to_dual_quaternion(&self) -> DualQuaternion {
        DualQuaternion::new(
            Quaternion::from_complex(self.s),
            Quaternion::from_complex(self.d),
        )
    }
}

impl Add for DualComplex {
    type Output = DualComplex;
    fn add(self, r: DualComplex) -> DualComplex {
        DualComplex::new(self.s + r.s, self.d + r.d)
    }
}

impl AddAssign for DualComplex {
    fn add_assign(&mut self, r: DualComplex) {
        *self = *self + r;
    }
}

impl Sub for DualComplex {
    type Output = DualComplex;
    fn sub(self, r: DualComplex) -> DualComplex {
        DualComplex::new(self.s - r.s, self.d - r.d)
    }
}

impl Mul for DualComplex {
    type Output = DualComplex;
    fn mul(self, r: DualComplex) -> DualComplex {
        DualComplex::new(self.s * r.s, self.s * r.d + self.d * r.s)
    }
}

impl Neg for DualComplex {
    type Output = DualComplex;
    fn neg(self) -> DualComplex {
        DualComplex::new(-self.s, -self.d)
    }
}

// ---------------------------------------------------------------------------
// Dual quaternions
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct DualQuaternion {
    /// Standard part.
    pub s: Quaternion,
    /// Dual part.
    pub d: Quaternion,
}

impl DualQuaternion {
    pub const ZERO: DualQuaternion = DualQuaternion {
        s: Quaternion::ZERO,
        d: Quaternion::ZERO,
    };
    pub const ONE: DualQuaternion = DualQuaternion {
        s: Quaternion::ONE,
        d: Quaternion::ZERO,
    };

    pub const fn new(s: Quaternion, d: Quaternion) -> Self {
        DualQuaternion { s, d }
    }

    pub fn from_standard(s: Quaternion) -> Self {
        DualQuaternion::new(s, Quaternion::ZERO)
    }

    pub fn conj(&self) -> Self {
        DualQuaternion::new(self.s.conj(), self.d.conj())
    }

    pub fn is_appreciable(&self, tol: f64) -> bool {
        self.s.abs() > tol
    }

    /// Magnitude as a nonnegative dual number.
    ///
    /// Appreciable branch: `|q_s| + sc(q_s* q_d + q_d* q_s) / (2 |q_s|) eps`;
    /// the symmetric sum is a real scalar. Otherwise `|q_d| eps`.
    pub fn magnitude(&self) -> DualNumber {
        let ns = self.s.abs();
        if ns > 0.0 {
            let sym = (self.s.conj() * self.d).w + (self.d.conj() * self.s).w;
            DualNumber::new(ns, sym / (2.0 * ns))
        } else {
            DualNumber::new(0.0, self.d.abs())
        }
    }

    /// Inverse of an appreciable dual quaternion:
    /// `q_s^{-1} - q_s^{-1} q_d q_s^{-1} eps`.
    pub fn inv(&self) -> Result<Self> {
        if !self.is_appreciable(APPRECIABLE_TOL) {
            return Err(DqError::NotAppreciable);
        }
        let si = self.s.inv()?;
        Ok(DualQuaternion::new(si, -(si * self.d * si)))
    }

    pub fn scale(&self, t: f64) -> Self {
        DualQuaternion::new(self.s.scale(t), self.d.scale(t))
    }

    /// Multiplication by a dual real number (commutes with quaternions).
    pub fn mul_dual(&self, a: &DualNumber) -> Self {
        DualQuaternion::new(
            self.s.scale(a.s),
            self.d.scale(a.s) + self.s.scale(a.d),
        )
    }

    /// Entrywise division by a dual real number with nonzero standard part.
    pub fn div_dual(&self, a: &DualNumber) -> Result<Self> {
        if a.s == 0.0 {
            return Err(DqError::DegenerateDivision);
        }
        let r = a.d / (a.s * a.s);
        Ok(DualQuaternion::new(
            self.s.scale(1.0 / a.s),
            self.d.scale(1.0 / a.s) - self.s.scale(r),
        ))
    }

    /// Root-sum-square of both parts (not a norm; fails scaling).
    pub fn norm2r(&self) -> f64 {
        (self.s.norm_sqr() + self.d.norm_sqr()).sqrt()
    }

    /// Unit dual quaternion predicate: magnitude equals `1 + 0 eps`.
    pub fn is_unit(&self, tol: f64) -> bool {
        let m = self.magnitude();
        (m.s - 1.0).abs() <= tol && m.d.abs() <= tol
    }

    /// Dual complex representative of the similarity class, chosen with
    /// nonnegative standard imaginary part.
    ///
    /// Real parts are preserved and the imaginary magnitude is preserved as
    /// a dual number: the representative is
    /// `(a_s + a_d eps) + (|v_s| + (v_s . v_d)/|v_s| eps) i`
    /// where `a`, `v` are the scalar and vector parts of the two components.
    /// Undefined when the standard vector part vanishes while the dual
    /// vector part does not.
    pub fn class_rep(&self) -> Result<DualComplex> {
        let vs = self.s.vector();
        let vd = self.d.vector();
        let nvs = (vs[0] * vs[0] + vs[1] * vs[1] + vs[2] * vs[2]).sqrt();
        let nvd = (vd[0] * vd[0] + vd[1] * vd[1] + vd[2] * vd[2]).sqrt();
        if nvs <= APPRECIABLE_TOL {
            if nvd <= APPRECIABLE_TOL {
                return Ok(DualComplex::from_parts(self.s.w, 0.0, self.d.w, 0.0));
            }
            return Err(DqError::ClassRepUndefined);
        }
        let dot = vs[0] * vd[0] + vs[1] * vd[1] + vs[2] * vd[2];
        Ok(DualComplex::from_parts(
            self.s.w,
            nvs,
            self.d.w,
            dot / nvs,
        ))
    }
}

impl Add for DualQuaternion {
    type Output = DualQuaternion;
    fn add(self, r: DualQuaternion) -> DualQuaternion {
        DualQuaternion::new(self.s + r.s, self.d + r.d)
    }
}

impl AddAssign for DualQuaternion {
    fn add_assign(&mut self, r: DualQuaternion) {
        *self = *self + r;
    }
}

impl Sub for DualQuaternion {
    type Output = DualQuaternion;
    fn sub(self, r: DualQuaternion) -> DualQuaternion {
        DualQuaternion::new(self.s - r.s, self.d - r.d)
    }
}

impl Mul for DualQuaternion {
    type Output = DualQuaternion;
    /// Product rule `(p_s + p_d eps)(q_s + q_d eps) = p_s q_s + (p_s q_d + p_d q_s) eps`.
    fn mul(self, q: DualQuaternion) -> DualQuaternion {
        DualQuaternion::new(self.s * q.s, self.s * q.d + self.d * q.s)
    }
}

impl Neg for DualQuaternion {
    type Output = DualQuaternion;
    fn neg(self) -> DualQuaternion {
        DualQuaternion::new(-self.s, -self.d)
    }
}
