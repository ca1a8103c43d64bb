//! Independent verification: complex adjoint of standard parts, a dense
//! complex eigensolver (balancing + Hessenberg + shifted QR), analytic
//! spectra for the graph families, multiplicity estimates and assumption
//! verdicts.

use crate::dual::DualQuaternion;
use crate::error::{DqError, Result};
use crate::linalg::{DQMatrix, DQVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

// ---------------------------------------------------------------------------
// Dense complex matrices
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix {
    pub n: usize,
    pub data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(n: usize) -> Self {
        CMatrix {
            n,
            data: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMatrix::zeros(n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn norm_f(&self) -> f64 {
        self.data.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.n + j]
    }
}

/// Complex adjoint of the standard part: `[[A1, A2], [-conj(A2), conj(A1)]]`
/// with `A_s = A1 + A2 j` entrywise.
pub fn complex_adjoint_std(a: &DQMatrix) -> CMatrix {
    let n = a.nrows;
    let mut m = CMatrix::zeros(2 * n);
    for i in 0..n {
        for j in 0..a.ncols {
            let (a1, a2) = a[(i, j)].s.complex_split();
            m[(i, j)] = a1;
            m[(i, j + n)] = a2;
            m[(i + n, j)] = -a2.conj();
            m[(i + n, j + n)] = a1.conj();
        }
    }
    m
}

// ---------------------------------------------------------------------------
// Dense complex eigensolver
// ---------------------------------------------------------------------------

/// Parlett-Reinsch balancing: diagonal similarity with powers of two so that
/// row and column 1-norms are comparable. Eigenvalues are unchanged.
fn balance(h: &mut CMatrix) {
    let n = h.n;
    let radix = 2.0;
    loop {
        let mut done = true;
        for i in 0..n {
            let mut c = 0.0;
            let mut r = 0.0;
            for j in 0..n {
                if j != i {
                    c += h[(j, i)].norm();
                    r += h[(i, j)].norm();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let mut f = 1.0;
            let s = c + r;
            while c < r / radix {
                c *= radix;
                r /= radix;
                f *= radix;
            }
            while c >= r * radix {
                c /= radix;
                r *= radix;
                f /= radix;
            }
            if (c + r) < 0.95 * s {
                done = false;
                let g = 1.0 / f;
                for j in 0..n {
                    h[(i, j)] = h[(i, j)] * g;
                }
                for j in 0..n {
                    h[(j, i)] = h[(j, i)] * f;
                }
            }
        }
        if done {
            break;
        }
    }
}

/// Householder reduction to upper Hessenberg form.
fn hessenberg(h: &mut CMatrix) {
    let n = h.n;
    for k in 0..n.saturating_sub(2) {
        // norm of the column below the subdiagonal entry
        let mut xnorm_sq = 0.0;
        for i in k + 1..n {
            xnorm_sq += h[(i, k)].norm_sqr();
        }
        let xnorm = xnorm_sq.sqrt();
        if xnorm == 0.0 {
            continue;
        }
        let x0 = h[(k + 1, k)];
        let phase = if x0.norm() == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            x0 / x0.norm()
        };
        let alpha = -phase * xnorm;
        // v = x - alpha e1
        let mut v: Vec<Complex64> = (k + 1..n).map(|i| h[(i, k)]).collect();
        v[0] -= alpha;
        let vnorm_sq: f64 = v.iter().map(|c| c.norm_sqr()).sum();
        if vnorm_sq == 0.0 {
            continue;
        }
        let beta = 2.0 / vnorm_sq;
        // left: H <- (I - beta v v*) H on rows k+1.., columns k..
        for j in k..n {
            let mut dot = Complex64::new(0.0, 0.0);
            for (t, vi) in v.iter().enumerate() {
                dot += vi.conj() * h[(k + 1 + t, j)];
            }
            let dot = dot * beta;
            for (t, vi) in v.iter().enumerate() {
                let upd = *vi * dot;
                h[(k + 1 + t, j)] -= upd;
            }
        }
        // right: H <- H (I - beta v v*) on columns k+1.., all rows
        for i in 0..n {
            let mut dot = Complex64::new(0.0, 0.0);
            for (t, vi) in v.iter().enumerate() {
                dot += h[(i, k + 1 + t)] * *vi;
            }
            let dot = dot * beta;
            for (t, vi) in v.iter().enumerate() {
                let upd = dot * vi.conj();
                h[(i, k + 1 + t)] -= upd;
            }
        }
    }
    // clean below the subdiagonal
    for i in 2..n {
        for j in 0..i - 1 {
            h[(i, j)] = Complex64::new(0.0, 0.0);
        }
    }
}

/// Eigenvalues of a complex 2x2 block, returned with the one closer to `d`
/// second (used both for deflation and the Wilkinson shift).
fn eig2(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> (Complex64, Complex64) {
    let t = (a + d) * 0.5;
    let det = a * d - b * c;
    let disc = (t * t - det).sqrt();
    let l1 = t + disc;
    let l2 = t - disc;
    if (l1 - d).norm() <= (l2 - d).norm() {
        (l2, l1)
    } else {
        (l1, l2)
    }
}

/// Complex Givens rotation zeroing `b` against `a`:
/// `[[c, s], [-conj(s), c]] [a; b] = [r; 0]` with real `c`.
fn givens(a: Complex64, b: Complex64) -> (f64, Complex64) {
    let an = a.norm();
    let bn = b.norm();
    if bn == 0.0 {
        return (1.0, Complex64::new(0.0, 0.0));
    }
    if an == 0.0 {
        return (0.0, b.conj() / bn);
    }
    let r = (an * an + bn * bn).sqrt();
    let c = an / r;
    let s = (a / an) * b.conj() / r;
    (c, s)
}

/// All eigenvalues of a dense complex matrix via balancing, Hessenberg
/// reduction and explicitly shifted QR with Wilkinson shifts. The sweep
/// budget is 30n across all deflations.
pub fn complex_eigs(m: &CMatrix) -> Result<Vec<Complex64>> {
    let n = m.n;
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut h = m.clone();
    balance(&mut h);
    hessenberg(&mut h);

    let mut eigs = Vec::with_capacity(n);
    let mut hi = n - 1;
    let mut sweeps_total = 0usize;
    let budget = 30 * n;
    let mut stuck = 0usize; // sweeps since the last deflation at this hi
    loop {
        // find the start of the active unreduced block
        let mut lo = 0;
        for m in (1..=hi).rev() {
            let sub = h[(m, m - 1)].norm();
            let diag = h[(m - 1, m - 1)].norm() + h[(m, m)].norm();
            let thresh = f64::EPSILON * if diag > 0.0 { diag } else { h.norm_f() };
            if sub <= thresh {
                h[(m, m - 1)] = Complex64::new(0.0, 0.0);
                lo = m;
                break;
            }
        }
        if lo == hi {
            eigs.push(h[(hi, hi)]);
            stuck = 0;
            if hi == 0 {
                break;
            }
            hi -= 1;
            if hi == 0 {
                eigs.push(h[(0, 0)]);
                break;
            }
            continue;
        }
        if lo + 1 == hi {
            let (l1, l2) = eig2(h[(lo, lo)], h[(lo, hi)], h[(hi, lo)], h[(hi, hi)]);
            eigs.push(l1);
            eigs.push(l2);
            stuck = 0;
            if lo == 0 {
                break;
            }
            hi = lo - 1;
            if hi == 0 {
                eigs.push(h[(0, 0)]);
                break;
            }
            continue;
        }
        sweeps_total += 1;
        stuck += 1;
        if sweeps_total > budget {
            return Err(DqError::QrNoConvergence);
        }
        // Wilkinson shift from the trailing 2x2; exceptional shift when stuck
        let shift = if stuck % 11 == 10 {
            h[(hi, hi)] + Complex64::new(0.75 * h[(hi, hi - 1)].norm(), 0.0)
        } else {
            let (_, near) = eig2(
                h[(hi - 1, hi - 1)],
                h[(hi - 1, hi)],
                h[(hi, hi - 1)],
                h[(hi, hi)],
            );
            near
        };
        // explicit QR step on the block: H - sI = QR, H <- RQ + sI
        for i in lo..=hi {
            h[(i, i)] -= shift;
        }
        let mut rots = Vec::with_capacity(hi - lo);
        for k in lo..hi {
            let (c, s) = givens(h[(k, k)], h[(k + 1, k)]);
            rots.push((c, s));
            for j in k..=hi {
                let a = h[(k, j)];
                let b = h[(k + 1, j)];
                h[(k, j)] = a * c + b * s;
                h[(k + 1, j)] = -a * s.conj() + b * c;
            }
        }
        for (k, &(c, s)) in (lo..hi).zip(&rots) {
            let top = (k + 2).min(hi);
            for i in lo..=top {
                let a = h[(i, k)];
                let b = h[(i, k + 1)];
                h[(i, k)] = a * c + b * s.conj();
                h[(i, k + 1)] = -a * s + b * c;
            }
        }
        for i in lo..=hi {
            h[(i, i)] += shift;
        }
    }
    Ok(eigs)
}

// ---------------------------------------------------------------------------
// Rank via column-pivoted QR
// ---------------------------------------------------------------------------

/// Numerical rank of a complex matrix from column-pivoted Householder QR:
/// the count of `|R_ii|` above `tol`. `|R_ii|` values serve as singular-value
/// proxies.
pub fn qr_rank(m: &CMatrix, tol: f64) -> usize {
    let n = m.n;
    let mut a = m.clone();
    let mut rank = 0;
    for k in 0..n {
        // pivot: column with largest remaining norm
        let mut best = k;
        let mut best_norm = 0.0;
        for j in k..n {
            let cn: f64 = (k..n).map(|i| a[(i, j)].norm_sqr()).sum();
            if cn > best_norm {
                best_norm = cn;
                best = j;
            }
        }
        let rkk = best_norm.sqrt();
        if rkk <= tol {
            break;
        }
        if best != k {
            for i in 0..n {
                let t = a[(i, k)];
                a[(i, k)] = a[(i, best)];
                a[(i, best)] = t;
            }
        }
        rank += 1;
        // Householder reflector for column k
        let x0 = a[(k, k)];
        let phase = if x0.norm() == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            x0 / x0.norm()
        };
        let alpha = -phase * rkk;
        let mut v: Vec<Complex64> = (k..n).map(|i| a[(i, k)]).collect();
        v[0] -= alpha;
        let vnorm_sq: f64 = v.iter().map(|c| c.norm_sqr()).sum();
        if vnorm_sq == 0.0 {
            continue;
        }
        let beta = 2.0 / vnorm_sq;
        for j in k..n {
            let mut dot = Complex64::new(0.0, 0.0);
            for (t, vi) in v.iter().enumerate() {
                dot += vi.conj() * a[(k + t, j)];
            }
            let dot = dot * beta;
            for (t, vi) in v.iter().enumerate() {
                let upd = *vi * dot;
                a[(k + t, j)] -= upd;
            }
        }
    }
    rank
}

// ---------------------------------------------------------------------------
// Standard eigenvalues and assumption verdicts
// ---------------------------------------------------------------------------

/// Standard eigenvalues of a dual quaternion matrix: the adjoint spectrum
/// folded by conjugation, keeping the representative with nonnegative
/// imaginary part. Each quaternionic multiplicity contributes one entry; the
/// adjoint's conjugate-closed pairs are matched greedily.
pub fn standard_eigs(a: &DQMatrix) -> Result<Vec<Complex64>> {
    let adj = complex_adjoint_std(a);
    let mut pool = complex_eigs(&adj)?;
    let scale = pool
        .iter()
        .map(|c| c.norm())
        .fold(0.0f64, f64::max)
        .max(1.0);
    let pair_tol = 1e-6 * scale;
    let mut out = Vec::with_capacity(pool.len() / 2);
    while let Some(lam) = pool.pop() {
        let target = lam.conj();
        let mut best = 0;
        let mut best_d = f64::INFINITY;
        for (i, c) in pool.iter().enumerate() {
            let d = (c - target).norm();
            if d < best_d {
                best_d = d;
                best = i;
            }
        }
        if pool.is_empty() || best_d > pair_tol {
            return Err(DqError::ConjugatePairing);
        }
        let partner = pool.swap_remove(best);
        // keep the representative with nonnegative imaginary part
        let rep = if lam.im >= 0.0 { lam } else { partner };
        let rep = if rep.im >= 0.0 { rep } else { rep.conj() };
        out.push(rep);
    }
    sort_by_dominance(&mut out);
    Ok(out)
}

fn sort_by_dominance(eigs: &mut [Complex64]) {
    eigs.sort_by(|a, b| {
        b.norm()
            .total_cmp(&a.norm())
            .then(b.re.total_cmp(&a.re))
            .then(b.im.total_cmp(&a.im))
    });
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpectrumReport {
    /// Standard eigenvalues, sorted by descending magnitude then real part.
    pub standard_eigs: Vec<Complex64>,
    /// |lambda_2s| / |lambda_1s| with lambda_2s the largest eigenvalue
    /// outside the dominant cluster (0 when the cluster is everything).
    pub gap_ratio: f64,
    pub dominant_simple: bool,
    pub alg_mult: usize,
    pub geo_mult: usize,
    pub assumption1: bool,
    pub assumption2i: bool,
    pub assumption2ii: bool,
    /// The dual-part clauses of Assumption 2 have no finite test; they are
    /// never checked here.
    pub dual_part_checked: bool,
}

/// Clusters the standard eigenvalues, estimates multiplicities of the
/// dominant one and issues the assumption verdicts.
///
/// Geometric multiplicity comes from the adjoint nullity at `lambda_1s`
/// (numerical rank tolerance `1e-8 ||M||`), halved when `lambda_1s` is real
/// because real adjoint eigenvalues carry two copies per quaternionic
/// eigenvector.
pub fn assumption_report(a: &DQMatrix, tol_cluster: f64) -> Result<SpectrumReport> {
    let eigs = standard_eigs(a)?;
    let lam1 = eigs[0];
    if lam1.norm() <= 1e-300 {
        return Err(DqError::DegenerateSpectrum);
    }
    let cluster_tol = tol_cluster * lam1.norm();
    let alg_mult = eigs.iter().filter(|e| (*e - lam1).norm() <= cluster_tol).count();
    let gap_ratio = eigs
        .iter()
        .filter(|e| (*e - lam1).norm() > cluster_tol)
        .map(|e| e.norm())
        .fold(0.0f64, f64::max)
        / lam1.norm();

    // adjoint nullity at lambda_1s
    let adj = complex_adjoint_std(a);
    let dim = adj.n;
    let mut pencil = adj.clone();
    for i in 0..dim {
        pencil[(i, i)] -= lam1;
    }
    let rank_tol = 1e-8 * adj.norm_f().max(f64::MIN_POSITIVE);
    let nullity = dim - qr_rank(&pencil, rank_tol);
    let lam1_real = lam1.im.abs() <= cluster_tol;
    let geo_mult = if lam1_real { nullity / 2 } else { nullity };

    let assumption1 = gap_ratio < 1.0 && alg_mult == geo_mult;
    let assumption2i = assumption1 && lam1_real;
    let assumption2ii = assumption1 && alg_mult == 1 && geo_mult == 1;
    Ok(SpectrumReport {
        standard_eigs: eigs,
        gap_ratio,
        dominant_simple: alg_mult == 1,
        alg_mult,
        geo_mult,
        assumption1,
        assumption2i,
        assumption2ii,
        dual_part_checked: false,
    })
}

// ---------------------------------------------------------------------------
// Analytic spectra
// ---------------------------------------------------------------------------

/// Spectrum of the balanced directed-cycle Laplacian: `{1 - e^{2 pi i k/n}}`.
pub fn analytic_cycle_spectrum(n: usize) -> Result<Vec<Complex64>> {
    if n < 3 {
        return Err(DqError::InvalidParameter(format!(
            "cycle needs n >= 3, got {n}"
        )));
    }
    let mut out: Vec<Complex64> = (0..n)
        .map(|k| {
            let t = 2.0 * PI * k as f64 / n as f64;
            Complex64::new(1.0 - t.cos(), -t.sin())
        })
        .collect();
    sort_by_dominance(&mut out);
    Ok(out)
}

/// Spectrum of the balanced wheel Laplacian: cycle on `n - 1` plus the
/// center out-degree `n - 1`.
pub fn analytic_wheel_spectrum(n: usize) -> Result<Vec<Complex64>> {
    if n < 4 {
        return Err(DqError::InvalidParameter(format!(
            "wheel needs n >= 4, got {n}"
        )));
    }
    let mut out = analytic_cycle_spectrum(n - 1)?;
    out.push(Complex64::new((n - 1) as f64, 0.0));
    sort_by_dominance(&mut out);
    Ok(out)
}

// ---------------------------------------------------------------------------
// Eigenpair verification
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EigenpairVerdict {
    pub ok: bool,
    /// `||Av - v lambda||_{2^R} / ||A||_{F^R}`.
    pub rel_residual: f64,
    /// 2-norm of the standard part of the residual (`A_s v_s = v_s lambda_s`).
    pub standard_residual: f64,
    /// 2-norm of the dual part of the residual
    /// (`A_s v_d + A_d v_s = v_s lambda_d + v_d lambda_s`).
    pub dual_residual: f64,
}

/// Checks `A v = v lambda` against a relative tolerance and reports the
/// two-equation split.
pub fn verify_eigenpair(
    a: &DQMatrix,
    v: &DQVector,
    lambda: &DualQuaternion,
    tol: f64,
) -> Result<EigenpairVerdict> {
    if v.standard_norm() <= crate::dual::APPRECIABLE_TOL {
        return Err(DqError::NotAppreciable);
    }
    let r = a.matvec(v)?.sub(&v.scale_right(lambda));
    let rel = r.norm2r() / a.norm_fr().max(f64::MIN_POSITIVE);
    Ok(EigenpairVerdict {
        ok: rel <= tol,
        rel_residual: rel,
        standard_residual: r.standard_norm(),
        dual_residual: r.dual_norm(),
    })
}
