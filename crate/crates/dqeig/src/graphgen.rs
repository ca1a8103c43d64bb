//! Test-matrix families: balanced unit-dual-quaternion directed cycle and
//! wheel Laplacians, prescribed-spectrum matrices and Jordan-block stress
//! matrices.

use crate::dual::{DualComplex, DualQuaternion};
use crate::error::{DqError, Result};
use crate::linalg::DQMatrix;
use crate::quaternion::Quaternion;
use rand::Rng;
use rand_distr::StandardNormal;

/// Directed graph with unit dual quaternion arc weights.
#[derive(Clone, Debug)]
pub struct Udqdg {
    pub n: usize,
    pub arcs: Vec<(usize, usize, DualQuaternion)>,
    pub out_degree: Vec<usize>,
    /// Vertex gauges when the graph was built balanced:
    /// `weight(i, j) = gauges[i]* gauges[j]`.
    pub gauges: Option<Vec<DualQuaternion>>,
}

impl Udqdg {
    /// Laplacian `L = D - A` with out-degrees on the diagonal.
    pub fn laplacian(&self) -> DQMatrix {
        let mut l = DQMatrix::zeros(self.n, self.n);
        for i in 0..self.n {
            l[(i, i)] = DualQuaternion::from_standard(Quaternion::real(self.out_degree[i] as f64));
        }
        for &(i, j, w) in &self.arcs {
            l[(i, j)] = l[(i, j)] - w;
        }
        l
    }
}

fn gaussian_quaternion<R: Rng>(rng: &mut R) -> Quaternion {
    Quaternion::new(
        rng.sample(StandardNormal),
        rng.sample(StandardNormal),
        rng.sample(StandardNormal),
        rng.sample(StandardNormal),
    )
}

/// Random unit dual quaternion: standard part uniform on the 3-sphere, dual
/// part a Gaussian projected so that `sc(q_s* q_d) = 0`.
pub fn rand_unit_dq<R: Rng>(rng: &mut R) -> DualQuaternion {
    let mut s = gaussian_quaternion(rng);
    let mut n = s.abs();
    // astronomically unlikely, but keep the normalization well-defined
    while n < 1e-100 {
        s = gaussian_quaternion(rng);
        n = s.abs();
    }
    let s = s.scale(1.0 / n);
    let g = gaussian_quaternion(rng);
    let d = g - s.scale((s.conj() * g).w);
    DualQuaternion::new(s, d)
}

fn gauge_weight(u: &[DualQuaternion], i: usize, j: usize) -> DualQuaternion {
    u[i].conj() * u[j]
}

/// Directed cycle `1 -> 2 -> ... -> n -> 1` with unit weights; the balanced
/// variant fixes the first gauge to the identity so the closing weight is the
/// reversed conjugate product of the others.
pub fn cycle_laplacian<R: Rng>(n: usize, rng: &mut R, balanced: bool) -> Result<(Udqdg, DQMatrix)> {
    if n < 3 {
        return Err(DqError::InvalidParameter(format!(
            "cycle needs n >= 3, got {n}"
        )));
    }
    let (arcs, gauges) = if balanced {
        let mut u = vec![DualQuaternion::ONE];
        for _ in 1..n {
            u.push(rand_unit_dq(rng));
        }
        let arcs = (0..n)
            .map(|i| (i, (i + 1) % n, gauge_weight(&u, i, (i + 1) % n)))
            .collect();
        (arcs, Some(u))
    } else {
        let arcs = (0..n)
            .map(|i| (i, (i + 1) % n, rand_unit_dq(rng)))
            .collect();
        (arcs, None)
    };
    let g = Udqdg {
        n,
        arcs,
        out_degree: vec![1; n],
        gauges,
    };
    let l = g.laplacian();
    Ok((g, l))
}

/// Wheel on `n` vertices: a directed cycle on the `n - 1` rim vertices plus a
/// center (last index) with arcs to every rim vertex.
pub fn wheel_laplacian<R: Rng>(n: usize, rng: &mut R, balanced: bool) -> Result<(Udqdg, DQMatrix)> {
    if n < 4 {
        return Err(DqError::InvalidParameter(format!(
            "wheel needs n >= 4, got {n}"
        )));
    }
    let rim = n - 1;
    let center = n - 1;
    let gauges = if balanced {
        let mut u = vec![DualQuaternion::ONE];
        for _ in 1..n {
            u.push(rand_unit_dq(rng));
        }
        Some(u)
    } else {
        None
    };
    let weight = |rng: &mut R, i: usize, j: usize| match &gauges {
        Some(u) => gauge_weight(u, i, j),
        None => rand_unit_dq(rng),
    };
    let mut arcs = Vec::with_capacity(2 * rim);
    for i in 0..rim {
        let w = weight(rng, i, (i + 1) % rim);
        arcs.push((i, (i + 1) % rim, w));
    }
    for j in 0..rim {
        let w = weight(rng, center, j);
        arcs.push((center, j, w));
    }
    let mut out_degree = vec![1; rim];
    out_degree.push(rim);
    let g = Udqdg {
        n,
        arcs,
        out_degree,
        gauges,
    };
    let l = g.laplacian();
    Ok((g, l))
}

const MAX_TRANSFORM_ATTEMPTS: usize = 10;
const MAX_CONDITION: f64 = 1e4;

/// Random dual quaternion matrix with well-conditioned standard part,
/// together with its inverse. Re-samples up to 10 times.
fn random_transform<R: Rng>(n: usize, rng: &mut R) -> Result<(DQMatrix, DQMatrix)> {
    for _ in 0..MAX_TRANSFORM_ATTEMPTS {
        let mut p = DQMatrix::zeros(n, n);
        for e in p.data.iter_mut() {
            *e = DualQuaternion::new(gaussian_quaternion(rng), gaussian_quaternion(rng));
        }
        let ps = p.standard_part();
        let psi = match ps.inverse() {
            Ok(m) => m,
            Err(_) => continue,
        };
        if ps.norm_f() * psi.norm_f() > MAX_CONDITION {
            continue;
        }
        let pinv = p.inverse()?;
        return Ok((p, pinv));
    }
    Err(DqError::GenerationFailed {
        attempts: MAX_TRANSFORM_ATTEMPTS,
    })
}

/// Diagonalizable matrix with prescribed dual complex right eigenvalues:
/// `A = P diag(eigs) P^{-1}`; the columns of the returned transform `P` are
/// the corresponding eigenvectors.
pub fn prescribed_spectrum_matrix<R: Rng>(
    eigs: &[DualComplex],
    rng: &mut R,
) -> Result<(DQMatrix, DQMatrix)> {
    if eigs.is_empty() {
        return Err(DqError::InvalidParameter("empty eigenvalue list".into()));
    }
    let n = eigs.len();
    let (p, pinv) = random_transform(n, rng)?;
    let mut d = DQMatrix::zeros(n, n);
    for (i, e) in eigs.iter().enumerate() {
        d[(i, i)] = e.to_dual_quaternion();
    }
    let a = p.mul(&d)?.mul(&pinv)?;
    Ok((a, p))
}

/// Non-diagonalizable stress matrix: standard part similar to
/// `diag(1.1+1.1i, J_{n21}(1+i), (1+i) I)`, dual part similar to `I`.
pub fn jordan_experiment_matrix<R: Rng>(n: usize, n21: usize, rng: &mut R) -> Result<DQMatrix> {
    if n21 < 1 || n21 > n - 1 {
        return Err(DqError::InvalidParameter(format!(
            "need 1 <= n21 <= n-1, got n21={n21}, n={n}"
        )));
    }
    let lam = Quaternion::new(1.0, 1.0, 0.0, 0.0);
    let mut bs = crate::linalg::QMatrix::zeros(n, n);
    bs[(0, 0)] = Quaternion::new(1.1, 1.1, 0.0, 0.0);
    for i in 1..n {
        bs[(i, i)] = lam;
    }
    for i in 1..n21 {
        bs[(i, i + 1)] = Quaternion::ONE;
    }
    let b = DQMatrix::from_parts(&bs, &crate::linalg::QMatrix::identity(n))?;
    let (p, pinv) = random_transform(n, rng)?;
    pinv.mul(&b)?.mul(&p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::residual_2r;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    #[test]
    fn unit_invariant_and_determinism() {
        let mut r = rng(42);
        let q = rand_unit_dq(&mut r);
        assert!(q.is_unit(1e-12));
        let q2 = rand_unit_dq(&mut rng(42));
        assert_eq!(q, q2);
        // sphere symmetry: component means of q_s vanish
        let mut r = rng(7);
        let mut mean = [0.0; 4];
        let n = 10_000;
        for _ in 0..n {
            let q = rand_unit_dq(&mut r);
            mean[0] += q.s.w;
            mean[1] += q.s.x;
            mean[2] += q.s.y;
            mean[3] += q.s.z;
        }
        for m in mean {
            assert!((m / n as f64).abs() < 0.05);
        }
    }

    #[test]
    fn cycle_structure_and_balance() {
        let (g, l) = cycle_laplacian(3, &mut rng(1), true).unwrap();
        for i in 0..3 {
            assert_eq!(l[(i, i)], DualQuaternion::ONE);
        }
        for &(i, j, w) in &g.arcs {
            assert!(w.is_unit(1e-12));
            assert_eq!(l[(i, j)], -w);
        }
        // product of weights around the cycle is the identity
        let prod = g.arcs[0].2 * g.arcs[1].2 * g.arcs[2].2;
        assert!((prod - DualQuaternion::ONE).norm2r() < 1e-12);

        assert!(cycle_laplacian(2, &mut rng(1), true).is_err());
    }

    #[test]
    fn balanced_laplacian_is_gauge_similar() {
        // L = U* L_under U with U = diag(gauges)
        let (g, l) = cycle_laplacian(5, &mut rng(3), true).unwrap();
        let u = g.gauges.as_ref().unwrap();
        let mut under = DQMatrix::zeros(5, 5);
        for i in 0..5 {
            under[(i, i)] = DualQuaternion::ONE;
            under[(i, (i + 1) % 5)] = -DualQuaternion::ONE;
        }
        let mut udiag = DQMatrix::zeros(5, 5);
        for i in 0..5 {
            udiag[(i, i)] = u[i];
        }
        let sim = udiag.conj_transpose().mul(&under).unwrap().mul(&udiag).unwrap();
        assert!(sim.sub(&l).norm_fr() < 1e-10);
    }

    #[test]
    fn wheel_structure() {
        let (g, l) = wheel_laplacian(5, &mut rng(2), true).unwrap();
        assert_eq!(g.out_degree, vec![1, 1, 1, 1, 4]);
        assert_eq!(
            l[(4, 4)],
            DualQuaternion::from_standard(Quaternion::real(4.0))
        );
        // rim rows never reference the center column
        for i in 0..4 {
            assert_eq!(l[(i, 4)], DualQuaternion::ZERO);
        }
        // every directed cycle passes through the rim only; gauge weights
        // multiply to the identity around it
        let rim: DualQuaternion = (0..4).fold(DualQuaternion::ONE, |acc, i| {
            acc * g.arcs[i].2
        });
        assert!((rim - DualQuaternion::ONE).norm2r() < 1e-12);
        assert!(wheel_laplacian(3, &mut rng(2), true).is_err());
    }

    #[test]
    fn prescribed_eigenpairs_verify() {
        let eigs = vec![
            DualComplex::from_parts(2.0, 0.0, 1.0, 0.0),
            DualComplex::from_parts(1.0, 0.0, 1.0, 0.0),
        ];
        let (a, p) = prescribed_spectrum_matrix(&eigs, &mut rng(11)).unwrap();
        for (i, e) in eigs.iter().enumerate() {
            let v = p.column(i);
            let res = residual_2r(&a, &v, &e.to_dual_quaternion()).unwrap();
            assert!(res / a.norm_fr() < 1e-8, "column {i}: residual {res}");
        }
        assert!(prescribed_spectrum_matrix(&[], &mut rng(0)).is_err());
    }

    #[test]
    fn jordan_matrix_shape() {
        let a = jordan_experiment_matrix(6, 3, &mut rng(5)).unwrap();
        assert_eq!(a.nrows, 6);
        // similarity preserves the trace of the standard part
        let tr: Quaternion = (0..6).fold(Quaternion::ZERO, |acc, i| acc + a[(i, i)].s);
        // expected: 1.1+1.1i plus five copies of 1+i (scalar parts)
        assert!((tr.w - 6.1).abs() < 1e-8);
        assert!(jordan_experiment_matrix(6, 0, &mut rng(5)).is_err());
        assert!(jordan_experiment_matrix(6, 6, &mut rng(5)).is_err());
    }

    #[test]
    fn generators_are_deterministic() {
        let (_, l1) = cycle_laplacian(7, &mut rng(99), true).unwrap();
        let (_, l2) = cycle_laplacian(7, &mut rng(99), true).unwrap();
        assert_eq!(l1, l2);
    }
}
