//! Acceptance suite: one test per criterion, each printing a single
//! `criterion N: PASS/FAIL` line (run with `--nocapture` to see the lines for
//! passing tests as well).

use dqeig::cli::default_v0;
use dqeig::dcam::{adjoint, embed};
use dqeig::dual::{DualComplex, DualQuaternion};
use dqeig::eig::{dcam_power_method, estimate_rate, power_method, SolverConfig, Status};
use dqeig::graphgen::{
    cycle_laplacian, jordan_experiment_matrix, prescribed_spectrum_matrix, wheel_laplacian,
};
use dqeig::linalg::{DQMatrix, DQVector, QMatrix};
use dqeig::oracle::{assumption_report, standard_eigs};
use dqeig::quaternion::Quaternion;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use std::time::Instant;

fn report(n: usize, ok: bool, detail: &str) {
    println!(
        "criterion {n}: {} — {detail}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "criterion {n} failed: {detail}");
}

fn gauss_quat<R: Rng>(rng: &mut R) -> Quaternion {
    Quaternion::new(
        rng.sample(StandardNormal),
        rng.sample(StandardNormal),
        rng.sample(StandardNormal),
        rng.sample(StandardNormal),
    )
}

fn gauss_dq<R: Rng>(rng: &mut R) -> DualQuaternion {
    DualQuaternion::new(gauss_quat(rng), gauss_quat(rng))
}

fn gauss_matrix<R: Rng>(n: usize, rng: &mut R) -> DQMatrix {
    let mut a = DQMatrix::zeros(n, n);
    for e in a.data.iter_mut() {
        *e = gauss_dq(rng);
    }
    a
}

fn gauss_vector<R: Rng>(n: usize, rng: &mut R) -> DQVector {
    DQVector::from_entries((0..n).map(|_| gauss_dq(rng)).collect())
}

// 1. Algebra law suite: 1e4 randomized checks within 1e-11 relative, < 5 s.
#[test]
fn criterion_1_algebra_laws() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut worst: f64 = 0.0;
    for _ in 0..10_000 {
        let p = gauss_dq(&mut rng);
        let q = gauss_dq(&mut rng);
        let r = gauss_dq(&mut rng);

        let assoc = ((p * q) * r - p * (q * r)).norm2r()
            / (1.0 + (p * (q * r)).norm2r());
        worst = worst.max(assoc);

        let anti = ((p * q).conj() - q.conj() * p.conj()).norm2r()
            / (1.0 + (p * q).norm2r());
        worst = worst.max(anti);

        let mp = (p * q).magnitude();
        let ms = p.magnitude() * q.magnitude();
        let mag = ((mp.s - ms.s).abs() + (mp.d - ms.d).abs()) / (1.0 + mp.s.abs() + mp.d.abs());
        worst = worst.max(mag);

        // inverse round trip on an appreciable scalar
        let mut a = gauss_dq(&mut rng);
        while a.s.abs() < 0.3 {
            a = gauss_dq(&mut rng);
        }
        let inv = a.inv().unwrap();
        let round = (a * inv - DualQuaternion::ONE).norm2r()
            / (1.0 + a.norm2r() * inv.norm2r());
        worst = worst.max(round);
    }
    let elapsed = start.elapsed().as_secs_f64();
    report(
        1,
        worst < 1e-11 && elapsed < 5.0,
        &format!("worst relative error {worst:.2e}, elapsed {elapsed:.2}s"),
    );
}

// 2. DCAM suite: homomorphism + intertwining on 1e3 random 4x4 within 1e-11;
// eigenpair correspondence through the adjoint with residual <= 1e-9.
#[test]
fn criterion_2_dcam_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    let mut worst: f64 = 0.0;
    for _ in 0..1_000 {
        let a = gauss_matrix(4, &mut rng);
        let b = gauss_matrix(4, &mut rng);
        let v = gauss_vector(4, &mut rng);

        let lhs = adjoint(&a.mul(&b).unwrap());
        let rhs = adjoint(&a).mul(&adjoint(&b)).unwrap();
        let mut scale: f64 = 1.0;
        let mut err: f64 = 0.0;
        for (x, y) in lhs.data.iter().zip(&rhs.data) {
            err = err.max((*x - *y).norm2r());
            scale = scale.max(y.norm2r());
        }
        worst = worst.max(err / scale);

        let lhs = adjoint(&a).matvec(&embed(&v)).unwrap();
        let rhs = embed(&a.matvec(&v).unwrap());
        worst = worst.max(lhs.sub(&rhs).norm2r() / (1.0 + rhs.norm2r()));
    }

    // Theorem 2.2: a dual complex eigenpair of A maps to an adjoint eigenpair
    let eigs: Vec<DualComplex> = vec![
        DualComplex::from_parts(1.7, 0.3, 1.0, 0.0),
        DualComplex::from_parts(0.9, -0.2, 0.5, 0.1),
        DualComplex::from_parts(0.4, 0.0, 0.0, 1.0),
    ];
    let (a, p) = prescribed_spectrum_matrix(&eigs, &mut rng).unwrap();
    let b = adjoint(&a);
    let mut corr_worst: f64 = 0.0;
    let mut orth_worst: f64 = 0.0;
    for (i, lam) in eigs.iter().enumerate() {
        let v = p.column(i).normalize().unwrap();
        let u = embed(&v);
        let res = b.matvec(&u).unwrap().sub(&u.scale(lam)).norm2r();
        corr_worst = corr_worst.max(res / (1.0 + b.data.iter().map(|e| e.norm2r()).sum::<f64>()));
        // the paired adjoint eigenvector images are orthogonal
        let vj = v.scale_right(&DualQuaternion::from_standard(Quaternion::J));
        orth_worst = orth_worst.max(u.inner(&embed(&vj)).norm2r());
    }
    report(
        2,
        worst < 1e-11 && corr_worst < 1e-9 && orth_worst < 1e-11,
        &format!(
            "structure {worst:.2e}, eigenpair correspondence {corr_worst:.2e}, orthogonality {orth_worst:.2e}"
        ),
    );
}

// 3. Balanced even cycle: both solvers converge on the 4-cycle Laplacian,
// dominant standard eigenvalue 2, rate sqrt(2)/2 +/- 0.05.
#[test]
fn criterion_3_even_cycle() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let (_, l) = cycle_laplacian(4, &mut rng, true).unwrap();
    let v0 = default_v0(4, 4);
    let cfg = SolverConfig::default();
    let pm = power_method(&l, &v0, &cfg).unwrap();
    let dc = dcam_power_method(&l, &v0, &cfg).unwrap();
    let target = 2f64.sqrt() / 2.0;
    let mut ok = true;
    let mut detail = String::new();
    for (name, r) in [("pm", &pm), ("dcam-pm", &dc)] {
        let rate = estimate_rate(&r.trace).unwrap_or(f64::NAN);
        let lam = r.eigenvalue.class_rep().unwrap();
        let lam_err = (lam.s - Complex64::new(2.0, 0.0)).norm();
        ok &= r.status == Status::Converged
            && r.iterations <= 200
            && r.final_residual().unwrap() <= 1e-10
            && lam_err < 1e-7
            && (rate - target).abs() <= 0.05;
        detail.push_str(&format!(
            "{name}: {:?}/{} iters, lambda_s err {lam_err:.1e}, rate {rate:.3}; ",
            r.status, r.iterations
        ));
    }
    report(3, ok, &detail);
}

// 4. Balanced odd cycle: both solvers hit MaxIter with residual > 1e-3.
#[test]
fn criterion_4_odd_cycle() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let (_, l) = cycle_laplacian(3, &mut rng, true).unwrap();
    let v0 = default_v0(3, 4);
    let cfg = SolverConfig::default();
    let pm = power_method(&l, &v0, &cfg).unwrap();
    let dc = dcam_power_method(&l, &v0, &cfg).unwrap();
    let ok = pm.status == Status::MaxIter
        && dc.status == Status::MaxIter
        && pm.iterations == 1000
        && dc.iterations == 1000
        && pm.final_residual().unwrap() > 1e-3
        && dc.final_residual().unwrap() > 1e-3;
    report(
        4,
        ok,
        &format!(
            "pm {:?} res {:.2e}, dcam {:?} res {:.2e}",
            pm.status,
            pm.final_residual().unwrap(),
            dc.status,
            dc.final_residual().unwrap()
        ),
    );
}

// 5. Wheels: PM converges with dominant eigenvalue n-1; rates sqrt(3)/3
// (n=4) and 1/2 (n=5).
#[test]
fn criterion_5_wheels() {
    let cfg = SolverConfig::default();
    let mut ok = true;
    let mut detail = String::new();
    for (n, target) in [(4usize, 3f64.sqrt() / 3.0), (5, 0.5)] {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let (_, l) = wheel_laplacian(n, &mut rng, true).unwrap();
        let v0 = default_v0(n, 4);
        let r = power_method(&l, &v0, &cfg).unwrap();
        let lam = r.eigenvalue.class_rep().unwrap();
        let lam_err = (lam.s - Complex64::new((n - 1) as f64, 0.0)).norm();
        let rate = estimate_rate(&r.trace).unwrap_or(f64::NAN);
        ok &= r.status == Status::Converged && lam_err < 1e-7 && (rate - target).abs() <= 0.05;
        detail.push_str(&format!(
            "n={n}: {:?}, lambda_s err {lam_err:.1e}, rate {rate:.3} (target {target:.3}); ",
            r.status
        ));
    }
    report(5, ok, &detail);
}

// 6. Table 1: spectrum {1.5+eps, 1+eps, ...} for n in {10, 50, 100}; PM in
// 62 +/- 12 iterations, DCAM-PM in 68 +/- 14; eigenvalues agree within 1e-8
// after class normalization; < 10 s total.
#[test]
fn criterion_6_table1() {
    let start = Instant::now();
    let cfg = SolverConfig::default();
    let mut ok = true;
    let mut detail = String::new();
    for n in [10usize, 50, 100] {
        let mut eigs = vec![DualComplex::from_parts(1.5, 0.0, 1.0, 0.0)];
        eigs.resize(n, DualComplex::from_parts(1.0, 0.0, 1.0, 0.0));
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let (a, _) = prescribed_spectrum_matrix(&eigs, &mut rng).unwrap();
        let v0 = default_v0(n, 2);
        let pm = power_method(&a, &v0, &cfg).unwrap();
        let dc = dcam_power_method(&a, &v0, &cfg).unwrap();
        // the dominant eigenvalue 1.5 + eps has a real standard part, so the
        // full class representative is undefined; compare the similarity
        // invariants that are: the scalar parts and the standard vector
        // magnitude
        let (ra, rb) = (pm.eigenvalue, dc.eigenvalue);
        let vec_norm = |q: &Quaternion| {
            let [x, y, z] = q.vector();
            (x * x + y * y + z * z).sqrt()
        };
        let agree = (ra.s.scalar() - rb.s.scalar())
            .abs()
            .max((vec_norm(&ra.s) - vec_norm(&rb.s)).abs())
            .max((ra.d.scalar() - rb.d.scalar()).abs());
        ok &= pm.status == Status::Converged
            && dc.status == Status::Converged
            && pm.final_residual().unwrap() <= 1e-10
            && dc.final_residual().unwrap() <= 1e-10
            && (50..=74).contains(&pm.iterations)
            && (54..=82).contains(&dc.iterations)
            && agree <= 1e-8;
        detail.push_str(&format!(
            "n={n}: pm {} iters, dcam {} iters, agreement {agree:.1e}; ",
            pm.iterations, dc.iterations
        ));
    }
    let elapsed = start.elapsed().as_secs_f64();
    ok &= elapsed < 10.0;
    detail.push_str(&format!("elapsed {elapsed:.2}s"));
    report(6, ok, &detail);
}

/// Runs the normalized power iteration manually, returning the per-iteration
/// `(v, lambda)` pairs (v is the iterate lambda was formed from).
fn pm_iterates(a: &DQMatrix, v0: &DQVector, k: usize) -> Vec<(DQVector, DualQuaternion)> {
    let mut v = v0.normalize().unwrap();
    let mut out = Vec::with_capacity(k);
    for _ in 0..k {
        let y = a.matvec(&v).unwrap();
        let lam = v.inner(&y);
        out.push((v.clone(), lam));
        v = y.normalize().unwrap();
    }
    out
}

// 7. Assumption-necessity fixtures fail(iii)/(iv)/(v).
#[test]
fn criterion_7_failure_fixtures() {
    let cfg = SolverConfig::default();
    let mut ok = true;
    let mut detail = String::new();

    // fail(iii): A = iI + iI eps, v0 = [1 + eps, j]; iterates 4-periodic in
    // the standard part.
    let ie = DualQuaternion::new(Quaternion::I, Quaternion::I);
    let mut a3 = DQMatrix::zeros(2, 2);
    a3[(0, 0)] = ie;
    a3[(1, 1)] = ie;
    let v03 = DQVector::from_entries(vec![
        DualQuaternion::new(Quaternion::ONE, Quaternion::ONE),
        DualQuaternion::from_standard(Quaternion::J),
    ]);
    let r3 = power_method(&a3, &v03, &cfg).unwrap();
    let iters = pm_iterates(&a3, &v03, 24);
    let mut period_err: f64 = 0.0;
    for k in 0..20 {
        let diff: f64 = iters[k]
            .0
            .entries
            .iter()
            .zip(&iters[k + 4].0.entries)
            .map(|(x, y)| (x.s - y.s).norm_sqr())
            .sum::<f64>()
            .sqrt();
        period_err = period_err.max(diff);
    }
    ok &= r3.status == Status::MaxIter && period_err <= 1e-10;
    detail.push_str(&format!(
        "fail(iii): {:?}, 4-period err {period_err:.1e}; ",
        r3.status
    ));

    // fail(iv): lambda stays 1 + (5/3) eps.
    let mut ad = QMatrix::zeros(3, 3);
    ad[(0, 0)] = Quaternion::real(2.0);
    ad[(1, 1)] = Quaternion::ONE;
    ad[(1, 2)] = Quaternion::ONE;
    ad[(2, 2)] = Quaternion::ONE;
    let a4 = DQMatrix::from_parts(&QMatrix::identity(3), &ad).unwrap();
    let v04 = DQVector::from_entries(vec![DualQuaternion::ONE; 3]);
    let r4 = power_method(&a4, &v04, &cfg).unwrap();
    let lam_err = (r4.eigenvalue
        - DualQuaternion::new(Quaternion::ONE, Quaternion::real(5.0 / 3.0)))
    .norm2r();
    ok &= r4.status == Status::MaxIter && lam_err <= 1e-10;
    detail.push_str(&format!(
        "fail(iv): {:?}, lambda err {lam_err:.1e}; ",
        r4.status
    ));

    // fail(v): lambda^(k) = 1 always; the iterate dual part grows linearly.
    let mut ad = QMatrix::zeros(2, 2);
    ad[(0, 0)] = Quaternion::I;
    ad[(1, 1)] = Quaternion::I;
    let a5 = DQMatrix::from_parts(&QMatrix::identity(2), &ad).unwrap();
    let v05 = DQVector::from_entries(vec![
        DualQuaternion::ONE,
        DualQuaternion::from_standard(Quaternion::J),
    ]);
    let r5 = power_method(&a5, &v05, &cfg).unwrap();
    let iters = pm_iterates(&a5, &v05, 100);
    let mut lam_worst: f64 = 0.0;
    for (_, lam) in &iters {
        lam_worst = lam_worst.max((*lam - DualQuaternion::ONE).norm2r());
    }
    // least-squares slope of ||v_d^(k)|| against k
    let pts: Vec<(f64, f64)> = iters
        .iter()
        .enumerate()
        .map(|(k, (v, _))| (k as f64, v.dual_norm()))
        .collect();
    let n = pts.len() as f64;
    let (sx, sy): (f64, f64) = pts.iter().fold((0.0, 0.0), |a, p| (a.0 + p.0, a.1 + p.1));
    let (sxx, sxy): (f64, f64) = pts
        .iter()
        .fold((0.0, 0.0), |a, p| (a.0 + p.0 * p.0, a.1 + p.0 * p.1));
    let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    // closed form: v^(k) dual norm = k, slope 1
    ok &= r5.status == Status::MaxIter && lam_worst <= 1e-12 && (slope - 1.0).abs() <= 0.05;
    detail.push_str(&format!(
        "fail(v): {:?}, lambda dev {lam_worst:.1e}, growth slope {slope:.3}",
        r5.status
    ));

    report(7, ok, &detail);
}

// 8. Fig. 5: spectrum {2+i+eps, 1+i+eps, ...} (n=10): PM converges at rate
// 1/2 +/- 0.05; DCAM-PM never drops below 1e-3.
#[test]
fn criterion_8_fig5() {
    let mut eigs = vec![DualComplex::from_parts(2.0, 1.0, 1.0, 0.0)];
    eigs.resize(10, DualComplex::from_parts(1.0, 1.0, 1.0, 0.0));
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (a, _) = prescribed_spectrum_matrix(&eigs, &mut rng).unwrap();
    let v0 = default_v0(10, 1);
    let cfg = SolverConfig::default();
    let pm = power_method(&a, &v0, &cfg).unwrap();
    let rate = estimate_rate(&pm.trace).unwrap_or(f64::NAN);
    let dc = dcam_power_method(&a, &v0, &cfg).unwrap();
    let dc_min = dc.trace.iter().cloned().fold(f64::INFINITY, f64::min);
    let ok = pm.status == Status::Converged
        && (rate - 0.5).abs() <= 0.05
        && dc.status == Status::MaxIter
        && dc_min > 1e-3;
    report(
        8,
        ok,
        &format!(
            "pm {:?} rate {rate:.3} (pinned 0.5±0.05; theory |λ2s|/|λ1s| = {:.3}), dcam {:?} min residual {dc_min:.2e}",
            pm.status,
            (2f64 / 5.0).sqrt(),
            dc.status
        ),
    );
}

// 9. Fig. 6: jordan matrices, n21 in {1,3,6,9}, same seed: every run reaches
// its residual floor at the dominant eigenvalue, and both the pre-convergence
// peak and the floor are nondecreasing in n21.
//
// "Converges" is pinned as: solver status Converged, or the residual floor
// (minimum over a full 1000-iteration run) <= 1e-6 with the class
// representative within 1e-3 of 1.1+1.1i — the floor sits above delta for
// large Jordan blocks by design, which is the very effect being reproduced.
#[test]
fn criterion_9_jordan() {
    let cfg = SolverConfig::default();
    let mut ok = true;
    let mut maxes = Vec::new();
    let mut floors = Vec::new();
    let mut detail = String::new();
    for n21 in [1usize, 3, 6, 9] {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let a = jordan_experiment_matrix(10, n21, &mut rng).unwrap();
        let v0 = default_v0(10, 0);
        let run = power_method(&a, &v0, &cfg).unwrap();
        let full = power_method(&a, &v0, &SolverConfig { tol: 0.0, ..cfg }).unwrap();
        let peak = full.trace.iter().cloned().fold(0.0f64, f64::max);
        let floor = full.trace.iter().cloned().fold(f64::INFINITY, f64::min);
        let rep = full.eigenvalue.class_rep().unwrap();
        let lam_err = (rep.s - Complex64::new(1.1, 1.1)).norm();
        let converged =
            run.status == Status::Converged || (floor <= 1e-6 && lam_err < 1e-3);
        ok &= converged;
        maxes.push(peak);
        floors.push(floor);
        detail.push_str(&format!(
            "n21={n21}: {:?}, peak {peak:.1e}, floor {floor:.1e}; ",
            run.status
        ));
    }
    let mono = |v: &[f64]| v.windows(2).all(|w| w[1] >= w[0]);
    ok &= mono(&maxes) && mono(&floors);
    detail.push_str(&format!(
        "monotone peak {} floor {}",
        mono(&maxes),
        mono(&floors)
    ));
    report(9, ok, &detail);
}

fn fold_up(mut eigs: Vec<Complex64>) -> Vec<Complex64> {
    for e in eigs.iter_mut() {
        if e.im < 0.0 {
            *e = e.conj();
        }
    }
    eigs.sort_by(|a, b| {
        b.norm()
            .total_cmp(&a.norm())
            .then(b.re.total_cmp(&a.re))
            .then(b.im.total_cmp(&a.im))
    });
    eigs
}

// 10. Oracle cross-validation against analytic spectra and the known
// assumption classification.
#[test]
fn criterion_10_oracle() {
    let mut ok = true;
    let mut detail = String::new();
    let mut worst: f64 = 0.0;
    for n in [3usize, 4, 5, 8, 16, 33, 64] {
        let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
        let (_, l) = cycle_laplacian(n, &mut rng, true).unwrap();
        let got = standard_eigs(&l).unwrap();
        let want = fold_up(dqeig::oracle::analytic_cycle_spectrum(n).unwrap());
        for (g, w) in fold_up(got).iter().zip(&want) {
            worst = worst.max((g - w).norm());
        }
    }
    for n in [4usize, 5, 9, 17] {
        let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
        let (_, l) = wheel_laplacian(n, &mut rng, true).unwrap();
        let got = standard_eigs(&l).unwrap();
        let want = fold_up(dqeig::oracle::analytic_wheel_spectrum(n).unwrap());
        for (g, w) in fold_up(got).iter().zip(&want) {
            worst = worst.max((g - w).norm());
        }
    }
    ok &= worst <= 1e-7;
    detail.push_str(&format!("spectra worst error {worst:.1e}; "));

    // verdicts
    for n in [4usize, 6] {
        let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
        let (_, l) = cycle_laplacian(n, &mut rng, true).unwrap();
        let rep = assumption_report(&l, 1e-6).unwrap();
        ok &= rep.assumption2i;
        detail.push_str(&format!("cycle {n}: 2i={}; ", rep.assumption2i));
    }
    for n in [3usize, 5] {
        let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
        let (_, l) = cycle_laplacian(n, &mut rng, true).unwrap();
        let rep = assumption_report(&l, 1e-6).unwrap();
        ok &= !rep.assumption2i && !rep.assumption2ii;
        detail.push_str(&format!(
            "cycle {n}: 2i={} 2ii={}; ",
            rep.assumption2i, rep.assumption2ii
        ));
    }
    for n in [4usize, 5] {
        let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
        let (_, l) = wheel_laplacian(n, &mut rng, true).unwrap();
        let rep = assumption_report(&l, 1e-6).unwrap();
        ok &= rep.assumption2i;
        detail.push_str(&format!("wheel {n}: 2i={}; ", rep.assumption2i));
    }
    report(10, ok, &detail);
}
