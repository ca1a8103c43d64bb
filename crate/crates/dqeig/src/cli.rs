//! Command-line surface: generate fixtures, run solvers, verify results,
//! export spectra and plot data.

use crate::dual::{DualComplex, DualQuaternion};
use crate::eig::{dcam_power_method, estimate_rate, power_method, EigResult, SolverConfig, Status};
use crate::error::DqError;
use crate::graphgen;
use crate::io::{
    load_json, save_json, save_trace, DualQuad, EigsFile, MatrixFile, Metadata, RunSummary,
    TraceHeader, VectorFile, FORMAT_VERSION,
};
use crate::linalg::{DQMatrix, DQVector};
use crate::oracle::{assumption_report, verify_eigenpair};
use crate::quaternion::Quaternion;
use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde_json::json;
use std::path::PathBuf;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_MAX_ITER: i32 = 2;
pub const EXIT_BREAKDOWN: i32 = 3;
pub const EXIT_INPUT_ERROR: i32 = 4;

#[derive(Parser)]
#[command(name = "dqeig", about = "Dominant eigenvalues of dual quaternion matrices", version)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a test matrix and write it as JSON
    Gen {
        #[command(subcommand)]
        family: GenCommand,
    },
    /// Run a solver on a matrix file; result summary JSON on stdout
    Run(RunArgs),
    /// Check a run result against the matrix it came from
    Verify {
        #[arg(long)]
        matrix: PathBuf,
        /// RunSummary JSON produced by `run`
        #[arg(long)]
        result: PathBuf,
        /// Relative residual tolerance
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Standard-eigenvalue report with assumption verdicts, as JSON
    Spectrum {
        #[arg(long)]
        matrix: PathBuf,
        /// Relative clustering tolerance for the dominant eigenvalue
        #[arg(long, default_value_t = 1e-6)]
        cluster_tol: f64,
    },
    /// Emit two-column (iter, log10 res) text from a trace file
    Plotdata {
        #[arg(long)]
        trace: PathBuf,
    },
}

#[derive(Subcommand)]
enum GenCommand {
    /// Balanced directed cycle Laplacian
    Cycle {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Independent random weights instead of the balanced gauge form
        #[arg(long)]
        unbalanced: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Balanced wheel Laplacian (cycle on n-1 vertices plus a center)
    Wheel {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        unbalanced: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Diagonalizable matrix with prescribed dual complex eigenvalues
    Spectrum {
        /// JSON file {"eigs": [[s_re, s_im, d_re, d_im], ...]}; when --n
        /// exceeds the list length, the last eigenvalue is repeated
        #[arg(long)]
        eigs: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Jordan-block stress matrix (non-diagonalizable standard part)
    Jordan {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        n21: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algorithm {
    Pm,
    DcamPm,
}

#[derive(Parser)]
struct RunArgs {
    #[arg(value_enum)]
    algorithm: Algorithm,
    #[arg(long)]
    matrix: PathBuf,
    /// Seed for the default initial vector (Gaussian standard part)
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Initial vector file; overrides the seeded default
    #[arg(long)]
    v0: Option<PathBuf>,
    #[arg(long, default_value_t = 1000)]
    kmax: usize,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Residual trace CSV output path
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Default initial vector: seeded Gaussian standard part, zero dual part,
/// normalized.
pub fn default_v0(n: usize, seed: u64) -> DQVector {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let entries = (0..n)
        .map(|_| {
            DualQuaternion::from_standard(Quaternion::new(
                rng.sample(StandardNormal),
                rng.sample(StandardNormal),
                rng.sample(StandardNormal),
                rng.sample(StandardNormal),
            ))
        })
        .collect();
    DQVector::from_entries(entries)
        .normalize()
        .expect("Gaussian vector is appreciable almost surely")
}

fn emit_error(msg: &str) -> i32 {
    eprintln!("{}", json!({ "error": msg }));
    EXIT_INPUT_ERROR
}

fn load_matrix(path: &PathBuf) -> Result<DQMatrix, String> {
    let file: MatrixFile =
        load_json(path).map_err(|e| format!("cannot load matrix {}: {e}", path.display()))?;
    if file.format_version != FORMAT_VERSION {
        return Err(format!(
            "unsupported format_version {} in {}",
            file.format_version,
            path.display()
        ));
    }
    file.to_matrix().map_err(|e| e.to_string())
}

fn gen_command(family: GenCommand) -> Result<(), String> {
    let (matrix, metadata, out) = match family {
        GenCommand::Cycle {
            n,
            seed,
            unbalanced,
            out,
        } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (_, l) = graphgen::cycle_laplacian(n, &mut rng, !unbalanced)
                .map_err(|e| e.to_string())?;
            let meta = Metadata {
                family: Some("cycle".into()),
                seed: Some(seed),
                params: Some(json!({ "n": n, "balanced": !unbalanced })),
            };
            (l, meta, out)
        }
        GenCommand::Wheel {
            n,
            seed,
            unbalanced,
            out,
        } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (_, l) = graphgen::wheel_laplacian(n, &mut rng, !unbalanced)
                .map_err(|e| e.to_string())?;
            let meta = Metadata {
                family: Some("wheel".into()),
                seed: Some(seed),
                params: Some(json!({ "n": n, "balanced": !unbalanced })),
            };
            (l, meta, out)
        }
        GenCommand::Spectrum { eigs, n, seed, out } => {
            let file: EigsFile = load_json(&eigs)
                .map_err(|e| format!("cannot load eigenvalues {}: {e}", eigs.display()))?;
            if file.eigs.is_empty() {
                return Err("eigenvalue list is empty".into());
            }
            if n < file.eigs.len() {
                return Err(format!(
                    "--n {} is smaller than the eigenvalue list ({})",
                    n,
                    file.eigs.len()
                ));
            }
            let mut list: Vec<DualComplex> = file
                .eigs
                .iter()
                .map(|e| DualComplex::from_parts(e[0], e[1], e[2], e[3]))
                .collect();
            let last = *list.last().unwrap();
            list.resize(n, last);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (a, _) =
                graphgen::prescribed_spectrum_matrix(&list, &mut rng).map_err(|e| e.to_string())?;
            let meta = Metadata {
                family: Some("spectrum".into()),
                seed: Some(seed),
                params: Some(json!({ "n": n, "eigs": file.eigs })),
            };
            (a, meta, out)
        }
        GenCommand::Jordan { n, n21, seed, out } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = graphgen::jordan_experiment_matrix(n, n21, &mut rng)
                .map_err(|e| e.to_string())?;
            let meta = Metadata {
                family: Some("jordan".into()),
                seed: Some(seed),
                params: Some(json!({ "n": n, "n21": n21 })),
            };
            (a, meta, out)
        }
    };
    save_json(&out, &MatrixFile::from_matrix(&matrix, Some(metadata)))
        .map_err(|e| format!("cannot write {}: {e}", out.display()))
}

fn run_command(args: RunArgs) -> Result<i32, String> {
    let a = load_matrix(&args.matrix)?;
    let v0 = match &args.v0 {
        Some(path) => {
            let f: VectorFile =
                load_json(path).map_err(|e| format!("cannot load v0 {}: {e}", path.display()))?;
            let v = f.to_vector().map_err(|e| e.to_string())?;
            if v.len() != a.nrows {
                return Err(format!(
                    "v0 length {} does not match matrix size {}",
                    v.len(),
                    a.nrows
                ));
            }
            v
        }
        None => default_v0(a.nrows, args.seed),
    };
    let cfg = SolverConfig {
        k_max: args.kmax,
        tol: args.tol,
        breakdown_tol: 1e-150,
    };
    let (name, result): (&str, EigResult) = match args.algorithm {
        Algorithm::Pm => ("pm", power_method(&a, &v0, &cfg).map_err(|e| e.to_string())?),
        Algorithm::DcamPm => (
            "dcam-pm",
            dcam_power_method(&a, &v0, &cfg).map_err(|e| e.to_string())?,
        ),
    };
    if let Some(out) = &args.out {
        let header = TraceHeader {
            algorithm: name.into(),
            n: a.nrows,
            seed: args.seed,
            delta: args.tol,
            kmax: args.kmax,
            status: result.status,
            iterations: result.iterations,
            wall_time: result.wall_time,
        };
        save_trace(out, &header, &result).map_err(|e| format!("cannot write {}: {e}", out.display()))?;
    }
    let class_rep = result
        .eigenvalue
        .class_rep()
        .ok()
        .map(|r| [r.s.re, r.s.im, r.d.re, r.d.im]);
    let summary = RunSummary {
        format_version: FORMAT_VERSION,
        algorithm: name.into(),
        status: result.status,
        iterations: result.iterations,
        wall_time: result.wall_time,
        eigenvalue: DualQuad::from_dq(&result.eigenvalue),
        class_rep,
        estimated_rate: estimate_rate(&result.trace).ok(),
        final_residual: result.final_residual(),
        eigenvector: result.eigenvector.iter().map(DualQuad::from_dq).collect(),
    };
    println!(
        "{}",
        serde_json::to_string_pretty(&summary).map_err(|e| e.to_string())?
    );
    Ok(match result.status {
        Status::Converged => EXIT_OK,
        Status::MaxIter => EXIT_MAX_ITER,
        Status::Breakdown => EXIT_BREAKDOWN,
    })
}

fn verify_command(matrix: PathBuf, result: PathBuf, tol: f64) -> Result<i32, String> {
    let a = load_matrix(&matrix)?;
    let summary: RunSummary =
        load_json(&result).map_err(|e| format!("cannot load result {}: {e}", result.display()))?;
    let v = DQVector::from_entries(summary.eigenvector.iter().map(DualQuad::to_dq).collect());
    if v.len() != a.nrows {
        return Err(format!(
            "result eigenvector length {} does not match matrix size {}",
            v.len(),
            a.nrows
        ));
    }
    let lambda = summary.eigenvalue.to_dq();
    let verdict = verify_eigenpair(&a, &v, &lambda, tol).map_err(|e| e.to_string())?;
    println!(
        "{}",
        serde_json::to_string_pretty(&verdict).map_err(|e| e.to_string())?
    );
    Ok(if verdict.ok { EXIT_OK } else { EXIT_VERIFY_FAILED })
}

fn spectrum_command(matrix: PathBuf, cluster_tol: f64) -> Result<(), String> {
    let a = load_matrix(&matrix)?;
    let report = assumption_report(&a, cluster_tol).map_err(|e| e.to_string())?;
    println!(
        "{}",
        serde_json::to_string_pretty(&report).map_err(|e| e.to_string())?
    );
    Ok(())
}

fn plotdata_command(trace: PathBuf) -> Result<(), String> {
    let t = crate::io::load_trace(&trace).map_err(|e: DqError| e.to_string())?;
    for row in &t.rows {
        println!("{} {}", row.iter, row.res.max(f64::MIN_POSITIVE).log10());
    }
    Ok(())
}

/// Parses arguments and dispatches; returns the process exit code.
pub fn main_entry() -> i32 {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Gen { family } => gen_command(family).map(|()| EXIT_OK),
        Command::Run(args) => run_command(args),
        Command::Verify {
            matrix,
            result,
            tol,
        } => verify_command(matrix, result, tol),
        Command::Spectrum {
            matrix,
            cluster_tol,
        } => spectrum_command(matrix, cluster_tol).map(|()| EXIT_OK),
        Command::Plotdata { trace } => plotdata_command(trace).map(|()| EXIT_OK),
    };
    match outcome {
        Ok(code) => code,
        Err(msg) => emit_error(&msg),
    }
}
