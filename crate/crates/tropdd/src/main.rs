//! Command-line driver.
//!
//! Exit codes: 0 success, 1 parse/validation error, 2 internal invariant
//! failure. `TROPDD_THREADS` caps the worker count (0 = auto).

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use tropdd::bench::{parse_bench_spec, run_bench, to_csv};
use tropdd::dd::{
    compute_extreme_with, dehomogenize, homogenize, ComputeOptions, ExtremalityFilter, RowOrder,
};
use tropdd::extremality::{extreme_types, is_extreme};
use tropdd::gen::{random_system, RandParams, DEFAULT_DENSITY};
use tropdd::io::{
    emit_affine_generators, emit_generators, emit_problem, parse_problem, parse_vector, ProblemFile,
};
use tropdd::oracle::ray_count_bound;
use tropdd::{IneqSystem, Scalar, TVector};

#[derive(Parser)]
#[command(
    name = "tropdd",
    version,
    about = "Extreme rays of tropical (max-plus) cones and polyhedra",
    max_term_width = 100
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum OrderArg {
    #[default]
    Dynamic,
    Fixed,
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum FilterArg {
    #[default]
    Hypergraph,
    Residuation,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute the extreme rays of an instance (points and rays for polyhedra)
    Compute {
        /// Instance file (`tropical-cone` or `tropical-polyhedron`)
        file: PathBuf,
        /// Write the result here instead of stdout
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Row processing order
        #[arg(long, value_enum, default_value_t)]
        order: OrderArg,
        /// Extremality test used to filter candidates
        #[arg(long, value_enum, default_value_t)]
        filter: FilterArg,
    },
    /// Check membership, extremality, and extremality types of vectors
    Check {
        /// Instance file
        file: PathBuf,
        /// Vectors as quoted token lists, e.g. "0 3 2"
        #[arg(required = true)]
        vectors: Vec<String>,
    },
    /// Generate a seeded random cone instance
    Rand {
        #[arg(short = 'd', long = "dim")]
        dim: usize,
        #[arg(short = 'n', long = "ineqs")]
        rows: usize,
        #[arg(long)]
        seed: u64,
        /// Probability that an entry is finite
        #[arg(long, default_value_t = DEFAULT_DENSITY)]
        density: f64,
        /// Write the instance here instead of stdout
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print the bound on the number of extreme rays of a cone cut out by
    /// `n` inequalities in dimension `d`
    Bound { n: u64, d: u64 },
    /// Run the benchmark batch described by a spec file (`label d n seed
    /// [density]` per line) and emit CSV
    Bench {
        specfile: PathBuf,
        /// Write the CSV here instead of stdout
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let run = init_thread_pool().and_then(|()| dispatch(cli));
    match run {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    let internal = e
        .chain()
        .any(|c| matches!(c.downcast_ref(), Some(tropdd::Error::Internal(_))));
    if internal {
        2
    } else {
        1
    }
}

/// Apply `TROPDD_THREADS` to the global worker pool (0 or unset = auto).
fn init_thread_pool() -> Result<()> {
    match std::env::var("TROPDD_THREADS") {
        Err(_) => Ok(()),
        Ok(raw) => {
            let n: usize = raw
                .parse()
                .with_context(|| format!("TROPDD_THREADS: bad value `{raw}`"))?;
            if n == 0 {
                return Ok(());
            }
            rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global()
                .context("TROPDD_THREADS: failed to size the worker pool")
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write_out(path: &Option<PathBuf>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn dispatch(cli: Cli) -> Result<()> {
    match cli.cmd {
        Cmd::Compute {
            file,
            output,
            order,
            filter,
        } => {
            let opts = ComputeOptions {
                order: match order {
                    OrderArg::Dynamic => RowOrder::Dynamic,
                    OrderArg::Fixed => RowOrder::Fixed,
                },
                filter: match filter {
                    FilterArg::Hypergraph => ExtremalityFilter::Hypergraph,
                    FilterArg::Residuation => ExtremalityFilter::Residuation,
                },
                parallel: true,
            };
            let text = match parse_problem(&read(&file)?)? {
                ProblemFile::Cone(sys) => {
                    let (g, _) = compute_extreme_with(&sys, opts)?;
                    emit_generators(&g)
                }
                ProblemFile::Polyhedron(asys) => {
                    let (g, _) = compute_extreme_with(&homogenize(&asys)?, opts)?;
                    emit_affine_generators(&dehomogenize(&g)?)
                }
            };
            write_out(&output, &text)
        }
        Cmd::Check { file, vectors } => {
            let problem = parse_problem(&read(&file)?)?;
            let mut report = String::new();
            for v in &vectors {
                report.push_str(&check_one(&problem, v)?);
                report.push('\n');
            }
            print!("{report}");
            Ok(())
        }
        Cmd::Rand {
            dim,
            rows,
            seed,
            density,
            output,
        } => {
            let mut params = RandParams::new(dim, rows, seed);
            params.density = density;
            let sys = random_system(&params)?;
            write_out(&output, &emit_problem(&ProblemFile::Cone(sys)))
        }
        Cmd::Bound { n, d } => {
            let bound = ray_count_bound(n, d)?;
            println!(
                "U({}, {}) = {bound}  (max extreme rays for {n} inequalities in dimension {d})",
                n + d,
                d - 1,
            );
            Ok(())
        }
        Cmd::Bench { specfile, output } => {
            let specs = parse_bench_spec(&read(&specfile)?)?;
            let records = run_bench(&specs)?;
            let csv = to_csv(&records)?;
            write_out(&output, &csv)
        }
    }
}

/// One report line: membership, then (for members) extremality and types.
fn check_one(problem: &ProblemFile, raw: &str) -> Result<String> {
    let dim = problem.dim();
    let x = parse_vector(raw, dim)?;
    let shown = x
        .entries()
        .iter()
        .map(Scalar::to_string)
        .collect::<Vec<_>>()
        .join(" ");

    // Extremality always runs in a cone; polyhedra are checked through their
    // homogenized cone with the query placed at height 1 (types mentioning
    // coordinate d+1 refer to the homogenizing coordinate).
    let (sys, q, violated): (IneqSystem, TVector, Option<usize>) = match problem {
        ProblemFile::Cone(sys) => {
            let violated = sys.violated_row(&x)?;
            (sys.clone(), x, violated)
        }
        ProblemFile::Polyhedron(asys) => {
            let hsys = homogenize(asys)?;
            let mut entries = x.entries().to_vec();
            entries.push(Scalar::one());
            let q = TVector::new(entries)?;
            let violated = hsys.violated_row(&q)?;
            (hsys, q, violated)
        }
    };

    Ok(match violated {
        Some(row) => format!("{shown} : not a member (row {row} violated)"),
        None if q.is_zero() => format!("{shown} : member, not extreme (zero vector)"),
        None => {
            if is_extreme(&sys, &q)? {
                let types = extreme_types(&sys, &q)?
                    .iter()
                    .map(usize::to_string)
                    .collect::<Vec<_>>()
                    .join(", ");
                format!("{shown} : member, extreme, types {{{types}}}")
            } else {
                format!("{shown} : member, not extreme")
            }
        }
    })
}
