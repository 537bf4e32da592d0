use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hdec::oracle::{brute_force_decompose, DEFAULT_WITNESSES};
use hdec::{
    parse_certificate, parse_instance, seeded_instance, serialize_certificate, serialize_instance, solve_instance,
    verify_certificate, Algorithm, EngineConfig, Instance, Kind, Outcome, SolveBudget,
};
use hdec_cli::bench::{self, BenchConfig};
use hdec_cli::exit;

#[derive(Parser)]
#[command(name = "hdec", version, about = "Hamiltonian decompositions of the union of two Hamiltonian cycles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a random instance.
    Generate {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = parse_kind)]
        kind: Kind,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Output file; standard output if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search for a decomposition different from the input cycles.
    Solve {
        instance: PathBuf,
        #[arg(long, value_parser = parse_algorithm, default_value = "ilp-ls")]
        algorithm: Algorithm,
        /// Certificate file; printed after the summary line if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        limits: Limits,
    },
    /// Check a certificate against an instance.
    Verify { instance: PathBuf, certificate: PathBuf },
    /// Exhaustive search (at most 12 vertices).
    Oracle {
        instance: PathBuf,
        #[arg(long, default_value_t = DEFAULT_WITNESSES)]
        witnesses: usize,
    },
    /// Solve batches of random instances and write one CSV row per run.
    Bench {
        /// Comma-separated vertex counts.
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 100)]
        count: u64,
        #[arg(long, value_enum, default_value_t = KindChoice::Both)]
        kind: KindChoice,
        #[arg(long, value_enum, default_value_t = AlgorithmChoice::IlpLs)]
        algorithm: AlgorithmChoice,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[command(flatten)]
        limits: Limits,
    },
}

#[derive(Args)]
struct Limits {
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
    attempt_limit: u64,
    #[arg(long, default_value_t = 60_000)]
    time_limit_ms: u64,
    #[arg(long, default_value_t = 1000)]
    max_iterations: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindChoice {
    Directed,
    Undirected,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgorithmChoice {
    Ilp,
    IlpLs,
    Both,
}

fn parse_kind(s: &str) -> Result<Kind, String> {
    s.parse()
}

fn parse_algorithm(s: &str) -> Result<Algorithm, String> {
    s.parse()
}

/// A failure that ends the process with `code` after printing `msg`.
struct Failure {
    code: i32,
    msg: String,
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure { code: exit::USAGE, msg: msg.into() }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_instance(path: &Path) -> Result<Instance, Failure> {
    parse_instance(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn engine_config(algorithm: Algorithm, limits: &Limits) -> EngineConfig {
    EngineConfig {
        algorithm,
        budget: SolveBudget { max_decisions: None, time_limit: Some(Duration::from_millis(limits.time_limit_ms)) },
        max_iterations: limits.max_iterations,
        attempt_limit: limits.attempt_limit as usize,
        seed: limits.seed,
    }
}

fn run(cli: Cli) -> Result<i32, Failure> {
    match cli.command {
        Command::Generate { n, kind, seed, out } => {
            let inst = seeded_instance(n, kind, seed).map_err(|e| usage(e.to_string()))?;
            let text = serialize_instance(&inst);
            match out {
                Some(path) => write(&path, &text)?,
                None => print!("{text}"),
            }
            Ok(exit::FOUND)
        }
        Command::Solve { instance, algorithm, out, limits } => {
            let inst = load_instance(&instance)?;
            let result = solve_instance(&inst, &engine_config(algorithm, &limits));
            let s = result.stats();
            println!(
                "{} {} {} {:.3} {:.3} {:.3}",
                result.label(),
                s.iterations,
                s.cuts_added,
                s.solver_time.as_secs_f64() * 1e3,
                s.ls_time.as_secs_f64() * 1e3,
                s.total_time.as_secs_f64() * 1e3
            );
            Ok(match result {
                Outcome::Decomposition(cert, _) => {
                    let text = serialize_certificate(&cert);
                    match out {
                        Some(path) => write(&path, &text)?,
                        None => print!("{text}"),
                    }
                    exit::FOUND
                }
                Outcome::NonExistent(_) => exit::NONEXISTENT,
                Outcome::BudgetExceeded(_) => exit::BUDGET,
            })
        }
        Command::Verify { instance, certificate } => {
            let inst = load_instance(&instance)?;
            let cert = parse_certificate(&read(&certificate)?, inst.kind())
                .map_err(|e| usage(format!("{}: {e}", certificate.display())))?;
            let report = verify_certificate(&inst, &cert);
            for (name, ok) in report.checks() {
                println!("{name} {}", if ok { "PASS" } else { "FAIL" });
            }
            Ok(if report.pass { exit::FOUND } else { exit::VERIFY_FAILED })
        }
        Command::Oracle { instance, witnesses } => {
            let inst = load_instance(&instance)?;
            let r = brute_force_decompose(&inst, witnesses).map_err(|e| usage(e.to_string()))?;
            println!("exists {}", r.exists);
            println!("count {}", r.count_pairs);
            for cert in &r.witnesses {
                print!("{}", serialize_certificate(cert));
            }
            Ok(if r.exists { exit::FOUND } else { exit::NONEXISTENT })
        }
        Command::Bench { sizes, count, kind, algorithm, csv, jobs, limits } => {
            if let Some(&n) = sizes.iter().find(|&&n| n < 3) {
                return Err(usage(format!("size {n} is below the minimum of 3")));
            }
            let cfg = BenchConfig {
                sizes,
                count,
                kinds: match kind {
                    KindChoice::Directed => vec![Kind::Directed],
                    KindChoice::Undirected => vec![Kind::Undirected],
                    KindChoice::Both => vec![Kind::Undirected, Kind::Directed],
                },
                algorithms: match algorithm {
                    AlgorithmChoice::Ilp => vec![Algorithm::Ilp],
                    AlgorithmChoice::IlpLs => vec![Algorithm::IlpLs],
                    AlgorithmChoice::Both => vec![Algorithm::Ilp, Algorithm::IlpLs],
                },
                seed: limits.seed,
                attempt_limit: limits.attempt_limit as usize,
                time_limit: Duration::from_millis(limits.time_limit_ms),
                max_iterations: limits.max_iterations,
                jobs: jobs.max(1),
            };
            let rows = bench::run_bench(&cfg);
            match &csv {
                Some(path) => {
                    let file = fs::File::create(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
                    bench::write_csv(&rows, file).map_err(|e| usage(e.to_string()))?;
                    print!("{}", bench::summary(&rows));
                }
                None => {
                    bench::write_csv(&rows, std::io::stdout()).map_err(|e| usage(e.to_string()))?;
                    eprint!("{}", bench::summary(&rows));
                }
            }
            Ok(exit::FOUND)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { exit::USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code as u8)
        }
    }
}
