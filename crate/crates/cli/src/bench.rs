//! Batch runs over seeded random instances, one CSV row per run.

use std::fmt::Write as _;
use std::io;
use std::time::Duration;

use hdec::{seeded_instance, solve_instance, Algorithm, EngineConfig, Kind, Outcome, Seed, SolveBudget};
use rayon::prelude::*;

pub const CSV_HEADER: [&str; 11] = [
    "kind",
    "n",
    "instance_id",
    "seed",
    "algorithm",
    "outcome",
    "iterations",
    "cuts_added",
    "solver_ms",
    "ls_ms",
    "total_ms",
];

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub kind: Kind,
    pub n: usize,
    pub instance_id: u64,
    pub seed: Seed,
    pub algorithm: Algorithm,
    pub outcome: &'static str,
    pub iterations: usize,
    pub cuts_added: usize,
    pub solver_ms: f64,
    pub ls_ms: f64,
    pub total_ms: f64,
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub sizes: Vec<usize>,
    pub count: u64,
    pub kinds: Vec<Kind>,
    pub algorithms: Vec<Algorithm>,
    pub seed: Seed,
    pub attempt_limit: usize,
    pub time_limit: Duration,
    pub max_iterations: usize,
    pub jobs: usize,
}

fn ms(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

/// Solves one seeded instance. Instance generation and the local search
/// share the per-instance seed.
pub fn run_one(
    kind: Kind,
    n: usize,
    instance_id: u64,
    base_seed: Seed,
    algorithm: Algorithm,
    cfg: &BenchConfig,
) -> BenchRow {
    let seed = base_seed.wrapping_add(instance_id);
    let inst = seeded_instance(n, kind, seed).expect("sizes are validated before the run");
    let config = EngineConfig {
        algorithm,
        budget: SolveBudget { max_decisions: None, time_limit: Some(cfg.time_limit) },
        max_iterations: cfg.max_iterations,
        attempt_limit: cfg.attempt_limit,
        seed,
    };
    let out = solve_instance(&inst, &config);
    if let Outcome::Decomposition(cert, _) = &out {
        assert!(hdec::verify_certificate(&inst, cert).pass, "engine returned an invalid certificate");
    }
    let s = out.stats();
    BenchRow {
        kind,
        n,
        instance_id,
        seed,
        algorithm,
        outcome: out.label(),
        iterations: s.iterations,
        cuts_added: s.cuts_added,
        solver_ms: ms(s.solver_time),
        ls_ms: ms(s.ls_time),
        total_ms: ms(s.total_time),
    }
}

/// Runs every (kind, size, algorithm, instance) combination. Rows come back
/// in that nesting order whatever the number of workers.
pub fn run_bench(cfg: &BenchConfig) -> Vec<BenchRow> {
    let mut tasks = Vec::new();
    for &kind in &cfg.kinds {
        for &n in &cfg.sizes {
            for &algorithm in &cfg.algorithms {
                for id in 0..cfg.count {
                    tasks.push((kind, n, algorithm, id));
                }
            }
        }
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(cfg.jobs.max(1)).build().expect("thread pool");
    pool.install(|| {
        tasks.par_iter().map(|&(kind, n, algorithm, id)| run_one(kind, n, id, cfg.seed, algorithm, cfg)).collect()
    })
}

pub fn write_csv<W: io::Write>(rows: &[BenchRow], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.write_record([
            r.kind.to_string(),
            r.n.to_string(),
            r.instance_id.to_string(),
            r.seed.to_string(),
            r.algorithm.to_string(),
            r.outcome.to_string(),
            r.iterations.to_string(),
            r.cuts_added.to_string(),
            format!("{:.3}", r.solver_ms),
            format!("{:.3}", r.ls_ms),
            format!("{:.3}", r.total_ms),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Per (kind, n, algorithm): how many runs ended in each outcome, with mean
/// time and iterations for each.
pub fn summary(rows: &[BenchRow]) -> String {
    let mut groups: Vec<(Kind, usize, Algorithm)> = Vec::new();
    for r in rows {
        let key = (r.kind, r.n, r.algorithm);
        if !groups.contains(&key) {
            groups.push(key);
        }
    }
    let mut out = String::from("kind        n     algorithm  outcome     N     time_s    iter\n");
    for (kind, n, algorithm) in groups {
        for outcome in ["solution", "nosolution", "budget"] {
            let sel: Vec<&BenchRow> = rows
                .iter()
                .filter(|r| (r.kind, r.n, r.algorithm, r.outcome) == (kind, n, algorithm, outcome))
                .collect();
            if sel.is_empty() {
                continue;
            }
            let k = sel.len() as f64;
            let time = sel.iter().map(|r| r.total_ms).sum::<f64>() / k / 1e3;
            let iter = sel.iter().map(|r| r.iterations as f64).sum::<f64>() / k;
            let _ = writeln!(
                out,
                "{:<11} {:<5} {:<10} {:<11} {:<5} {:<9.4} {:.2}",
                kind.as_str(),
                n,
                algorithm.as_str(),
                outcome,
                sel.len(),
                time,
                iter
            );
        }
    }
    out
}
