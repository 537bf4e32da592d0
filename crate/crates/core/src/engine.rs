//! The iterative ILP loop, with and without local search between solves.

use std::fmt;
use std::time::Duration;

use crate::clock::Instant;
use crate::instances::{Instance, Seed};
use crate::local_search::{local_search, LsParams};
use crate::model::{add_subtour_cuts, build_base_model};
use crate::multigraph::{verify_certificate, Certificate, CoverPair};
use crate::rng::Rng;
use crate::solver::{SolveBudget, SolveOutcome, Solver};

pub use crate::multigraph::VerifyReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Ilp,
    IlpLs,
}

impl Algorithm {
    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::Ilp => "ilp",
            Algorithm::IlpLs => "ilp-ls",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ilp" => Ok(Algorithm::Ilp),
            "ilp-ls" => Ok(Algorithm::IlpLs),
            other => Err(format!("unknown algorithm `{other}` (expected ilp or ilp-ls)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EngineConfig {
    pub algorithm: Algorithm,
    /// `time_limit` bounds the whole run; `max_decisions` bounds each solver call.
    pub budget: SolveBudget,
    /// Maximum number of solver calls.
    pub max_iterations: usize,
    pub attempt_limit: usize,
    pub seed: Seed,
}

impl EngineConfig {
    pub fn new(algorithm: Algorithm) -> Self {
        EngineConfig {
            algorithm,
            budget: SolveBudget { max_decisions: None, time_limit: Some(Duration::from_secs(60)) },
            max_iterations: 1000,
            attempt_limit: 10,
            seed: 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FoundBy {
    Solver,
    LocalSearch,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunStats {
    /// Solver calls.
    pub iterations: usize,
    pub cuts_added: usize,
    pub solver_decisions: u64,
    pub ls_moves_accepted: usize,
    pub solver_time: Duration,
    pub ls_time: Duration,
    pub total_time: Duration,
    pub found_by: FoundBy,
}

impl RunStats {
    fn new() -> Self {
        RunStats {
            iterations: 0,
            cuts_added: 0,
            solver_decisions: 0,
            ls_moves_accepted: 0,
            solver_time: Duration::ZERO,
            ls_time: Duration::ZERO,
            total_time: Duration::ZERO,
            found_by: FoundBy::None,
        }
    }

    /// Everything except wall-clock times.
    pub fn counters(&self) -> (usize, usize, u64, usize, FoundBy) {
        (self.iterations, self.cuts_added, self.solver_decisions, self.ls_moves_accepted, self.found_by)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Decomposition(Certificate, RunStats),
    NonExistent(RunStats),
    BudgetExceeded(RunStats),
}

impl Outcome {
    pub fn stats(&self) -> &RunStats {
        match self {
            Outcome::Decomposition(_, s) | Outcome::NonExistent(s) | Outcome::BudgetExceeded(s) => s,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Outcome::Decomposition(..) => "solution",
            Outcome::NonExistent(_) => "nosolution",
            Outcome::BudgetExceeded(_) => "budget",
        }
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            Outcome::Decomposition(c, _) => Some(c),
            _ => None,
        }
    }
}

/// Returns a certificate if `pair` is a Hamiltonian decomposition distinct
/// from `{x, y}`.
fn accept(inst: &Instance, pair: &CoverPair) -> Option<Certificate> {
    let cert = pair.certificate(inst.union())?;
    verify_certificate(inst, &cert).pass.then_some(cert)
}

fn run(inst: &Instance, config: &EngineConfig, with_ls: bool) -> Outcome {
    let started = Instant::now();
    let mut stats = RunStats::new();
    let g = inst.union();
    let mut rng = Rng::seed_from_u64(config.seed);
    let params = LsParams { attempt_limit: config.attempt_limit.max(1) };
    let mut model = build_base_model(inst);

    let finish = |mut stats: RunStats, make: fn(RunStats) -> Outcome| {
        stats.total_time = started.elapsed();
        make(stats)
    };

    if model.is_trivially_infeasible() {
        return finish(stats, Outcome::NonExistent);
    }

    loop {
        let remaining = match config.budget.time_limit {
            Some(limit) => match limit.checked_sub(started.elapsed()) {
                Some(r) if !r.is_zero() => Some(r),
                _ => return finish(stats, Outcome::BudgetExceeded),
            },
            None => None,
        };
        if stats.iterations >= config.max_iterations {
            return finish(stats, Outcome::BudgetExceeded);
        }
        stats.iterations += 1;

        let t = Instant::now();
        let mut solver =
            Solver::new(&model, SolveBudget { max_decisions: config.budget.max_decisions, time_limit: remaining });
        let outcome = solver.solve();
        stats.solver_decisions += solver.stats().decisions;
        stats.solver_time += t.elapsed();

        let pair = match outcome {
            SolveOutcome::Feasible(pair) => pair,
            SolveOutcome::Infeasible => return finish(stats, Outcome::NonExistent),
            SolveOutcome::BudgetExceeded(_) => return finish(stats, Outcome::BudgetExceeded),
        };

        if pair.is_hamiltonian_pair(g) {
            let cert = accept(inst, &pair).expect("model excludes x and y");
            stats.found_by = FoundBy::Solver;
            stats.total_time = started.elapsed();
            return Outcome::Decomposition(cert, stats);
        }
        stats.cuts_added += add_subtour_cuts(&mut model, &pair, g).expect("solver points are valid covers");

        if with_ls {
            let t = Instant::now();
            let (improved, ls) = local_search(pair, g, params, &mut rng);
            stats.ls_time += t.elapsed();
            stats.ls_moves_accepted += ls.moves_accepted;
            if let Some(cert) = accept(inst, &improved) {
                stats.found_by = FoundBy::LocalSearch;
                stats.total_time = started.elapsed();
                return Outcome::Decomposition(cert, stats);
            }
            stats.cuts_added += add_subtour_cuts(&mut model, &improved, g).expect("local search keeps covers valid");
        }
    }
}

/// Iterative ILP: solve, cut every subtour of the point, repeat.
pub fn solve_iterative_ilp(inst: &Instance, config: &EngineConfig) -> Outcome {
    run(inst, config, false)
}

/// Iterative ILP with local search from every non-Hamiltonian solver point.
pub fn solve_iterative_ilp_ls(inst: &Instance, config: &EngineConfig) -> Outcome {
    run(inst, config, true)
}

pub fn solve_instance(inst: &Instance, config: &EngineConfig) -> Outcome {
    match config.algorithm {
        Algorithm::Ilp => solve_iterative_ilp(inst, config),
        Algorithm::IlpLs => solve_iterative_ilp_ls(inst, config),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Adjacency {
    /// A decomposition exists, so the two tours are not adjacent.
    NotAdjacent(Certificate),
    /// No decomposition exists. Adjacency is not implied.
    SufficientConditionFails,
    Unknown,
}

pub fn check_nonadjacency(inst: &Instance, config: &EngineConfig) -> Adjacency {
    match solve_instance(inst, config) {
        Outcome::Decomposition(cert, _) => Adjacency::NotAdjacent(cert),
        Outcome::NonExistent(_) => Adjacency::SufficientConditionFails,
        Outcome::BudgetExceeded(_) => Adjacency::Unknown,
    }
}
