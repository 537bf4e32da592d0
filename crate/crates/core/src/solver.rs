//! Exact feasibility search for binary variables under cardinality
//! constraints.
//!
//! Propagation keeps, per constraint, the number of variables at one and the
//! number still unassigned, and applies three rules to a fixed point:
//! a bound that can no longer be met is a conflict, a constraint at its upper
//! bound sends the rest to zero, a constraint that needs all its unassigned
//! members sends them to one. Search branches on the lowest-index unassigned
//! variable, one before zero, and backtracks chronologically.

use std::time::Duration;

use crate::clock::Instant;
use crate::model::Model;
use crate::multigraph::CoverPair;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Value {
    Unassigned,
    Zero,
    One,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolveBudget {
    pub max_decisions: Option<u64>,
    pub time_limit: Option<Duration>,
}

impl SolveBudget {
    pub fn unlimited() -> Self {
        SolveBudget::default()
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub decisions: u64,
    pub conflicts: u64,
    pub propagations: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    Feasible(CoverPair),
    Infeasible,
    BudgetExceeded(SolveStats),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Propagation {
    Ok,
    Conflict(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct TrailEntry {
    var: usize,
    value: Value,
    decision: bool,
}

#[derive(Debug, Clone)]
pub struct SearchState {
    values: Vec<Value>,
    trail: Vec<TrailEntry>,
    count_one: Vec<usize>,
    count_unassigned: Vec<usize>,
    /// Constraints containing each variable.
    watches: Vec<Vec<usize>>,
    queue: Vec<usize>,
    queued: Vec<bool>,
    stats: SolveStats,
}

const BUDGET_CHECK_INTERVAL: u64 = 1024;

impl SearchState {
    pub fn new(model: &Model) -> Self {
        let mut watches = vec![Vec::new(); model.num_vars()];
        let mut count_unassigned = Vec::with_capacity(model.constraints().len());
        for (ci, c) in model.constraints().iter().enumerate() {
            for &e in &c.edge_ids {
                watches[e].push(ci);
            }
            count_unassigned.push(c.edge_ids.len());
        }
        let m = model.constraints().len();
        SearchState {
            values: vec![Value::Unassigned; model.num_vars()],
            trail: Vec::with_capacity(model.num_vars()),
            count_one: vec![0; m],
            count_unassigned,
            watches,
            // Every constraint starts queued so empty or already-tight ones are seen.
            queue: (0..m).rev().collect(),
            queued: vec![true; m],
            stats: SolveStats::default(),
        }
    }

    pub fn values(&self) -> &[Value] {
        &self.values
    }

    pub fn value(&self, var: usize) -> Value {
        self.values[var]
    }

    pub fn stats(&self) -> SolveStats {
        self.stats
    }

    pub fn trail_len(&self) -> usize {
        self.trail.len()
    }

    fn enqueue(&mut self, ci: usize) {
        if !self.queued[ci] {
            self.queued[ci] = true;
            self.queue.push(ci);
        }
    }

    /// Assigns `var` and pushes it on the trail.
    pub fn assign(&mut self, var: usize, value: Value, decision: bool) {
        debug_assert_eq!(self.values[var], Value::Unassigned);
        debug_assert_ne!(value, Value::Unassigned);
        self.values[var] = value;
        self.trail.push(TrailEntry { var, value, decision });
        for k in 0..self.watches[var].len() {
            let ci = self.watches[var][k];
            self.count_unassigned[ci] -= 1;
            if value == Value::One {
                self.count_one[ci] += 1;
            }
            self.enqueue(ci);
        }
    }

    fn unassign_last(&mut self) -> Option<TrailEntry> {
        let entry = self.trail.pop()?;
        self.values[entry.var] = Value::Unassigned;
        for &ci in &self.watches[entry.var] {
            self.count_unassigned[ci] += 1;
            if entry.value == Value::One {
                self.count_one[ci] -= 1;
            }
        }
        Some(entry)
    }

    fn clear_queue(&mut self) {
        for ci in self.queue.drain(..) {
            self.queued[ci] = false;
        }
    }

    /// Runs the three propagation rules to a fixed point.
    pub fn propagate(&mut self, model: &Model) -> Propagation {
        while let Some(ci) = self.queue.pop() {
            self.queued[ci] = false;
            let c = &model.constraints()[ci];
            let ones = self.count_one[ci];
            let free = self.count_unassigned[ci];
            if ones > c.upper || ones + free < c.lower {
                self.stats.conflicts += 1;
                self.clear_queue();
                return Propagation::Conflict(ci);
            }
            if free == 0 {
                continue;
            }
            let forced = if ones == c.upper {
                Value::Zero
            } else if ones + free == c.lower {
                Value::One
            } else {
                continue;
            };
            for k in 0..c.edge_ids.len() {
                let var = c.edge_ids[k];
                if self.values[var] == Value::Unassigned {
                    self.stats.propagations += 1;
                    self.assign(var, forced, false);
                }
            }
        }
        Propagation::Ok
    }

    /// Undoes assignments up to and including the most recent decision still
    /// on its first branch and returns that decision's variable.
    fn backtrack(&mut self) -> Option<usize> {
        while let Some(entry) = self.unassign_last() {
            if entry.decision {
                return Some(entry.var);
            }
        }
        None
    }

    /// Pops the trail down to `len` entries.
    pub fn undo_to(&mut self, len: usize) {
        while self.trail.len() > len {
            self.unassign_last();
        }
    }

    /// Recomputes every counter from scratch and compares.
    pub fn counters_consistent(&self, model: &Model) -> bool {
        model.constraints().iter().enumerate().all(|(ci, c)| {
            let ones = c.edge_ids.iter().filter(|&&e| self.values[e] == Value::One).count();
            let free = c.edge_ids.iter().filter(|&&e| self.values[e] == Value::Unassigned).count();
            ones == self.count_one[ci] && free == self.count_unassigned[ci]
        })
    }

    fn assignment(&self) -> Vec<bool> {
        self.values.iter().map(|&v| v == Value::One).collect()
    }
}

/// Owns the search state for one model so statistics can be inspected after
/// a solve.
pub struct Solver<'m> {
    model: &'m Model,
    state: SearchState,
    budget: SolveBudget,
}

impl<'m> Solver<'m> {
    pub fn new(model: &'m Model, budget: SolveBudget) -> Self {
        Solver { model, state: SearchState::new(model), budget }
    }

    pub fn stats(&self) -> SolveStats {
        self.state.stats
    }

    pub fn solve(&mut self) -> SolveOutcome {
        let started = Instant::now();
        let model = self.model;
        let state = &mut self.state;
        let n = model.num_vars();
        let mut next_var = 0;

        if let Propagation::Conflict(_) = state.propagate(model) {
            return SolveOutcome::Infeasible;
        }

        loop {
            while next_var < n && state.values[next_var] != Value::Unassigned {
                next_var += 1;
            }
            if next_var == n {
                let assignment = state.assignment();
                debug_assert!(check(&assignment, model));
                return SolveOutcome::Feasible(CoverPair::new(assignment));
            }

            state.stats.decisions += 1;
            if state.stats.decisions.is_multiple_of(BUDGET_CHECK_INTERVAL) {
                let over_decisions = self.budget.max_decisions.is_some_and(|m| state.stats.decisions > m);
                let over_time = self.budget.time_limit.is_some_and(|t| started.elapsed() >= t);
                if over_decisions || over_time {
                    return SolveOutcome::BudgetExceeded(state.stats);
                }
            }
            state.assign(next_var, Value::One, true);

            while let Propagation::Conflict(_) = state.propagate(model) {
                match state.backtrack() {
                    Some(var) => {
                        state.assign(var, Value::Zero, false);
                        next_var = next_var.min(var);
                    }
                    None => return SolveOutcome::Infeasible,
                }
            }
            if let Some(m) = self.budget.max_decisions {
                if state.stats.decisions >= m && state.values.contains(&Value::Unassigned) {
                    return SolveOutcome::BudgetExceeded(state.stats);
                }
            }
        }
    }
}

pub fn solve(model: &Model, budget: SolveBudget) -> SolveOutcome {
    Solver::new(model, budget).solve()
}

/// Independent satisfaction check by direct recount.
pub fn check(assignment: &[bool], model: &Model) -> bool {
    assignment.len() == model.num_vars()
        && model.constraints().iter().all(|c| {
            let mut sum = 0usize;
            for &e in &c.edge_ids {
                if assignment[e] {
                    sum += 1;
                }
            }
            c.lower <= sum && sum <= c.upper
        })
}
