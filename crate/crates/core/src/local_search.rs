//! Local search over pairs of complementary cycle covers, minimizing the
//! total number of cycles in `z` and `w`.
//!
//! A move takes an unfixed edge of `z`, fixes it in `w` and lets chain edge
//! fixing restore the degree discipline. For directed graphs the chain closes
//! by itself. For undirected graphs it can leave broken vertices, which are
//! repaired by moving random unfixed incident edges; each candidate gets
//! `attempt_limit` randomized repairs.
//!
//! One copy of every multiple edge is fixed in each side for the whole run.

use std::collections::BTreeSet;

use crate::multigraph::{CoverPair, EdgeId, Kind, Side, UnionMultigraph, VertexId};
use crate::rng::Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LsParams {
    pub attempt_limit: usize,
}

impl Default for LsParams {
    fn default() -> Self {
        LsParams { attempt_limit: 10 }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LsStats {
    pub passes: usize,
    pub moves_tried: usize,
    pub moves_accepted: usize,
    pub repairs_failed: usize,
    /// Largest number of fix operations performed by a single move attempt.
    pub max_fix_ops: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RepairOutcome {
    Ok,
    Failed,
}

#[derive(Debug, Clone)]
pub struct LsState<'g> {
    g: &'g UnionMultigraph,
    pair: CoverPair,
    fixed: Vec<Option<Side>>,
    checked: Vec<bool>,
    /// Non-multiple edges fixed since the last rollback.
    fix_trail: Vec<EdgeId>,
    /// `(edge, previous side)` for every side change since the last rollback.
    changes: Vec<(EdgeId, Side)>,
    /// z-degree per vertex, undirected only.
    z_degree: Vec<usize>,
    broken: BTreeSet<VertexId>,
    fix_ops: usize,
    mark_checked_on_fix: bool,
}

impl<'g> LsState<'g> {
    /// Wraps `pair` (valid or not) and fixes the x copy of every multiple
    /// edge in `z` and the y copy in `w`.
    pub fn new(g: &'g UnionMultigraph, pair: CoverPair) -> Self {
        let m = g.num_edges();
        let mut state = LsState {
            g,
            pair,
            fixed: vec![None; m],
            checked: vec![false; m],
            fix_trail: Vec::new(),
            changes: Vec::new(),
            z_degree: vec![0; g.n()],
            broken: BTreeSet::new(),
            fix_ops: 0,
            mark_checked_on_fix: false,
        };
        for &(xe, ye) in g.shared_pairs() {
            state.pair.set(xe, Side::Z);
            state.pair.set(ye, Side::W);
            state.fixed[xe] = Some(Side::Z);
            state.fixed[ye] = Some(Side::W);
        }
        if g.kind() == Kind::Undirected {
            for v in 0..g.n() {
                state.z_degree[v] = state.pair.degree(g, v, Side::Z);
                if state.z_degree[v] != 2 {
                    state.broken.insert(v);
                }
            }
        }
        state
    }

    pub fn pair(&self) -> &CoverPair {
        &self.pair
    }

    pub fn into_pair(self) -> CoverPair {
        self.pair
    }

    pub fn fixed(&self, e: EdgeId) -> Option<Side> {
        self.fixed[e]
    }

    pub fn is_checked(&self, e: EdgeId) -> bool {
        self.checked[e]
    }

    pub fn broken_vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.broken.iter().copied()
    }

    pub fn z_degree(&self, v: VertexId) -> usize {
        self.z_degree[v]
    }

    /// Fix operations since the last rollback.
    pub fn fix_ops(&self) -> usize {
        self.fix_ops
    }

    fn set_side(&mut self, e: EdgeId, side: Side) {
        let old = self.pair.side(e);
        if old != side {
            self.changes.push((e, old));
            self.apply_side(e, side);
        }
    }

    fn apply_side(&mut self, e: EdgeId, side: Side) {
        self.pair.set(e, side);
        if self.g.kind() == Kind::Undirected {
            let edge = *self.g.edge(e);
            for v in [edge.tail, edge.head] {
                if side == Side::Z {
                    self.z_degree[v] += 1;
                } else {
                    self.z_degree[v] -= 1;
                }
                if self.z_degree[v] == 2 {
                    self.broken.remove(&v);
                } else {
                    self.broken.insert(v);
                }
            }
        }
    }

    fn fix(&mut self, e: EdgeId, side: Side) {
        debug_assert!(self.fixed[e].is_none());
        self.set_side(e, side);
        self.fixed[e] = Some(side);
        self.fix_trail.push(e);
        self.fix_ops += 1;
        if self.mark_checked_on_fix {
            self.checked[e] = true;
        }
    }

    /// Restores the pair as it was before the last move and unfixes every
    /// non-multiple edge.
    pub fn rollback(&mut self) {
        while let Some((e, old)) = self.changes.pop() {
            self.apply_side(e, old);
        }
        for e in self.fix_trail.drain(..) {
            self.fixed[e] = None;
        }
        self.fix_ops = 0;
    }

    /// Makes the current pair the new baseline.
    fn commit(&mut self) {
        self.changes.clear();
        for e in self.fix_trail.drain(..) {
            self.fixed[e] = None;
        }
        self.fix_ops = 0;
    }

    fn clear_checked(&mut self) {
        self.checked.iter_mut().for_each(|c| *c = false);
    }
}

/// Fixes arc `e` in `side`; the other out-arc of its tail and the other
/// in-arc of its head follow into the opposite side, recursively.
pub fn chain_fix_directed(state: &mut LsState, e: EdgeId, side: Side) {
    debug_assert_eq!(state.g.kind(), Kind::Directed);
    if state.fixed[e].is_some() {
        debug_assert_eq!(state.fixed[e], Some(side));
        return;
    }
    let g = state.g;
    let mut stack = vec![(e, side)];
    while let Some((e, side)) = stack.pop() {
        match state.fixed[e] {
            Some(s) => {
                debug_assert_eq!(s, side, "directed chain closure conflict at edge {e}");
                continue;
            }
            None => state.fix(e, side),
        }
        for sib in [g.sibling_out(e), g.sibling_in(e)] {
            if state.fixed[sib].is_none() {
                stack.push((sib, side.opposite()));
            }
        }
    }
}

/// Fixes edge `e` in `side`. Whenever a vertex ends up with two edges fixed
/// in one side, its remaining unfixed edges are fixed in the other side,
/// recursively.
pub fn chain_fix_undirected(state: &mut LsState, e: EdgeId, side: Side) {
    debug_assert_eq!(state.g.kind(), Kind::Undirected);
    let g = state.g;
    let mut stack = vec![(e, side)];
    while let Some((e, side)) = stack.pop() {
        if state.fixed[e].is_some() {
            continue;
        }
        state.fix(e, side);
        let edge = *g.edge(e);
        for v in [edge.tail, edge.head] {
            let inc = g.incident(v);
            let same = inc.iter().filter(|&&f| state.fixed[f] == Some(side)).count();
            if same == 2 {
                for &f in inc {
                    if state.fixed[f].is_none() {
                        stack.push((f, side.opposite()));
                    }
                }
            }
        }
    }
}

/// Repairs the lowest-index broken vertex by one random edge move.
pub fn repair_vertex(state: &mut LsState, v: VertexId, rng: &mut Rng) -> RepairOutcome {
    let g = state.g;
    let (from, to) = match state.z_degree[v] {
        d if d < 2 => (Side::W, Side::Z),
        d if d > 2 => (Side::Z, Side::W),
        _ => return RepairOutcome::Ok,
    };
    let mut candidates: Vec<EdgeId> = Vec::with_capacity(4);
    for &f in g.incident(v) {
        if state.fixed[f].is_none() && state.pair.side(f) == from && !candidates.contains(&f) {
            candidates.push(f);
        }
    }
    if candidates.is_empty() {
        return RepairOutcome::Failed;
    }
    let pick = candidates[rng.index(candidates.len())];
    chain_fix_undirected(state, pick, to);
    RepairOutcome::Ok
}

/// Repairs broken vertices in ascending order until none remain.
pub fn repair_broken_vertices(state: &mut LsState, rng: &mut Rng) -> RepairOutcome {
    let limit = 4 * state.g.n();
    let mut moves = 0;
    while let Some(&v) = state.broken.iter().next() {
        if moves >= limit {
            return RepairOutcome::Failed;
        }
        if repair_vertex(state, v, rng) == RepairOutcome::Failed {
            return RepairOutcome::Failed;
        }
        moves += 1;
    }
    RepairOutcome::Ok
}

fn total_components(pair: &CoverPair, g: &UnionMultigraph) -> usize {
    pair.total_components(g).expect("local search keeps covers valid")
}

fn shuffled_z_edges(state: &LsState, rng: &mut Rng) -> Vec<EdgeId> {
    let mut order: Vec<EdgeId> = state.pair.edges_on(Side::Z).collect();
    rng.shuffle(&mut order);
    order
}

/// Local search for directed multigraphs.
pub fn local_search_directed(pair: CoverPair, g: &UnionMultigraph, rng: &mut Rng) -> (CoverPair, LsStats) {
    let mut state = LsState::new(g, pair);
    state.mark_checked_on_fix = true;
    let mut stats = LsStats::default();
    let mut current = total_components(&state.pair, g);

    while current > 2 {
        stats.passes += 1;
        state.clear_checked();
        let mut improved = false;
        for e in shuffled_z_edges(&state, rng) {
            if state.checked[e] || state.fixed[e].is_some() {
                continue;
            }
            stats.moves_tried += 1;
            chain_fix_directed(&mut state, e, Side::W);
            stats.max_fix_ops = stats.max_fix_ops.max(state.fix_ops);
            let total = total_components(&state.pair, g);
            if total < current {
                current = total;
                stats.moves_accepted += 1;
                state.commit();
                improved = true;
                break;
            }
            state.rollback();
        }
        if !improved {
            break;
        }
    }
    (state.into_pair(), stats)
}

/// Local search for undirected multigraphs.
pub fn local_search_undirected(
    pair: CoverPair,
    g: &UnionMultigraph,
    params: LsParams,
    rng: &mut Rng,
) -> (CoverPair, LsStats) {
    assert!(params.attempt_limit >= 1, "attempt_limit must be positive");
    let mut state = LsState::new(g, pair);
    let mut stats = LsStats::default();
    let mut current = total_components(&state.pair, g);

    while current > 2 {
        stats.passes += 1;
        state.clear_checked();
        let mut improved = false;
        'candidates: for e in shuffled_z_edges(&state, rng) {
            if state.checked[e] || state.fixed[e].is_some() {
                continue;
            }
            stats.moves_tried += 1;
            for attempt in 0..params.attempt_limit {
                // The candidate's own closure is marked checked: its chain
                // mates would reproduce the same neighbor.
                state.mark_checked_on_fix = attempt == 0;
                chain_fix_undirected(&mut state, e, Side::W);
                state.mark_checked_on_fix = false;
                let repaired = repair_broken_vertices(&mut state, rng);
                stats.max_fix_ops = stats.max_fix_ops.max(state.fix_ops);
                if repaired == RepairOutcome::Ok {
                    let total = total_components(&state.pair, g);
                    if total < current {
                        current = total;
                        stats.moves_accepted += 1;
                        state.commit();
                        improved = true;
                        break 'candidates;
                    }
                } else {
                    stats.repairs_failed += 1;
                }
                state.rollback();
            }
            state.checked[e] = true;
        }
        if !improved {
            break;
        }
    }
    (state.into_pair(), stats)
}

/// Dispatches on the multigraph kind.
pub fn local_search(pair: CoverPair, g: &UnionMultigraph, params: LsParams, rng: &mut Rng) -> (CoverPair, LsStats) {
    match g.kind() {
        Kind::Directed => local_search_directed(pair, g, rng),
        Kind::Undirected => local_search_undirected(pair, g, params, rng),
    }
}
