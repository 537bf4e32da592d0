//! Exhaustive reference for small instances.
//!
//! Edges are assigned in index order with nothing but degree-count pruning;
//! none of the solver's propagation is used. The x copy of each multiple edge
//! goes to `z` and the y copy to `w`, which keeps exactly one assignment per
//! ordered pair of edge multisets. Each unordered `{z, w}` is therefore met
//! twice (once per orientation) and counted once.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::instances::Instance;
use crate::multigraph::{edge_key, Certificate, HamCycle, Kind, Origin, UnionMultigraph, VertexId};

pub const MAX_ORACLE_N: usize = 12;
pub const DEFAULT_WITNESSES: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub exists: bool,
    /// Unordered Hamiltonian decompositions `{z, w}` different from `{x, y}`.
    pub count_pairs: usize,
    pub witnesses: Vec<Certificate>,
}

type EdgeKeys = Vec<(VertexId, VertexId)>;

struct Search<'a> {
    g: &'a UnionMultigraph,
    assignment: Vec<bool>,
    /// Per vertex: `[z_out, z_in, w_out, w_in]` for directed graphs, and
    /// `[z, _, w, _]` degrees for undirected graphs.
    load: Vec<[usize; 4]>,
    forced: Vec<Option<bool>>,
    inputs: [EdgeKeys; 2],
    found: BTreeSet<(EdgeKeys, EdgeKeys)>,
    witnesses: Vec<Certificate>,
    max_witnesses: usize,
}

impl Search<'_> {
    fn slots(&self, e: usize, in_z: bool) -> [(VertexId, usize); 2] {
        let edge = self.g.edge(e);
        let base = if in_z { 0 } else { 2 };
        match self.g.kind() {
            Kind::Directed => [(edge.tail, base), (edge.head, base + 1)],
            Kind::Undirected => [(edge.tail, base), (edge.head, base)],
        }
    }

    fn capacity(&self) -> usize {
        match self.g.kind() {
            Kind::Directed => 1,
            Kind::Undirected => 2,
        }
    }

    fn fits(&self, e: usize, in_z: bool) -> bool {
        let cap = self.capacity();
        self.slots(e, in_z).iter().all(|&(v, s)| self.load[v][s] < cap)
    }

    fn place(&mut self, e: usize, in_z: bool, delta: isize) {
        for (v, s) in self.slots(e, in_z) {
            self.load[v][s] = (self.load[v][s] as isize + delta) as usize;
        }
    }

    fn dfs(&mut self, e: usize) {
        if e == self.g.num_edges() {
            self.leaf();
            return;
        }
        for in_z in [true, false] {
            if self.forced[e].is_some_and(|f| f != in_z) || !self.fits(e, in_z) {
                continue;
            }
            self.assignment[e] = in_z;
            self.place(e, in_z, 1);
            self.dfs(e + 1);
            self.place(e, in_z, -1);
        }
    }

    /// Follows one side from vertex 0; `Some(order)` if it is a single cycle
    /// through all vertices.
    fn tour(&self, in_z: bool) -> Option<Vec<VertexId>> {
        let n = self.g.n();
        let kind = self.g.kind();
        let mut order = vec![0];
        let mut used = vec![false; self.g.num_edges()];
        let mut v = 0;
        loop {
            let next = self.g.edges().iter().find(|edge| {
                self.assignment[edge.id] == in_z
                    && !used[edge.id]
                    && match kind {
                        Kind::Directed => edge.tail == v,
                        Kind::Undirected => edge.tail == v || edge.head == v,
                    }
            })?;
            used[next.id] = true;
            v = next.other(v);
            if v == 0 {
                break;
            }
            if order.contains(&v) {
                return None;
            }
            order.push(v);
        }
        (order.len() == n).then_some(order)
    }

    fn leaf(&mut self) {
        let (Some(z), Some(w)) = (self.tour(true), self.tour(false)) else {
            return;
        };
        let kind = self.g.kind();
        let keys = |order: &[VertexId]| -> EdgeKeys {
            let mut k: EdgeKeys =
                (0..order.len()).map(|i| edge_key(kind, order[i], order[(i + 1) % order.len()])).collect();
            k.sort_unstable();
            k
        };
        let (kz, kw) = (keys(&z), keys(&w));
        if self.inputs.contains(&kz) || self.inputs.contains(&kw) {
            return;
        }
        let unordered = if kz <= kw { (kz, kw) } else { (kw, kz) };
        if self.found.insert(unordered) && self.witnesses.len() < self.max_witnesses {
            let z = HamCycle::new(z, kind).expect("tour is a permutation");
            let w = HamCycle::new(w, kind).expect("tour is a permutation");
            self.witnesses.push(Certificate { z, w });
        }
    }
}

/// Enumerates every Hamiltonian decomposition of `x ∪ y` other than `{x, y}`.
pub fn brute_force_decompose(inst: &Instance, max_witnesses: usize) -> Result<OracleResult> {
    let g = inst.union();
    if g.n() > MAX_ORACLE_N {
        return Err(Error::TooLarge { n: g.n(), limit: MAX_ORACLE_N });
    }
    let mut forced = vec![None; g.num_edges()];
    for &(xe, ye) in g.shared_pairs() {
        debug_assert_eq!(g.edge(xe).origin, Origin::FromX);
        forced[xe] = Some(true);
        forced[ye] = Some(false);
    }
    let mut search = Search {
        g,
        assignment: vec![false; g.num_edges()],
        load: vec![[0; 4]; g.n()],
        forced,
        inputs: [inst.x().edge_key_set(), inst.y().edge_key_set()],
        found: BTreeSet::new(),
        witnesses: Vec::new(),
        max_witnesses,
    };
    search.dfs(0);
    let count_pairs = search.found.len();
    Ok(OracleResult { exists: count_pairs > 0, count_pairs, witnesses: search.witnesses })
}
