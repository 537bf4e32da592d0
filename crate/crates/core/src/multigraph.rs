//! The union multigraph `x ∪ y` of two Hamiltonian cycles, complementary
//! cycle covers over its edges, and certificate checking.
//!
//! Vertices are dense `0..n` indices. Edge ids `0..n` belong to `x` (edge `k`
//! joins `x[k]` and `x[k + 1]`), ids `n..2n` belong to `y`. An edge present in
//! both cycles exists twice, once per origin.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::instances::Instance;

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    Directed,
    Undirected,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Directed => "directed",
            Kind::Undirected => "undirected",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Kind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "directed" => Ok(Kind::Directed),
            "undirected" => Ok(Kind::Undirected),
            other => Err(format!("unknown kind `{other}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Origin {
    FromX,
    FromY,
}

/// The two sides of an edge bipartition. `Z` is the 1-side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Z,
    W,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Z => Side::W,
            Side::W => Side::Z,
        }
    }

    pub fn from_bit(bit: bool) -> Side {
        if bit {
            Side::Z
        } else {
            Side::W
        }
    }

    pub fn bit(self) -> bool {
        self == Side::Z
    }
}

/// A Hamiltonian cycle given as a cyclic vertex order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HamCycle {
    order: Vec<VertexId>,
    kind: Kind,
}

impl HamCycle {
    pub fn new(order: Vec<VertexId>, kind: Kind) -> Result<Self> {
        let n = order.len();
        if n < 3 {
            return Err(Error::TooSmall(n));
        }
        let mut seen = vec![false; n];
        for &v in &order {
            if v >= n {
                return Err(Error::InvalidCycle(format!("vertex {} out of range for n = {n}", v + 1)));
            }
            if seen[v] {
                return Err(Error::InvalidCycle(format!("vertex {} repeated", v + 1)));
            }
            seen[v] = true;
        }
        Ok(HamCycle { order, kind })
    }

    pub fn order(&self) -> &[VertexId] {
        &self.order
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Consecutive pairs in cycle order, as stored in the multigraph:
    /// undirected pairs are canonical `(min, max)`.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        let n = self.order.len();
        (0..n).map(move |k| edge_key(self.kind, self.order[k], self.order[(k + 1) % n]))
    }

    /// Sorted edge multiset. Two Hamiltonian cycles are the same cycle iff
    /// their keys are equal, independent of rotation (and reflection when
    /// undirected).
    pub fn edge_key_set(&self) -> Vec<(VertexId, VertexId)> {
        let mut keys: Vec<_> = self.edges().collect();
        keys.sort_unstable();
        keys
    }

    pub fn same_cycle(&self, other: &HamCycle) -> bool {
        self.kind == other.kind && self.edge_key_set() == other.edge_key_set()
    }
}

pub(crate) fn edge_key(kind: Kind, a: VertexId, b: VertexId) -> (VertexId, VertexId) {
    match kind {
        Kind::Directed => (a, b),
        Kind::Undirected => (a.min(b), a.max(b)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub id: EdgeId,
    pub tail: VertexId,
    pub head: VertexId,
    pub origin: Origin,
}

impl Edge {
    pub fn other(&self, v: VertexId) -> VertexId {
        if self.tail == v {
            self.head
        } else {
            self.tail
        }
    }

    pub fn key(&self) -> (VertexId, VertexId) {
        (self.tail, self.head)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnionMultigraph {
    n: usize,
    kind: Kind,
    edges: Vec<Edge>,
    /// `(FromX copy, FromY copy)` for every edge of `E_x ∩ E_y`.
    shared_pairs: Vec<(EdgeId, EdgeId)>,
    /// All four edges touching each vertex. For directed graphs the first two
    /// are the outgoing arcs and the last two the incoming arcs.
    incident: Vec<[EdgeId; 4]>,
    /// Partner copy for shared edges.
    twin: Vec<Option<EdgeId>>,
}

/// Builds `x ∪ y` with origin labels and shared-edge detection.
pub fn build_union(x: &HamCycle, y: &HamCycle) -> Result<UnionMultigraph> {
    if x.len() != y.len() || x.kind() != y.kind() {
        return Err(Error::MismatchedInstances);
    }
    let n = x.len();
    let kind = x.kind();
    let mut edges = Vec::with_capacity(2 * n);
    for (cycle, origin) in [(x, Origin::FromX), (y, Origin::FromY)] {
        for (tail, head) in cycle.edges() {
            edges.push(Edge { id: edges.len(), tail, head, origin });
        }
    }

    let mut by_key = std::collections::HashMap::with_capacity(n);
    for e in &edges[..n] {
        by_key.insert(e.key(), e.id);
    }
    let mut shared_pairs = Vec::new();
    let mut twin = vec![None; 2 * n];
    for e in &edges[n..] {
        if let Some(&xid) = by_key.get(&e.key()) {
            shared_pairs.push((xid, e.id));
            twin[xid] = Some(e.id);
            twin[e.id] = Some(xid);
        }
    }

    let mut incident = vec![[usize::MAX; 4]; n];
    let mut fill = vec![0usize; n];
    match kind {
        Kind::Undirected => {
            for e in &edges {
                for v in [e.tail, e.head] {
                    incident[v][fill[v]] = e.id;
                    fill[v] += 1;
                }
            }
        }
        Kind::Directed => {
            let mut fill_in = vec![2usize; n];
            for e in &edges {
                incident[e.tail][fill[e.tail]] = e.id;
                fill[e.tail] += 1;
                incident[e.head][fill_in[e.head]] = e.id;
                fill_in[e.head] += 1;
            }
        }
    }

    Ok(UnionMultigraph { n, kind, edges, shared_pairs, incident, twin })
}

impl UnionMultigraph {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> &Edge {
        &self.edges[id]
    }

    pub fn shared_pairs(&self) -> &[(EdgeId, EdgeId)] {
        &self.shared_pairs
    }

    pub fn is_shared(&self, id: EdgeId) -> bool {
        self.twin[id].is_some()
    }

    pub fn twin(&self, id: EdgeId) -> Option<EdgeId> {
        self.twin[id]
    }

    /// The four edges touching `v`, counting parallel copies separately.
    pub fn incident(&self, v: VertexId) -> &[EdgeId; 4] {
        &self.incident[v]
    }

    /// Outgoing arcs of `v` (directed only).
    pub fn out_arcs(&self, v: VertexId) -> [EdgeId; 2] {
        debug_assert_eq!(self.kind, Kind::Directed);
        [self.incident[v][0], self.incident[v][1]]
    }

    /// Incoming arcs of `v` (directed only).
    pub fn in_arcs(&self, v: VertexId) -> [EdgeId; 2] {
        debug_assert_eq!(self.kind, Kind::Directed);
        [self.incident[v][2], self.incident[v][3]]
    }

    /// The other outgoing arc of `e`'s tail.
    pub fn sibling_out(&self, e: EdgeId) -> EdgeId {
        let [a, b] = self.out_arcs(self.edges[e].tail);
        if a == e {
            b
        } else {
            a
        }
    }

    /// The other incoming arc of `e`'s head.
    pub fn sibling_in(&self, e: EdgeId) -> EdgeId {
        let [a, b] = self.in_arcs(self.edges[e].head);
        if a == e {
            b
        } else {
            a
        }
    }

    /// Edge ids of `E_x \ E_y`.
    pub fn x_only(&self) -> Vec<EdgeId> {
        (0..self.n).filter(|&e| !self.is_shared(e)).collect()
    }

    /// Edge ids of `E_y \ E_x`.
    pub fn y_only(&self) -> Vec<EdgeId> {
        (self.n..2 * self.n).filter(|&e| !self.is_shared(e)).collect()
    }

    /// Finds the edge of the given origin with these endpoints.
    pub fn find_edge(&self, a: VertexId, b: VertexId, origin: Origin) -> Option<EdgeId> {
        let key = edge_key(self.kind, a, b);
        self.incident[a].iter().copied().find(|&e| self.edges[e].key() == key && self.edges[e].origin == origin)
    }
}

/// A 0/1 assignment over the union's edges: `true` puts the edge in `z`,
/// `false` in `w`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoverPair {
    assignment: Vec<bool>,
}

impl CoverPair {
    pub fn new(assignment: Vec<bool>) -> Self {
        CoverPair { assignment }
    }

    /// The pair `z = x`, `w = y`.
    pub fn from_origins(g: &UnionMultigraph) -> Self {
        CoverPair { assignment: g.edges().iter().map(|e| e.origin == Origin::FromX).collect() }
    }

    /// Encodes two cycles as an assignment, using the x-copy of a shared
    /// edge for `z` and the y-copy for `w`.
    pub fn from_cycles(g: &UnionMultigraph, z: &HamCycle) -> Result<Self> {
        let mut assignment = vec![false; g.num_edges()];
        for (a, b) in z.edges() {
            let id = g
                .find_edge(a, b, Origin::FromX)
                .filter(|&e| !assignment[e])
                .or_else(|| g.find_edge(a, b, Origin::FromY).filter(|&e| !assignment[e]))
                .ok_or_else(|| Error::InvalidCover(format!("edge {}-{} is not in the multigraph", a + 1, b + 1)))?;
            assignment[id] = true;
        }
        Ok(CoverPair { assignment })
    }

    pub fn assignment(&self) -> &[bool] {
        &self.assignment
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    pub fn side(&self, e: EdgeId) -> Side {
        Side::from_bit(self.assignment[e])
    }

    pub fn set(&mut self, e: EdgeId, side: Side) {
        self.assignment[e] = side.bit();
    }

    pub fn edges_on(&self, side: Side) -> impl Iterator<Item = EdgeId> + '_ {
        let bit = side.bit();
        self.assignment.iter().enumerate().filter(move |(_, &b)| b == bit).map(|(e, _)| e)
    }

    /// Number of edges of `side` at `v` (undirected degree).
    pub fn degree(&self, g: &UnionMultigraph, v: VertexId, side: Side) -> usize {
        let bit = side.bit();
        g.incident(v).iter().filter(|&&e| self.assignment[e] == bit).count()
    }

    /// Checks the degree discipline of both covers.
    pub fn validate(&self, g: &UnionMultigraph) -> Result<()> {
        if self.assignment.len() != g.num_edges() {
            return Err(Error::InvalidCover(format!(
                "assignment has {} entries, multigraph has {} edges",
                self.assignment.len(),
                g.num_edges()
            )));
        }
        for v in 0..g.n() {
            match g.kind() {
                Kind::Undirected => {
                    let d = self.degree(g, v, Side::Z);
                    if d != 2 {
                        return Err(Error::InvalidCover(format!("vertex {} has z-degree {d}", v + 1)));
                    }
                }
                Kind::Directed => {
                    let outs = g.out_arcs(v).iter().filter(|&&e| self.assignment[e]).count();
                    let ins = g.in_arcs(v).iter().filter(|&&e| self.assignment[e]).count();
                    if outs != 1 || ins != 1 {
                        return Err(Error::InvalidCover(format!(
                            "vertex {} has z out-degree {outs} and in-degree {ins}",
                            v + 1
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_valid(&self, g: &UnionMultigraph) -> bool {
        self.validate(g).is_ok()
    }

    /// Vertex sequences of the cycles on one side.
    pub fn cycles(&self, g: &UnionMultigraph, side: Side) -> Result<Vec<Vec<VertexId>>> {
        self.validate(g)?;
        let bit = side.bit();
        let n = g.n();
        let mut visited = vec![false; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if visited[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut v = start;
            let mut via = usize::MAX;
            loop {
                visited[v] = true;
                cycle.push(v);
                let next = match g.kind() {
                    Kind::Directed => {
                        let e = *g.out_arcs(v).iter().find(|&&e| self.assignment[e] == bit).expect("validated");
                        g.edge(e).head
                    }
                    Kind::Undirected => {
                        let e =
                            *g.incident(v).iter().find(|&&e| self.assignment[e] == bit && e != via).expect("validated");
                        via = e;
                        g.edge(e).other(v)
                    }
                };
                if next == start {
                    break;
                }
                v = next;
            }
            cycles.push(cycle);
        }
        Ok(cycles)
    }

    /// Number of cycles in `z` and in `w`.
    pub fn count_components(&self, g: &UnionMultigraph) -> Result<(usize, usize)> {
        Ok((self.cycles(g, Side::Z)?.len(), self.cycles(g, Side::W)?.len()))
    }

    pub fn total_components(&self, g: &UnionMultigraph) -> Result<usize> {
        let (a, b) = self.count_components(g)?;
        Ok(a + b)
    }

    pub fn is_hamiltonian_pair(&self, g: &UnionMultigraph) -> bool {
        matches!(self.count_components(g), Ok((1, 1)))
    }

    /// Sorted vertex sets of every cycle shorter than `n` on either side.
    pub fn extract_subtours(&self, g: &UnionMultigraph) -> Result<Vec<Vec<VertexId>>> {
        let mut sets = BTreeSet::new();
        for side in [Side::Z, Side::W] {
            for mut cycle in self.cycles(g, side)? {
                if cycle.len() < g.n() {
                    cycle.sort_unstable();
                    sets.insert(cycle);
                }
            }
        }
        Ok(sets.into_iter().collect())
    }

    /// The certificate for a Hamiltonian pair, `None` if either side is
    /// disconnected.
    pub fn certificate(&self, g: &UnionMultigraph) -> Option<Certificate> {
        let mut z = self.cycles(g, Side::Z).ok()?;
        let mut w = self.cycles(g, Side::W).ok()?;
        if z.len() != 1 || w.len() != 1 {
            return None;
        }
        Some(Certificate { z: HamCycle::new(z.pop()?, g.kind()).ok()?, w: HamCycle::new(w.pop()?, g.kind()).ok()? })
    }
}

pub fn count_components(pair: &CoverPair, g: &UnionMultigraph) -> Result<(usize, usize)> {
    pair.count_components(g)
}

pub fn extract_subtours(pair: &CoverPair, g: &UnionMultigraph) -> Result<Vec<Vec<VertexId>>> {
    pair.extract_subtours(g)
}

/// A Hamiltonian decomposition `{z, w}` of the union.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub z: HamCycle,
    pub w: HamCycle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyReport {
    pub hamiltonian_z: bool,
    pub hamiltonian_w: bool,
    pub union_partition: bool,
    pub distinct_from_xy: bool,
    pub pass: bool,
}

impl VerifyReport {
    pub fn checks(&self) -> [(&'static str, bool); 4] {
        [
            ("hamiltonian_z", self.hamiltonian_z),
            ("hamiltonian_w", self.hamiltonian_w),
            ("union_partition", self.union_partition),
            ("distinct_from_xy", self.distinct_from_xy),
        ]
    }
}

fn is_hamiltonian(c: &HamCycle, n: usize, kind: Kind) -> bool {
    c.kind() == kind && c.len() == n && HamCycle::new(c.order().to_vec(), kind).is_ok()
}

/// Checks that `cert` is a Hamiltonian decomposition of `x ∪ y` different
/// from `{x, y}`. Every check is computed independently.
pub fn verify_certificate(inst: &Instance, cert: &Certificate) -> VerifyReport {
    let n = inst.n();
    let kind = inst.kind();
    let hamiltonian_z = is_hamiltonian(&cert.z, n, kind);
    let hamiltonian_w = is_hamiltonian(&cert.w, n, kind);

    let mut given: Vec<_> = inst.x().edges().chain(inst.y().edges()).collect();
    let mut found: Vec<_> = cert
        .z
        .order()
        .iter()
        .zip(cert.z.order().iter().cycle().skip(1))
        .chain(cert.w.order().iter().zip(cert.w.order().iter().cycle().skip(1)))
        .map(|(&a, &b)| edge_key(kind, a, b))
        .collect();
    given.sort_unstable();
    found.sort_unstable();
    let union_partition = given == found;

    let inputs = [inst.x().edge_key_set(), inst.y().edge_key_set()];
    let distinct_from_xy = [&cert.z, &cert.w].iter().all(|c| {
        let keys = {
            let mut k: Vec<_> =
                c.order().iter().zip(c.order().iter().cycle().skip(1)).map(|(&a, &b)| edge_key(kind, a, b)).collect();
            k.sort_unstable();
            k
        };
        !inputs.contains(&keys)
    });

    VerifyReport {
        hamiltonian_z,
        hamiltonian_w,
        union_partition,
        distinct_from_xy,
        pass: hamiltonian_z && hamiltonian_w && union_partition && distinct_from_xy,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{six_vertex, triangle_pair, two_shared_edges};

    fn cyc(v: &[usize], kind: Kind) -> HamCycle {
        HamCycle::new(v.iter().map(|&i| i - 1).collect(), kind).unwrap()
    }

    #[test]
    fn union_of_six_vertex_shares_edge_2_3() {
        let inst = six_vertex();
        let g = inst.union();
        assert_eq!(g.num_edges(), 12);
        assert_eq!(g.shared_pairs().len(), 1);
        let (a, b) = g.shared_pairs()[0];
        assert_eq!(g.edge(a).key(), (1, 2));
        assert_eq!(g.edge(b).key(), (1, 2));
        assert_eq!(g.edge(a).origin, Origin::FromX);
        assert_eq!(g.edge(b).origin, Origin::FromY);
    }

    #[test]
    fn identical_triangles_share_everything() {
        let t = cyc(&[1, 2, 3], Kind::Undirected);
        let g = build_union(&t, &t).unwrap();
        assert_eq!(g.num_edges(), 6);
        assert_eq!(g.shared_pairs().len(), 3);
    }

    #[test]
    fn reversed_directed_triangle_shares_nothing() {
        let g = build_union(&cyc(&[1, 2, 3], Kind::Directed), &cyc(&[1, 3, 2], Kind::Directed)).unwrap();
        assert_eq!(g.num_edges(), 6);
        assert!(g.shared_pairs().is_empty());
        for v in 0..3 {
            for e in g.out_arcs(v) {
                assert_eq!(g.edge(e).tail, v);
            }
            for e in g.in_arcs(v) {
                assert_eq!(g.edge(e).head, v);
            }
        }
    }

    #[test]
    fn mismatched_inputs_rejected() {
        let a = cyc(&[1, 2, 3], Kind::Undirected);
        let b = cyc(&[1, 2, 3, 4], Kind::Undirected);
        assert_eq!(build_union(&a, &b), Err(Error::MismatchedInstances));
        let c = cyc(&[1, 2, 3], Kind::Directed);
        assert_eq!(build_union(&a, &c), Err(Error::MismatchedInstances));
        assert!(matches!(HamCycle::new(vec![0, 1, 1], Kind::Directed), Err(Error::InvalidCycle(_))));
        assert!(matches!(HamCycle::new(vec![0, 1], Kind::Directed), Err(Error::TooSmall(2))));
    }

    #[test]
    fn triangles_cover_has_four_subtours() {
        let inst = two_shared_edges();
        let g = inst.union();
        let pair = triangle_pair(g);
        assert_eq!(pair.count_components(g).unwrap(), (2, 2));
        let subtours = pair.extract_subtours(g).unwrap();
        let expected: Vec<Vec<usize>> = vec![vec![0, 1, 2], vec![0, 1, 5], vec![2, 3, 4], vec![3, 4, 5]];
        assert_eq!(subtours, expected);
    }

    #[test]
    fn six_vertex_decomposition_is_hamiltonian() {
        let inst = six_vertex();
        let g = inst.union();
        let z = cyc(&[1, 4, 5, 3, 2, 6], Kind::Undirected);
        let pair = CoverPair::from_cycles(g, &z).unwrap();
        assert_eq!(pair.count_components(g).unwrap(), (1, 1));
        assert!(pair.extract_subtours(g).unwrap().is_empty());
        let cert = pair.certificate(g).unwrap();
        assert!(cert.z.same_cycle(&z));
        assert!(cert.w.same_cycle(&cyc(&[1, 2, 3, 4, 6, 5], Kind::Undirected)));
    }

    #[test]
    fn hand_built_cover_reports_only_w_triangles() {
        // x ∪ y = hexagon 1..6 plus triangles {1,3,5} and {2,4,6}.
        let x = cyc(&[1, 2, 4, 3, 5, 6], Kind::Undirected);
        let y = cyc(&[1, 3, 2, 6, 4, 5], Kind::Undirected);
        let g = build_union(&x, &y).unwrap();
        assert!(g.shared_pairs().is_empty());
        let pair = CoverPair::from_cycles(&g, &cyc(&[1, 2, 3, 4, 5, 6], Kind::Undirected)).unwrap();
        assert_eq!(pair.count_components(&g).unwrap(), (1, 2));
        assert_eq!(pair.extract_subtours(&g).unwrap(), vec![vec![0, 2, 4], vec![1, 3, 5]]);
    }

    #[test]
    fn invalid_cover_is_reported() {
        let inst = six_vertex();
        let g = inst.union();
        let pair = CoverPair::new(vec![true; 12]);
        assert!(matches!(pair.count_components(g), Err(Error::InvalidCover(_))));
        assert!(matches!(pair.extract_subtours(g), Err(Error::InvalidCover(_))));
    }
}
