#![allow(dead_code)]

use hdec::{Kind, UnionMultigraph};

/// Every 0/1 assignment whose two sides both satisfy the degree discipline.
/// Shared copies are not pre-split.
pub fn all_cover_assignments(g: &UnionMultigraph) -> Vec<Vec<bool>> {
    let mut out = Vec::new();
    let mut a = vec![false; g.num_edges()];
    let mut load = vec![[0usize; 4]; g.n()];
    walk(g, 0, &mut a, &mut load, &mut out);
    out
}

fn slots(g: &UnionMultigraph, e: usize, z: bool) -> [(usize, usize); 2] {
    let edge = g.edge(e);
    let b = if z { 0 } else { 2 };
    match g.kind() {
        Kind::Directed => [(edge.tail, b), (edge.head, b + 1)],
        Kind::Undirected => [(edge.tail, b), (edge.head, b)],
    }
}

fn walk(g: &UnionMultigraph, e: usize, a: &mut Vec<bool>, load: &mut Vec<[usize; 4]>, out: &mut Vec<Vec<bool>>) {
    if e == g.num_edges() {
        out.push(a.clone());
        return;
    }
    let cap = if g.kind() == Kind::Directed { 1 } else { 2 };
    for z in [true, false] {
        let s = slots(g, e, z);
        if s.iter().any(|&(v, k)| load[v][k] >= cap) {
            continue;
        }
        a[e] = z;
        for (v, k) in s {
            load[v][k] += 1;
        }
        walk(g, e + 1, a, load, out);
        for (v, k) in s {
            load[v][k] -= 1;
        }
    }
}

/// Sorted edge keys on one side of an assignment.
pub fn side_keys(g: &UnionMultigraph, a: &[bool], z: bool) -> Vec<(usize, usize)> {
    let mut k: Vec<_> = g.edges().iter().filter(|e| a[e.id] == z).map(|e| e.key()).collect();
    k.sort_unstable();
    k
}

pub fn kinds() -> [Kind; 2] {
    [Kind::Undirected, Kind::Directed]
}
