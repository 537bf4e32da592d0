//! Hamiltonian decomposition of the union of two Hamiltonian cycles.
//!
//! Given Hamiltonian cycles `x` and `y` on the same vertices, the crate
//! decides whether the 4-regular multigraph `x ∪ y` (2-in/2-out when
//! directed) splits into two edge-disjoint Hamiltonian cycles `z`, `w`
//! different from `x` and `y`. Such a split proves that `x` and `y` are
//! non-adjacent vertices of the traveling salesperson polytope.
//!
//! The exact method repeatedly solves a 0/1 feasibility model and adds
//! subtour elimination constraints for every subtour of the returned point,
//! optionally running a chain-edge-fixing local search between solves.

mod clock {
    #[cfg(not(target_arch = "wasm32"))]
    pub use std::time::Instant;
    #[cfg(target_arch = "wasm32")]
    pub use web_time::Instant;
}

pub mod engine;
pub mod error;
pub mod instances;
pub mod local_search;
pub mod model;
pub mod multigraph;
pub mod oracle;
pub mod rng;
pub mod solver;

pub use engine::{
    check_nonadjacency, solve_instance, solve_iterative_ilp, solve_iterative_ilp_ls, Adjacency, Algorithm,
    EngineConfig, FoundBy, Outcome, RunStats,
};
pub use error::{Error, Result};
pub use instances::{
    generate_instance, parse_certificate, parse_instance, seeded_instance, serialize_certificate, serialize_instance,
    Instance, Seed,
};
pub use multigraph::{
    build_union, verify_certificate, Certificate, CoverPair, HamCycle, Kind, Side, UnionMultigraph, VerifyReport,
};
pub use oracle::{brute_force_decompose, OracleResult};
pub use rng::Rng;
pub use solver::{SolveBudget, SolveOutcome};

#[cfg(test)]
pub(crate) mod fixtures {
    use crate::instances::Instance;
    use crate::multigraph::{CoverPair, Kind, Origin, UnionMultigraph};

    /// x = 1-2-3-4-5-6, y = 1-4-6-2-3-5; the two cycles share 2-3.
    pub fn six_vertex() -> Instance {
        Instance::from_one_based(Kind::Undirected, &[1, 2, 3, 4, 5, 6], &[1, 4, 6, 2, 3, 5]).unwrap()
    }

    /// The union with multiple edges 1-2 and 4-5.
    pub fn two_shared_edges() -> Instance {
        Instance::from_one_based(Kind::Undirected, &[1, 2, 3, 5, 4, 6], &[1, 2, 6, 5, 4, 3]).unwrap()
    }

    /// z = triangles 1-2-6 and 3-4-5, w = triangles 1-2-3 and 4-5-6.
    pub fn triangle_pair(g: &UnionMultigraph) -> CoverPair {
        let mut a = vec![false; g.num_edges()];
        for (p, q, o) in [
            (1, 2, Origin::FromX),
            (1, 6, Origin::FromX),
            (2, 6, Origin::FromY),
            (3, 4, Origin::FromY),
            (4, 5, Origin::FromX),
            (3, 5, Origin::FromX),
        ] {
            a[g.find_edge(p - 1, q - 1, o).unwrap()] = true;
        }
        CoverPair::new(a)
    }
}
