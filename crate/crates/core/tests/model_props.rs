mod common;

use common::{all_cover_assignments, kinds, side_keys};
use hdec::model::{build_base_model, sec_for_subtour, ConstraintTag};
use hdec::solver::{solve, SolveBudget};
use hdec::{seeded_instance, CoverPair, Kind, SolveOutcome};

#[test]
fn degree_constraints_fix_the_edge_total() {
    for kind in kinds() {
        for seed in 0..40 {
            let inst = seeded_instance(4 + (seed as usize % 4), kind, seed).unwrap();
            let g = inst.union();
            for a in all_cover_assignments(g) {
                assert_eq!(a.iter().filter(|&&b| b).count(), g.n());
            }
        }
        // Larger solver points. A directed union with a single free
        // alternating component has no point at all.
        for seed in 0..10 {
            let inst = seeded_instance(60, kind, seed).unwrap();
            if let SolveOutcome::Feasible(pair) = solve(&build_base_model(&inst), SolveBudget::unlimited()) {
                assert_eq!(pair.edges_on(hdec::Side::Z).count(), 60);
            }
        }
    }
}

#[test]
fn encoding_an_input_cycle_violates_its_exclusion() {
    for kind in kinds() {
        for seed in 0..50 {
            let inst = seeded_instance(5 + seed as usize, kind, 100 + seed).unwrap();
            let g = inst.union();
            let m = build_base_model(&inst);
            if m.is_trivially_infeasible() {
                continue;
            }
            let forbid = |tag: ConstraintTag| m.constraints().iter().find(|c| c.tag == tag).unwrap().clone();
            let z_is_x: Vec<bool> = CoverPair::from_origins(g).assignment().to_vec();
            let z_is_y: Vec<bool> = z_is_x.iter().map(|b| !b).collect();
            assert!(!forbid(ConstraintTag::ForbidX).is_satisfied_by(&z_is_x));
            assert!(!forbid(ConstraintTag::ForbidY).is_satisfied_by(&z_is_y));
        }
    }
}

#[test]
fn base_model_points_differ_from_both_inputs() {
    for kind in kinds() {
        for seed in 0..60 {
            let n = 3 + (seed as usize % 6);
            let inst = seeded_instance(n, kind, seed).unwrap();
            let g = inst.union();
            let m = build_base_model(&inst);
            let inputs = [inst.x().edge_key_set(), inst.y().edge_key_set()];
            for a in all_cover_assignments(g) {
                if !m.constraints().iter().all(|c| c.is_satisfied_by(&a)) {
                    continue;
                }
                for side in [true, false] {
                    let keys = side_keys(g, &a, side);
                    assert!(!inputs.contains(&keys), "{kind} seed {seed}: model admits an input cycle");
                }
            }
        }
    }
}

#[test]
fn every_subtour_violates_its_own_cut() {
    for kind in kinds() {
        for seed in 0..40 {
            let inst = seeded_instance(4 + (seed as usize % 5), kind, seed).unwrap();
            let g = inst.union();
            for a in all_cover_assignments(g) {
                let pair = CoverPair::new(a.clone());
                for z_side in [true, false] {
                    let side = hdec::Side::from_bit(z_side);
                    for cycle in pair.cycles(g, side).unwrap() {
                        if cycle.len() == g.n() {
                            continue;
                        }
                        let (up, lo) = sec_for_subtour(&cycle, g).unwrap();
                        let violated = if z_side { &up } else { &lo };
                        assert!(!violated.is_satisfied_by(&a));
                    }
                }
            }
        }
    }
}

#[test]
fn hamiltonian_decompositions_satisfy_every_cut() {
    let mut checked = 0;
    for kind in kinds() {
        for seed in 0..30 {
            let n = 4 + (seed as usize % 5);
            let inst = seeded_instance(n, kind, seed).unwrap();
            let g = inst.union();
            let mut cuts = Vec::new();
            for mask in 1u32..(1 << n) - 1 {
                let s: Vec<usize> = (0..n).filter(|v| mask >> v & 1 == 1).collect();
                if let Ok(pair) = sec_for_subtour(&s, g) {
                    cuts.push(pair);
                }
            }
            for a in all_cover_assignments(g) {
                if !CoverPair::new(a.clone()).is_hamiltonian_pair(g) {
                    continue;
                }
                checked += 1;
                for (up, lo) in &cuts {
                    assert!(up.is_satisfied_by(&a) && lo.is_satisfied_by(&a));
                }
            }
        }
    }
    assert!(checked > 0);
}

#[test]
fn undirected_three_vertices_is_infeasible_at_build() {
    let inst = seeded_instance(3, Kind::Undirected, 9).unwrap();
    assert!(build_base_model(&inst).is_trivially_infeasible());
}
