mod common;

use common::{all_cover_assignments, kinds};
use hdec::model::{add_subtour_cuts, build_base_model, Model};
use hdec::solver::{check, solve, Propagation, SearchState, SolveBudget, Solver, Value};
use hdec::{seeded_instance, SolveOutcome};
use proptest::prelude::*;

fn satisfying(model: &Model, candidates: &[Vec<bool>]) -> Vec<Vec<bool>> {
    candidates.iter().filter(|a| model.constraints().iter().all(|c| c.is_satisfied_by(a))).cloned().collect()
}

/// Feasibility verdicts agree with exhaustive enumeration, before and after
/// rounds of cuts taken from the solver's own points.
#[test]
fn verdicts_match_enumeration() {
    let mut instances = 0;
    for kind in kinds() {
        for seed in 0..110 {
            let n = 4 + (seed as usize % 5);
            let inst = seeded_instance(n, kind, 7000 + seed).unwrap();
            let g = inst.union();
            let covers = all_cover_assignments(g);
            let mut model = build_base_model(&inst);
            instances += 1;
            for _round in 0..6 {
                let expected = satisfying(&model, &covers);
                match solve(&model, SolveBudget::unlimited()) {
                    SolveOutcome::Feasible(pair) => {
                        assert!(!expected.is_empty());
                        assert!(check(pair.assignment(), &model));
                        assert!(pair.is_valid(g));
                        if add_subtour_cuts(&mut model, &pair, g).unwrap() == 0 {
                            break;
                        }
                    }
                    SolveOutcome::Infeasible => {
                        assert!(expected.is_empty(), "{kind} seed {seed}: solver missed a point");
                        break;
                    }
                    SolveOutcome::BudgetExceeded(_) => unreachable!(),
                }
            }
        }
    }
    assert!(instances >= 200);
}

/// Replaying any known solution as decisions never hits a conflict.
#[test]
fn propagation_keeps_every_solution() {
    for kind in kinds() {
        for seed in 0..40 {
            let inst = seeded_instance(5 + (seed as usize % 4), kind, seed).unwrap();
            let g = inst.union();
            let model = build_base_model(&inst);
            for a in satisfying(&model, &all_cover_assignments(g)) {
                let mut st = SearchState::new(&model);
                assert_eq!(st.propagate(&model), Propagation::Ok);
                for (var, &bit) in a.iter().enumerate() {
                    let want = if bit { Value::One } else { Value::Zero };
                    match st.value(var) {
                        Value::Unassigned => {
                            st.assign(var, want, true);
                            assert_eq!(st.propagate(&model), Propagation::Ok);
                        }
                        v => assert_eq!(v, want),
                    }
                }
                assert!(st.counters_consistent(&model));
            }
        }
    }
}

#[test]
fn deterministic_statistics() {
    for kind in kinds() {
        for seed in 0..10 {
            let inst = seeded_instance(40, kind, seed).unwrap();
            let model = build_base_model(&inst);
            let mut a = Solver::new(&model, SolveBudget::unlimited());
            let mut b = Solver::new(&model, SolveBudget::unlimited());
            assert_eq!(a.solve(), b.solve());
            assert_eq!(a.stats(), b.stats());
        }
    }
}

#[test]
fn every_feasible_point_passes_the_recount() {
    for kind in kinds() {
        for seed in 0..30 {
            let inst = seeded_instance(64, kind, seed).unwrap();
            let g = inst.union();
            let mut model = build_base_model(&inst);
            for _ in 0..5 {
                let SolveOutcome::Feasible(pair) = solve(&model, SolveBudget::unlimited()) else { break };
                assert!(check(pair.assignment(), &model));
                if add_subtour_cuts(&mut model, &pair, g).unwrap() == 0 {
                    break;
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn undo_restores_the_root_state(seed in 0u64..10_000, n in 5usize..30, directed: bool, picks in prop::collection::vec(any::<prop::sample::Index>(), 1..12)) {
        let kind = if directed { hdec::Kind::Directed } else { hdec::Kind::Undirected };
        let inst = seeded_instance(n, kind, seed).unwrap();
        let model = build_base_model(&inst);
        let mut st = SearchState::new(&model);
        if st.propagate(&model) != Propagation::Ok {
            return Ok(());
        }
        let root: Vec<Value> = st.values().to_vec();
        let root_len = st.trail_len();
        for pick in picks {
            let free: Vec<usize> = (0..model.num_vars()).filter(|&v| st.value(v) == Value::Unassigned).collect();
            if free.is_empty() {
                break;
            }
            let var = free[pick.index(free.len())];
            st.assign(var, if pick.index(2) == 0 { Value::One } else { Value::Zero }, true);
            if st.propagate(&model) != Propagation::Ok {
                break;
            }
        }
        st.undo_to(root_len);
        prop_assert_eq!(st.values(), &root[..]);
        prop_assert!(st.counters_consistent(&model));
    }
}

#[test]
fn decision_budget_is_reported() {
    let inst = seeded_instance(100, hdec::Kind::Undirected, 3).unwrap();
    let model = build_base_model(&inst);
    let budget = SolveBudget { max_decisions: Some(1), time_limit: None };
    assert!(matches!(solve(&model, budget), SolveOutcome::BudgetExceeded(_)));
}
