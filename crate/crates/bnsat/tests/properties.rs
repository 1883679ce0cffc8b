//! Property tests over random formulas: parsing round-trips, evaluation
//! against a naive reference, the fixed-point/solution correspondence, and
//! the structural facts the solvers rely on.

use proptest::prelude::*;

use bnsat::analysis::check_correspondence;
use bnsat::dynamics::{PbnParams, abn_macro_step, pbn_step, sbn_step};
use bnsat::formula::dimacs::{parse_dimacs, write_dimacs};
use bnsat::formula::generate::{GenSpec, generate_with_witness};
use bnsat::formula::{Clause, Formula, Literal, State};
use bnsat::mapping::Network;
use bnsat::solvers::{SolveBudget, Solver};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn clause_strategy(num_vars: usize) -> impl Strategy<Value = Clause> {
    let vars: Vec<u32> = (1..=num_vars as u32).collect();
    proptest::sample::subsequence(vars, 1..=num_vars.min(3))
        .prop_flat_map(|chosen| {
            let len = chosen.len();
            (Just(chosen), proptest::collection::vec(any::<bool>(), len))
        })
        .prop_map(|(chosen, signs)| {
            let literals = chosen.into_iter().zip(signs).map(|(v, s)| Literal::new(v, s)).collect();
            Clause::new(literals).expect("distinct variables")
        })
}

fn formula_strategy(max_vars: usize, max_clauses: usize) -> impl Strategy<Value = Formula> {
    (1..=max_vars).prop_flat_map(move |n| {
        proptest::collection::vec(clause_strategy(n), 0..=max_clauses)
            .prop_map(move |clauses| Formula::new(n, clauses).expect("validated parts"))
    })
}

/// A formula together with one state of matching length.
fn formula_and_state(max_vars: usize, max_clauses: usize) -> impl Strategy<Value = (Formula, State)> {
    formula_strategy(max_vars, max_clauses).prop_flat_map(|f| {
        let n = f.num_vars();
        (Just(f), (0..1u64 << n).prop_map(move |idx| State::from_index(idx, n)))
    })
}

proptest! {
    #[test]
    fn dimacs_round_trip_preserves_the_instance(f in formula_strategy(10, 30)) {
        let reparsed = parse_dimacs(&write_dimacs(&f)).expect("own output parses");
        prop_assert!(f.same_instance(&reparsed));
        prop_assert_eq!(f.num_clauses(), reparsed.num_clauses());
    }

    #[test]
    fn clause_evaluation_agrees_with_naive_reference((f, state) in formula_and_state(10, 24)) {
        for (j, clause) in f.clauses().iter().enumerate() {
            let mut naive = false;
            for lit in clause.literals() {
                let value = state.get(lit.var() as usize - 1);
                if (lit.is_positive() && value) || (!lit.is_positive() && !value) {
                    naive = true;
                }
            }
            prop_assert_eq!(f.evaluate_clause(j, &state), naive);
        }
    }

    #[test]
    fn evaluation_fields_are_consistent((f, state) in formula_and_state(10, 24)) {
        let eval = f.evaluate(&state);
        prop_assert_eq!(eval.satisfied, eval.unsat_indices.is_empty());
        prop_assert_eq!(eval.unsat_count, eval.unsat_indices.len());
        prop_assert_eq!(eval.satisfied, f.is_satisfied_by(&state));
        for j in &eval.unsat_indices {
            prop_assert!(!f.evaluate_clause(*j, &state));
        }
    }

    #[test]
    fn forced_generation_is_sound_and_deterministic(
        n in 3usize..=12,
        ratio in 1usize..=5,
        seed in any::<u64>(),
    ) {
        let spec = GenSpec::new(n, n * ratio, seed).forced();
        let (f, witness) = generate_with_witness(&spec);
        let w = witness.expect("forced yields witness");
        prop_assert!(f.evaluate(&w).satisfied);
        let (again, _) = generate_with_witness(&spec);
        prop_assert_eq!(f, again);
    }

    #[test]
    fn fixed_points_match_solutions_exhaustively(f in formula_strategy(8, 24)) {
        prop_assert!(check_correspondence(&f).expect("within cap").is_verified());
    }

    #[test]
    fn every_variable_of_an_unsatisfied_clause_moves((f, state) in formula_and_state(8, 20)) {
        // The case analysis behind soundness: a positive occurrence in an
        // unsatisfied clause forces the node to 1, a negative one to 0.
        let net = Network::compile(&f);
        for &j in &f.evaluate(&state).unsat_indices {
            for lit in f.clause(j).literals() {
                let i = lit.index();
                let next = net.eval_node(i, &state);
                prop_assert_ne!(next, state.get(i), "variable {} of unsatisfied clause {} kept its value", i + 1, j + 1);
                prop_assert_eq!(next, lit.is_positive());
            }
        }
    }

    #[test]
    fn pure_literal_nodes_are_monotone((f, state) in formula_and_state(8, 20)) {
        let net = Network::compile(&f);
        for node in net.nodes() {
            let value = net.eval_node(node.var(), &state);
            if node.occurs_neg().is_empty() {
                // Never flips 1 -> 0.
                prop_assert!(value >= state.get(node.var()));
            }
            if node.occurs_pos().is_empty() {
                // Never flips 0 -> 1.
                prop_assert!(value <= state.get(node.var()));
            }
        }
    }

    #[test]
    fn macro_transition_change_flag_detects_fixed_points(
        (f, state) in formula_and_state(8, 20),
        seed in any::<u64>(),
    ) {
        let net = Network::compile(&f);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..5 {
            let (next, changed) = abn_macro_step(&net, &state, &mut rng);
            prop_assert_eq!(!changed, net.is_fixed_point(&state));
            prop_assert_eq!(next.len(), state.len());
            if !changed {
                prop_assert_eq!(&next, &state);
            }
        }
    }

    #[test]
    fn steps_preserve_state_length_and_fixed_points(
        (f, state) in formula_and_state(8, 20),
        seed in any::<u64>(),
    ) {
        let net = Network::compile(&f);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let params = PbnParams::default();
        let sync = sbn_step(&net, &state);
        let prob = pbn_step(&net, &state, &params, &mut rng);
        prop_assert_eq!(sync.len(), state.len());
        prop_assert_eq!(prob.len(), state.len());
        if net.is_fixed_point(&state) {
            prop_assert_eq!(&sync, &state);
            prop_assert_eq!(&prob, &state);
        }
        // Nodes agreeing with their image never move probabilistically.
        for i in 0..state.len() {
            if sync.get(i) == state.get(i) {
                prop_assert_eq!(prob.get(i), state.get(i));
            }
        }
    }

    #[test]
    fn solvers_never_return_a_falsifying_model(
        f in formula_strategy(6, 18),
        seed in any::<u64>(),
    ) {
        let budget = SolveBudget::with_max_iterations(300);
        for solver in [Solver::Sbn, Solver::Pbn(PbnParams::default()), Solver::Abn, Solver::Gsat(Default::default())] {
            let outcome = solver.run(&f, &budget, seed);
            if let Some(model) = outcome.model() {
                prop_assert!(f.evaluate(model).satisfied, "{} lied", solver.label());
            }
            prop_assert!(outcome.counters.transitions <= 300);
        }
    }

    #[test]
    fn state_index_and_text_round_trip(n in 1usize..=16, raw in any::<u64>()) {
        let idx = raw & ((1 << n) - 1);
        let state = State::from_index(idx, n);
        prop_assert_eq!(state.to_index(), idx);
        let text = state.to_string();
        prop_assert_eq!(text.len(), n);
        prop_assert_eq!(text.parse::<State>().unwrap(), state);
    }
}
