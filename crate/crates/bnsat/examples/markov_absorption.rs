//! Build the exact Markov chains of the stochastic dynamics and certify that
//! the solutions absorb every trajectory: solutions are the only states with
//! probability-1 self-loops, and every state reaches one along positive-
//! probability edges.
//!
//!     cargo run --example markov_absorption

use bnsat::analysis::{
    ChainKind, brute_force_solutions, build_markov_chain, check_absorption, single_flip_violations,
};
use bnsat::formula::{Formula, State};
use bnsat::mapping::Network;

fn main() {
    let formula = Formula::from_dimacs_clauses(3, &[&[1, -2], &[-1, 2], &[2, 3]]).unwrap();
    let net = Network::compile(&formula);
    let solutions = brute_force_solutions(&formula).unwrap();
    println!(
        "solutions: {}",
        solutions.iter().map(State::to_string).collect::<Vec<_>>().join(", ")
    );

    for kind in [ChainKind::Pbn { p: 0.2 }, ChainKind::AbnMicro] {
        let chain = build_markov_chain(&net, kind).unwrap();
        println!("\n{kind:?}: {} states, max row-sum error {:.2e}", chain.num_states(), chain.max_row_sum_error());

        let absorbing: Vec<String> = chain
            .absorbing_states()
            .iter()
            .map(|&i| State::from_index(i as u64, 3).to_string())
            .collect();
        println!("  absorbing states: {}", absorbing.join(", "));

        let verdict = check_absorption(&chain, &solutions);
        println!("  absorption certificate: {verdict:?}");
        assert!(verdict.is_ok());
        assert!(single_flip_violations(&chain).is_empty());

        // A sample row: where can 000 go in one step, and how likely?
        println!("  transitions out of 000:");
        for &(target, prob) in chain.row(0) {
            println!("    -> {} with probability {:.4}", State::from_index(target as u64, 3), prob);
        }
    }
}
