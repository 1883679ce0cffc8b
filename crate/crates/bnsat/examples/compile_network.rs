//! Compile a CNF formula into its boolean network and inspect the node
//! functions: which clauses each variable watches, and why satisfying
//! assignments are exactly the states that sit still.
//!
//!     cargo run --example compile_network

use bnsat::formula::State;
use bnsat::formula::dimacs::parse_dimacs;
use bnsat::mapping::Network;

fn main() {
    let text = "c (x1 | !x2) & (!x1 | x2) & (x2 | x3)\np cnf 3 3\n1 -2 0\n-1 2 0\n2 3 0\n";
    let formula = parse_dimacs(text).expect("valid DIMACS");
    let net = Network::compile(&formula);

    println!("formula: {} vars, {} clauses", formula.num_vars(), formula.num_clauses());
    println!("\nnode functions:");
    print!("{}", net.describe());

    println!("\noccurrence sets:");
    for node in net.nodes() {
        let fmt = |set: &[usize]| {
            set.iter().map(|j| format!("c{}", j + 1)).collect::<Vec<_>>().join(", ")
        };
        println!(
            "  x{}: positive in [{}], negative in [{}]",
            node.var() + 1,
            fmt(node.occurs_pos()),
            fmt(node.occurs_neg())
        );
    }

    println!("\nstates that sit still (= satisfying assignments):");
    for idx in 0..1u64 << formula.num_vars() {
        let state = State::from_index(idx, formula.num_vars());
        let fixed = net.is_fixed_point(&state);
        let satisfied = formula.evaluate(&state).satisfied;
        assert_eq!(fixed, satisfied);
        if fixed {
            println!("  {state}");
        }
    }
}
