//! Build the exhaustive synchronous transition graph of a small instance,
//! classify its attractors and basins, and emit a DOT rendering.
//!
//!     cargo run --example transition_graph
//!     cargo run --example transition_graph | dot -Tsvg > graph.svg   # needs graphviz

use bnsat::analysis::{build_transition_graph, classify, dot::transition_graph_dot};
use bnsat::formula::{Formula, State};
use bnsat::mapping::Network;

fn main() {
    let formula =
        Formula::from_dimacs_clauses(3, &[&[1, 2], &[1, -3], &[-1, -3], &[2, 3], &[1, 3]]).unwrap();
    let net = Network::compile(&formula);
    let graph = build_transition_graph(&net).expect("3 variables is well under the cap");
    let report = classify(&graph);

    eprintln!("attractors of the {}-state space:", graph.num_states());
    for attractor in &report.attractors {
        let states: Vec<String> = attractor.states.iter().map(State::to_string).collect();
        if attractor.is_fixed_point() {
            eprintln!("  fixed point {} with basin of {} states", states[0], attractor.basin_size);
        } else {
            eprintln!(
                "  cycle of period {} ({}) with basin of {} states",
                attractor.period,
                states.join(" -> "),
                attractor.basin_size
            );
        }
    }
    eprintln!("basins cover {} of {} states", report.total_basin(), graph.num_states());

    // DOT goes to stdout so it can be piped into graphviz.
    print!("{}", transition_graph_dot(&graph));
}
