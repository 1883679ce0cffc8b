//! DOT export of transition graphs and chains, for visual inspection of
//! small state spaces. States are bitstring-labeled nodes; fixed points and
//! absorbing states are drawn with double circles; chain edges carry their
//! probabilities.

use std::fmt::Write;

use crate::formula::State;

use super::{MarkovChain, TransitionGraph};

fn bits(index: usize, n: usize) -> String {
    State::from_index(index as u64, n).to_string()
}

/// Renders the deterministic synchronous map.
pub fn transition_graph_dot(graph: &TransitionGraph) -> String {
    let n = graph.num_vars();
    let mut out = String::from("digraph transitions {\n  rankdir=LR;\n  node [shape=circle];\n");
    for index in 0..graph.num_states() {
        if graph.is_fixed_point_index(index) {
            writeln!(out, "  \"{}\" [shape=doublecircle];", bits(index, n)).unwrap();
        }
    }
    for index in 0..graph.num_states() {
        writeln!(out, "  \"{}\" -> \"{}\";", bits(index, n), bits(graph.successor(index), n)).unwrap();
    }
    out.push_str("}\n");
    out
}

/// Renders a chain with probability-labeled edges.
pub fn markov_chain_dot(chain: &MarkovChain) -> String {
    let n = chain.num_vars();
    let mut out = String::from("digraph chain {\n  rankdir=LR;\n  node [shape=circle];\n");
    for index in 0..chain.num_states() {
        if chain.is_absorbing(index) {
            writeln!(out, "  \"{}\" [shape=doublecircle];", bits(index, n)).unwrap();
        }
    }
    for index in 0..chain.num_states() {
        for &(target, prob) in chain.row(index) {
            writeln!(
                out,
                "  \"{}\" -> \"{}\" [label=\"{:.4}\"];",
                bits(index, n),
                bits(target as usize, n),
                prob
            )
            .unwrap();
        }
    }
    out.push_str("}\n");
    out
}
