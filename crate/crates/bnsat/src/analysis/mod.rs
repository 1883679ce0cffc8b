//! Exhaustive small-scale verification: full synchronous transition graphs
//! with attractor/basin classification, brute-force solution enumeration (the
//! oracle every network-side result is checked against), and exact Markov
//! chains for the stochastic dynamics.
//!
//! State indexing is little-endian by variable order throughout: bit `i` of a
//! state index holds `x_{i+1}` (see [`State::from_index`]).

pub mod dot;
pub mod markov;

pub use markov::{
    AbsorptionVerdict, ChainKind, MarkovChain, build_markov_chain, build_markov_chain_capped,
    check_absorption, single_flip_violations,
};

use serde::Serialize;
use thiserror::Error;

use crate::formula::{Formula, State};
use crate::mapping::Network;

/// Default cap on exhaustive enumeration (`2^20` states).
pub const DEFAULT_STATE_CAP: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("state space 2^{num_vars} exceeds the enumeration cap 2^{cap}")]
    StateSpaceTooLarge { num_vars: usize, cap: usize },
}

fn check_cap(num_vars: usize, cap: usize) -> Result<(), AnalysisError> {
    if num_vars > cap {
        return Err(AnalysisError::StateSpaceTooLarge { num_vars, cap });
    }
    Ok(())
}

/// The complete deterministic synchronous map: `successor[s]` is the state
/// index every node moves to in parallel from state index `s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionGraph {
    num_vars: usize,
    successor: Vec<u32>,
}

/// Builds the full synchronous transition graph (default cap 2^20 states).
pub fn build_transition_graph(net: &Network) -> Result<TransitionGraph, AnalysisError> {
    build_transition_graph_capped(net, DEFAULT_STATE_CAP)
}

pub fn build_transition_graph_capped(net: &Network, cap: usize) -> Result<TransitionGraph, AnalysisError> {
    let n = net.num_vars();
    check_cap(n, cap)?;
    let size = 1usize << n;
    let mut successor = Vec::with_capacity(size);
    let mut state = State::zeros(n);
    let mut image = State::zeros(n);
    for idx in 0..size {
        for i in 0..n {
            state.set(i, idx >> i & 1 == 1);
        }
        net.eval_all_into(&state, &mut image);
        successor.push(image.to_index() as u32);
    }
    Ok(TransitionGraph { num_vars: n, successor })
}

impl TransitionGraph {
    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_states(&self) -> usize {
        self.successor.len()
    }

    pub fn successor(&self, index: usize) -> usize {
        self.successor[index] as usize
    }

    pub fn successor_state(&self, state: &State) -> State {
        State::from_index(self.successor[state.to_index() as usize] as u64, self.num_vars)
    }

    pub fn is_fixed_point_index(&self, index: usize) -> bool {
        self.successor[index] as usize == index
    }

    /// All fixed-point state indices, ascending.
    pub fn fixed_point_indices(&self) -> Vec<usize> {
        (0..self.num_states()).filter(|&i| self.is_fixed_point_index(i)).collect()
    }
}

/// One attractor with its exact basin size. Fixed points have period 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AttractorInfo {
    pub states: Vec<State>,
    pub period: usize,
    pub basin_size: usize,
}

impl AttractorInfo {
    pub fn is_fixed_point(&self) -> bool {
        self.period == 1
    }
}

/// Every attractor of a transition graph with exact basin sizes. Basins
/// partition the state space; each contains its attractor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AttractorReport {
    pub num_vars: usize,
    pub attractors: Vec<AttractorInfo>,
}

impl AttractorReport {
    pub fn fixed_points(&self) -> impl Iterator<Item = &AttractorInfo> {
        self.attractors.iter().filter(|a| a.is_fixed_point())
    }

    pub fn cycles(&self) -> impl Iterator<Item = &AttractorInfo> {
        self.attractors.iter().filter(|a| !a.is_fixed_point())
    }

    /// Sum of all basin sizes; always `2^num_vars`.
    pub fn total_basin(&self) -> usize {
        self.attractors.iter().map(|a| a.basin_size).sum()
    }
}

const UNASSIGNED: u32 = u32::MAX;

/// Finds all attractors by successor-following with state marking and
/// computes exact basin sizes. Attractors are reported fixed points first,
/// then cycles, each group ordered by smallest contained state index.
pub fn classify(graph: &TransitionGraph) -> AttractorReport {
    let size = graph.num_states();
    let mut attractor_id = vec![UNASSIGNED; size];
    let mut path_pos = vec![UNASSIGNED; size];
    let mut cycles: Vec<Vec<u32>> = Vec::new();
    let mut path: Vec<u32> = Vec::new();

    for start in 0..size {
        if attractor_id[start] != UNASSIGNED {
            continue;
        }
        path.clear();
        let mut current = start as u32;
        let id = loop {
            if attractor_id[current as usize] != UNASSIGNED {
                break attractor_id[current as usize];
            }
            if path_pos[current as usize] != UNASSIGNED {
                // Closed a new cycle inside this walk.
                let from = path_pos[current as usize] as usize;
                cycles.push(canonical_rotation(&path[from..]));
                break (cycles.len() - 1) as u32;
            }
            path_pos[current as usize] = path.len() as u32;
            path.push(current);
            current = graph.successor[current as usize];
        };
        for &s in &path {
            attractor_id[s as usize] = id;
            path_pos[s as usize] = UNASSIGNED;
        }
    }

    let mut basin = vec![0usize; cycles.len()];
    for &id in &attractor_id {
        basin[id as usize] += 1;
    }

    let mut attractors: Vec<AttractorInfo> = cycles
        .iter()
        .zip(&basin)
        .map(|(states, &basin_size)| AttractorInfo {
            states: states.iter().map(|&s| State::from_index(s as u64, graph.num_vars)).collect(),
            period: states.len(),
            basin_size,
        })
        .collect();
    attractors.sort_by_key(|a| (a.period != 1, a.states[0].to_index()));
    AttractorReport { num_vars: graph.num_vars, attractors }
}

/// Rotates a cycle so its smallest state index comes first, preserving the
/// cyclic order.
fn canonical_rotation(cycle: &[u32]) -> Vec<u32> {
    let min_at = cycle.iter().enumerate().min_by_key(|&(_, &s)| s).map(|(k, _)| k).unwrap_or(0);
    let mut out = Vec::with_capacity(cycle.len());
    out.extend_from_slice(&cycle[min_at..]);
    out.extend_from_slice(&cycle[..min_at]);
    out
}

/// All satisfying assignments by direct enumeration, ascending by state
/// index. This is the independent oracle the network-side results are tested
/// against: it never touches the compiled network.
pub fn brute_force_solutions(formula: &Formula) -> Result<Vec<State>, AnalysisError> {
    brute_force_solutions_capped(formula, DEFAULT_STATE_CAP)
}

pub fn brute_force_solutions_capped(formula: &Formula, cap: usize) -> Result<Vec<State>, AnalysisError> {
    let n = formula.num_vars();
    check_cap(n, cap)?;
    let mut solutions = Vec::new();
    let mut state = State::zeros(n);
    for idx in 0..1u64 << n {
        for i in 0..n {
            state.set(i, idx >> i & 1 == 1);
        }
        if formula.is_satisfied_by(&state) {
            solutions.push(state.clone());
        }
    }
    Ok(solutions)
}

/// Verdict of the fixed-point/solution correspondence check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CorrespondenceOutcome {
    /// Fixed points and satisfying assignments coincide over all `2^n` states.
    Verified,
    /// A state that is a fixed point but not a solution, or vice versa.
    Counterexample(State),
}

impl CorrespondenceOutcome {
    pub fn is_verified(&self) -> bool {
        matches!(self, CorrespondenceOutcome::Verified)
    }
}

/// Compares `{ s : eval_all(s) = s }` with the brute-force solution set over
/// the full state space.
pub fn check_correspondence(formula: &Formula) -> Result<CorrespondenceOutcome, AnalysisError> {
    check_correspondence_capped(formula, DEFAULT_STATE_CAP)
}

pub fn check_correspondence_capped(
    formula: &Formula,
    cap: usize,
) -> Result<CorrespondenceOutcome, AnalysisError> {
    let n = formula.num_vars();
    check_cap(n, cap)?;
    let net = Network::compile(formula);
    let mut state = State::zeros(n);
    for idx in 0..1u64 << n {
        for i in 0..n {
            state.set(i, idx >> i & 1 == 1);
        }
        if net.is_fixed_point(&state) != formula.is_satisfied_by(&state) {
            return Ok(CorrespondenceOutcome::Counterexample(state));
        }
    }
    Ok(CorrespondenceOutcome::Verified)
}
