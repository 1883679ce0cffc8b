//! Exact Markov chains of the stochastic dynamics over the full state space,
//! and the absorption certificate: every satisfiable instance's chain reaches
//! a solution with probability 1.
//!
//! Absorption is certified by reachability over the sparse positive-
//! probability structure (an exact integer graph computation), not by power
//! iteration: for a finite chain, reachability of the absorbing set from
//! every state is equivalent to absorption with probability 1, and floating-
//! point error cannot flip the verdict.

use std::collections::VecDeque;

use crate::formula::State;
use crate::mapping::Network;

use super::{AnalysisError, check_cap};

/// Default cap for probabilistic-dynamics chains: rows can hold up to `2^d`
/// entries for `d` disagreeing nodes, so the cap is tighter than for the
/// single-flip chain.
pub const DEFAULT_PBN_CHAIN_CAP: usize = 14;
/// Default cap for the single-node-update chain (at most `n + 1` entries per
/// row).
pub const DEFAULT_ABN_CHAIN_CAP: usize = 16;

/// Which stochastic dynamics the chain models.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ChainKind {
    /// Per-node mixing: apply the node function with probability `p`, the
    /// identity with `1 - p`, independently per node.
    Pbn { p: f64 },
    /// One uniformly chosen node updated per step.
    AbnMicro,
}

/// A sparse row-stochastic matrix over all `2^n` states. Rows are sorted by
/// target index; entries with probability zero are never stored.
#[derive(Debug, Clone, PartialEq)]
pub struct MarkovChain {
    num_vars: usize,
    kind: ChainKind,
    rows: Vec<Vec<(u32, f64)>>,
}

/// Builds the exact chain of the given dynamics under its default cap.
pub fn build_markov_chain(net: &Network, kind: ChainKind) -> Result<MarkovChain, AnalysisError> {
    let cap = match kind {
        ChainKind::Pbn { .. } => DEFAULT_PBN_CHAIN_CAP,
        ChainKind::AbnMicro => DEFAULT_ABN_CHAIN_CAP,
    };
    build_markov_chain_capped(net, kind, cap)
}

pub fn build_markov_chain_capped(
    net: &Network,
    kind: ChainKind,
    cap: usize,
) -> Result<MarkovChain, AnalysisError> {
    let n = net.num_vars();
    check_cap(n, cap)?;
    if let ChainKind::Pbn { p } = kind {
        assert!(p > 0.0 && p <= 1.0, "function probability must lie in (0, 1]");
    }

    let size = 1usize << n;
    let mut rows = Vec::with_capacity(size);
    let mut state = State::zeros(n);
    let mut image = State::zeros(n);
    let mut differing: Vec<usize> = Vec::with_capacity(n);

    for idx in 0..size {
        for i in 0..n {
            state.set(i, idx >> i & 1 == 1);
        }
        net.eval_all_into(&state, &mut image);
        differing.clear();
        differing.extend((0..n).filter(|&i| image.get(i) != state.get(i)));

        let mut row: Vec<(u32, f64)> = Vec::new();
        match kind {
            ChainKind::Pbn { p } => {
                // Nodes agreeing with their image stay put whichever function
                // fires; each disagreeing node independently moves with
                // probability p. One entry per subset of the disagreeing set.
                let d = differing.len();
                for mask in 0u32..1 << d {
                    let moved = mask.count_ones() as i32;
                    let prob = p.powi(moved) * (1.0 - p).powi(d as i32 - moved);
                    if prob <= 0.0 {
                        continue;
                    }
                    let mut target = idx;
                    for (k, &i) in differing.iter().enumerate() {
                        if mask >> k & 1 == 1 {
                            target ^= 1 << i;
                        }
                    }
                    row.push((target as u32, prob));
                }
            }
            ChainKind::AbnMicro => {
                let stay = n - differing.len();
                if stay > 0 {
                    row.push((idx as u32, stay as f64 / n as f64));
                }
                for &i in &differing {
                    row.push(((idx ^ 1 << i) as u32, 1.0 / n as f64));
                }
            }
        }
        row.sort_by_key(|&(target, _)| target);
        rows.push(row);
    }

    Ok(MarkovChain { num_vars: n, kind, rows })
}

impl MarkovChain {
    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_states(&self) -> usize {
        self.rows.len()
    }

    pub fn kind(&self) -> ChainKind {
        self.kind
    }

    pub fn rows(&self) -> &[Vec<(u32, f64)>] {
        &self.rows
    }

    pub fn row(&self, index: usize) -> &[(u32, f64)] {
        &self.rows[index]
    }

    pub fn row_sum(&self, index: usize) -> f64 {
        self.rows[index].iter().map(|&(_, p)| p).sum()
    }

    /// Largest deviation of any row sum from 1.
    pub fn max_row_sum_error(&self) -> f64 {
        (0..self.rows.len())
            .map(|i| (self.row_sum(i) - 1.0).abs())
            .fold(0.0, f64::max)
    }

    /// Exact transition probability between two state indices.
    pub fn transition_probability(&self, from: usize, to: usize) -> f64 {
        self.rows[from]
            .binary_search_by_key(&(to as u32), |&(target, _)| target)
            .map(|at| self.rows[from][at].1)
            .unwrap_or(0.0)
    }

    /// Absorbing means structurally absorbing: the only stored transition is
    /// the self-loop. Row-sum validation then forces its probability to 1.
    pub fn is_absorbing(&self, index: usize) -> bool {
        matches!(self.rows[index].as_slice(), [(target, _)] if *target as usize == index)
    }

    /// All absorbing state indices, ascending.
    pub fn absorbing_states(&self) -> Vec<usize> {
        (0..self.rows.len()).filter(|&i| self.is_absorbing(i)).collect()
    }
}

/// Verdict of the absorption certificate.
#[derive(Debug, Clone, PartialEq)]
pub enum AbsorptionVerdict {
    /// Absorbing states equal the solution set and every state reaches them.
    Ok,
    /// No solutions exist, so there is nothing to absorb into; reported
    /// distinctly because the convergence guarantee presumes satisfiability.
    OkVacuous,
    /// Absorbing states and the claimed solution set disagree.
    AbsorbingMismatch { missing: Vec<State>, extra: Vec<State> },
    /// States from which no absorbing state is reachable.
    Stuck { states: Vec<State> },
}

impl AbsorptionVerdict {
    pub fn is_ok(&self) -> bool {
        matches!(self, AbsorptionVerdict::Ok | AbsorptionVerdict::OkVacuous)
    }
}

/// Verifies that (a) the chain's absorbing states are exactly `solutions` and
/// (b) the absorbing set is reachable from every state along positive-
/// probability edges.
pub fn check_absorption(chain: &MarkovChain, solutions: &[State]) -> AbsorptionVerdict {
    let n = chain.num_vars();
    let absorbing = chain.absorbing_states();
    let solution_indices: Vec<usize> = {
        let mut v: Vec<usize> = solutions.iter().map(|s| s.to_index() as usize).collect();
        v.sort_unstable();
        v
    };

    if absorbing != solution_indices {
        let missing = solution_indices
            .iter()
            .filter(|i| !absorbing.contains(i))
            .map(|&i| State::from_index(i as u64, n))
            .collect();
        let extra = absorbing
            .iter()
            .filter(|i| !solution_indices.contains(i))
            .map(|&i| State::from_index(i as u64, n))
            .collect();
        return AbsorptionVerdict::AbsorbingMismatch { missing, extra };
    }

    if absorbing.is_empty() {
        return AbsorptionVerdict::OkVacuous;
    }

    // Reverse reachability from the absorbing set over positive edges.
    let size = chain.num_states();
    let mut predecessors: Vec<Vec<u32>> = vec![Vec::new(); size];
    for (from, row) in chain.rows().iter().enumerate() {
        for &(to, _) in row {
            if to as usize != from {
                predecessors[to as usize].push(from as u32);
            }
        }
    }
    let mut reached = vec![false; size];
    let mut queue: VecDeque<usize> = absorbing.iter().copied().collect();
    for &a in &absorbing {
        reached[a] = true;
    }
    while let Some(at) = queue.pop_front() {
        for &prev in &predecessors[at] {
            if !reached[prev as usize] {
                reached[prev as usize] = true;
                queue.push_back(prev as usize);
            }
        }
    }

    let stuck: Vec<State> = (0..size)
        .filter(|&i| !reached[i])
        .map(|i| State::from_index(i as u64, n))
        .collect();
    if stuck.is_empty() {
        AbsorptionVerdict::Ok
    } else {
        AbsorptionVerdict::Stuck { states: stuck }
    }
}

/// Non-absorbing states lacking a positive-probability edge to some state at
/// Hamming distance 1. Empty for every chain built from these dynamics with
/// `p < 1`: a disagreeing variable can always move alone.
pub fn single_flip_violations(chain: &MarkovChain) -> Vec<State> {
    let n = chain.num_vars();
    (0..chain.num_states())
        .filter(|&idx| {
            !chain.is_absorbing(idx)
                && !chain.row(idx).iter().any(|&(to, _)| (to as usize ^ idx).count_ones() == 1)
        })
        .map(|idx| State::from_index(idx as u64, n))
        .collect()
}
