//! The stepping engines over a compiled [`Network`]: synchronous
//! deterministic, probabilistic with identity mixing, and asynchronous
//! sequential with macro/micro transitions.
//!
//! All engines are mapping-agnostic over `(Network, eval)`: they only ever
//! invoke node functions. A run owns its state and RNG; many runs may share
//! one immutable network concurrently.

use std::collections::HashMap;
use std::io::{self, Write};

use rand::Rng;
use rand::seq::SliceRandom;
use serde::Serialize;
use thiserror::Error;

use crate::formula::State;
use crate::mapping::Network;

/// Default cap on exact visited-state tracking during synchronous runs.
/// Reaching the cap is treated like hitting a cycle (restart).
pub const DEFAULT_TRAJECTORY_CAP: usize = 1 << 20;

/// Work accounting shared by every engine and solver.
///
/// `micro_updates` counts single-node evaluations-and-writes (one synchronous
/// or probabilistic step adds `n`, one macro-transition adds `n`, one greedy
/// flip adds 1); `transitions` counts whole-state steps in the engine's
/// native unit; `restarts` counts reinitializations.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct StepCounters {
    pub micro_updates: u64,
    pub transitions: u64,
    pub restarts: u64,
}

/// Mixing parameter of the probabilistic dynamics: each node applies its
/// compiled function with probability `p` and the identity with `1 - p`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PbnParams {
    p: f64,
}

/// Optimum for random 3-SAT reported by the probabilistic-dynamics sweep.
pub const DEFAULT_PBN_P: f64 = 0.2;

impl PbnParams {
    pub fn new(p: f64) -> Result<Self, DynamicsError> {
        if !(p > 0.0 && p <= 1.0) {
            return Err(DynamicsError::InvalidProbability { p });
        }
        Ok(PbnParams { p })
    }

    pub fn p(&self) -> f64 {
        self.p
    }
}

impl Default for PbnParams {
    fn default() -> Self {
        PbnParams { p: DEFAULT_PBN_P }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DynamicsError {
    #[error("function probability must lie in (0, 1], got {p}")]
    InvalidProbability { p: f64 },
}

/// Visited states of a deterministic run, in insertion order and with O(1)
/// membership lookup.
#[derive(Debug, Clone, Default)]
pub struct Trajectory {
    order: Vec<State>,
    position: HashMap<State, usize>,
}

impl Trajectory {
    pub fn new() -> Self {
        Trajectory::default()
    }

    /// Appends a state; if it was already visited, returns its position
    /// instead of inserting a duplicate.
    pub fn push(&mut self, state: State) -> Option<usize> {
        if let Some(&at) = self.position.get(&state) {
            return Some(at);
        }
        self.position.insert(state.clone(), self.order.len());
        self.order.push(state);
        None
    }

    pub fn current(&self) -> Option<&State> {
        self.order.last()
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn states(&self) -> &[State] {
        &self.order
    }
}

/// One synchronous, deterministic transition: all nodes updated in parallel.
pub fn sbn_step(net: &Network, state: &State) -> State {
    net.eval_all(state)
}

/// Where a synchronous trajectory ends up.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Attractor {
    FixedPoint(State),
    Cycle { states: Vec<State>, period: usize },
    /// The visited-state cap was reached before any revisit.
    Overflow,
}

/// Follows the synchronous dynamics from `start` until a state repeats,
/// keeping at most `max_states` exact visited states.
pub fn detect_attractor(net: &Network, start: &State, max_states: usize) -> Attractor {
    assert!(max_states >= 1);
    let mut trajectory = Trajectory::new();
    trajectory.push(start.clone());
    let mut current = start.clone();
    loop {
        let next = sbn_step(net, &current);
        if let Some(at) = trajectory.push(next.clone()) {
            let period = trajectory.len() - at;
            if period == 1 {
                return Attractor::FixedPoint(next);
            }
            return Attractor::Cycle { states: trajectory.states()[at..].to_vec(), period };
        }
        if trajectory.len() >= max_states {
            return Attractor::Overflow;
        }
        current = next;
    }
}

/// One probabilistic transition. The synchronous image is computed once;
/// each node then independently keeps its old value with probability `1 - p`.
/// Exactly `n` Bernoulli draws are consumed, in node order.
pub fn pbn_step(net: &Network, state: &State, params: &PbnParams, rng: &mut impl Rng) -> State {
    pbn_step_tracked(net, state, params, rng).0
}

/// [`pbn_step`] plus a flag telling whether any node changed, so callers can
/// detect repetitions without comparing whole states.
pub fn pbn_step_tracked(
    net: &Network,
    state: &State,
    params: &PbnParams,
    rng: &mut impl Rng,
) -> (State, bool) {
    let image = net.eval_all(state);
    let mut next = state.clone();
    let mut changed = false;
    for i in 0..state.len() {
        let apply = rng.random_bool(params.p);
        if apply && image.get(i) != state.get(i) {
            next.set(i, image.get(i));
            changed = true;
        }
    }
    (next, changed)
}

/// Updates the single node `i`, leaving every other component untouched.
pub fn abn_micro_step(net: &Network, state: &State, i: usize) -> State {
    let mut next = state.clone();
    next.set(i, net.eval_node(i, state));
    next
}

/// One macro-transition: every node updated exactly once, in a fresh uniform
/// random order, each micro-step seeing the partially updated state.
///
/// `changed == false` iff `state` is a fixed point: every variable was
/// re-evaluated and none moved.
pub fn abn_macro_step(net: &Network, state: &State, rng: &mut impl Rng) -> (State, bool) {
    let mut order: Vec<usize> = (0..state.len()).collect();
    order.shuffle(rng);
    let mut current = state.clone();
    let mut changed = false;
    for &i in &order {
        let value = net.eval_node(i, &current);
        if value != current.get(i) {
            current.set(i, value);
            changed = true;
        }
    }
    (current, changed)
}

/// Per-clause satisfied-literal counts, kept incrementally under single-bit
/// flips so a sequential micro-step costs `O(occurrences of the variable)`
/// instead of `O(m)`.
#[derive(Debug, Clone)]
pub struct ClauseCounters {
    sat_literals: Vec<u32>,
    unsat_count: usize,
}

impl ClauseCounters {
    pub fn new(net: &Network, state: &State) -> Self {
        let mut counters = ClauseCounters {
            sat_literals: vec![0; net.num_clauses()],
            unsat_count: 0,
        };
        counters.recount(net, state);
        counters
    }

    /// Rebuilds all counts from scratch.
    pub fn recount(&mut self, net: &Network, state: &State) {
        self.sat_literals.iter_mut().for_each(|c| *c = 0);
        self.unsat_count = 0;
        for (j, clause) in net.formula().clauses().iter().enumerate() {
            let sat = clause.literals().iter().filter(|l| l.satisfied_by(state.get(l.index()))).count();
            self.sat_literals[j] = sat as u32;
            if sat == 0 {
                self.unsat_count += 1;
            }
        }
    }

    pub fn clause_satisfied(&self, j: usize) -> bool {
        self.sat_literals[j] > 0
    }

    pub fn satisfied_literals(&self, j: usize) -> u32 {
        self.sat_literals[j]
    }

    pub fn unsat_count(&self) -> usize {
        self.unsat_count
    }

    pub fn all_satisfied(&self) -> bool {
        self.unsat_count == 0
    }

    /// Adjusts counts for variable `i` changing value to `new_value`. The
    /// network provides the occurrence lists.
    pub fn apply_flip(&mut self, net: &Network, i: usize, new_value: bool) {
        let node = net.node(i);
        let (gains, loses) = if new_value {
            (node.occurs_pos(), node.occurs_neg())
        } else {
            (node.occurs_neg(), node.occurs_pos())
        };
        for &j in gains {
            self.sat_literals[j] += 1;
            if self.sat_literals[j] == 1 {
                self.unsat_count -= 1;
            }
        }
        for &j in loses {
            self.sat_literals[j] -= 1;
            if self.sat_literals[j] == 0 {
                self.unsat_count += 1;
            }
        }
    }
}

/// Sequential dynamics over one owned state with incremental clause counts.
/// This is the engine behind the asynchronous solver; the free functions
/// above stay allocation-per-step simple for analysis work.
#[derive(Debug)]
pub struct SequentialEngine<'a> {
    net: &'a Network,
    state: State,
    counters: ClauseCounters,
    order: Vec<usize>,
}

impl<'a> SequentialEngine<'a> {
    pub fn new(net: &'a Network, state: State) -> Self {
        assert_eq!(state.len(), net.num_vars());
        let counters = ClauseCounters::new(net, &state);
        let order = (0..net.num_vars()).collect();
        SequentialEngine { net, state, counters, order }
    }

    pub fn state(&self) -> &State {
        &self.state
    }

    pub fn unsat_count(&self) -> usize {
        self.counters.unsat_count()
    }

    pub fn is_satisfied(&self) -> bool {
        self.counters.all_satisfied()
    }

    /// Replaces the state (restart) and rebuilds the counters.
    pub fn reset(&mut self, state: State) {
        assert_eq!(state.len(), self.net.num_vars());
        self.state = state;
        self.counters.recount(self.net, &self.state);
    }

    /// Evaluates `F_i` from the clause counters in
    /// `O(|O_i| + |A_i|)` and writes the result back. Returns true iff the
    /// variable changed.
    pub fn micro_update(&mut self, i: usize) -> bool {
        let node = self.net.node(i);
        let keep = self.state.get(i) && node.occurs_neg().iter().all(|&j| self.counters.clause_satisfied(j));
        let value = keep || !node.occurs_pos().iter().all(|&j| self.counters.clause_satisfied(j));
        if value == self.state.get(i) {
            return false;
        }
        self.state.set(i, value);
        self.counters.apply_flip(self.net, i, value);
        true
    }

    /// One macro-transition under a fresh random permutation. Returns true
    /// iff any variable changed.
    pub fn macro_step(&mut self, rng: &mut impl Rng) -> bool {
        self.order.shuffle(rng);
        let mut changed = false;
        for k in 0..self.order.len() {
            changed |= self.micro_update(self.order[k]);
        }
        changed
    }
}

/// Which dynamics to follow in a trajectory trace.
#[derive(Debug, Clone, Copy)]
pub enum TraceDynamics {
    Synchronous,
    Probabilistic(PbnParams),
    Asynchronous,
}

/// Writes up to `max_steps` successive states, one bitstring per line,
/// stopping early at a fixed point. A debugging aid behind the CLI's
/// verbosity flag.
pub fn write_trajectory<W: Write>(
    net: &Network,
    dynamics: TraceDynamics,
    start: &State,
    seed: u64,
    max_steps: usize,
    out: &mut W,
) -> io::Result<()> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut current = start.clone();
    writeln!(out, "{current}")?;
    for _ in 0..max_steps {
        let next = match dynamics {
            TraceDynamics::Synchronous => sbn_step(net, &current),
            TraceDynamics::Probabilistic(params) => pbn_step(net, &current, &params, &mut rng),
            TraceDynamics::Asynchronous => abn_macro_step(net, &current, &mut rng).0,
        };
        writeln!(out, "{next}")?;
        if net.is_fixed_point(&next) {
            break;
        }
        current = next;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::Formula;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn phi1() -> Network {
        Network::compile(&Formula::from_dimacs_clauses(3, &[&[1, -2], &[-1, 2], &[2, 3]]).unwrap())
    }

    fn phi2() -> Network {
        Network::compile(
            &Formula::from_dimacs_clauses(3, &[&[1, 2], &[1, -3], &[-1, -3], &[2, 3], &[1, 3]]).unwrap(),
        )
    }

    fn s(bits: &str) -> State {
        bits.parse().unwrap()
    }

    #[test]
    fn sbn_step_matches_hand_values() {
        let net = phi2();
        assert_eq!(sbn_step(&net, &s("001")), s("110"));
        assert_eq!(sbn_step(&net, &s("111")), s("010"));
        assert_eq!(sbn_step(&net, &s("010")), s("111"));
        assert_eq!(sbn_step(&net, &s("110")), s("110"));
    }

    #[test]
    fn detect_attractor_finds_the_fixed_point() {
        let net = phi2();
        assert_eq!(detect_attractor(&net, &s("011"), 64), Attractor::FixedPoint(s("110")));
        assert_eq!(detect_attractor(&net, &s("110"), 64), Attractor::FixedPoint(s("110")));
    }

    #[test]
    fn detect_attractor_finds_the_period_two_cycle() {
        let net = phi2();
        match detect_attractor(&net, &s("000"), 64) {
            Attractor::Cycle { states, period } => {
                assert_eq!(period, 2);
                let mut set: Vec<String> = states.iter().map(State::to_string).collect();
                set.sort();
                assert_eq!(set, vec!["010", "111"]);
            }
            other => panic!("expected a period-2 cycle, got {other:?}"),
        }
    }

    #[test]
    fn detect_attractor_overflows_at_cap() {
        let net = phi2();
        assert_eq!(detect_attractor(&net, &s("000"), 2), Attractor::Overflow);
    }

    #[test]
    fn pbn_with_p_one_is_synchronous() {
        let net = phi2();
        let params = PbnParams::new(1.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for idx in 0..8 {
            let state = State::from_index(idx, 3);
            assert_eq!(pbn_step(&net, &state, &params, &mut rng), sbn_step(&net, &state));
        }
    }

    #[test]
    fn pbn_never_leaves_a_fixed_point() {
        let net = phi1();
        let params = PbnParams::default();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let fp = s("001");
        for _ in 0..200 {
            assert_eq!(pbn_step(&net, &fp, &params, &mut rng), fp);
        }
    }

    #[test]
    fn pbn_flip_frequency_tracks_p() {
        // From 000, every node of phi2 disagrees with its image (111), so each
        // flips independently with probability p.
        let net = phi2();
        let p = 0.2;
        let params = PbnParams::new(p).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let start = s("000");
        let samples = 100_000u32;
        let mut flips = [0u32; 3];
        for _ in 0..samples {
            let next = pbn_step(&net, &start, &params, &mut rng);
            for (i, flip) in flips.iter_mut().enumerate() {
                *flip += (next.get(i) != start.get(i)) as u32;
            }
        }
        let sigma = (p * (1.0 - p) / samples as f64).sqrt();
        for flip in flips {
            let freq = flip as f64 / samples as f64;
            assert!((freq - p).abs() <= 3.0 * sigma, "flip frequency {freq} strays from p={p}");
        }
    }

    #[test]
    fn pbn_nodes_agreeing_with_image_never_change() {
        // At (1,0,1) the image is (0,0,0): node 2 agrees and must stay put.
        let net = phi2();
        let params = PbnParams::default();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let start = s("101");
        for _ in 0..10_000 {
            let next = pbn_step(&net, &start, &params, &mut rng);
            assert!(!next.get(1), "node with F_i(s) == s_i drifted");
        }
    }

    #[test]
    fn micro_step_updates_exactly_one_component() {
        let net = phi1();
        // c2 = (!x1 | x2) is unsatisfied at (1,0,0), so F_2 fires.
        assert_eq!(abn_micro_step(&net, &s("100"), 1), s("110"));
        // Fixed points never move.
        for i in 0..3 {
            assert_eq!(abn_micro_step(&net, &s("001"), i), s("001"));
        }
    }

    #[test]
    fn macro_step_detects_fixed_points_exactly() {
        let net = phi1();
        let mut rng = ChaCha8Rng::seed_from_u64(123);
        for idx in 0..8 {
            let state = State::from_index(idx, 3);
            for _ in 0..20 {
                let (_, changed) = abn_macro_step(&net, &state, &mut rng);
                assert_eq!(!changed, net.is_fixed_point(&state));
            }
        }
    }

    #[test]
    fn macro_step_detection_is_exhaustive_at_ten_variables() {
        let f = crate::formula::generate::generate(
            &crate::formula::generate::GenSpec::new(10, 30, 5).forced(),
        );
        let net = Network::compile(&f);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for idx in 0..1u64 << 10 {
            let state = State::from_index(idx, 10);
            let fixed = net.is_fixed_point(&state);
            for _ in 0..20 {
                let (_, changed) = abn_macro_step(&net, &state, &mut rng);
                assert_eq!(!changed, fixed, "detection mismatch at {state}");
            }
        }
    }

    #[test]
    fn macro_step_reaches_a_solution_from_101_in_one_step() {
        // From (1,0,1) the only unsatisfied clause is c2; each of its two
        // variables flips under sequential update, and either order lands on
        // a solution within the same macro-transition.
        let net = phi1();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let (next, changed) = abn_macro_step(&net, &s("101"), &mut rng);
        assert!(changed);
        assert_eq!(next, s("001")); // frozen from a seeded run
        assert!(net.formula().evaluate(&next).satisfied);
    }

    #[test]
    fn sequential_engine_agrees_with_functional_micro_steps() {
        let f = crate::formula::generate::generate(&crate::formula::generate::GenSpec::new(12, 40, 3).forced());
        let net = Network::compile(&f);
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let mut reference = State::random(12, &mut rng);
        let mut engine = SequentialEngine::new(&net, reference.clone());
        for _ in 0..500 {
            let i = rng.random_range(0..12);
            let expect = abn_micro_step(&net, &reference, i);
            let changed = engine.micro_update(i);
            assert_eq!(changed, expect != reference);
            reference = expect;
            assert_eq!(engine.state(), &reference);
            assert_eq!(engine.unsat_count(), f.evaluate(&reference).unsat_count);
        }
    }

    #[test]
    fn engine_macro_step_reports_fixed_points() {
        let net = phi1();
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let mut engine = SequentialEngine::new(&net, s("001"));
        assert!(!engine.macro_step(&mut rng));
        engine.reset(s("100"));
        assert!(engine.macro_step(&mut rng));
        assert!(engine.is_satisfied() || engine.unsat_count() > 0);
    }

    #[test]
    fn trajectory_dedups_and_orders() {
        let mut t = Trajectory::new();
        assert_eq!(t.push(s("00")), None);
        assert_eq!(t.push(s("01")), None);
        assert_eq!(t.push(s("00")), Some(0));
        assert_eq!(t.len(), 2);
        assert_eq!(t.current(), Some(&s("01")));
    }

    #[test]
    fn trace_writes_one_bitstring_per_line() {
        let net = phi2();
        let mut buf = Vec::new();
        write_trajectory(&net, TraceDynamics::Synchronous, &s("011"), 0, 10, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "011\n110\n");
    }

    #[test]
    fn invalid_probability_is_rejected() {
        assert!(PbnParams::new(0.0).is_err());
        assert!(PbnParams::new(1.1).is_err());
        assert!(PbnParams::new(f64::NAN).is_err());
        assert!(PbnParams::new(1.0).is_ok());
    }
}
