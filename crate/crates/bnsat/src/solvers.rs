//! The incomplete solvers: three network-dynamics procedures (synchronous,
//! probabilistic, asynchronous) and a greedy-flip local search baseline.
//!
//! All solvers are sound by construction: a returned model is re-checked
//! against the formula before the outcome is built, and a violation aborts
//! rather than reporting a wrong answer. Runs are reproducible: identical
//! `(formula, params, budget, seed)` yield identical outcomes including all
//! counters (wall-clock time aside).

use std::fmt;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::dynamics::{
    ClauseCounters, DEFAULT_TRAJECTORY_CAP, PbnParams, SequentialEngine, StepCounters, Trajectory,
};
use crate::formula::{Formula, State};
use crate::mapping::Network;

/// Which procedure produced an outcome.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Sbn,
    Pbn,
    Abn,
    Gsat,
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Algorithm::Sbn => "sbn",
            Algorithm::Pbn => "pbn",
            Algorithm::Abn => "abn",
            Algorithm::Gsat => "gsat",
        };
        f.write_str(name)
    }
}

/// Run limits. `max_iterations` caps whole-state transitions in each
/// algorithm's native unit (steps, macro-transitions, flips);
/// `max_micro_updates` caps single-node updates, the unit that compares
/// across algorithms; the probabilistic and asynchronous procedures restart
/// every `restart_coefficient · n²` transitions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveBudget {
    pub max_iterations: u64,
    pub restart_coefficient: f64,
    pub wall_clock_limit: Option<Duration>,
    pub max_micro_updates: Option<u64>,
}

impl Default for SolveBudget {
    fn default() -> Self {
        SolveBudget {
            max_iterations: 1_000_000,
            restart_coefficient: 1.0,
            wall_clock_limit: None,
            max_micro_updates: None,
        }
    }
}

impl SolveBudget {
    pub fn with_max_iterations(max_iterations: u64) -> Self {
        SolveBudget { max_iterations, ..Default::default() }
    }

    /// Transitions per try before a restart.
    pub fn restart_threshold(&self, num_vars: usize) -> u64 {
        let raw = self.restart_coefficient * (num_vars * num_vars) as f64;
        (raw.ceil() as u64).max(1)
    }

    fn assert_valid(&self) {
        assert!(self.max_iterations >= 1, "budget must allow at least one transition");
        assert!(self.restart_coefficient > 0.0, "restart coefficient must be positive");
    }
}

/// Greedy-flip parameters. `None` keeps the conventional defaults: `5 · n`
/// flips per try and as many tries as the budget allows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct GsatParams {
    pub max_flips: Option<u64>,
    pub max_tries: Option<u64>,
}

impl GsatParams {
    fn flips_per_try(&self, num_vars: usize) -> u64 {
        let flips = self.max_flips.unwrap_or(5 * num_vars as u64);
        assert!(flips >= 1, "at least one flip per try is required");
        flips
    }

    fn tries(&self) -> u64 {
        self.max_tries.unwrap_or(u64::MAX)
    }
}

/// A solver configuration: algorithm plus its parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Solver {
    Sbn,
    Pbn(PbnParams),
    Abn,
    Gsat(GsatParams),
}

impl Solver {
    pub fn algorithm(&self) -> Algorithm {
        match self {
            Solver::Sbn => Algorithm::Sbn,
            Solver::Pbn(_) => Algorithm::Pbn,
            Solver::Abn => Algorithm::Abn,
            Solver::Gsat(_) => Algorithm::Gsat,
        }
    }

    /// Stable label for reports; carries the mixing probability for the
    /// probabilistic procedure.
    pub fn label(&self) -> String {
        match self {
            Solver::Pbn(params) => format!("pbn(p={:.3})", params.p()),
            other => other.algorithm().to_string(),
        }
    }

    pub fn run(&self, formula: &Formula, budget: &SolveBudget, seed: u64) -> SolveOutcome {
        self.run_observed(formula, budget, seed, |_| {})
    }

    /// Like [`Solver::run`], invoking `observe` with every whole-state
    /// transition result (trace hook).
    pub fn run_observed(
        &self,
        formula: &Formula,
        budget: &SolveBudget,
        seed: u64,
        observe: impl FnMut(&State),
    ) -> SolveOutcome {
        budget.assert_valid();
        match self {
            Solver::Sbn => run_sbn(formula, budget, seed, observe),
            Solver::Pbn(params) => run_pbn(formula, params, budget, seed, observe),
            Solver::Abn => run_abn(formula, budget, seed, observe),
            Solver::Gsat(params) => run_gsat(formula, params, budget, seed, observe),
        }
    }
}

/// Whether a run produced a model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveResult {
    Solution(State),
    Exhausted,
}

/// The record of one solver run. Exhaustion is a value, not an error.
#[derive(Debug, Clone)]
pub struct SolveOutcome {
    pub result: SolveResult,
    pub counters: StepCounters,
    pub elapsed: Duration,
    pub seed: u64,
    pub algorithm: Algorithm,
}

impl SolveOutcome {
    pub fn is_solved(&self) -> bool {
        matches!(self.result, SolveResult::Solution(_))
    }

    pub fn model(&self) -> Option<&State> {
        match &self.result {
            SolveResult::Solution(s) => Some(s),
            SolveResult::Exhausted => None,
        }
    }

    /// Flattens the outcome for CSV/JSON reporting.
    pub fn record(&self, formula: &Formula) -> SolveRecord {
        SolveRecord {
            algorithm: self.algorithm,
            num_vars: formula.num_vars(),
            num_clauses: formula.num_clauses(),
            seed: self.seed,
            solved: self.is_solved(),
            iterations: self.counters.transitions,
            micro_updates: self.counters.micro_updates,
            restarts: self.counters.restarts,
            elapsed_ms: self.elapsed.as_secs_f64() * 1e3,
        }
    }
}

/// Flat per-run record: one CSV row or JSON object.
#[derive(Debug, Clone, Serialize)]
pub struct SolveRecord {
    pub algorithm: Algorithm,
    pub num_vars: usize,
    pub num_clauses: usize,
    pub seed: u64,
    pub solved: bool,
    pub iterations: u64,
    pub micro_updates: u64,
    pub restarts: u64,
    pub elapsed_ms: f64,
}

/// Synchronous-network solver: run the deterministic dynamics, return the
/// fixed point if one is reached, restart on cycles.
pub fn solve_sbn(formula: &Formula, budget: &SolveBudget, seed: u64) -> SolveOutcome {
    Solver::Sbn.run(formula, budget, seed)
}

/// Probabilistic-network solver: mix each node's function with the identity,
/// test satisfaction whenever a step leaves the state unchanged, restart
/// every `restart_coefficient · n²` transitions.
pub fn solve_pbn(formula: &Formula, params: &PbnParams, budget: &SolveBudget, seed: u64) -> SolveOutcome {
    Solver::Pbn(*params).run(formula, budget, seed)
}

/// Asynchronous-network solver: random sequential macro-transitions; an
/// unchanged macro-transition certifies a fixed point.
pub fn solve_abn(formula: &Formula, budget: &SolveBudget, seed: u64) -> SolveOutcome {
    Solver::Abn.run(formula, budget, seed)
}

/// Greedy local search baseline: flip the variable giving the greatest
/// decrease in unsatisfied clauses (sideways moves allowed, ties uniform),
/// restart after `max_flips`.
pub fn solve_gsat(formula: &Formula, params: &GsatParams, budget: &SolveBudget, seed: u64) -> SolveOutcome {
    Solver::Gsat(*params).run(formula, budget, seed)
}

struct RunClock {
    started: Instant,
    deadline: Option<Instant>,
}

impl RunClock {
    fn new(budget: &SolveBudget) -> Self {
        let started = Instant::now();
        RunClock { started, deadline: budget.wall_clock_limit.map(|limit| started + limit) }
    }

    fn exhausted(&self, budget: &SolveBudget, counters: &StepCounters) -> bool {
        counters.transitions >= budget.max_iterations
            || budget.max_micro_updates.is_some_and(|cap| counters.micro_updates >= cap)
            || self.deadline.is_some_and(|d| Instant::now() >= d)
    }

    fn elapsed(&self) -> Duration {
        self.started.elapsed()
    }
}

fn solution(
    formula: &Formula,
    algorithm: Algorithm,
    state: State,
    counters: StepCounters,
    clock: &RunClock,
    seed: u64,
) -> SolveOutcome {
    assert!(
        formula.is_satisfied_by(&state),
        "{algorithm} produced a non-satisfying model; solver soundness is broken"
    );
    SolveOutcome { result: SolveResult::Solution(state), counters, elapsed: clock.elapsed(), seed, algorithm }
}

fn exhausted(algorithm: Algorithm, counters: StepCounters, clock: &RunClock, seed: u64) -> SolveOutcome {
    SolveOutcome { result: SolveResult::Exhausted, counters, elapsed: clock.elapsed(), seed, algorithm }
}

fn run_sbn(
    formula: &Formula,
    budget: &SolveBudget,
    seed: u64,
    mut observe: impl FnMut(&State),
) -> SolveOutcome {
    let net = Network::compile(formula);
    let n = formula.num_vars();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counters = StepCounters::default();
    let clock = RunClock::new(budget);

    let mut first_try = true;
    loop {
        if !first_try {
            counters.restarts += 1;
        }
        first_try = false;
        let mut state = State::random(n, &mut rng);
        observe(&state);
        let mut trajectory = Trajectory::new();
        trajectory.push(state.clone());

        loop {
            let image = net.eval_all(&state);
            counters.micro_updates += n as u64;
            if image == state {
                // The image computation was a fixed-point check, not a move.
                return solution(formula, Algorithm::Sbn, state, counters, &clock, seed);
            }
            if clock.exhausted(budget, &counters) {
                return exhausted(Algorithm::Sbn, counters, &clock, seed);
            }
            counters.transitions += 1;
            observe(&image);
            if trajectory.push(image.clone()).is_some() || trajectory.len() >= DEFAULT_TRAJECTORY_CAP {
                break; // cycle (or cap overflow treated as one): restart
            }
            state = image;
        }
    }
}

fn run_pbn(
    formula: &Formula,
    params: &PbnParams,
    budget: &SolveBudget,
    seed: u64,
    mut observe: impl FnMut(&State),
) -> SolveOutcome {
    let net = Network::compile(formula);
    let n = formula.num_vars();
    let threshold = budget.restart_threshold(n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counters = StepCounters::default();
    let clock = RunClock::new(budget);

    let mut state = State::random(n, &mut rng);
    observe(&state);
    let mut try_transitions = 0u64;
    loop {
        if clock.exhausted(budget, &counters) {
            return exhausted(Algorithm::Pbn, counters, &clock, seed);
        }
        let (next, changed) = crate::dynamics::pbn_step_tracked(&net, &state, params, &mut rng);
        counters.micro_updates += n as u64;
        counters.transitions += 1;
        try_transitions += 1;
        observe(&next);
        if !changed && formula.is_satisfied_by(&next) {
            return solution(formula, Algorithm::Pbn, next, counters, &clock, seed);
        }
        state = next;
        if try_transitions >= threshold {
            state = State::random(n, &mut rng);
            observe(&state);
            counters.restarts += 1;
            try_transitions = 0;
        }
    }
}

fn run_abn(
    formula: &Formula,
    budget: &SolveBudget,
    seed: u64,
    mut observe: impl FnMut(&State),
) -> SolveOutcome {
    let net = Network::compile(formula);
    let n = formula.num_vars();
    let threshold = budget.restart_threshold(n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counters = StepCounters::default();
    let clock = RunClock::new(budget);

    let mut engine = SequentialEngine::new(&net, State::random(n, &mut rng));
    observe(engine.state());
    let mut try_transitions = 0u64;
    loop {
        if clock.exhausted(budget, &counters) {
            return exhausted(Algorithm::Abn, counters, &clock, seed);
        }
        let changed = engine.macro_step(&mut rng);
        counters.micro_updates += n as u64;
        counters.transitions += 1;
        try_transitions += 1;
        observe(engine.state());
        if !changed {
            // Every node was re-evaluated once and none moved, so this is a
            // fixed point and must satisfy the formula.
            assert!(
                engine.is_satisfied(),
                "unchanged macro-transition on an unsatisfied assignment: sequential engine is corrupt"
            );
            return solution(formula, Algorithm::Abn, engine.state().clone(), counters, &clock, seed);
        }
        if try_transitions >= threshold {
            engine.reset(State::random(n, &mut rng));
            observe(engine.state());
            counters.restarts += 1;
            try_transitions = 0;
        }
    }
}

/// Incremental greedy-flip scoring: for every variable, how many unsatisfied
/// clauses a flip would fix (`make`) and how many critically-satisfied
/// clauses it would break (`brk`). Kept exact under single flips.
struct FlipScores {
    make: Vec<i64>,
    brk: Vec<i64>,
}

impl FlipScores {
    fn new(net: &Network, counters: &ClauseCounters, state: &State) -> Self {
        let n = net.num_vars();
        let mut scores = FlipScores { make: vec![0; n], brk: vec![0; n] };
        for (j, clause) in net.formula().clauses().iter().enumerate() {
            match counters.satisfied_literals(j) {
                0 => {
                    for lit in clause.literals() {
                        scores.make[lit.index()] += 1;
                    }
                }
                1 => scores.brk[sole_true_var(net, j, state, usize::MAX)] += 1,
                _ => {}
            }
        }
        scores
    }

    /// Decrease in unsatisfied clauses if variable `i` flips.
    fn score(&self, i: usize) -> i64 {
        self.make[i] - self.brk[i]
    }
}

/// The variable of the unique satisfied literal of clause `j`, ignoring
/// variable `exclude`.
fn sole_true_var(net: &Network, j: usize, state: &State, exclude: usize) -> usize {
    net.formula()
        .clause(j)
        .literals()
        .iter()
        .find(|l| l.index() != exclude && l.satisfied_by(state.get(l.index())))
        .expect("clause has a satisfied literal besides the excluded variable")
        .index()
}

fn gsat_flip(
    net: &Network,
    state: &mut State,
    counters: &mut ClauseCounters,
    scores: &mut FlipScores,
    v: usize,
) {
    let old = state.get(v);
    state.set(v, !old);
    let node = net.node(v);
    let (turn_false, turn_true) =
        if old { (node.occurs_pos(), node.occurs_neg()) } else { (node.occurs_neg(), node.occurs_pos()) };

    // Counters still hold the pre-flip counts; the state is already flipped.
    for &j in turn_false {
        match counters.satisfied_literals(j) {
            1 => {
                // Clause drops to unsatisfied: any of its variables can fix it.
                for lit in net.formula().clause(j).literals() {
                    scores.make[lit.index()] += 1;
                }
                scores.brk[v] -= 1;
            }
            2 => {
                // One satisfied literal survives; its variable turns critical.
                scores.brk[sole_true_var(net, j, state, v)] += 1;
            }
            _ => {}
        }
    }
    for &j in turn_true {
        match counters.satisfied_literals(j) {
            0 => {
                for lit in net.formula().clause(j).literals() {
                    scores.make[lit.index()] -= 1;
                }
                scores.brk[v] += 1;
            }
            1 => {
                // The previously critical variable is no longer alone.
                scores.brk[sole_true_var(net, j, state, v)] -= 1;
            }
            _ => {}
        }
    }
    counters.apply_flip(net, v, !old);
}

fn run_gsat(
    formula: &Formula,
    params: &GsatParams,
    budget: &SolveBudget,
    seed: u64,
    mut observe: impl FnMut(&State),
) -> SolveOutcome {
    let net = Network::compile(formula);
    let n = formula.num_vars();
    let max_flips = params.flips_per_try(n);
    let max_tries = params.tries();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counters = StepCounters::default();
    let clock = RunClock::new(budget);
    let mut best: Vec<usize> = Vec::with_capacity(n);

    let mut try_index = 0u64;
    loop {
        if try_index >= max_tries {
            return exhausted(Algorithm::Gsat, counters, &clock, seed);
        }
        if try_index > 0 {
            counters.restarts += 1;
        }
        try_index += 1;

        let mut state = State::random(n, &mut rng);
        observe(&state);
        let mut clause_counters = ClauseCounters::new(&net, &state);
        let mut scores = FlipScores::new(&net, &clause_counters, &state);

        for _ in 0..max_flips {
            if clause_counters.all_satisfied() {
                return solution(formula, Algorithm::Gsat, state, counters, &clock, seed);
            }
            if clock.exhausted(budget, &counters) {
                return exhausted(Algorithm::Gsat, counters, &clock, seed);
            }
            best.clear();
            let mut best_score = i64::MIN;
            for v in 0..n {
                let s = scores.score(v);
                if s > best_score {
                    best_score = s;
                    best.clear();
                    best.push(v);
                } else if s == best_score {
                    best.push(v);
                }
            }
            let v = best[rng.random_range(0..best.len())];
            gsat_flip(&net, &mut state, &mut clause_counters, &mut scores, v);
            counters.transitions += 1;
            counters.micro_updates += 1;
            observe(&state);
        }
        if clause_counters.all_satisfied() {
            return solution(formula, Algorithm::Gsat, state, counters, &clock, seed);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::generate::{GenSpec, generate};

    fn phi1() -> Formula {
        Formula::from_dimacs_clauses(3, &[&[1, -2], &[-1, 2], &[2, 3]]).unwrap()
    }

    fn phi2() -> Formula {
        Formula::from_dimacs_clauses(3, &[&[1, 2], &[1, -3], &[-1, -3], &[2, 3], &[1, 3]]).unwrap()
    }

    fn all_solvers() -> Vec<Solver> {
        vec![
            Solver::Sbn,
            Solver::Pbn(PbnParams::default()),
            Solver::Abn,
            Solver::Gsat(GsatParams::default()),
        ]
    }

    #[test]
    fn every_solver_cracks_the_worked_examples() {
        let budget = SolveBudget::with_max_iterations(100_000);
        for f in [phi1(), phi2()] {
            for solver in all_solvers() {
                for seed in 0..20 {
                    let outcome = solver.run(&f, &budget, seed);
                    let model = outcome
                        .model()
                        .unwrap_or_else(|| panic!("{} exhausted with seed {seed}", solver.label()));
                    assert!(f.is_satisfied_by(model));
                    assert_eq!(outcome.algorithm, solver.algorithm());
                    assert_eq!(outcome.seed, seed);
                }
            }
        }
    }

    #[test]
    fn sbn_solves_zero_clause_formula_without_transitions() {
        let f = Formula::new(5, vec![]).unwrap();
        let outcome = solve_sbn(&f, &SolveBudget::default(), 7);
        assert!(outcome.is_solved());
        assert_eq!(outcome.counters.transitions, 0);
        assert_eq!(outcome.counters.restarts, 0);
    }

    #[test]
    fn sbn_seed_sweep_solves_phi1_within_bound() {
        let f = phi1();
        let budget = SolveBudget::with_max_iterations(800);
        for seed in 0..100 {
            let outcome = solve_sbn(&f, &budget, seed);
            assert!(outcome.is_solved(), "seed {seed} exhausted");
            assert!(outcome.counters.transitions <= 800);
        }
    }

    #[test]
    fn sbn_reports_exhaustion_on_unsatisfiable_input() {
        // (x1)(!x1): no fixed points exist, so the run must exhaust.
        let f = Formula::from_dimacs_clauses(1, &[&[1], &[-1]]).unwrap();
        let budget = SolveBudget::with_max_iterations(50);
        let outcome = solve_sbn(&f, &budget, 3);
        assert!(!outcome.is_solved());
        assert_eq!(outcome.counters.transitions, 50);
    }

    #[test]
    fn pbn_starting_on_a_fixed_point_returns_at_first_repetition() {
        let f = phi2();
        let target: State = "110".parse().unwrap();
        // Find a seed whose random initial state is the solution.
        let seed = (0..200)
            .find(|&s| State::random(3, &mut ChaCha8Rng::seed_from_u64(s)) == target)
            .expect("some seed starts on the fixed point");
        let outcome = solve_pbn(&f, &PbnParams::default(), &SolveBudget::default(), seed);
        assert!(outcome.is_solved());
        assert_eq!(outcome.counters.transitions, 1);
    }

    #[test]
    fn abn_solves_every_seed_on_phi1() {
        let f = phi1();
        let budget = SolveBudget::with_max_iterations(10_000);
        for seed in 0..50 {
            let outcome = solve_abn(&f, &budget, seed);
            assert!(outcome.is_solved(), "seed {seed}");
            assert_eq!(outcome.counters.micro_updates, outcome.counters.transitions * 3);
        }
    }

    #[test]
    fn abn_on_satisfying_initial_state_takes_one_macro_transition() {
        let f = Formula::new(4, vec![]).unwrap(); // every state is a solution
        let outcome = solve_abn(&f, &SolveBudget::default(), 11);
        assert!(outcome.is_solved());
        assert_eq!(outcome.counters.transitions, 1);
    }

    #[test]
    fn gsat_solves_already_satisfying_start_without_flips() {
        let f = Formula::new(3, vec![]).unwrap();
        let outcome = solve_gsat(&f, &GsatParams::default(), &SolveBudget::default(), 2);
        assert!(outcome.is_solved());
        assert_eq!(outcome.counters.transitions, 0);
    }

    #[test]
    fn gsat_solves_phi1_quickly_across_seeds() {
        let f = phi1();
        let params = GsatParams::default(); // 15 flips per try at n = 3
        let budget = SolveBudget::with_max_iterations(15);
        let solved = (0..100).filter(|&seed| solve_gsat(&f, &params, &budget, seed).is_solved()).count();
        assert!(solved >= 99, "only {solved}/100 seeds solved within 5n flips");
    }

    #[test]
    fn outcomes_are_reproducible_counter_for_counter() {
        let f = generate(&GenSpec::new(30, 80, 5).forced());
        let budget = SolveBudget::with_max_iterations(20_000);
        for solver in all_solvers() {
            let a = solver.run(&f, &budget, 42);
            let b = solver.run(&f, &budget, 42);
            assert_eq!(a.result, b.result, "{}", solver.label());
            assert_eq!(a.counters, b.counters, "{}", solver.label());
        }
    }

    #[test]
    fn budget_law_holds_under_exhaustion() {
        let f = Formula::from_dimacs_clauses(2, &[&[1], &[-1]]).unwrap(); // unsatisfiable
        let budget =
            SolveBudget { max_iterations: 137, restart_coefficient: 2.5, ..Default::default() };
        for solver in all_solvers() {
            let outcome = solver.run(&f, &budget, 9);
            assert!(!outcome.is_solved());
            assert!(outcome.counters.transitions <= 137, "{}", solver.label());
        }
        // Restarts land exactly on multiples of ceil(c · n²) = 10.
        let outcome = solve_pbn(&f, &PbnParams::default(), &budget, 9);
        assert_eq!(outcome.counters.restarts, 137 / 10);
    }

    #[test]
    fn micro_update_cap_is_enforced() {
        let f = Formula::from_dimacs_clauses(2, &[&[1], &[-1]]).unwrap();
        let budget = SolveBudget {
            max_micro_updates: Some(100),
            ..SolveBudget::with_max_iterations(u64::MAX - 1)
        };
        for solver in all_solvers() {
            let outcome = solver.run(&f, &budget, 1);
            assert!(
                outcome.counters.micro_updates <= 100 + f.num_vars() as u64,
                "{}",
                solver.label()
            );
        }
    }

    #[test]
    fn records_flatten_the_outcome() {
        let f = phi1();
        let outcome = solve_abn(&f, &SolveBudget::default(), 4);
        let record = outcome.record(&f);
        assert_eq!(record.num_vars, 3);
        assert_eq!(record.num_clauses, 3);
        assert!(record.solved);
        assert_eq!(record.iterations, outcome.counters.transitions);
        let json = serde_json::to_value(&record).unwrap();
        assert_eq!(json["algorithm"], "abn");
    }

    #[test]
    fn observer_sees_the_final_state() {
        let f = phi1();
        for solver in all_solvers() {
            let mut last = None;
            let outcome = solver.run_observed(&f, &SolveBudget::default(), 6, |s| last = Some(s.clone()));
            assert_eq!(last.as_ref(), outcome.model(), "{}", solver.label());
        }
    }

    #[test]
    fn flip_scores_stay_consistent_with_recount() {
        let f = generate(&GenSpec::new(15, 60, 13));
        let net = Network::compile(&f);
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let mut state = State::random(15, &mut rng);
        let mut counters = ClauseCounters::new(&net, &state);
        let mut scores = FlipScores::new(&net, &counters, &state);
        for _ in 0..300 {
            let v = rng.random_range(0..15);
            gsat_flip(&net, &mut state, &mut counters, &mut scores, v);
            let fresh_counters = ClauseCounters::new(&net, &state);
            let fresh = FlipScores::new(&net, &fresh_counters, &state);
            assert_eq!(scores.make, fresh.make, "make diverged after flipping {v}");
            assert_eq!(scores.brk, fresh.brk, "break diverged after flipping {v}");
            assert_eq!(counters.unsat_count(), fresh_counters.unsat_count());
        }
    }
}
