//! CNF data model: literals, clauses, formulas, truth assignments.
//!
//! A [`Formula`] is a conjunction of [`Clause`]s over variables `1..=n`; a
//! [`State`] is an assignment of `n` booleans that doubles as a network state
//! and a truth assignment. Clauses are validated at construction: they must be
//! non-empty and non-tautological, and duplicate literals are removed. See
//! [`dimacs`] for parsing/serialization and [`generate`] for random 3-SAT
//! instance generation.

pub mod dimacs;
pub mod generate;

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Serialize, Serializer};
use thiserror::Error;

/// Errors raised when building formulas from untrusted parts.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("empty clause")]
    EmptyClause,
    #[error("tautological clause: variable {var} occurs with both signs")]
    TautologicalClause { var: u32 },
    #[error("literal references variable {var}, but the formula declares only {num_vars}")]
    VariableOutOfRange { var: u32, num_vars: usize },
    #[error("a formula must declare at least one variable")]
    NoVariables,
}

/// A signed variable: `x_v` or `!x_v`, with `v` in `1..=n` as in DIMACS.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    var: u32,
    positive: bool,
}

impl Literal {
    /// Builds a literal over 1-based variable `var`.
    pub fn new(var: u32, positive: bool) -> Self {
        assert!(var >= 1, "variable indices are 1-based");
        Literal { var, positive }
    }

    pub fn positive(var: u32) -> Self {
        Literal::new(var, true)
    }

    pub fn negative(var: u32) -> Self {
        Literal::new(var, false)
    }

    /// Decodes a signed DIMACS integer (`3` → `x3`, `-3` → `!x3`).
    pub fn from_dimacs(code: i32) -> Self {
        assert!(code != 0, "0 is the DIMACS clause terminator, not a literal");
        Literal::new(code.unsigned_abs(), code > 0)
    }

    pub fn to_dimacs(self) -> i32 {
        let v = self.var as i32;
        if self.positive { v } else { -v }
    }

    /// 1-based variable index.
    pub fn var(self) -> u32 {
        self.var
    }

    /// 0-based position of the variable in a [`State`].
    pub fn index(self) -> usize {
        (self.var - 1) as usize
    }

    pub fn is_positive(self) -> bool {
        self.positive
    }

    pub fn negated(self) -> Self {
        Literal { var: self.var, positive: !self.positive }
    }

    /// True iff assigning `value` to the variable satisfies this literal.
    pub fn satisfied_by(self, value: bool) -> bool {
        value == self.positive
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

/// A disjunction of literals. Canonical form: literals sorted by variable,
/// deduplicated, never empty, never tautological.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Clause {
    literals: Vec<Literal>,
}

impl Clause {
    /// Validates and canonicalizes a literal list. Duplicate literals are
    /// silently dropped; empty and tautological clauses are rejected.
    pub fn new(mut literals: Vec<Literal>) -> Result<Self, FormulaError> {
        if literals.is_empty() {
            return Err(FormulaError::EmptyClause);
        }
        literals.sort();
        literals.dedup();
        for pair in literals.windows(2) {
            if pair[0].var() == pair[1].var() {
                return Err(FormulaError::TautologicalClause { var: pair[0].var() });
            }
        }
        Ok(Clause { literals })
    }

    pub fn literals(&self) -> &[Literal] {
        &self.literals
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    pub fn is_empty(&self) -> bool {
        false // rejected at construction
    }

    pub fn max_var(&self) -> u32 {
        self.literals.last().map(|l| l.var()).unwrap_or(0)
    }

    /// True iff some literal is satisfied by `state`.
    pub fn is_satisfied_by(&self, state: &State) -> bool {
        self.literals.iter().any(|l| l.satisfied_by(state.get(l.index())))
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, lit) in self.literals.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{lit}")?;
        }
        write!(f, " 0")
    }
}

/// A CNF formula: `num_vars` variables and an ordered clause list.
///
/// Clause order is significant (clause indices are referenced by the network
/// compiler), literal order within a clause is not.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Formula {
    num_vars: usize,
    clauses: Vec<Clause>,
    source_name: Option<String>,
}

impl Formula {
    pub fn new(num_vars: usize, clauses: Vec<Clause>) -> Result<Self, FormulaError> {
        if num_vars == 0 {
            return Err(FormulaError::NoVariables);
        }
        for clause in &clauses {
            let max = clause.max_var();
            if max as usize > num_vars {
                return Err(FormulaError::VariableOutOfRange { var: max, num_vars });
            }
        }
        Ok(Formula { num_vars, clauses, source_name: None })
    }

    /// Convenience constructor from signed DIMACS integers, one inner slice
    /// per clause (no `0` terminators).
    pub fn from_dimacs_clauses(num_vars: usize, clauses: &[&[i32]]) -> Result<Self, FormulaError> {
        let clauses = clauses
            .iter()
            .map(|lits| Clause::new(lits.iter().map(|&c| Literal::from_dimacs(c)).collect()))
            .collect::<Result<Vec<_>, _>>()?;
        Formula::new(num_vars, clauses)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.source_name = Some(name.into());
        self
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn clause(&self, j: usize) -> &Clause {
        &self.clauses[j]
    }

    pub fn source_name(&self) -> Option<&str> {
        self.source_name.as_deref()
    }

    /// Total number of literals across all clauses.
    pub fn literal_count(&self) -> usize {
        self.clauses.iter().map(Clause::len).sum()
    }

    /// Value of clause `j` under `state`.
    pub fn evaluate_clause(&self, j: usize, state: &State) -> bool {
        debug_assert_eq!(state.len(), self.num_vars);
        self.clauses[j].is_satisfied_by(state)
    }

    /// True iff every clause holds under `state`. Cheaper than
    /// [`Formula::evaluate`] when the conflict set is not needed.
    pub fn is_satisfied_by(&self, state: &State) -> bool {
        debug_assert_eq!(state.len(), self.num_vars);
        self.clauses.iter().all(|c| c.is_satisfied_by(state))
    }

    /// Evaluates the whole formula, collecting the unsatisfied clause set.
    pub fn evaluate(&self, state: &State) -> Evaluation {
        assert_eq!(state.len(), self.num_vars, "state length must match variable count");
        let unsat_indices: Vec<usize> = (0..self.clauses.len())
            .filter(|&j| !self.clauses[j].is_satisfied_by(state))
            .collect();
        Evaluation { unsat_count: unsat_indices.len(), satisfied: unsat_indices.is_empty(), unsat_indices }
    }

    /// True iff `other` is the same instance: equal variable count and equal
    /// clause multiset. Ignores `source_name` and clause order.
    pub fn same_instance(&self, other: &Formula) -> bool {
        if self.num_vars != other.num_vars || self.clauses.len() != other.clauses.len() {
            return false;
        }
        let mut a = self.clauses.clone();
        let mut b = other.clauses.clone();
        a.sort_by(|x, y| x.literals.cmp(&y.literals));
        b.sort_by(|x, y| x.literals.cmp(&y.literals));
        a == b
    }
}

/// Result of evaluating a formula under one assignment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Evaluation {
    pub satisfied: bool,
    pub unsat_count: usize,
    /// Indices of the clauses left unsatisfied (the conflict set).
    pub unsat_indices: Vec<usize>,
}

/// An assignment of `n` booleans; position `i` holds the value of `x_{i+1}`.
///
/// Serves both as a network state and a truth assignment. States convert to
/// integer indices little-endian by variable order: bit `i` of the index is
/// `x_{i+1}`, so `(1,0,0) ↔ 1` and `(0,0,1) ↔ 4` for `n = 3`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct State {
    bits: Vec<bool>,
}

impl State {
    pub fn from_bits(bits: Vec<bool>) -> Self {
        State { bits }
    }

    pub fn zeros(n: usize) -> Self {
        State { bits: vec![false; n] }
    }

    /// Decodes a little-endian state index (`n ≤ 63`).
    pub fn from_index(index: u64, n: usize) -> Self {
        assert!(n <= 63, "index form only supports up to 63 variables");
        State { bits: (0..n).map(|i| index >> i & 1 == 1).collect() }
    }

    /// Little-endian integer encoding of the state (`n ≤ 63`).
    pub fn to_index(&self) -> u64 {
        assert!(self.bits.len() <= 63, "index form only supports up to 63 variables");
        self.bits
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &b)| if b { acc | 1 << i } else { acc })
    }

    /// Uniform random state.
    pub fn random(n: usize, rng: &mut impl Rng) -> Self {
        State { bits: (0..n).map(|_| rng.random_bool(0.5)).collect() }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn get(&self, i: usize) -> bool {
        self.bits[i]
    }

    pub fn set(&mut self, i: usize, value: bool) {
        self.bits[i] = value;
    }

    pub fn flip(&mut self, i: usize) {
        self.bits[i] = !self.bits[i];
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// Number of positions where the two states differ.
    pub fn hamming_distance(&self, other: &State) -> usize {
        assert_eq!(self.len(), other.len());
        self.bits.iter().zip(&other.bits).filter(|(a, b)| a != b).count()
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            write!(f, "{}", if b { '1' } else { '0' })?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("state strings contain only '0' and '1', found {found:?}")]
pub struct ParseStateError {
    found: char,
}

impl FromStr for State {
    type Err = ParseStateError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut bits = Vec::with_capacity(s.len());
        for ch in s.chars() {
            match ch {
                '0' => bits.push(false),
                '1' => bits.push(true),
                other => return Err(ParseStateError { found: other }),
            }
        }
        Ok(State { bits })
    }
}

impl Serialize for State {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn phi1() -> Formula {
        Formula::from_dimacs_clauses(3, &[&[1, -2], &[-1, 2], &[2, 3]]).unwrap()
    }

    #[test]
    fn clause_rejects_empty() {
        assert_eq!(Clause::new(vec![]), Err(FormulaError::EmptyClause));
    }

    #[test]
    fn clause_rejects_tautology() {
        let lits = vec![Literal::positive(1), Literal::negative(1)];
        assert_eq!(Clause::new(lits), Err(FormulaError::TautologicalClause { var: 1 }));
    }

    #[test]
    fn clause_dedups_duplicate_literals() {
        let c = Clause::new(vec![Literal::positive(2), Literal::positive(2), Literal::negative(3)]).unwrap();
        assert_eq!(c.literals(), &[Literal::positive(2), Literal::negative(3)]);
    }

    #[test]
    fn formula_rejects_out_of_range_variable() {
        let err = Formula::from_dimacs_clauses(2, &[&[1, 3]]).unwrap_err();
        assert_eq!(err, FormulaError::VariableOutOfRange { var: 3, num_vars: 2 });
    }

    #[test]
    fn formula_rejects_zero_variables() {
        assert_eq!(Formula::new(0, vec![]), Err(FormulaError::NoVariables));
    }

    #[test]
    fn clause_evaluation_matches_hand_values() {
        let f = phi1();
        // c_1 = (x1 | !x2) holds at (0,0,0) through !x2.
        assert!(f.evaluate_clause(0, &"000".parse().unwrap()));
        // First literal satisfied.
        assert!(f.evaluate_clause(2, &"010".parse().unwrap()));
    }

    #[test]
    fn formula_evaluation_collects_conflict_set() {
        let f = phi1();
        let sat = f.evaluate(&"001".parse().unwrap());
        assert!(sat.satisfied);
        assert_eq!(sat.unsat_count, 0);
        assert!(sat.unsat_indices.is_empty());

        let unsat = f.evaluate(&"100".parse().unwrap());
        assert!(!unsat.satisfied);
        assert_eq!(unsat.unsat_indices, vec![1, 2]); // !x1|x2 and x2|x3 both fail
    }

    #[test]
    fn zero_clause_formula_is_always_satisfied() {
        let f = Formula::new(4, vec![]).unwrap();
        for idx in 0..16 {
            assert!(f.evaluate(&State::from_index(idx, 4)).satisfied);
        }
    }

    #[test]
    fn state_index_round_trip_is_little_endian() {
        let s = State::from_index(4, 3);
        assert_eq!(s.to_string(), "001");
        assert_eq!(s.to_index(), 4);
        assert_eq!(State::from_index(1, 3).to_string(), "100");
    }

    #[test]
    fn state_parsing_rejects_other_characters() {
        assert!("01x".parse::<State>().is_err());
    }
}
