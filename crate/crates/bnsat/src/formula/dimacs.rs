//! DIMACS CNF reading and writing.
//!
//! Accepted input: `c` comment lines, one `p cnf <vars> <clauses>` header,
//! then clauses as whitespace-separated signed integers, each terminated by
//! `0`. Clauses may span lines. Tautological clauses are rejected by default;
//! [`TautologyPolicy::Drop`] removes them instead (the parsed formula then
//! reports the effective clause count).

use thiserror::Error;

use super::{Clause, Formula, FormulaError, Literal};

/// What to do with clauses that contain a variable with both signs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TautologyPolicy {
    /// Fail parsing (default): silently changing the clause count is surprising.
    #[default]
    Reject,
    /// Remove the clause; tautologies are always satisfied, so the solution
    /// set is unchanged.
    Drop,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DimacsError {
    #[error("missing `p cnf <vars> <clauses>` header")]
    MissingHeader,
    #[error("line {line}: malformed header {found:?}")]
    MalformedHeader { line: usize, found: String },
    #[error("line {line}: unexpected token {token:?}")]
    BadToken { line: usize, token: String },
    #[error("line {line}: {reason}")]
    InvalidClause { line: usize, reason: FormulaError },
    #[error("header declares {declared} clauses, found {found}")]
    ClauseCountMismatch { declared: usize, found: usize },
    #[error("line {line}: clause not terminated by 0")]
    UnterminatedClause { line: usize },
    #[error("{0}")]
    Formula(#[from] FormulaError),
}

/// Parses DIMACS CNF text, rejecting tautological clauses.
pub fn parse_dimacs(input: &str) -> Result<Formula, DimacsError> {
    parse_dimacs_with(input, TautologyPolicy::Reject)
}

/// Parses DIMACS CNF text under an explicit tautology policy.
pub fn parse_dimacs_with(input: &str, policy: TautologyPolicy) -> Result<Formula, DimacsError> {
    let mut lines = input.lines().enumerate().map(|(k, text)| (k + 1, text));

    let (num_vars, declared) = loop {
        let Some((line, text)) = lines.next() else {
            return Err(DimacsError::MissingHeader);
        };
        let text = text.trim();
        if text.is_empty() || text.starts_with('c') {
            continue;
        }
        if !text.starts_with('p') {
            return Err(DimacsError::MissingHeader);
        }
        let fields: Vec<&str> = text.split_whitespace().collect();
        let malformed = || DimacsError::MalformedHeader { line, found: text.to_string() };
        if fields.len() != 4 || fields[0] != "p" || fields[1] != "cnf" {
            return Err(malformed());
        }
        let n: usize = fields[2].parse().map_err(|_| malformed())?;
        let m: usize = fields[3].parse().map_err(|_| malformed())?;
        if n == 0 {
            return Err(DimacsError::Formula(FormulaError::NoVariables));
        }
        break (n, m);
    };

    let mut clauses = Vec::with_capacity(declared);
    let mut pending: Vec<Literal> = Vec::new();
    let mut seen = 0usize; // terminated clauses, including dropped tautologies
    let mut last_line = 0usize;

    for (line, text) in lines {
        let text = text.trim();
        if text.is_empty() || text.starts_with('c') {
            continue;
        }
        last_line = line;
        for token in text.split_whitespace() {
            let code: i32 = token
                .parse()
                .map_err(|_| DimacsError::BadToken { line, token: token.to_string() })?;
            if code == 0 {
                seen += 1;
                match Clause::new(std::mem::take(&mut pending)) {
                    Ok(clause) => {
                        let max = clause.max_var();
                        if max as usize > num_vars {
                            return Err(DimacsError::InvalidClause {
                                line,
                                reason: FormulaError::VariableOutOfRange { var: max, num_vars },
                            });
                        }
                        clauses.push(clause);
                    }
                    Err(FormulaError::TautologicalClause { .. }) if policy == TautologyPolicy::Drop => {}
                    Err(reason) => return Err(DimacsError::InvalidClause { line, reason }),
                }
            } else {
                pending.push(Literal::from_dimacs(code));
            }
        }
    }

    if !pending.is_empty() {
        return Err(DimacsError::UnterminatedClause { line: last_line });
    }
    if seen != declared {
        return Err(DimacsError::ClauseCountMismatch { declared, found: seen });
    }

    Ok(Formula::new(num_vars, clauses)?)
}

/// Serializes a formula as DIMACS CNF. `parse_dimacs(write_dimacs(f))` yields
/// the same instance up to clause/literal ordering.
pub fn write_dimacs(formula: &Formula) -> String {
    let mut out = String::new();
    out.push_str(&format!("p cnf {} {}\n", formula.num_vars(), formula.num_clauses()));
    for clause in formula.clauses() {
        out.push_str(&clause.to_string());
        out.push('\n');
    }
    out
}
