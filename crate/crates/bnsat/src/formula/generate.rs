//! Random k-SAT instance generation, plain and forced (planted).
//!
//! All randomness is drawn from a ChaCha8 stream seeded with the spec's
//! 64-bit seed, so generation is a pure function of the [`GenSpec`].

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::{Clause, Formula, Literal, State};

/// Parameters for random instance generation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenSpec {
    pub num_vars: usize,
    pub num_clauses: usize,
    /// Literals per clause; 3 for the usual 3-SAT corpus.
    pub clause_width: usize,
    /// Plant a hidden satisfying assignment (the instance is then guaranteed
    /// satisfiable).
    pub forced: bool,
    pub seed: u64,
}

impl GenSpec {
    /// A 3-SAT spec with the given shape; use the fields to adjust width and
    /// forcing.
    pub fn new(num_vars: usize, num_clauses: usize, seed: u64) -> Self {
        GenSpec { num_vars, num_clauses, clause_width: 3, forced: false, seed }
    }

    pub fn forced(mut self) -> Self {
        self.forced = true;
        self
    }

    pub fn with_width(mut self, clause_width: usize) -> Self {
        self.clause_width = clause_width;
        self
    }

    pub fn validate(&self) -> Result<(), GenSpecError> {
        if self.num_vars == 0 {
            return Err(GenSpecError::NoVariables);
        }
        if self.num_clauses == 0 {
            return Err(GenSpecError::NoClauses);
        }
        if self.clause_width == 0 {
            return Err(GenSpecError::ZeroWidth);
        }
        if self.clause_width > self.num_vars {
            return Err(GenSpecError::WidthExceedsVars { width: self.clause_width, num_vars: self.num_vars });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenSpecError {
    #[error("at least one variable is required")]
    NoVariables,
    #[error("at least one clause is required")]
    NoClauses,
    #[error("clause width must be positive")]
    ZeroWidth,
    #[error("clause width {width} exceeds variable count {num_vars}")]
    WidthExceedsVars { width: usize, num_vars: usize },
}

/// Generates a random instance. See [`generate_with_witness`] for the planted
/// assignment of forced instances.
pub fn generate(spec: &GenSpec) -> Formula {
    generate_with_witness(spec).0
}

/// Generates a random instance, returning the hidden satisfying assignment
/// for forced specs.
///
/// Each clause draws `clause_width` distinct variables uniformly and negates
/// each with probability 1/2. Forced generation first draws a uniform hidden
/// assignment and redraws each clause until the hidden assignment satisfies
/// it (per-clause rejection sampling).
pub fn generate_with_witness(spec: &GenSpec) -> (Formula, Option<State>) {
    spec.validate().expect("invalid generation spec");
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);

    let witness = if spec.forced { Some(State::random(spec.num_vars, &mut rng)) } else { None };

    let mut clauses = Vec::with_capacity(spec.num_clauses);
    while clauses.len() < spec.num_clauses {
        let clause = random_clause(spec, &mut rng);
        if let Some(w) = &witness
            && !clause.is_satisfied_by(w)
        {
            continue; // redraw until the planted assignment satisfies it
        }
        clauses.push(clause);
    }

    let name = format!(
        "rand{}sat-n{}-m{}-s{}{}",
        spec.clause_width,
        spec.num_vars,
        spec.num_clauses,
        spec.seed,
        if spec.forced { "-forced" } else { "" },
    );
    let formula = Formula::new(spec.num_vars, clauses)
        .expect("generated clauses are valid by construction")
        .with_name(name);
    (formula, witness)
}

fn random_clause(spec: &GenSpec, rng: &mut ChaCha8Rng) -> Clause {
    let vars = rand::seq::index::sample(rng, spec.num_vars, spec.clause_width);
    let literals = vars
        .iter()
        .map(|i| Literal::new(i as u32 + 1, rng.random_bool(0.5)))
        .collect();
    Clause::new(literals).expect("distinct variables cannot collide")
}
