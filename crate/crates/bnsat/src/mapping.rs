//! Compilation of a CNF formula into a boolean network whose fixed points are
//! exactly the satisfying assignments.
//!
//! Each variable `x_i` becomes a node whose update function is
//!
//! ```text
//! F_i = (x_i & And[A_i]) | !And[O_i]
//! ```
//!
//! where `O_i` is the set of clauses containing `x_i` positively, `A_i` the
//! set containing it negatively, and `And` over an empty set is true. When
//! every clause is satisfied each `F_i` degenerates to the identity, so
//! satisfying assignments sit still; at a non-satisfying state some variable
//! of an unsatisfied clause is forced to change, so nothing else does.
//!
//! Node functions are stored as the index-set pair `(O_i, A_i)` rather than
//! as truth tables: evaluation then costs `O(|O_i| + |A_i|)` clause lookups
//! and the empty-conjunction convention stays explicit.

use crate::formula::{Formula, State};

/// The update function of one node, as clause index sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeFunction {
    var: usize,
    occurs_pos: Vec<usize>,
    occurs_neg: Vec<usize>,
}

impl NodeFunction {
    /// 0-based variable index of the node.
    pub fn var(&self) -> usize {
        self.var
    }

    /// Indices of clauses containing the variable positively (`O_i`).
    pub fn occurs_pos(&self) -> &[usize] {
        &self.occurs_pos
    }

    /// Indices of clauses containing the variable negatively (`A_i`).
    pub fn occurs_neg(&self) -> &[usize] {
        &self.occurs_neg
    }

    /// A variable in no clause keeps its value forever.
    pub fn is_identity(&self) -> bool {
        self.occurs_pos.is_empty() && self.occurs_neg.is_empty()
    }
}

/// A compiled boolean network: one [`NodeFunction`] per variable, plus the
/// formula it was built from. Immutable after compilation and safe to share
/// across concurrent runs.
#[derive(Debug, Clone)]
pub struct Network {
    formula: Formula,
    nodes: Vec<NodeFunction>,
    build_touches: usize,
}

impl Network {
    /// Compiles a formula in a single pass over all clause literals.
    pub fn compile(formula: &Formula) -> Network {
        let n = formula.num_vars();
        let mut nodes: Vec<NodeFunction> = (0..n)
            .map(|var| NodeFunction { var, occurs_pos: Vec::new(), occurs_neg: Vec::new() })
            .collect();
        let mut build_touches = 0usize;
        for (j, clause) in formula.clauses().iter().enumerate() {
            for lit in clause.literals() {
                build_touches += 1;
                let node = &mut nodes[lit.index()];
                if lit.is_positive() {
                    node.occurs_pos.push(j);
                } else {
                    node.occurs_neg.push(j);
                }
            }
        }
        Network { formula: formula.clone(), nodes, build_touches }
    }

    pub fn formula(&self) -> &Formula {
        &self.formula
    }

    pub fn num_vars(&self) -> usize {
        self.nodes.len()
    }

    pub fn num_clauses(&self) -> usize {
        self.formula.num_clauses()
    }

    pub fn nodes(&self) -> &[NodeFunction] {
        &self.nodes
    }

    pub fn node(&self, i: usize) -> &NodeFunction {
        &self.nodes[i]
    }

    /// Literal touches performed during compilation; equals the formula's
    /// total literal count.
    pub fn build_touches(&self) -> usize {
        self.build_touches
    }

    /// Evaluates `F_i` at `state`, computing only the clauses the node reads.
    pub fn eval_node(&self, i: usize, state: &State) -> bool {
        let node = &self.nodes[i];
        if state.get(i) && node.occurs_neg.iter().all(|&j| self.formula.evaluate_clause(j, state)) {
            return true;
        }
        !node.occurs_pos.iter().all(|&j| self.formula.evaluate_clause(j, state))
    }

    /// Values of all clauses at `state`, in clause order.
    pub fn clause_values(&self, state: &State) -> Vec<bool> {
        (0..self.formula.num_clauses())
            .map(|j| self.formula.evaluate_clause(j, state))
            .collect()
    }

    /// The synchronous image `(F_1(s), …, F_n(s))`, all components computed
    /// from the same `state`. Clause values are computed once and shared by
    /// every node.
    pub fn eval_all(&self, state: &State) -> State {
        let mut image = state.clone();
        self.eval_all_into(state, &mut image);
        image
    }

    /// Allocation-free variant of [`Network::eval_all`] for exhaustive sweeps.
    pub fn eval_all_into(&self, state: &State, image: &mut State) {
        debug_assert_eq!(state.len(), self.nodes.len());
        let clause_values = self.clause_values(state);
        for (i, node) in self.nodes.iter().enumerate() {
            let keep = state.get(i) && node.occurs_neg.iter().all(|&j| clause_values[j]);
            let value = keep || !node.occurs_pos.iter().all(|&j| clause_values[j]);
            image.set(i, value);
        }
    }

    /// True iff `state` maps to itself. By construction this coincides with
    /// the formula being satisfied at `state`; the test suite checks the
    /// equivalence exhaustively, the implementation only consults the image.
    pub fn is_fixed_point(&self, state: &State) -> bool {
        let clause_values = self.clause_values(state);
        self.nodes.iter().enumerate().all(|(i, node)| {
            let keep = state.get(i) && node.occurs_neg.iter().all(|&j| clause_values[j]);
            let value = keep || !node.occurs_pos.iter().all(|&j| clause_values[j]);
            value == state.get(i)
        })
    }

    /// Human-readable form of one node function, e.g. `F1 = (c2 & x1) | !c1`.
    pub fn describe_node(&self, i: usize) -> String {
        let node = &self.nodes[i];
        let var = format!("x{}", i + 1);
        let keep = if node.occurs_neg.is_empty() {
            var
        } else {
            let clauses: Vec<String> = node.occurs_neg.iter().map(|j| format!("c{}", j + 1)).collect();
            format!("({} & {})", clauses.join(" & "), var)
        };
        let mut terms = vec![keep];
        terms.extend(node.occurs_pos.iter().map(|j| format!("!c{}", j + 1)));
        format!("F{} = {}", i + 1, terms.join(" | "))
    }

    /// All node functions, one per line.
    pub fn describe(&self) -> String {
        (0..self.nodes.len()).map(|i| self.describe_node(i) + "\n").collect()
    }
}
