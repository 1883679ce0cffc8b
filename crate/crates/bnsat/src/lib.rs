//! SAT solving by boolean-network dynamics.
//!
//! A CNF formula over `n` variables compiles into a boolean network of `n`
//! nodes whose fixed points are exactly the satisfying assignments. Solving
//! then means simulating the network until it sits still. Three dynamics are
//! provided — synchronous deterministic, probabilistic with identity mixing,
//! and asynchronous sequential — along with a greedy-flip local search
//! baseline, exhaustive small-scale analysis tools (transition graphs,
//! attractor basins, exact Markov chains for the stochastic dynamics), and a
//! reproducible benchmark harness.
//!
//! # Quick start
//!
//! ```
//! use bnsat::formula::dimacs::parse_dimacs;
//! use bnsat::mapping::Network;
//!
//! let f = parse_dimacs("p cnf 3 3\n1 -2 0\n-1 2 0\n2 3 0\n").unwrap();
//! let net = Network::compile(&f);
//! assert!(net.is_fixed_point(&"001".parse().unwrap()));
//! assert_eq!(net.describe_node(0), "F1 = (c2 & x1) | !c1");
//! ```
//!
//! # Where to look
//!
//! Every major capability has a runnable example under `examples/`:
//!
//! - `compile_network` — the formula-to-network mapping on a worked instance
//! - `generate_instances` — seeded random 3-SAT generation, DIMACS output
//! - `trajectory_walkthrough` — stepping the three dynamics by hand
//! - `transition_graph` — exhaustive synchronous graph, attractors, basins
//! - `verify_correspondence` — fixed points vs. brute-force solutions
//! - `markov_absorption` — exact chains and absorption certificates
//! - `solve_random_3sat` — the four solvers end to end
//! - `benchmark_table` — a small solver-comparison table
//! - `p_sweep` — locating the optimal mixing probability
//!
//! ```bash
//! cargo run --release --example transition_graph
//! ```
//!
//! A thin `bnsat` binary exposes the same functionality as subcommands
//! (`solve`, `gen`, `analyze`, `bench`, `psweep`).
//!
//! # Reproducibility
//!
//! Every stochastic operation takes an explicit 64-bit seed and draws from a
//! dedicated ChaCha8 stream, so generation, solving, and benchmarking are
//! bit-reproducible across runs and across threads.

pub mod analysis;
pub mod cli;
pub mod dynamics;
pub mod formula;
pub mod harness;
pub mod mapping;
pub mod solvers;

pub use formula::{Clause, Formula, Literal, State};
pub use mapping::Network;
