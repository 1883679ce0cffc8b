//! A miniature solver-comparison benchmark: three corpus shapes, three
//! algorithms, markdown table on stdout. The full-size runs live behind
//! `bnsat bench`.
//!
//!     cargo run --release --example benchmark_table

use std::io::stdout;

use bnsat::dynamics::PbnParams;
use bnsat::harness::{BenchPlan, BenchRow, run_bench, write_summary_markdown};
use bnsat::solvers::{GsatParams, SolveBudget, Solver};

fn main() {
    let rows = vec![
        BenchRow { num_vars: 30, num_clauses: 60, instances: 20 },
        BenchRow { num_vars: 30, num_clauses: 90, instances: 20 },
        BenchRow { num_vars: 30, num_clauses: 129, instances: 20 },
    ];
    let algorithms = vec![
        Solver::Abn,
        Solver::Pbn(PbnParams::default()),
        Solver::Gsat(GsatParams::default()),
    ];
    let budget = SolveBudget {
        max_micro_updates: Some(500_000),
        ..SolveBudget::with_max_iterations(u64::MAX)
    };

    let plan = BenchPlan::new(rows, algorithms, budget, 2024);
    let (report, runs) = run_bench(&plan);
    assert!(runs.iter().all(|r| r.outcome.model().is_none() || r.outcome.is_solved()));

    write_summary_markdown(&report, &mut stdout().lock()).unwrap();
}
