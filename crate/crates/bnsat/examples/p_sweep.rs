//! Sweep the mixing probability of the probabilistic solver over one shared
//! corpus and report the best cell. The optimum for random 3-SAT sits near
//! 0.2: too little mixing barely moves, too much behaves like the cycling
//! synchronous dynamics.
//!
//!     cargo run --release --example p_sweep

use std::io::stdout;

use bnsat::harness::{run_p_sweep, write_psweep_csv};
use bnsat::solvers::SolveBudget;

fn main() {
    let grid = [0.05, 0.1, 0.2, 0.35, 0.5, 0.8];
    let budget = SolveBudget {
        max_micro_updates: Some(500_000),
        ..SolveBudget::with_max_iterations(u64::MAX)
    };
    let (report, _) = run_p_sweep(30, 90, &grid, 30, &budget, 11);

    write_psweep_csv(&report, &mut stdout().lock()).unwrap();
    let best = report.best_cell().expect("non-empty grid");
    println!(
        "\nbest cell: p={} ({:.1}% solved, median {} transitions)",
        best.p, best.solved_pct, best.median_iterations
    );
}
