//! Check the fixed-point/solution correspondence exhaustively on a corpus of
//! random instances: the compiled network's fixed points must be exactly the
//! brute-force satisfying assignments, every time.
//!
//!     cargo run --example verify_correspondence

use bnsat::analysis::{brute_force_solutions, check_correspondence};
use bnsat::formula::generate::{GenSpec, generate};

fn main() {
    let mut checked = 0;
    let mut satisfiable = 0;
    for seed in 0..200u64 {
        let n = 2 + (seed as usize % 9); // 2..=10 variables
        let m = n * (1 + seed as usize % 5); // ratios 1..=5
        let spec = GenSpec::new(n, m, seed).with_width(3.min(n));
        let formula = if seed % 2 == 0 { generate(&spec.forced()) } else { generate(&spec) };

        let outcome = check_correspondence(&formula).expect("within cap");
        assert!(outcome.is_verified(), "counterexample on {:?}", formula.source_name());

        checked += 1;
        satisfiable += !brute_force_solutions(&formula).expect("within cap").is_empty() as usize;
    }
    println!("checked {checked} instances exhaustively, {satisfiable} satisfiable: all correspond");
}
