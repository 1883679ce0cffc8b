//! Step the three dynamics by hand on a five-clause instance whose
//! synchronous transition graph has one fixed point and one period-2 cycle.
//!
//!     cargo run --example trajectory_walkthrough

use std::io::stdout;

use bnsat::dynamics::{PbnParams, TraceDynamics, write_trajectory};
use bnsat::formula::Formula;
use bnsat::mapping::Network;

fn main() {
    // (x1|x2)(x1|!x3)(!x1|!x3)(x2|x3)(x1|x3): unique solution 110.
    let formula =
        Formula::from_dimacs_clauses(3, &[&[1, 2], &[1, -3], &[-1, -3], &[2, 3], &[1, 3]]).unwrap();
    let net = Network::compile(&formula);
    let mut out = stdout().lock();

    println!("synchronous from 011 (falls into the fixed point):");
    write_trajectory(&net, TraceDynamics::Synchronous, &"011".parse().unwrap(), 0, 10, &mut out).unwrap();

    println!("\nsynchronous from 000 (caught in the period-2 cycle):");
    write_trajectory(&net, TraceDynamics::Synchronous, &"000".parse().unwrap(), 0, 6, &mut out).unwrap();

    println!("\nprobabilistic (p = 0.2) from 000 escapes the cycle:");
    let pbn = TraceDynamics::Probabilistic(PbnParams::new(0.2).unwrap());
    write_trajectory(&net, pbn, &"000".parse().unwrap(), 11, 40, &mut out).unwrap();

    println!("\nasynchronous macro-transitions from 000:");
    write_trajectory(&net, TraceDynamics::Asynchronous, &"000".parse().unwrap(), 2, 20, &mut out).unwrap();
}
