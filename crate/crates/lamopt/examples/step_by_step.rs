//! Stepping a configuration one interaction at a time and printing the
//! whole configuration in interaction-calculus notation after each step.
//!
//! ```sh
//! cargo run --example step_by_step ['(\x.x) y']
//! ```

use lamopt::inet::{step, Stats, StepOutcome, Strategy};
use lamopt::{build_system, parse_term};

fn main() {
    let src = std::env::args().nth(1).unwrap_or_else(|| "(\\x.x) y".into());
    let term = parse_term(&src).unwrap();
    let sys = build_system();
    let mut cfg = sys.encode(&term);
    let mut stats = Stats::default();
    println!("  0: {cfg}");
    for i in 1..200 {
        match step(&mut cfg, sys.table(), Strategy::Fifo, &mut stats) {
            Ok(StepOutcome::Progressed) => println!("{i:>3}: {cfg}"),
            Ok(StepOutcome::NoEquations) => {
                println!(
                    "normal form after {} interactions and {} indirections",
                    stats.total, stats.indirections
                );
                break;
            }
            Err(e) => {
                println!("stopped: {e}");
                break;
            }
        }
    }
}
