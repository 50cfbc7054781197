//! Watching a reduction interaction by interaction.
//!
//! ```sh
//! cargo run --example trace_interactions
//! ```

use lamopt::inet::Strategy;
use lamopt::term::parse_term;
use lamopt::build_system;

fn main() {
    let sys = build_system();
    let term = parse_term("(\\x.\\y.x) a b").unwrap();
    println!("tracing (λx.λy.x) a b\n");
    let mut sink = |ev: lamopt::inet::TraceEvent| {
        if ev.label == "indirection" {
            println!("        indirection");
        } else {
            println!("#{:<4} {:<12} {}", ev.interactions, ev.label, ev.detail);
        }
    };
    let (nf, stats) = sys
        .normalize_traced(&term, Strategy::Fifo, 10_000, &mut sink)
        .unwrap();
    println!("\nnormal form: {nf}");
    println!("totals: {}", stats.to_json());
}
