//! End-to-end net normalization: encode a term, reduce the net to
//! ⟨a_N | ∅⟩, and read the normal form out of the final atom.
//!
//! ```sh
//! cargo run --example normalize_basic
//! ```

use lamopt::inet::Strategy;
use lamopt::term::parse_term;
use lamopt::build_system;

fn main() {
    let sys = build_system();
    let cases = [
        "(\\x.x) (\\y.y)",
        "(\\f.\\x.f (f x)) (\\f.\\x.f (f x))",
        // K discards a diverging argument; erasure collects it inside the net
        "(\\x.\\y.x) z ((\\x.x x) (\\x.x x))",
    ];
    for src in cases {
        let term = parse_term(src).unwrap();
        let (nf, stats) = sys.normalize(&term, Strategy::Fifo, 1_000_000).unwrap();
        println!("{src}");
        println!("  normal form: {nf}");
        println!("  stats:       {}", stats.to_json());
    }

    // the intermediate artifacts are plain values too
    let term = parse_term("(\\x.x) y").unwrap();
    let config = sys.encode(&term);
    println!("initial configuration: {config}");
    let (out, _) = lamopt::inet::reduce(config, sys.table(), Strategy::Fifo, 1000).unwrap();
    println!("final configuration:   {out}");
    println!("decoded:               {}", sys.decode(&out).unwrap());
}
