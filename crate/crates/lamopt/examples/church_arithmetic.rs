//! Church-numeral arithmetic on the net, cross-checked against the
//! reference reducer.
//!
//! ```sh
//! cargo run --example church_arithmetic
//! ```

use lamopt::inet::Strategy;
use lamopt::term::{alpha_eq, normal_order_nf, parse_term};
use lamopt::build_system;

fn church(n: u32) -> String {
    let mut body = "x".to_string();
    for _ in 0..n {
        body = format!("f ({body})");
    }
    format!("(\\f.\\x.{body})")
}

fn main() {
    let sys = build_system();
    let add = "(\\m.\\n.\\f.\\x.m f (n f x))";
    let mul = "(\\m.\\n.\\f.m (n f))";
    let exp = "(\\m.\\n.n m)";
    let cases = [
        format!("{add} {} {}", church(2), church(3)),
        format!("{mul} {} {}", church(2), church(3)),
        format!("{exp} {} {}", church(2), church(4)),
        // 2^(2^2) through self-application of numerals
        format!("{} {} {}", church(2), church(2), church(2)),
    ];
    for src in cases {
        let term = parse_term(&src).unwrap();
        let (nf, stats) = sys.normalize(&term, Strategy::Fifo, 1_000_000).unwrap();
        let oracle = normal_order_nf(&term, 1_000_000).unwrap();
        assert!(alpha_eq(&nf, &oracle));
        println!(
            "{:>10} interactions, {:>10} indirections   {}",
            stats.total,
            stats.indirections,
            nf
        );
    }
}
