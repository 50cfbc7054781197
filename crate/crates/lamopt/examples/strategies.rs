//! Strategy independence: FIFO, LIFO, and seeded-random scheduling all
//! reach the same normal form (interaction counts may differ).
//!
//! ```sh
//! cargo run --example strategies
//! ```

use lamopt::inet::Strategy;
use lamopt::term::{alpha_eq, parse_term};
use lamopt::build_system;

fn main() {
    let sys = build_system();
    let term = parse_term(
        "(\\iszero.\\one.\\mul.\\pred.\\fix.
           fix (\\f.\\n.iszero n one (mul n (f (pred n)))) (\\f.\\x.f (f (f x))))
         (\\n.n (\\u.\\a.\\b.b) (\\a.\\b.a))
         (\\f.\\x.f x)
         (\\m.\\n.\\f.m (n f))
         (\\n.\\f.\\x.n (\\g.\\h.h (g f)) (\\u.x) (\\u.u))
         ((\\a.\\b.b (a a b)) (\\a.\\b.b (a a b)))",
    )
    .unwrap();

    let mut runs = vec![
        ("fifo".to_string(), Strategy::Fifo),
        ("lifo".to_string(), Strategy::Lifo),
    ];
    for seed in 0..4 {
        runs.push((format!("random({seed})"), Strategy::Random(seed)));
    }

    let mut results = Vec::new();
    for (name, strategy) in runs {
        let (nf, stats) = sys.normalize(&term, strategy, 10_000_000).unwrap();
        println!(
            "{name:>10}: {:>6} interactions, {:>6} indirections -> {nf}",
            stats.total, stats.indirections
        );
        results.push(nf);
    }
    for pair in results.windows(2) {
        assert!(alpha_eq(&pair[0], &pair[1]));
    }
    println!("all schedules agree up to α-equivalence");
}
