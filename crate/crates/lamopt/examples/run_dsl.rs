//! The rule-definition language: parse a program, load it into the engine,
//! and run its initial configuration. The bundled program is a perpetual
//! net, so the run ends by exhausting its fuel.
//!
//! ```sh
//! cargo run --example run_dsl
//! ```

use lamopt::dsl;
use lamopt::inet::{reduce, EngineError, Strategy};

const PROGRAM: &str = r#"
# unary addition, declaratively
\zero \add[y, y];
\suc[\add(y, w)] \add[y, \suc(w)];

$$

\suc(\suc(\zero)) = \add(\suc(\suc(\suc(\zero))), r);
\suc(\zero) = \add(r, out);
"#;

fn main() {
    let program = dsl::parse_system(PROGRAM).unwrap();
    for w in program.warnings() {
        eprintln!("warning: {w}");
    }
    println!("canonical form:\n{}", dsl::print_system(&program));

    let (table, config) = dsl::load(&program).unwrap();
    println!("initial: {config}");
    let (out, stats) = reduce(config, &table, Strategy::Fifo, 1000).unwrap();
    println!("final:   {out}");
    println!("{} interactions\n", stats.total);

    // a net that reduces to itself forever
    let loop_program = dsl::parse_system(include_str!("../data/perpetual.inet")).unwrap();
    for w in loop_program.warnings() {
        eprintln!("warning: {w}");
    }
    let (table, config) = dsl::load(&loop_program).unwrap();
    println!("perpetual net: {config}");
    match reduce(config, &table, Strategy::Fifo, 5) {
        Err(failure) if matches!(failure.error, EngineError::FuelExhausted { .. }) => {
            println!("as expected: {}", failure.error);
            println!("still going: {}", failure.config);
        }
        other => panic!("unexpected outcome: {other:?}"),
    }
}
