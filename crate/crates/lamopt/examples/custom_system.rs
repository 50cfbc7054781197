//! Driving the engine directly: register a signature, add rules, build a
//! configuration by hand, and reduce it. The system below is unary-numeral
//! addition; `add`'s principal port faces the first addend.
//!
//!   zero    >< add[y, y]
//!   suc[add(y, w)] >< add[y, suc(w)]
//!
//! ```sh
//! cargo run --example custom_system
//! ```

use lamopt::inet::{
    guard_always, reduce, Configuration, Equation, NetTerm, Payload, PayloadKind, Rule, RuleTable,
    StatCategory, Strategy,
};

fn main() {
    let mut table = RuleTable::new();
    let zero = table.register_agent("zero", 0, PayloadKind::None).unwrap();
    let suc = table.register_agent("suc", 1, PayloadKind::None).unwrap();
    let add = table.register_agent("add", 2, PayloadKind::None).unwrap();

    table
        .add_rule(Rule::new(
            zero,
            add,
            "zero-add",
            StatCategory::Other,
            guard_always(),
            Box::new(|_, _, f| {
                let y = f.name();
                (vec![], vec![y.clone(), y])
            }),
        ))
        .unwrap();
    table
        .add_rule(Rule::new(
            suc,
            add,
            "suc-add",
            StatCategory::Other,
            guard_always(),
            Box::new(move |_, _, f| {
                let y = f.name();
                let w = f.name();
                (
                    vec![NetTerm::agent(add, Payload::None, vec![y.clone(), w.clone()])],
                    vec![y, NetTerm::agent(suc, Payload::None, vec![w])],
                )
            }),
        ))
        .unwrap();

    let numeral = |n: usize| {
        let mut t = NetTerm::agent(zero, Payload::None, vec![]);
        for _ in 0..n {
            t = NetTerm::agent(suc, Payload::None, vec![t]);
        }
        t
    };

    // ⟨out | suc²(zero) = add(suc³(zero), out)⟩  —  2 + 3
    let mut cfg = Configuration::new(table.signature().clone());
    let out = cfg.names.fresh();
    cfg.interface.push(NetTerm::Name(out));
    cfg.equations.push_back(Equation::new(
        numeral(2),
        NetTerm::agent(add, Payload::None, vec![numeral(3), NetTerm::Name(out)]),
    ));
    println!("before: {cfg}");

    let (result, stats) = reduce(cfg, &table, Strategy::Fifo, 1000).unwrap();
    println!("after:  {result}");
    println!(
        "{} interactions, {} indirections",
        stats.total, stats.indirections
    );
    assert_eq!(result.interface, vec![numeral(5)]);
}
