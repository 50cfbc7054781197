//! Parsing and printing λ-terms.
//!
//! ```sh
//! cargo run --example parse_and_print
//! ```

use lamopt::term::{alpha_eq, free_vars, mark_free, parse_term, print_term, print_term_ascii};

fn main() {
    let sources = [
        "\\x.x",
        "λf x.f (f x)",          // one λ may bind several names
        "(\\x.x x) (\\x.x x)",
        "y (\\x.x) z",
        "\\x.x x y # comments run to the end of the line",
    ];
    for src in sources {
        let term = parse_term(src).unwrap();
        println!("{src:46} => {}", print_term(&term));
        println!("{:46}    {}", "", print_term_ascii(&term));
    }

    let t = parse_term("\\x.x (y x) z").unwrap();
    println!("free variables of {}: {:?}", t, free_vars(&t));
    println!("with free occurrences marked: {}", print_term(&mark_free(&t)));

    // α-equivalence ignores binder names
    let a = parse_term("\\x.\\y.x y").unwrap();
    let b = parse_term("\\u.\\v.u v").unwrap();
    println!("{a} =α= {b}: {}", alpha_eq(&a, &b));

    // parse errors carry a position
    let err = parse_term("(\\x.x").unwrap_err();
    println!("error example: {err}");
}
