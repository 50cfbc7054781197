//! Pretty-printer. Round-trips through the parser with minimal parentheses:
//! abstractions are parenthesized in application position, arguments are
//! parenthesized when they are applications or abstractions.

use super::Term;

fn render(t: &Term, out: &mut String, ascii: bool) {
    match t {
        Term::Var(x) => out.push_str(x),
        Term::MarkedVar(x) => {
            out.push_str(x);
            out.push_str(if ascii { "*" } else { "•" });
        }
        Term::Abs(x, b) => {
            out.push_str(if ascii { "\\" } else { "λ" });
            out.push_str(x);
            out.push('.');
            render(b, out, ascii);
        }
        Term::App(f, a) => {
            if matches!(**f, Term::Abs(..)) {
                out.push('(');
                render(f, out, ascii);
                out.push(')');
            } else {
                render(f, out, ascii);
            }
            out.push(' ');
            if matches!(**a, Term::App(..) | Term::Abs(..)) {
                out.push('(');
                render(a, out, ascii);
                out.push(')');
            } else {
                render(a, out, ascii);
            }
        }
    }
}

pub fn print_term(t: &Term) -> String {
    let mut s = String::new();
    render(t, &mut s, false);
    s
}

pub fn print_term_ascii(t: &Term) -> String {
    let mut s = String::new();
    render(t, &mut s, true);
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::parse_term;

    #[test]
    fn examples() {
        assert_eq!(print_term(&parse_term("\\x.x").unwrap()), "λx.x");
        assert_eq!(print_term(&parse_term("x (y z)").unwrap()), "x (y z)");
        assert_eq!(
            print_term(&parse_term("\\f.\\x.f (f x)").unwrap()),
            "λf.λx.f (f x)"
        );
        assert_eq!(
            print_term_ascii(&parse_term("λx.x").unwrap()),
            "\\x.x"
        );
        assert_eq!(
            print_term(&parse_term("y (\\x.x) z").unwrap()),
            "y (λx.x) z"
        );
    }
}
