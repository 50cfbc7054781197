//! λK-terms: abstract syntax, free variables, capture-avoiding substitution,
//! one-hole contexts, and a reference normal-order reducer.
//!
//! Everything here is independent of the net machinery; the normal-order
//! reducer in [`reduce`] serves as the correctness oracle for the net-based
//! normalizer.

mod parse;
mod print;
mod reduce;

pub use parse::{parse_term, ParseError};
pub use print::{print_term, print_term_ascii};
pub use reduce::{normal_order_nf, FuelExhausted};

use std::collections::HashSet;
use std::fmt;

/// An untyped λK-term.
///
/// `MarkedVar` is a distinct node for `x•` occurrences produced by
/// [`mark_free`]; keeping it out of the name space means marking can never
/// collide with a user identifier.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Var(String),
    MarkedVar(String),
    Abs(String, Box<Term>),
    App(Box<Term>, Box<Term>),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    pub fn marked(name: impl Into<String>) -> Term {
        Term::MarkedVar(name.into())
    }

    pub fn abs(binder: impl Into<String>, body: Term) -> Term {
        Term::Abs(binder.into(), Box::new(body))
    }

    pub fn app(fun: Term, arg: Term) -> Term {
        Term::App(Box::new(fun), Box::new(arg))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_term(self))
    }
}

/// Free variables in first-occurrence order. Marked occurrences are free by
/// construction and are included.
pub fn free_vars(t: &Term) -> Vec<String> {
    fn go(t: &Term, bound: &mut Vec<String>, seen: &mut HashSet<String>, out: &mut Vec<String>) {
        match t {
            Term::Var(x) => {
                if !bound.iter().any(|b| b == x) && seen.insert(x.clone()) {
                    out.push(x.clone());
                }
            }
            Term::MarkedVar(x) => {
                if seen.insert(x.clone()) {
                    out.push(x.clone());
                }
            }
            Term::Abs(x, b) => {
                bound.push(x.clone());
                go(b, bound, seen, out);
                bound.pop();
            }
            Term::App(f, a) => {
                go(f, bound, seen, out);
                go(a, bound, seen, out);
            }
        }
    }
    let mut out = Vec::new();
    go(t, &mut Vec::new(), &mut HashSet::new(), &mut out);
    out
}

/// Every identifier occurring anywhere in the term, binders included.
pub fn all_names(t: &Term) -> HashSet<String> {
    fn go(t: &Term, out: &mut HashSet<String>) {
        match t {
            Term::Var(x) | Term::MarkedVar(x) => {
                out.insert(x.clone());
            }
            Term::Abs(x, b) => {
                out.insert(x.clone());
                go(b, out);
            }
            Term::App(f, a) => {
                go(f, out);
                go(a, out);
            }
        }
    }
    let mut out = HashSet::new();
    go(t, &mut out);
    out
}

/// Replace every free occurrence of a variable by its marked form; bound
/// occurrences are untouched.
pub fn mark_free(t: &Term) -> Term {
    fn go(t: &Term, bound: &mut Vec<String>) -> Term {
        match t {
            Term::Var(x) => {
                if bound.iter().any(|b| b == x) {
                    Term::Var(x.clone())
                } else {
                    Term::MarkedVar(x.clone())
                }
            }
            Term::MarkedVar(x) => Term::MarkedVar(x.clone()),
            Term::Abs(x, b) => {
                bound.push(x.clone());
                let b = go(b, bound);
                bound.pop();
                Term::Abs(x.clone(), Box::new(b))
            }
            Term::App(f, a) => Term::app(go(f, bound), go(a, bound)),
        }
    }
    go(t, &mut Vec::new())
}

/// Deterministic fresh-identifier supply: emits `_0, _1, …`, skipping a
/// forbidden set and everything it has already produced.
#[derive(Clone, Debug, Default)]
pub struct FreshNameSource {
    counter: u64,
    forbidden: HashSet<String>,
}

impl FreshNameSource {
    pub fn new(forbidden: impl IntoIterator<Item = String>) -> Self {
        FreshNameSource {
            counter: 0,
            forbidden: forbidden.into_iter().collect(),
        }
    }

    pub fn forbid(&mut self, name: impl Into<String>) {
        self.forbidden.insert(name.into());
    }

    pub fn fresh(&mut self) -> String {
        loop {
            let cand = format!("_{}", self.counter);
            self.counter += 1;
            if self.forbidden.insert(cand.clone()) {
                return cand;
            }
        }
    }
}

/// Capture-avoiding substitution of `u` for free `x` in `t`.
///
/// Binders are renamed through the supplied source whenever they would
/// capture a free variable of `u`. Marked variables are inert.
pub fn subst_with(t: &Term, x: &str, u: &Term, fresh: &mut FreshNameSource) -> Term {
    let fv_u: HashSet<String> = free_vars(u).into_iter().collect();
    fn go(
        t: &Term,
        x: &str,
        u: &Term,
        fv_u: &HashSet<String>,
        fresh: &mut FreshNameSource,
    ) -> Term {
        match t {
            Term::Var(y) => {
                if y == x {
                    u.clone()
                } else {
                    t.clone()
                }
            }
            Term::MarkedVar(_) => t.clone(),
            Term::Abs(y, b) => {
                if y == x {
                    t.clone()
                } else if fv_u.contains(y) {
                    let y2 = fresh.fresh();
                    let renamed = go(b, y, &Term::Var(y2.clone()), &HashSet::new(), fresh);
                    Term::Abs(y2, Box::new(go(&renamed, x, u, fv_u, fresh)))
                } else {
                    Term::Abs(y.clone(), Box::new(go(b, x, u, fv_u, fresh)))
                }
            }
            Term::App(f, a) => Term::app(go(f, x, u, fv_u, fresh), go(a, x, u, fv_u, fresh)),
        }
    }
    go(t, x, u, &fv_u, fresh)
}

/// [`subst_with`] using a one-shot name source seeded from both terms.
pub fn subst(t: &Term, x: &str, u: &Term) -> Term {
    let mut forbidden = all_names(t);
    forbidden.extend(all_names(u));
    forbidden.insert(x.to_string());
    let mut fresh = FreshNameSource::new(forbidden);
    subst_with(t, x, u, &mut fresh)
}

/// α-equivalence by parallel traversal with de Bruijn-style binder stacks.
pub fn alpha_eq(a: &Term, b: &Term) -> bool {
    fn go(a: &Term, b: &Term, ba: &mut Vec<String>, bb: &mut Vec<String>) -> bool {
        match (a, b) {
            (Term::Var(x), Term::Var(y)) => {
                let ia = ba.iter().rev().position(|n| n == x);
                let ib = bb.iter().rev().position(|n| n == y);
                match (ia, ib) {
                    (Some(i), Some(j)) => i == j,
                    (None, None) => x == y,
                    _ => false,
                }
            }
            (Term::MarkedVar(x), Term::MarkedVar(y)) => x == y,
            (Term::Abs(x, s), Term::Abs(y, t)) => {
                ba.push(x.clone());
                bb.push(y.clone());
                let r = go(s, t, ba, bb);
                ba.pop();
                bb.pop();
                r
            }
            (Term::App(f, u), Term::App(g, v)) => go(f, g, ba, bb) && go(u, v, ba, bb),
            _ => false,
        }
    }
    go(a, b, &mut Vec::new(), &mut Vec::new())
}

/// A λ-term with exactly one hole, by construction.
///
/// Plugging does not rename: the read-back rules rely on contexts capturing
/// through `C[λy.[ ]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Context {
    Hole,
    /// `λx.C`
    AbsBody(String, Box<Context>),
    /// `C N` — hole in function position
    AppFun(Box<Context>, Term),
    /// `M C` — hole in argument position
    AppArg(Term, Box<Context>),
}

impl Context {
    pub fn abs_body(binder: impl Into<String>, c: Context) -> Context {
        Context::AbsBody(binder.into(), Box::new(c))
    }

    pub fn app_fun(c: Context, arg: Term) -> Context {
        Context::AppFun(Box::new(c), arg)
    }

    pub fn app_arg(fun: Term, c: Context) -> Context {
        Context::AppArg(fun, Box::new(c))
    }

    /// Place `t` in the hole, verbatim.
    pub fn plug(&self, t: &Term) -> Term {
        match self {
            Context::Hole => t.clone(),
            Context::AbsBody(x, c) => Term::Abs(x.clone(), Box::new(c.plug(t))),
            Context::AppFun(c, a) => Term::app(c.plug(t), a.clone()),
            Context::AppArg(f, c) => Term::app(f.clone(), c.plug(t)),
        }
    }

    /// Context whose hole path is `self`'s followed by `inner`'s:
    /// `compose(o, i).plug(t) == o.plug(&i.plug(t))`.
    pub fn compose(&self, inner: &Context) -> Context {
        match self {
            Context::Hole => inner.clone(),
            Context::AbsBody(x, c) => Context::abs_body(x.clone(), c.compose(inner)),
            Context::AppFun(c, a) => Context::app_fun(c.compose(inner), a.clone()),
            Context::AppArg(f, c) => Context::app_arg(f.clone(), c.compose(inner)),
        }
    }
}

pub fn plug(c: &Context, t: &Term) -> Term {
    c.plug(t)
}

pub fn compose(outer: &Context, inner: &Context) -> Context {
    outer.compose(inner)
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Context::Hole => f.write_str("[]"),
            Context::AbsBody(x, c) => write!(f, "λ{}.{}", x, c),
            Context::AppFun(c, a) => write!(f, "({}) ({})", c, a),
            Context::AppArg(m, c) => write!(f, "({}) ({})", m, c),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Term {
        parse_term(s).unwrap()
    }

    #[test]
    fn free_vars_examples() {
        assert!(free_vars(&p("\\x.x")).is_empty());
        assert_eq!(free_vars(&p("x (\\x.x)")), vec!["x".to_string()]);
        assert_eq!(
            free_vars(&p("\\x.y z")),
            vec!["y".to_string(), "z".to_string()]
        );
    }

    #[test]
    fn mark_free_examples() {
        assert_eq!(mark_free(&Term::var("x")), Term::marked("x"));
        assert_eq!(mark_free(&p("\\x.x")), p("\\x.x"));
        assert_eq!(
            mark_free(&p("\\x.x y")),
            Term::abs("x", Term::app(Term::var("x"), Term::marked("y")))
        );
    }

    #[test]
    fn subst_examples() {
        assert_eq!(subst(&Term::var("x"), "x", &Term::var("y")), Term::var("y"));
        assert_eq!(subst(&p("\\x.x"), "x", &Term::var("y")), p("\\x.x"));
        // capture forced: λy.x [x := y] must rename the binder
        let out = subst(&p("\\y.x"), "x", &Term::var("y"));
        match &out {
            Term::Abs(b, body) => {
                assert_ne!(b, "y");
                assert_eq!(**body, Term::var("y"));
            }
            other => panic!("expected abstraction, got {other:?}"),
        }
    }

    #[test]
    fn alpha_eq_examples() {
        assert!(alpha_eq(&p("\\x.x"), &p("\\y.y")));
        assert!(!alpha_eq(&p("\\x.\\y.x"), &p("\\a.\\b.b")));
        assert!(!alpha_eq(&Term::var("x"), &Term::var("y")));
    }

    #[test]
    fn plug_and_compose() {
        assert_eq!(Context::Hole.plug(&Term::var("x")), Term::var("x"));
        // plugging captures: C = λy.[], plug y gives λy.y
        let c = Context::abs_body("y", Context::Hole);
        assert_eq!(c.plug(&Term::var("y")), p("\\y.y"));
        let outer = Context::abs_body("y", Context::Hole);
        let inner = Context::app_arg(Term::var("m"), Context::Hole);
        let comp = outer.compose(&inner);
        assert_eq!(
            comp.plug(&Term::var("n")),
            Term::abs("y", Term::app(Term::var("m"), Term::var("n")))
        );
        assert_eq!(Context::Hole.compose(&inner), inner);
    }

    #[test]
    fn fresh_names_skip_forbidden() {
        let mut f = FreshNameSource::new(["_0".to_string(), "_2".to_string()]);
        assert_eq!(f.fresh(), "_1");
        assert_eq!(f.fresh(), "_3");
        assert_eq!(f.fresh(), "_4");
    }
}
