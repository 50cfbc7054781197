//! Reference reducer: leftmost-outermost β-reduction to full normal form,
//! with an explicit fuel bound so divergence is reported deterministically.

use super::{all_names, subst_with, FreshNameSource, Term};
use thiserror::Error;

#[derive(Clone, Copy, Debug, Error, PartialEq, Eq)]
#[error("fuel exhausted: more than {fuel} β-steps")]
pub struct FuelExhausted {
    pub fuel: u64,
}

fn step(t: &Term, fresh: &mut FreshNameSource) -> Option<Term> {
    match t {
        Term::App(f, a) => {
            if let Term::Abs(x, b) = &**f {
                return Some(subst_with(b, x, a, fresh));
            }
            if let Some(f2) = step(f, fresh) {
                return Some(Term::App(Box::new(f2), a.clone()));
            }
            step(a, fresh).map(|a2| Term::App(f.clone(), Box::new(a2)))
        }
        Term::Abs(x, b) => step(b, fresh).map(|b2| Term::Abs(x.clone(), Box::new(b2))),
        Term::Var(_) | Term::MarkedVar(_) => None,
    }
}

/// β-normal form by normal order, or `FuelExhausted` if more than `fuel`
/// steps would be needed.
pub fn normal_order_nf(t: &Term, fuel: u64) -> Result<Term, FuelExhausted> {
    let mut fresh = FreshNameSource::new(all_names(t));
    let mut cur = t.clone();
    let mut used = 0u64;
    while let Some(next) = step(&cur, &mut fresh) {
        if used == fuel {
            return Err(FuelExhausted { fuel });
        }
        used += 1;
        cur = next;
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::{alpha_eq, parse_term};

    fn p(s: &str) -> Term {
        parse_term(s).unwrap()
    }

    #[test]
    fn simple_redex() {
        assert_eq!(normal_order_nf(&p("(\\x.x) y"), 10).unwrap(), p("y"));
    }

    #[test]
    fn erases_divergent_argument_in_three_steps() {
        // (λf x.K x f) Ω normalizes to λx.x in exactly 3 steps
        let t = p("(\\f.\\x.(\\a.\\b.a) x f) ((\\x.x x) (\\x.x x))");
        assert!(alpha_eq(&normal_order_nf(&t, 3).unwrap(), &p("\\x.x")));
        assert_eq!(
            normal_order_nf(&t, 2),
            Err(FuelExhausted { fuel: 2 })
        );
    }

    #[test]
    fn omega_diverges() {
        let t = p("(\\x.x x) (\\x.x x)");
        assert_eq!(normal_order_nf(&t, 1000), Err(FuelExhausted { fuel: 1000 }));
    }

    #[test]
    fn church_two_squared() {
        let two = "(\\f.\\x.f (f x))";
        let t = p(&format!("{two} {two}"));
        let four = p("\\f.\\x.f (f (f (f x)))");
        assert!(alpha_eq(&normal_order_nf(&t, 1000).unwrap(), &four));
    }

    #[test]
    fn idempotent_on_normal_forms() {
        let nf = normal_order_nf(&p("(\\x.x y) (\\z.z)"), 100).unwrap();
        assert_eq!(normal_order_nf(&nf, 100).unwrap(), nf);
    }
}
