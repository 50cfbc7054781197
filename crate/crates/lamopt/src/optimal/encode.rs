//! Initial encoding of λK-terms into the level-indexed sharing signature.
//!
//! Levels track box nesting: an application keeps its function at the
//! current level and boxes its argument one level up. A bound occurrence at
//! depth `n` whose binder sits at depth `b` is reached through one croissant
//! door `⊔_k` per crossed box boundary (`k = b..n-1`) and a final dereliction
//! bracket `⩀_n`, so a substituted value rooted at level `b+1` arrives at the
//! occurrence carrying exactly level `n`. Multiple occurrences merge through
//! fans `δ_b` at the binder; an unused binder takes an eraser. Marked (free)
//! variables become atom agents, one per occurrence.
//!
//! The whole term is wrapped as `⟨x | eval(r(⊤(x))) = y, [M•, y]⟩`: the eval
//! token drives reduction from the root and the reader accumulates the
//! textual normal form, which exits through the ⊤ filter at the interface.

use super::OptimalSystem;
use crate::inet::{Configuration, Equation, NetTerm, Payload};
use crate::term::{free_vars, mark_free, Context, FreshNameSource, Term};

struct Binder {
    name: String,
    level: u64,
    uses: Vec<NetTerm>,
}

struct Encoder<'s> {
    sys: &'s OptimalSystem,
    cfg: Configuration,
}

impl Encoder<'_> {
    fn fresh(&mut self) -> NetTerm {
        NetTerm::Name(self.cfg.names.fresh())
    }

    fn translate(&mut self, t: &Term, level: u64, scope: &mut Vec<Binder>) -> NetTerm {
        let y = self.sys.symbols();
        match t {
            Term::Var(x) => {
                let occurrence = self.fresh();
                let binder = scope
                    .iter_mut()
                    .rev()
                    .find(|b| b.name == *x)
                    .expect("mark_free leaves only bound plain variables");
                let mut chain =
                    NetTerm::agent(y.bracket, Payload::Level(level), vec![occurrence.clone()]);
                for k in (binder.level..level).rev() {
                    chain = NetTerm::agent(y.croissant, Payload::Level(k), vec![chain]);
                }
                binder.uses.push(chain);
                occurrence
            }
            Term::MarkedVar(x) => NetTerm::agent(
                y.atom,
                Payload::Atom(Box::new(Term::Var(x.clone()))),
                vec![],
            ),
            Term::Abs(x, body) => {
                scope.push(Binder {
                    name: x.clone(),
                    level,
                    uses: Vec::new(),
                });
                let body_tree = self.translate(body, level, scope);
                let binder = scope.pop().expect("pushed above");
                let var_tree = self.fan_tree(binder.uses, level);
                NetTerm::agent(y.lam, Payload::Level(level), vec![var_tree, body_tree])
            }
            Term::App(fun, arg) => {
                let fun_tree = self.translate(fun, level, scope);
                let arg_tree = self.translate(arg, level + 1, scope);
                let root = self.fresh();
                self.cfg.equations.push_back(Equation::new(
                    fun_tree,
                    NetTerm::agent(y.app, Payload::Level(level), vec![arg_tree, root.clone()]),
                ));
                root
            }
        }
    }

    fn fan_tree(&mut self, mut uses: Vec<NetTerm>, level: u64) -> NetTerm {
        let y = self.sys.symbols();
        match uses.len() {
            0 => NetTerm::agent(y.eps, Payload::None, vec![]),
            1 => uses.pop().expect("one use"),
            _ => {
                let mut acc = uses.pop().expect("non-empty");
                while let Some(u) = uses.pop() {
                    acc = NetTerm::agent(y.fan, Payload::Level(level), vec![u, acc]);
                }
                acc
            }
        }
    }
}

/// Build the initial configuration for a term; free variables are permitted
/// and become atoms.
pub fn encode_with(sys: &OptimalSystem, m: &Term) -> Configuration {
    let y = sys.symbols();
    let marked = mark_free(m);
    let mut cfg = Configuration::new(sys.table().signature().clone());
    cfg.idents = FreshNameSource::new(free_vars(m));

    let root_port = cfg.names.fresh();
    let term_root = cfg.names.fresh();
    let wrapper = NetTerm::agent(
        y.eval,
        Payload::None,
        vec![NetTerm::agent(
            y.read,
            Payload::Read(Box::new(Context::Hole)),
            vec![NetTerm::agent(
                y.top,
                Payload::None,
                vec![NetTerm::Name(root_port)],
            )],
        )],
    );
    cfg.interface.push(NetTerm::Name(root_port));
    cfg.equations
        .push_back(Equation::new(wrapper, NetTerm::Name(term_root)));

    let mut enc = Encoder { sys, cfg };
    let tree = enc.translate(&marked, 0, &mut Vec::new());
    let mut cfg = enc.cfg;
    cfg.equations
        .push_back(Equation::new(tree, NetTerm::Name(term_root)));
    cfg
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::optimal::build_system;
    use crate::term::parse_term;

    fn count_agents(cfg: &Configuration, sym: crate::inet::SymbolId) -> usize {
        fn go(t: &NetTerm, sym: crate::inet::SymbolId, n: &mut usize) {
            if let NetTerm::Agent(head, ports) = t {
                if head.sym == sym {
                    *n += 1;
                }
                for p in ports {
                    go(p, sym, n);
                }
            }
        }
        let mut n = 0;
        for t in &cfg.interface {
            go(t, sym, &mut n);
        }
        for eq in &cfg.equations {
            go(&eq.lhs, sym, &mut n);
            go(&eq.rhs, sym, &mut n);
        }
        n
    }

    #[test]
    fn free_variable_encoding_shape() {
        let sys = build_system();
        let cfg = sys.encode(&Term::var("y"));
        // ⟨x | eval(r(⊤(x))) = z, a_y = z⟩
        assert_eq!(cfg.equations.len(), 2);
        assert_eq!(cfg.interface.len(), 1);
        assert_eq!(cfg.display(false), "⟨x1 | eval(r[[]](⊤(x1))) = x2, a[y] = x2⟩");
        cfg.check_linearity().unwrap();
    }

    #[test]
    fn identity_encoding_is_lean() {
        let sys = build_system();
        let y = sys.symbols();
        let cfg = sys.encode(&parse_term("\\x.x").unwrap());
        cfg.check_linearity().unwrap();
        assert_eq!(count_agents(&cfg, y.lam), 1);
        assert_eq!(count_agents(&cfg, y.fan), 0);
        assert_eq!(count_agents(&cfg, y.croissant), 0);
        assert!(count_agents(&cfg, y.bracket) <= 1);
    }

    #[test]
    fn shared_variable_gets_a_fan() {
        let sys = build_system();
        let y = sys.symbols();
        let cfg = sys.encode(&parse_term("\\x.x x").unwrap());
        cfg.check_linearity().unwrap();
        assert_eq!(count_agents(&cfg, y.fan), 1);
        cfg.check_linearity().unwrap();
    }

    #[test]
    fn occurrence_depth_builds_door_chain() {
        let sys = build_system();
        let y = sys.symbols();
        // x is used at box depth 2: two croissant doors and one dereliction
        let cfg = sys.encode(&parse_term("\\f.\\x.f (f x)").unwrap());
        cfg.check_linearity().unwrap();
        assert_eq!(count_agents(&cfg, y.croissant), 3); // one for inner f, two for x
        assert_eq!(count_agents(&cfg, y.bracket), 3); // one dereliction per occurrence
        assert_eq!(count_agents(&cfg, y.fan), 1);
    }
}
