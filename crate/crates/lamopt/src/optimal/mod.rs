//! The concrete interaction system for λK-normalization.
//!
//! Signature: level-indexed sharing agents ε, λ_i, @_i, δ_i, ⩀_i, ⊔_i
//! (crossing a ⩀ lowers an agent's level by one, crossing a ⊔ raises it);
//! the demand-driven blocking agents wait/hold/decide/eval/call; and the
//! read-back agents ⊤, a_M (atoms carrying a term) and r_C (readers carrying
//! a one-hole context). β-redexes are built blocked behind a wait/hold pair
//! and only fire once an eval token calls them, so reduction reaches the
//! normal form under any scheduling and erasure collects dead subnets.

mod encode;

pub use encode::encode_with;

use crate::inet::{
    guard_level_lt, guard_levels_equal, Builder, Configuration, Guard, NetTerm, Payload,
    PayloadKind, ReduceFailure, Rule, RuleTable, StatCategory, Stats, Strategy, SymbolId,
    TraceEvent,
};
use crate::term::{Context, Term};
use thiserror::Error;

/// Symbol ids of the full signature, in one place.
#[derive(Clone, Copy, Debug)]
pub struct Symbols {
    pub eps: SymbolId,
    pub lam: SymbolId,
    pub app: SymbolId,
    pub fan: SymbolId,
    pub bracket: SymbolId,
    pub croissant: SymbolId,
    pub wait: SymbolId,
    pub hold: SymbolId,
    pub decide: SymbolId,
    pub eval: SymbolId,
    pub call: SymbolId,
    pub top: SymbolId,
    pub atom: SymbolId,
    pub read: SymbolId,
    pub amb: SymbolId,
}

/// Coarse per-symbol class used to derive statistics categories.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum SymClass {
    Eraser,
    Lambda,
    Fan,
    Oracle,
    Waiting,
    Readback,
    Amb,
}

/// Category assignment for one symbol pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairClass {
    pub category: StatCategory,
    pub vs_oracle: bool,
    pub oracle_related: bool,
    pub oracle_related_with_fan: bool,
}

pub struct OptimalSystem {
    table: RuleTable,
    syms: Symbols,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum DecodeError {
    #[error("net is not normal: {remaining} equations remain")]
    NotNormal { remaining: usize },
    #[error("garbage in final configuration: {0}")]
    Garbage(String),
}

#[derive(Debug, Error)]
pub enum NormalizeError {
    #[error(transparent)]
    Engine(#[from] ReduceFailure),
    #[error("{error} (after {} interactions)", stats.total)]
    Decode { error: DecodeError, stats: Stats },
}

impl NormalizeError {
    pub fn stats(&self) -> Stats {
        match self {
            NormalizeError::Engine(f) => f.stats,
            NormalizeError::Decode { stats, .. } => *stats,
        }
    }
}

fn name(f: &mut crate::inet::Fresh) -> NetTerm {
    f.name()
}

impl OptimalSystem {
    pub fn table(&self) -> &RuleTable {
        &self.table
    }

    pub fn symbols(&self) -> Symbols {
        self.syms
    }

    fn class(&self, s: SymbolId) -> SymClass {
        let y = self.syms;
        if s == y.eps {
            SymClass::Eraser
        } else if s == y.lam || s == y.app {
            SymClass::Lambda
        } else if s == y.fan {
            SymClass::Fan
        } else if s == y.bracket || s == y.croissant {
            SymClass::Oracle
        } else if s == y.wait || s == y.hold || s == y.decide || s == y.eval || s == y.call {
            SymClass::Waiting
        } else if s == y.top || s == y.atom || s == y.read {
            SymClass::Readback
        } else {
            SymClass::Amb
        }
    }

    /// Statistics category for an unordered symbol pair.
    pub fn classify(&self, a: SymbolId, b: SymbolId) -> PairClass {
        let (ca, cb) = (self.class(a), self.class(b));
        let has = |c: SymClass| ca == c || cb == c;
        let oracle_related = has(SymClass::Oracle);
        let oracle_related_with_fan = oracle_related || has(SymClass::Fan);
        let category = if has(SymClass::Amb) {
            StatCategory::Amb
        } else if has(SymClass::Waiting) {
            StatCategory::Waiting
        } else if has(SymClass::Eraser) {
            StatCategory::Erase
        } else if has(SymClass::Readback) {
            StatCategory::Readback
        } else if ca == SymClass::Lambda && cb == SymClass::Lambda {
            StatCategory::Beta
        } else if has(SymClass::Fan) {
            StatCategory::Fan
        } else if has(SymClass::Oracle) {
            StatCategory::Oracle
        } else {
            StatCategory::Other
        };
        let vs_oracle = category == StatCategory::Waiting && oracle_related;
        PairClass {
            category,
            vs_oracle,
            oracle_related,
            oracle_related_with_fan,
        }
    }

    fn add(&mut self, left: SymbolId, right: SymbolId, name: &str, guard: Guard, builder: Builder) {
        let pc = self.classify(left, right);
        let mut rule = Rule::new(left, right, name, pc.category, guard, builder);
        rule.vs_oracle = pc.vs_oracle;
        rule.oracle_related = pc.oracle_related;
        rule.oracle_related_with_fan = pc.oracle_related_with_fan;
        self.table.add_rule(rule).expect("system rule");
    }

    /// End-to-end pipeline: encode, reduce, decode.
    pub fn normalize(
        &self,
        m: &Term,
        strategy: Strategy,
        fuel: u64,
    ) -> Result<(Term, Stats), NormalizeError> {
        self.normalize_inner(m, strategy, fuel, None)
    }

    pub fn normalize_traced(
        &self,
        m: &Term,
        strategy: Strategy,
        fuel: u64,
        on_event: &mut dyn FnMut(TraceEvent),
    ) -> Result<(Term, Stats), NormalizeError> {
        self.normalize_inner(m, strategy, fuel, Some(on_event))
    }

    fn normalize_inner(
        &self,
        m: &Term,
        strategy: Strategy,
        fuel: u64,
        on_event: Option<&mut dyn FnMut(TraceEvent)>,
    ) -> Result<(Term, Stats), NormalizeError> {
        let config = self.encode(m);
        let (out, stats) = match on_event {
            None => crate::inet::reduce(config, &self.table, strategy, fuel)?,
            Some(ev) => crate::inet::reduce_traced(config, &self.table, strategy, fuel, ev)?,
        };
        match self.decode(&out) {
            Ok(t) => Ok((t, stats)),
            Err(error) => Err(NormalizeError::Decode { error, stats }),
        }
    }

    /// Initial configuration `⟨x | eval(r(⊤(x))) = y, [M•, y]⟩` with free
    /// variables marked and encoded as atoms.
    pub fn encode(&self, m: &Term) -> Configuration {
        encode::encode_with(self, m)
    }

    /// Read the result of a completed reduction: the interface must be
    /// exactly one atom agent.
    pub fn decode(&self, config: &Configuration) -> Result<Term, DecodeError> {
        if !config.equations.is_empty() {
            return Err(DecodeError::NotNormal {
                remaining: config.equations.len(),
            });
        }
        match config.interface.as_slice() {
            [NetTerm::Agent(sym, ports)] if sym.sym == self.syms.atom && ports.is_empty() => {
                Ok(sym.payload.atom().clone())
            }
            _ => Err(DecodeError::Garbage(config.display(false))),
        }
    }
}

/// Build the full rule table: annihilations, level propagations, the
/// blocked-β and its waiting rules, read-back, and generic erasure.
pub fn build_system() -> OptimalSystem {
    let mut table = RuleTable::new();
    let mut reg = |n: &str, d: &str, a: usize, p: PayloadKind| {
        table
            .register_agent_with_display(n, d, a, p)
            .expect("fresh symbol")
    };
    let syms = Symbols {
        eps: reg("eps", "ε", 0, PayloadKind::None),
        lam: reg("lam", "λ", 2, PayloadKind::Level),
        app: reg("app", "@", 2, PayloadKind::Level),
        fan: reg("fan", "δ", 2, PayloadKind::Level),
        bracket: reg("cap", "⩀", 1, PayloadKind::Level),
        croissant: reg("cup", "⊔", 1, PayloadKind::Level),
        wait: reg("wait", "wait", 2, PayloadKind::None),
        hold: reg("hold", "hold", 2, PayloadKind::None),
        decide: reg("decide", "decide", 2, PayloadKind::None),
        eval: reg("eval", "eval", 1, PayloadKind::None),
        call: reg("call", "call", 0, PayloadKind::None),
        top: reg("top", "⊤", 1, PayloadKind::None),
        atom: reg("atom", "a", 0, PayloadKind::Atom),
        read: reg("read", "r", 1, PayloadKind::Read),
        amb: table.signature().amb(),
    };
    let mut sys = OptimalSystem { table, syms };
    let y = syms;

    let level = |i: u64| Payload::Level(i);
    let none = Payload::None;
    let ag = NetTerm::agent;

    // --- annihilations at equal level -------------------------------------
    sys.add(
        y.bracket,
        y.bracket,
        "cap-cap",
        guard_levels_equal(),
        Box::new(|_, _, f| {
            let x = name(f);
            (vec![x.clone()], vec![x])
        }),
    );
    sys.add(
        y.croissant,
        y.croissant,
        "cup-cup",
        guard_levels_equal(),
        Box::new(|_, _, f| {
            let x = name(f);
            (vec![x.clone()], vec![x])
        }),
    );
    sys.add(
        y.fan,
        y.fan,
        "fan-fan",
        guard_levels_equal(),
        Box::new(|_, _, f| {
            let x = name(f);
            let z = name(f);
            (vec![x.clone(), z.clone()], vec![x, z])
        }),
    );

    // --- β, blocked behind the waiting construct --------------------------
    // @_i[x, y] >< λ_i[wait(z, hold(z, x)), y]
    sys.add(
        y.app,
        y.lam,
        "beta",
        guard_levels_equal(),
        Box::new(move |_, _, f| {
            let x = name(f);
            let yy = name(f);
            let z = name(f);
            (
                vec![x.clone(), yy.clone()],
                vec![
                    ag(
                        y.wait,
                        none.clone(),
                        vec![
                            z.clone(),
                            ag(y.hold, Payload::None, vec![z, x]),
                        ],
                    ),
                    yy,
                ],
            )
        }),
    );

    // --- level propagations, guarded i < j ---------------------------------
    let targets = [
        (y.lam, 2usize),
        (y.app, 2),
        (y.fan, 2),
        (y.bracket, 1),
        (y.croissant, 1),
    ];
    for &(t, n) in &targets {
        // ⩀_i[α_{j-1}(x⃗)] >< α_j[⩀_i(x1), …, ⩀_i(xn)]
        sys.add(
            y.bracket,
            t,
            &format!("cap-{}", sys.table.signature().def(t).name),
            guard_level_lt(),
            Box::new(move |pl, pr, f| {
                let i = pl.level();
                let j = pr.level();
                let xs: Vec<NetTerm> = (0..n).map(|_| name(f)).collect();
                let lowered = ag(t, level(j - 1), xs.clone());
                let copies = xs
                    .into_iter()
                    .map(|x| ag(y.bracket, level(i), vec![x]))
                    .collect();
                (vec![lowered], copies)
            }),
        );
        // ⊔_i[α_{j+1}(x⃗)] >< α_j[⊔_i(x1), …, ⊔_i(xn)]
        sys.add(
            y.croissant,
            t,
            &format!("cup-{}", sys.table.signature().def(t).name),
            guard_level_lt(),
            Box::new(move |pl, pr, f| {
                let i = pl.level();
                let j = pr.level();
                let xs: Vec<NetTerm> = (0..n).map(|_| name(f)).collect();
                let raised = ag(t, level(j + 1), xs.clone());
                let copies = xs
                    .into_iter()
                    .map(|x| ag(y.croissant, level(i), vec![x]))
                    .collect();
                (vec![raised], copies)
            }),
        );
        // δ_i[α_j(x⃗), α_j(y⃗)] >< α_j[δ_i(x1,y1), …, δ_i(xn,yn)]
        sys.add(
            y.fan,
            t,
            &format!("fan-{}", sys.table.signature().def(t).name),
            guard_level_lt(),
            Box::new(move |pl, pr, f| {
                let i = pl.level();
                let j = pr.level();
                let xs: Vec<NetTerm> = (0..n).map(|_| name(f)).collect();
                let ys: Vec<NetTerm> = (0..n).map(|_| name(f)).collect();
                let first = ag(t, level(j), xs.clone());
                let second = ag(t, level(j), ys.clone());
                let pairs = xs
                    .into_iter()
                    .zip(ys)
                    .map(|(a, b)| ag(y.fan, level(i), vec![a, b]))
                    .collect();
                (vec![first, second], pairs)
            }),
        );
    }

    // --- unblocking and propagation of the waiting construct --------------
    // eval[λ_i(x, y)] >< λ_i[x, eval(y)]
    sys.add(
        y.eval,
        y.lam,
        "eval-lam",
        crate::inet::guard_always(),
        Box::new(move |_, pr, f| {
            let i = pr.level();
            let x = name(f);
            let b = name(f);
            (
                vec![ag(y.lam, level(i), vec![x.clone(), b.clone()])],
                vec![x, ag(y.eval, Payload::None, vec![b])],
            )
        }),
    );
    // eval[δ_i(x, y)] >< δ_i[x, y]
    sys.add(
        y.eval,
        y.fan,
        "eval-fan",
        crate::inet::guard_always(),
        Box::new(move |_, pr, f| {
            let i = pr.level();
            let x = name(f);
            let z = name(f);
            (
                vec![ag(y.fan, level(i), vec![x.clone(), z.clone()])],
                vec![x, z],
            )
        }),
    );
    // eval[x] >< wait[eval(x), call]
    sys.add(
        y.eval,
        y.wait,
        "eval-wait",
        crate::inet::guard_always(),
        Box::new(move |_, _, f| {
            let x = name(f);
            (
                vec![x.clone()],
                vec![
                    ag(y.eval, Payload::None, vec![x]),
                    ag(y.call, Payload::None, vec![]),
                ],
            )
        }),
    );
    // call >< hold[x, eval(x)]
    sys.add(
        y.call,
        y.hold,
        "call-hold",
        crate::inet::guard_always(),
        Box::new(move |_, _, f| {
            let x = name(f);
            (
                vec![],
                vec![x.clone(), ag(y.eval, Payload::None, vec![x])],
            )
        }),
    );
    // δ_i[wait(x, amb(y, decide(z, v), v)), wait(w, y)] >< wait[δ_i(x, w), z]
    sys.add(
        y.fan,
        y.wait,
        "fan-wait",
        crate::inet::guard_always(),
        Box::new(move |pl, _, f| {
            let i = pl.level();
            let x = name(f);
            let yy = name(f);
            let z = name(f);
            let v = name(f);
            let w = name(f);
            let decide = ag(y.decide, Payload::None, vec![z.clone(), v.clone()]);
            let amb = ag(y.amb, Payload::None, vec![yy.clone(), decide, v]);
            (
                vec![
                    ag(y.wait, Payload::None, vec![x.clone(), amb]),
                    ag(y.wait, Payload::None, vec![w.clone(), yy]),
                ],
                vec![ag(y.fan, level(i), vec![x, w]), z],
            )
        }),
    );
    // call >< decide[call, ε]
    sys.add(
        y.call,
        y.decide,
        "call-decide",
        crate::inet::guard_always(),
        Box::new(move |_, _, _| {
            (
                vec![],
                vec![
                    ag(y.call, Payload::None, vec![]),
                    ag(y.eps, Payload::None, vec![]),
                ],
            )
        }),
    );
    // ε >< decide[x, x]
    sys.add(
        y.eps,
        y.decide,
        "eps-decide",
        crate::inet::guard_always(),
        Box::new(move |_, _, f| {
            let x = name(f);
            (vec![], vec![x.clone(), x])
        }),
    );
    // @_i[x, wait(y, hold(@_i(x, y), wait(v, w)))] >< wait[v, w]
    sys.add(
        y.app,
        y.wait,
        "app-wait",
        crate::inet::guard_always(),
        Box::new(move |pl, _, f| {
            let i = pl.level();
            let x = name(f);
            let yy = name(f);
            let v = name(f);
            let w = name(f);
            let rebuilt = ag(y.app, level(i), vec![x.clone(), yy.clone()]);
            let inner = ag(y.wait, Payload::None, vec![v.clone(), w.clone()]);
            let held = ag(y.hold, Payload::None, vec![rebuilt, inner]);
            (
                vec![x, ag(y.wait, Payload::None, vec![yy, held])],
                vec![v, w],
            )
        }),
    );
    // ⩀_i[wait(x, y)] >< wait[⩀_i(x), y]   and the ⊔ twin
    for (ctrl, label) in [(y.bracket, "cap-wait"), (y.croissant, "cup-wait")] {
        sys.add(
            ctrl,
            y.wait,
            label,
            crate::inet::guard_always(),
            Box::new(move |pl, _, f| {
                let i = pl.level();
                let x = name(f);
                let z = name(f);
                (
                    vec![ag(y.wait, Payload::None, vec![x.clone(), z.clone()])],
                    vec![ag(ctrl, level(i), vec![x]), z],
                )
            }),
        );
    }
    // eval[⩀_i(x)] >< ⩀_i[eval(x)]   and the ⊔ twin: the demand token
    // passes a level filter the same way a read agent does, re-emitting the
    // filter toward its own consumer.
    for (ctrl, label) in [(y.bracket, "eval-cap"), (y.croissant, "eval-cup")] {
        sys.add(
            y.eval,
            ctrl,
            label,
            crate::inet::guard_always(),
            Box::new(move |_, pr, f| {
                let i = pr.level();
                let x = name(f);
                (
                    vec![ag(ctrl, level(i), vec![x.clone()])],
                    vec![ag(y.eval, Payload::None, vec![x])],
                )
            }),
        );
    }

    // --- read-back ---------------------------------------------------------
    // r_C[x] >< λ[a_y, r_{C[λy.[]]}(x)], y fresh
    sys.add(
        y.read,
        y.lam,
        "read-lam",
        crate::inet::guard_always(),
        Box::new(move |pl, _, f| {
            let ctx = pl.context().clone();
            let binder = f.ident();
            let x = name(f);
            let extended = ctx.compose(&Context::abs_body(binder.clone(), Context::Hole));
            (
                vec![x.clone()],
                vec![
                    ag(y.atom, Payload::Atom(Box::new(Term::Var(binder))), vec![]),
                    ag(y.read, Payload::Read(Box::new(extended)), vec![x]),
                ],
            )
        }),
    );
    // @_i[r_{M []}(x), x] >< a_M
    sys.add(
        y.app,
        y.atom,
        "app-atom",
        crate::inet::guard_always(),
        Box::new(move |_, pr, f| {
            let m = pr.atom().clone();
            let x = name(f);
            let ctx = Context::app_arg(m, Context::Hole);
            (
                vec![
                    ag(y.read, Payload::Read(Box::new(ctx)), vec![x.clone()]),
                    x,
                ],
                vec![],
            )
        }),
    );
    // r_C[a_{C[M]}] >< a_M
    sys.add(
        y.read,
        y.atom,
        "read-atom",
        crate::inet::guard_always(),
        Box::new(move |pl, pr, _| {
            let plugged = pl.context().plug(pr.atom());
            (
                vec![ag(y.atom, Payload::Atom(Box::new(plugged)), vec![])],
                vec![],
            )
        }),
    );
    // r_C[⩀_i(x)] >< ⩀_i[r_C(x)]   and the ⊔ twin
    for (ctrl, label) in [(y.bracket, "read-cap"), (y.croissant, "read-cup")] {
        sys.add(
            y.read,
            ctrl,
            label,
            crate::inet::guard_always(),
            Box::new(move |pl, pr, f| {
                let i = pr.level();
                let ctx = pl.context().clone();
                let x = name(f);
                (
                    vec![ag(ctrl, level(i), vec![x.clone()])],
                    vec![ag(y.read, Payload::Read(Box::new(ctx)), vec![x])],
                )
            }),
        );
    }
    // r_C[wait(x, y)] >< wait[r_C(x), y]
    sys.add(
        y.read,
        y.wait,
        "read-wait",
        crate::inet::guard_always(),
        Box::new(move |pl, _, f| {
            let ctx = pl.context().clone();
            let x = name(f);
            let z = name(f);
            (
                vec![ag(y.wait, Payload::None, vec![x.clone(), z.clone()])],
                vec![ag(y.read, Payload::Read(Box::new(ctx)), vec![x]), z],
            )
        }),
    );
    // eval[a_M] >< a_M, ⩀_i[a_M] >< a_M, ⊔_i[a_M] >< a_M, ⊤[a_M] >< a_M
    for (left, label) in [
        (y.eval, "eval-atom"),
        (y.bracket, "cap-atom"),
        (y.croissant, "cup-atom"),
        (y.top, "top-atom"),
    ] {
        sys.add(
            left,
            y.atom,
            label,
            crate::inet::guard_always(),
            Box::new(move |_, pr, _| {
                let m = pr.atom().clone();
                (vec![ag(y.atom, Payload::Atom(Box::new(m)), vec![])], vec![])
            }),
        );
    }
    // δ_i[a_M, a_M] >< a_M: an atom reaching a shared variable's fan is
    // copied to both occurrence branches, like the arity-1 cases above.
    sys.add(
        y.fan,
        y.atom,
        "fan-atom",
        crate::inet::guard_always(),
        Box::new(move |_, pr, _| {
            let m = pr.atom().clone();
            (
                vec![
                    ag(y.atom, Payload::Atom(Box::new(m.clone())), vec![]),
                    ag(y.atom, Payload::Atom(Box::new(m)), vec![]),
                ],
                vec![],
            )
        }),
    );
    // r_C[δ_i(x, y)] >< δ_i[r_C(x), r_C(y)]: a fan travelling the output
    // path duplicates the reader into both branches and moves on, to be
    // cancelled by its dual further up.
    sys.add(
        y.read,
        y.fan,
        "read-fan",
        crate::inet::guard_always(),
        Box::new(move |pl, pr, f| {
            let i = pr.level();
            let ctx = pl.context().clone();
            let x = name(f);
            let z = name(f);
            (
                vec![ag(y.fan, level(i), vec![x.clone(), z.clone()])],
                vec![
                    ag(y.read, Payload::Read(Box::new(ctx.clone())), vec![x]),
                    ag(y.read, Payload::Read(Box::new(ctx)), vec![z]),
                ],
            )
        }),
    );
    // ⊤[x] >< ⩀_i[⊤(x)]   and the ⊔ twin: the output filter drops levels
    for (ctrl, label) in [(y.bracket, "top-cap"), (y.croissant, "top-cup")] {
        sys.add(
            y.top,
            ctrl,
            label,
            crate::inet::guard_always(),
            Box::new(move |_, _, f| {
                let x = name(f);
                (
                    vec![x.clone()],
                    vec![ag(y.top, Payload::None, vec![x])],
                )
            }),
        );
    }

    // --- erasure: ε >< α[ε, …, ε] for everything without a specific rule ---
    let erasable = [
        y.eps, y.lam, y.app, y.fan, y.bracket, y.croissant, y.wait, y.hold, y.eval, y.call,
        y.top, y.atom, y.read,
    ];
    for t in erasable {
        let n = sys.table.signature().arity(t);
        let label = format!("eps-{}", sys.table.signature().def(t).name);
        sys.add(
            y.eps,
            t,
            &label,
            crate::inet::guard_always(),
            Box::new(move |_, _, _| {
                (
                    vec![],
                    (0..n).map(|_| ag(y.eps, Payload::None, vec![])).collect(),
                )
            }),
        );
    }

    sys
}
