//! Interaction-calculus data model: signatures, agent trees, equations, and
//! configurations `⟨t1,…,tm | v1 = w1,…⟩`.

use crate::term::{Context, FreshNameSource, Term};
use std::collections::{BTreeMap, HashMap};
use std::collections::VecDeque;
use std::fmt;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymbolId(pub u32);

/// What kind of data an agent symbol carries. Fixed per symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PayloadKind {
    None,
    Level,
    Atom,
    Read,
}

#[derive(Clone, Debug)]
pub struct SymbolDef {
    pub name: String,
    /// Glyph used when pretty-printing; defaults to `name`.
    pub display: String,
    pub arity: usize,
    pub payload: PayloadKind,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum SignatureError {
    #[error("duplicate symbol '{0}'")]
    DuplicateSymbol(String),
    #[error("unknown symbol '{0}'")]
    UnknownSymbol(String),
}

/// The registered agent symbols with their arities. Every signature is
/// implicitly extended by `amb` with arity 3.
#[derive(Clone, Debug)]
pub struct Signature {
    defs: Vec<SymbolDef>,
    by_name: HashMap<String, SymbolId>,
    amb: SymbolId,
}

impl Default for Signature {
    fn default() -> Self {
        Self::new()
    }
}

impl Signature {
    pub fn new() -> Self {
        let mut sig = Signature {
            defs: Vec::new(),
            by_name: HashMap::new(),
            amb: SymbolId(0),
        };
        sig.amb = sig
            .register_with_display("amb", "amb", 3, PayloadKind::None)
            .expect("fresh signature");
        sig
    }

    pub fn register(
        &mut self,
        name: &str,
        arity: usize,
        payload: PayloadKind,
    ) -> Result<SymbolId, SignatureError> {
        self.register_with_display(name, name, arity, payload)
    }

    pub fn register_with_display(
        &mut self,
        name: &str,
        display: &str,
        arity: usize,
        payload: PayloadKind,
    ) -> Result<SymbolId, SignatureError> {
        if self.by_name.contains_key(name) {
            return Err(SignatureError::DuplicateSymbol(name.to_string()));
        }
        let id = SymbolId(self.defs.len() as u32);
        self.defs.push(SymbolDef {
            name: name.to_string(),
            display: display.to_string(),
            arity,
            payload,
        });
        self.by_name.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn amb(&self) -> SymbolId {
        self.amb
    }

    pub fn lookup(&self, name: &str) -> Option<SymbolId> {
        self.by_name.get(name).copied()
    }

    pub fn def(&self, id: SymbolId) -> &SymbolDef {
        &self.defs[id.0 as usize]
    }

    pub fn arity(&self, id: SymbolId) -> usize {
        self.def(id).arity
    }

    pub fn len(&self) -> usize {
        self.defs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.defs.is_empty()
    }

    pub fn symbols(&self) -> impl Iterator<Item = (SymbolId, &SymbolDef)> {
        self.defs
            .iter()
            .enumerate()
            .map(|(i, d)| (SymbolId(i as u32), d))
    }
}

/// Payload attached to one concrete agent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Payload {
    None,
    Level(u64),
    Atom(Box<Term>),
    Read(Box<Context>),
}

impl Payload {
    pub fn level(&self) -> u64 {
        match self {
            Payload::Level(i) => *i,
            other => panic!("payload {other:?} has no level"),
        }
    }

    pub fn atom(&self) -> &Term {
        match self {
            Payload::Atom(t) => t,
            other => panic!("payload {other:?} is not an atom"),
        }
    }

    pub fn context(&self) -> &Context {
        match self {
            Payload::Read(c) => c,
            other => panic!("payload {other:?} is not a read context"),
        }
    }
}

/// An agent symbol instantiated with its payload.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AgentSym {
    pub sym: SymbolId,
    pub payload: Payload,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NameId(pub u64);

#[derive(Clone, Copy, Debug, Default)]
pub struct NameGen {
    next: u64,
}

impl NameGen {
    pub fn fresh(&mut self) -> NameId {
        let id = NameId(self.next);
        self.next += 1;
        id
    }
}

/// A tree-shaped net term: an agent with its auxiliary ports, or a name.
/// Each name occurs exactly twice across a whole configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NetTerm {
    Name(NameId),
    Agent(AgentSym, Vec<NetTerm>),
}

impl NetTerm {
    pub fn agent(sym: SymbolId, payload: Payload, ports: Vec<NetTerm>) -> NetTerm {
        NetTerm::Agent(AgentSym { sym, payload }, ports)
    }

    pub fn name(id: NameId) -> NetTerm {
        NetTerm::Name(id)
    }

    /// Does `x` occur anywhere in this tree?
    pub fn contains_name(&self, x: NameId) -> bool {
        let mut stack = vec![self];
        while let Some(t) = stack.pop() {
            match t {
                NetTerm::Name(y) => {
                    if *y == x {
                        return true;
                    }
                }
                NetTerm::Agent(_, ports) => stack.extend(ports.iter()),
            }
        }
        false
    }

    fn count_names(&self, counts: &mut HashMap<NameId, usize>) {
        let mut stack = vec![self];
        while let Some(t) = stack.pop() {
            match t {
                NetTerm::Name(x) => *counts.entry(*x).or_insert(0) += 1,
                NetTerm::Agent(_, ports) => stack.extend(ports.iter()),
            }
        }
    }
}

/// An unordered pair of net terms; `lhs = rhs` and `rhs = lhs` dispatch the
/// same way.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation {
    pub lhs: NetTerm,
    pub rhs: NetTerm,
}

impl Equation {
    pub fn new(lhs: NetTerm, rhs: NetTerm) -> Self {
        Equation { lhs, rhs }
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("name linearity violated: x{} occurs {count} times", name.0)]
pub struct LinearityViolation {
    pub name: NameId,
    pub count: usize,
}

/// The unit of reduction: an ordered interface plus a multiset of equations,
/// together with the generators for net names and read-back binders.
#[derive(Clone, Debug)]
pub struct Configuration {
    pub sig: Signature,
    pub interface: Vec<NetTerm>,
    pub equations: VecDeque<Equation>,
    pub names: NameGen,
    pub idents: FreshNameSource,
}

impl Configuration {
    pub fn new(sig: Signature) -> Self {
        Configuration {
            sig,
            interface: Vec::new(),
            equations: VecDeque::new(),
            names: NameGen::default(),
            idents: FreshNameSource::default(),
        }
    }

    /// Check that every name occurs exactly twice, counting interface and
    /// equations together.
    pub fn check_linearity(&self) -> Result<(), LinearityViolation> {
        let mut counts = HashMap::new();
        for t in &self.interface {
            t.count_names(&mut counts);
        }
        for eq in &self.equations {
            eq.lhs.count_names(&mut counts);
            eq.rhs.count_names(&mut counts);
        }
        let mut bad: Vec<(NameId, usize)> = counts
            .into_iter()
            .filter(|&(_, c)| c != 2)
            .collect();
        bad.sort();
        match bad.first() {
            None => Ok(()),
            Some(&(name, count)) => Err(LinearityViolation { name, count }),
        }
    }

    /// Interaction-calculus text with names relabeled `x1, x2, …` in
    /// traversal order. Empty interface and empty equation multiset both
    /// print as `∅`.
    pub fn display(&self, ascii: bool) -> String {
        let mut labels: BTreeMap<NameId, usize> = BTreeMap::new();
        let mut out = String::new();
        out.push_str(if ascii { "<" } else { "⟨" });
        if self.interface.is_empty() {
            out.push_str(if ascii { "0" } else { "∅" });
        } else {
            for (i, t) in self.interface.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                render_term(t, &self.sig, ascii, &mut labels, &mut out);
            }
        }
        out.push_str(" | ");
        if self.equations.is_empty() {
            out.push_str(if ascii { "0" } else { "∅" });
        } else {
            for (i, eq) in self.equations.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                render_term(&eq.lhs, &self.sig, ascii, &mut labels, &mut out);
                out.push_str(" = ");
                render_term(&eq.rhs, &self.sig, ascii, &mut labels, &mut out);
            }
        }
        out.push_str(if ascii { ">" } else { "⟩" });
        out
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display(false))
    }
}

pub(crate) fn render_agent_head(sym: &AgentSym, sig: &Signature, ascii: bool, out: &mut String) {
    let def = sig.def(sym.sym);
    out.push_str(if ascii { &def.name } else { &def.display });
    match &sym.payload {
        Payload::None => {}
        Payload::Level(i) => out.push_str(&i.to_string()),
        Payload::Atom(t) => {
            out.push('[');
            out.push_str(&if ascii {
                crate::term::print_term_ascii(t)
            } else {
                crate::term::print_term(t)
            });
            out.push(']');
        }
        Payload::Read(c) => {
            out.push('[');
            out.push_str(&c.to_string());
            out.push(']');
        }
    }
}

fn render_term(
    t: &NetTerm,
    sig: &Signature,
    ascii: bool,
    labels: &mut BTreeMap<NameId, usize>,
    out: &mut String,
) {
    match t {
        NetTerm::Name(x) => {
            let n = labels.len() + 1;
            let label = *labels.entry(*x).or_insert(n);
            out.push('x');
            out.push_str(&label.to_string());
        }
        NetTerm::Agent(sym, ports) => {
            render_agent_head(sym, sig, ascii, out);
            if !ports.is_empty() {
                out.push('(');
                for (i, p) in ports.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    render_term(p, sig, ascii, labels, out);
                }
                out.push(')');
            }
        }
    }
}

/// One agent with its payload rendered for diagnostics.
pub fn display_agent(sym: &AgentSym, sig: &Signature) -> String {
    let mut s = String::new();
    render_agent_head(sym, sig, false, &mut s);
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny_sig() -> (Signature, SymbolId) {
        let mut sig = Signature::new();
        let eps = sig.register("eps", 0, PayloadKind::None).unwrap();
        (sig, eps)
    }

    #[test]
    fn register_rejects_duplicates() {
        let (mut sig, _) = tiny_sig();
        assert_eq!(
            sig.register("eps", 0, PayloadKind::None),
            Err(SignatureError::DuplicateSymbol("eps".into()))
        );
        // amb is implicitly present
        assert_eq!(
            sig.register("amb", 3, PayloadKind::None),
            Err(SignatureError::DuplicateSymbol("amb".into()))
        );
    }

    #[test]
    fn linearity_counts() {
        let (sig, eps) = tiny_sig();
        let mut cfg = Configuration::new(sig);
        let x = cfg.names.fresh();
        cfg.interface.push(NetTerm::name(x));
        cfg.equations.push_back(Equation::new(
            NetTerm::name(x),
            NetTerm::agent(eps, Payload::None, vec![]),
        ));
        assert!(cfg.check_linearity().is_ok());

        cfg.interface.push(NetTerm::name(x));
        let err = cfg.check_linearity().unwrap_err();
        assert_eq!(err.count, 3);

        let mut cfg2 = Configuration::new(cfg.sig.clone());
        let y = cfg2.names.fresh();
        cfg2.interface.push(NetTerm::name(y));
        assert_eq!(
            cfg2.check_linearity(),
            Err(LinearityViolation { name: y, count: 1 })
        );
    }

    #[test]
    fn display_relabels_names() {
        let (sig, eps) = tiny_sig();
        let mut cfg = Configuration::new(sig);
        let x = cfg.names.fresh();
        cfg.interface.push(NetTerm::name(x));
        cfg.equations.push_back(Equation::new(
            NetTerm::name(x),
            NetTerm::agent(eps, Payload::None, vec![]),
        ));
        assert_eq!(cfg.display(false), "⟨x1 | x1 = eps⟩");
        let empty = Configuration::new(cfg.sig.clone());
        assert_eq!(empty.display(false), "⟨∅ | ∅⟩");
    }
}
