//! Guarded, payload-parametric rewrite rules keyed by unordered symbol pairs.
//!
//! A rule's builder produces the right-hand sides in Lafont notation
//! `α[v1,…,vm] ⋈ β[w1,…,wn]`: the engine zips the actual aux ports of the
//! active pair against those patterns, so firing
//! `α(t1,…,tm) = β(u1,…,un)` yields `t1 = v1, …, u1 = w1, …`.

use super::net::{NameGen, NetTerm, Payload, PayloadKind, Signature, SignatureError, SymbolId};
use crate::term::{Context, FreshNameSource, Term};
use std::collections::HashMap;
use thiserror::Error;

/// Statistics bucket assigned to each rule. `total` partitions across these.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StatCategory {
    Beta,
    Fan,
    Oracle,
    Waiting,
    Readback,
    Amb,
    Erase,
    Other,
}

/// Fresh-value supply handed to rule builders: net names plus read-back
/// binder identifiers.
pub struct Fresh<'a> {
    pub names: &'a mut NameGen,
    pub idents: &'a mut FreshNameSource,
}

impl Fresh<'_> {
    pub fn name(&mut self) -> NetTerm {
        NetTerm::Name(self.names.fresh())
    }

    pub fn ident(&mut self) -> String {
        self.idents.fresh()
    }
}

pub type Guard = Box<dyn Fn(&Payload, &Payload) -> bool + Send + Sync>;
pub type Builder =
    Box<dyn Fn(&Payload, &Payload, &mut Fresh) -> (Vec<NetTerm>, Vec<NetTerm>) + Send + Sync>;

pub struct Rule {
    pub left: SymbolId,
    pub right: SymbolId,
    pub name: String,
    pub category: StatCategory,
    /// Interaction against a bracket/croissant while this rule's own side is
    /// waiting-class; feeds the `waiting_vs_oracle` sub-counter.
    pub vs_oracle: bool,
    /// At least one side of the pair is a bracket or croissant.
    pub oracle_related: bool,
    /// As above, additionally counting fans as oracle nodes.
    pub oracle_related_with_fan: bool,
    pub guard: Guard,
    pub builder: Builder,
}

impl Rule {
    pub fn new(
        left: SymbolId,
        right: SymbolId,
        name: impl Into<String>,
        category: StatCategory,
        guard: Guard,
        builder: Builder,
    ) -> Self {
        Rule {
            left,
            right,
            name: name.into(),
            category,
            vs_oracle: false,
            oracle_related: false,
            oracle_related_with_fan: false,
            guard,
            builder,
        }
    }
}

pub fn guard_always() -> Guard {
    Box::new(|_, _| true)
}

pub fn guard_levels_equal() -> Guard {
    Box::new(|l, r| l.level() == r.level())
}

pub fn guard_level_lt() -> Guard {
    Box::new(|l, r| l.level() < r.level())
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum RuleError {
    #[error(transparent)]
    Signature(#[from] SignatureError),
    #[error("rule '{rule}' overlaps an existing guard for the same pair on payloads {probe}")]
    GuardOverlap { rule: String, probe: String },
}

fn pair_key(a: SymbolId, b: SymbolId) -> (SymbolId, SymbolId) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// The compiled interaction system: a signature plus an O(1) lookup from
/// unordered symbol pairs to an ordered guard chain (first match wins).
pub struct RuleTable {
    sig: Signature,
    rules: HashMap<(SymbolId, SymbolId), Vec<Rule>>,
}

impl Default for RuleTable {
    fn default() -> Self {
        Self::new()
    }
}

impl RuleTable {
    pub fn new() -> Self {
        RuleTable {
            sig: Signature::new(),
            rules: HashMap::new(),
        }
    }

    pub fn from_signature(sig: Signature) -> Self {
        RuleTable {
            sig,
            rules: HashMap::new(),
        }
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn register_agent(
        &mut self,
        name: &str,
        arity: usize,
        payload: PayloadKind,
    ) -> Result<SymbolId, RuleError> {
        Ok(self.sig.register(name, arity, payload)?)
    }

    pub fn register_agent_with_display(
        &mut self,
        name: &str,
        display: &str,
        arity: usize,
        payload: PayloadKind,
    ) -> Result<SymbolId, RuleError> {
        Ok(self.sig.register_with_display(name, display, arity, payload)?)
    }

    /// Sample payloads used by the pairwise-exclusivity assertion.
    fn probes(kind: PayloadKind) -> Vec<Payload> {
        match kind {
            PayloadKind::None => vec![Payload::None],
            PayloadKind::Level => (0..=8).map(Payload::Level).collect(),
            PayloadKind::Atom => vec![Payload::Atom(Box::new(Term::var("x")))],
            PayloadKind::Read => vec![Payload::Read(Box::new(Context::Hole))],
        }
    }

    fn rule_matches(rule: &Rule, l: SymbolId, pl: &Payload, r: SymbolId, pr: &Payload) -> bool {
        if rule.left == l && rule.right == r && (rule.guard)(pl, pr) {
            return true;
        }
        rule.left == r && rule.right == l && (rule.guard)(pr, pl)
    }

    /// Append a rule to its pair's guard chain, asserting on sampled payloads
    /// that at most one rule of the chain can match any concrete pair.
    pub fn add_rule(&mut self, rule: Rule) -> Result<(), RuleError> {
        if rule.left.0 as usize >= self.sig.len() || rule.right.0 as usize >= self.sig.len() {
            return Err(SignatureError::UnknownSymbol(format!("#{}", rule.left.0)).into());
        }
        let key = pair_key(rule.left, rule.right);
        let chain = self.rules.entry(key).or_default();
        let kl = self.sig.def(rule.left).payload;
        let kr = self.sig.def(rule.right).payload;
        for pl in Self::probes(kl) {
            for pr in Self::probes(kr) {
                let new_hits = Self::rule_matches(&rule, rule.left, &pl, rule.right, &pr);
                if !new_hits {
                    continue;
                }
                for old in chain.iter() {
                    if Self::rule_matches(old, rule.left, &pl, rule.right, &pr) {
                        return Err(RuleError::GuardOverlap {
                            rule: rule.name.clone(),
                            probe: format!("{pl:?} / {pr:?}"),
                        });
                    }
                }
            }
        }
        chain.push(rule);
        Ok(())
    }

    /// Find the unique rule matching an active pair, together with whether
    /// the equation sides must be swapped to align with the rule's
    /// orientation.
    pub fn lookup(
        &self,
        l: SymbolId,
        pl: &Payload,
        r: SymbolId,
        pr: &Payload,
    ) -> Option<(&Rule, bool)> {
        let chain = self.rules.get(&pair_key(l, r))?;
        for rule in chain {
            if rule.left == l && rule.right == r && (rule.guard)(pl, pr) {
                return Some((rule, false));
            }
            if rule.left == r && rule.right == l && (rule.guard)(pr, pl) {
                return Some((rule, true));
            }
        }
        None
    }

    pub fn rules_for(&self, a: SymbolId, b: SymbolId) -> Option<&[Rule]> {
        self.rules.get(&pair_key(a, b)).map(|v| v.as_slice())
    }

    pub fn all_rules(&self) -> impl Iterator<Item = &Rule> {
        self.rules.values().flatten()
    }

    /// Representative payloads for a payload kind, as used by the
    /// exclusivity assertion; exposed for rule-level testing.
    pub fn payload_samples(kind: PayloadKind) -> Vec<Payload> {
        Self::probes(kind)
    }
}
