//! The reduction machine.
//!
//! One step pops an equation (per strategy), resolves both roots through the
//! indirection binding map, and then either fires a rule, performs an
//! indirection, or handles `amb`. Indirections are O(1): an equation `x = u`
//! stores `x ↦ u` in a single-entry-per-name binding map, and the
//! substitution completes when the name's other occurrence surfaces.

use super::net::{
    display_agent, AgentSym, Configuration, Equation, NameGen, NameId, NetTerm, Signature,
};
use super::rules::{Fresh, RuleTable, StatCategory};
use super::stats::Stats;
use crate::term::FreshNameSource;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::{HashMap, VecDeque};
use thiserror::Error;

/// Equation scheduling policy. FIFO is the default evaluator; LIFO and
/// seeded-random exist to exercise strategy independence.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Fifo,
    Lifo,
    Random(u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepOutcome {
    Progressed,
    NoEquations,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum EngineError {
    #[error("no rule for active pair {left} >< {right}")]
    NoRule { left: String, right: String },
    #[error("deadlock: equation {equation} binds a name occurring in its own term")]
    Deadlocked { equation: String },
    #[error("stuck: a full pass over {pending} pending equations made no progress")]
    Stuck { pending: usize },
    #[error("fuel exhausted after {interactions} interactions")]
    FuelExhausted { interactions: u64 },
}

/// Reduction failure carrying partial statistics and the configuration as it
/// stood when the error was raised.
#[derive(Debug, Error)]
#[error("{error}")]
pub struct ReduceFailure {
    pub error: EngineError,
    pub stats: Stats,
    pub config: Configuration,
}

#[derive(Clone, Copy, Debug)]
pub struct TraceEvent<'a> {
    /// Interactions performed so far, including this one when it is a firing.
    pub interactions: u64,
    pub label: &'a str,
    pub detail: &'a str,
}

enum Progress {
    Fired,
    Indirected,
    Requeued,
    Empty,
}

struct Machine<'t> {
    table: &'t RuleTable,
    strategy: Strategy,
    queue: VecDeque<Equation>,
    bindings: HashMap<NameId, NetTerm>,
    interface: Vec<NetTerm>,
    names: NameGen,
    idents: FreshNameSource,
    stats: Stats,
    stalled: usize,
    rng: Option<ChaCha8Rng>,
    sig: Signature,
    sink: Option<&'t mut dyn FnMut(TraceEvent)>,
}

impl<'t> Machine<'t> {
    fn new(
        config: Configuration,
        table: &'t RuleTable,
        strategy: Strategy,
        sink: Option<&'t mut dyn FnMut(TraceEvent)>,
    ) -> Self {
        let rng = match strategy {
            Strategy::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
            _ => None,
        };
        Machine {
            table,
            strategy,
            queue: config.equations,
            bindings: HashMap::new(),
            interface: config.interface,
            names: config.names,
            idents: config.idents,
            stats: Stats::default(),
            stalled: 0,
            rng,
            sig: config.sig,
            sink,
        }
    }

    fn pop(&mut self) -> Option<Equation> {
        match self.strategy {
            Strategy::Fifo => self.queue.pop_front(),
            Strategy::Lifo => self.queue.pop_back(),
            Strategy::Random(_) => {
                if self.queue.is_empty() {
                    return None;
                }
                let idx = self
                    .rng
                    .as_mut()
                    .expect("random strategy has rng")
                    .gen_range(0..self.queue.len());
                self.queue.swap_remove_back(idx)
            }
        }
    }

    fn push_results(&mut self, eqs: Vec<Equation>) {
        for eq in eqs {
            self.queue.push_back(eq);
        }
    }

    fn requeue(&mut self, eq: Equation) {
        match self.strategy {
            // re-queue to the far end so a full pass visits everything else
            Strategy::Fifo | Strategy::Random(_) => self.queue.push_back(eq),
            Strategy::Lifo => self.queue.push_front(eq),
        }
    }

    /// Chase a root name through the binding map, consuming bindings.
    fn resolve(&mut self, mut t: NetTerm) -> NetTerm {
        while let NetTerm::Name(x) = t {
            match self.bindings.remove(&x) {
                Some(bound) => t = bound,
                None => return NetTerm::Name(x),
            }
        }
        t
    }

    /// Chase a root name without consuming bindings.
    fn peek<'a>(&'a self, mut t: &'a NetTerm) -> &'a NetTerm {
        while let NetTerm::Name(x) = t {
            match self.bindings.get(x) {
                Some(bound) => t = bound,
                None => break,
            }
        }
        t
    }

    /// An equation makes progress when popped unless it is an amb whose
    /// principal lead and extra principal lead are both dangling names.
    fn equation_can_progress(&self, eq: &Equation) -> bool {
        let amb = self.sig.amb();
        let (l, r) = (self.peek(&eq.lhs), self.peek(&eq.rhs));
        let stuck_amb = |sym: &AgentSym, ports: &[NetTerm], other: &NetTerm| {
            sym.sym == amb
                && matches!(other, NetTerm::Name(_))
                && matches!(self.peek(&ports[0]), NetTerm::Name(_))
        };
        match (l, r) {
            (NetTerm::Agent(s, p), other) if stuck_amb(s, p, other) => false,
            (other, NetTerm::Agent(s, p)) if stuck_amb(s, p, other) => false,
            _ => true,
        }
    }

    fn display_eq(&self, eq: &Equation) -> String {
        let mut cfg = Configuration::new(self.sig.clone());
        cfg.equations.push_back(eq.clone());
        cfg.display(false)
    }

    fn emit(&mut self, label: &str, detail: &str) {
        let interactions = self.stats.total;
        if let Some(sink) = self.sink.as_deref_mut() {
            sink(TraceEvent {
                interactions,
                label,
                detail,
            });
        }
    }

    fn fire(
        &mut self,
        lsym: AgentSym,
        lports: Vec<NetTerm>,
        rsym: AgentSym,
        rports: Vec<NetTerm>,
    ) -> Result<(), EngineError> {
        let amb = self.sig.amb();
        if lsym.sym == amb && rsym.sym == amb {
            return Err(EngineError::NoRule {
                left: display_agent(&lsym, &self.sig),
                right: display_agent(&rsym, &self.sig),
            });
        }
        if lsym.sym == amb || rsym.sym == amb {
            let (alpha_sym, alpha_ports, amb_ports) = if rsym.sym == amb {
                (lsym, lports, rports)
            } else {
                (rsym, rports, lports)
            };
            return self.fire_amb(alpha_sym, alpha_ports, amb_ports);
        }
        match self
            .table
            .lookup(lsym.sym, &lsym.payload, rsym.sym, &rsym.payload)
        {
            None => Err(EngineError::NoRule {
                left: display_agent(&lsym, &self.sig),
                right: display_agent(&rsym, &self.sig),
            }),
            Some((rule, swapped)) => {
                let (lsym, lports, rsym, rports) = if swapped {
                    (rsym, rports, lsym, lports)
                } else {
                    (lsym, lports, rsym, rports)
                };
                let mut fresh = Fresh {
                    names: &mut self.names,
                    idents: &mut self.idents,
                };
                let (lpat, rpat) = (rule.builder)(&lsym.payload, &rsym.payload, &mut fresh);
                debug_assert_eq!(lpat.len(), lports.len(), "rule {}", rule.name);
                debug_assert_eq!(rpat.len(), rports.len(), "rule {}", rule.name);
                self.stats.record(
                    rule.category,
                    rule.vs_oracle,
                    rule.oracle_related,
                    rule.oracle_related_with_fan,
                );
                if self.sink.is_some() {
                    let detail = format!(
                        "{} >< {}",
                        display_agent(&lsym, &self.sig),
                        display_agent(&rsym, &self.sig)
                    );
                    self.emit(&rule.name, &detail);
                }
                let eqs: Vec<Equation> = lports
                    .into_iter()
                    .zip(lpat)
                    .chain(rports.into_iter().zip(rpat))
                    .map(|(port, pat)| Equation::new(port, pat))
                    .collect();
                self.push_results(eqs);
                Ok(())
            }
        }
    }

    /// The implicit family `∀α ∈ Σ: α[x⃗] ⋈ amb[y, α(x⃗), y]`, realized as
    /// `{v = α(t⃗), u = w}` for `α(t⃗) = amb(u, v, w)`.
    fn fire_amb(
        &mut self,
        alpha: AgentSym,
        alpha_ports: Vec<NetTerm>,
        amb_ports: Vec<NetTerm>,
    ) -> Result<(), EngineError> {
        debug_assert_eq!(amb_ports.len(), 3);
        let mut it = amb_ports.into_iter();
        let u = it.next().unwrap();
        let v = it.next().unwrap();
        let w = it.next().unwrap();
        self.stats.record(StatCategory::Amb, false, false, false);
        if self.sink.is_some() {
            let detail = format!("{} >< amb", display_agent(&alpha, &self.sig));
            self.emit("amb", &detail);
        }
        self.push_results(vec![
            Equation::new(v, NetTerm::Agent(alpha, alpha_ports)),
            Equation::new(u, w),
        ]);
        Ok(())
    }

    fn step_once(&mut self) -> Result<Progress, EngineError> {
        let eq = match self.pop() {
            Some(eq) => eq,
            None => return Ok(Progress::Empty),
        };
        let lhs = self.resolve(eq.lhs);
        let rhs = self.resolve(eq.rhs);
        let amb = self.sig.amb();
        match (lhs, rhs) {
            (NetTerm::Agent(ls, lp), NetTerm::Agent(rs, rp)) => {
                self.stalled = 0;
                self.fire(ls, lp, rs, rp)?;
                Ok(Progress::Fired)
            }
            (NetTerm::Name(x), NetTerm::Agent(sym, ports))
            | (NetTerm::Agent(sym, ports), NetTerm::Name(x))
                if sym.sym == amb =>
            {
                // amb facing a dangling name: try the conversion that swaps
                // in the extra principal port's lead.
                let mut ports = ports;
                let u = self.resolve(ports.remove(0));
                match u {
                    NetTerm::Agent(asym, aports) => {
                        self.stalled = 0;
                        if asym.sym == amb {
                            return Err(EngineError::NoRule {
                                left: display_agent(&asym, &self.sig),
                                right: display_agent(&sym, &self.sig),
                            });
                        }
                        // u = amb(t, v, w) with agent u now on the principal port
                        let mut amb_ports = vec![NetTerm::Name(x)];
                        amb_ports.extend(ports);
                        self.fire_amb(asym, aports, amb_ports)?;
                        Ok(Progress::Fired)
                    }
                    NetTerm::Name(u_name) => {
                        // no agent available on either lead yet
                        let mut restored = vec![NetTerm::Name(u_name)];
                        restored.extend(ports);
                        self.requeue(Equation::new(
                            NetTerm::Name(x),
                            NetTerm::Agent(sym, restored),
                        ));
                        self.stalled += 1;
                        if self.stalled > 2 * self.queue.len() + 16 {
                            // cheap counter tripped: confirm with a full pass
                            if self.queue.iter().all(|eq| !self.equation_can_progress(eq)) {
                                return Err(EngineError::Stuck {
                                    pending: self.queue.len(),
                                });
                            }
                            self.stalled = 0;
                        }
                        Ok(Progress::Requeued)
                    }
                }
            }
            (NetTerm::Name(x), t) | (t, NetTerm::Name(x)) => {
                if t.contains_name(x) {
                    let eq = Equation::new(NetTerm::Name(x), t);
                    return Err(EngineError::Deadlocked {
                        equation: self.display_eq(&eq),
                    });
                }
                self.stalled = 0;
                self.stats.indirections += 1;
                if self.sink.is_some() {
                    self.emit("indirection", "");
                }
                self.bindings.insert(x, t);
                Ok(Progress::Indirected)
            }
        }
    }

    /// Substitute every pending binding back into the interface, the
    /// remaining equations, and each other, restoring a plain configuration.
    fn flush(mut self) -> (Configuration, Stats) {
        fn deep(t: NetTerm, bindings: &mut HashMap<NameId, NetTerm>) -> NetTerm {
            match t {
                NetTerm::Name(x) => match bindings.remove(&x) {
                    Some(bound) => deep(bound, bindings),
                    None => NetTerm::Name(x),
                },
                NetTerm::Agent(sym, ports) => NetTerm::Agent(
                    sym,
                    ports.into_iter().map(|p| deep(p, bindings)).collect(),
                ),
            }
        }
        let mut bindings = std::mem::take(&mut self.bindings);
        let interface = std::mem::take(&mut self.interface)
            .into_iter()
            .map(|t| deep(t, &mut bindings))
            .collect();
        let mut equations: VecDeque<Equation> = std::mem::take(&mut self.queue)
            .into_iter()
            .map(|eq| Equation::new(deep(eq.lhs, &mut bindings), deep(eq.rhs, &mut bindings)))
            .collect();
        // Anything left is only reachable from other leftovers (detached
        // cycles); surface it as equations rather than dropping net garbage.
        // Drain in name order so the output is deterministic.
        let mut leftover: Vec<NameId> = bindings.keys().copied().collect();
        leftover.sort();
        for x in leftover {
            if let Some(t) = bindings.remove(&x) {
                let t = deep(t, &mut bindings);
                equations.push_back(Equation::new(NetTerm::Name(x), t));
            }
        }
        (
            Configuration {
                sig: self.sig,
                interface,
                equations,
                names: self.names,
                idents: self.idents,
            },
            self.stats,
        )
    }

    fn run(mut self, fuel: u64) -> Result<(Configuration, Stats), ReduceFailure> {
        loop {
            if self.queue.is_empty() {
                return Ok(self.flush());
            }
            if self.stats.total >= fuel {
                let interactions = self.stats.total;
                let (config, stats) = self.flush();
                return Err(ReduceFailure {
                    error: EngineError::FuelExhausted { interactions },
                    stats,
                    config,
                });
            }
            if let Err(error) = self.step_once() {
                let (config, stats) = self.flush();
                return Err(ReduceFailure {
                    error,
                    stats,
                    config,
                });
            }
        }
    }
}

/// Iterate interaction and indirection until no equations remain or `fuel`
/// interactions have been performed.
pub fn reduce(
    config: Configuration,
    table: &RuleTable,
    strategy: Strategy,
    fuel: u64,
) -> Result<(Configuration, Stats), ReduceFailure> {
    Machine::new(config, table, strategy, None).run(fuel)
}

/// As [`reduce`], reporting every firing and indirection to `on_event`.
pub fn reduce_traced<'t>(
    config: Configuration,
    table: &'t RuleTable,
    strategy: Strategy,
    fuel: u64,
    on_event: &'t mut dyn FnMut(TraceEvent),
) -> Result<(Configuration, Stats), ReduceFailure> {
    Machine::new(config, table, strategy, Some(on_event)).run(fuel)
}

/// Perform one reduction step on a configuration in place.
///
/// Pending indirections are flushed back after the step, so this is O(net)
/// per call; [`reduce`] is the efficient loop. With `Strategy::Random`, each
/// call draws from a stream derived from the seed and the step count in
/// `stats`, so repeated calls with the same starting state replay
/// identically.
pub fn step(
    config: &mut Configuration,
    table: &RuleTable,
    strategy: Strategy,
    stats: &mut Stats,
) -> Result<StepOutcome, EngineError> {
    let owned = std::mem::replace(config, Configuration::new(table.signature().clone()));
    let strategy = match strategy {
        Strategy::Random(seed) => {
            Strategy::Random(seed ^ (stats.total + stats.indirections).wrapping_mul(0x9e3779b9))
        }
        other => other,
    };
    let mut m = Machine::new(owned, table, strategy, None);
    m.stats = *stats;
    let outcome = m.step_once();
    let empty = matches!(outcome, Ok(Progress::Empty));
    let (restored, new_stats) = m.flush();
    *config = restored;
    *stats = new_stats;
    match outcome {
        Ok(_) if empty => Ok(StepOutcome::NoEquations),
        Ok(_) => Ok(StepOutcome::Progressed),
        Err(e) => Err(e),
    }
}

/// The pure conversion `⟨t⃗ | t = amb(u,v,w)⟩ = ⟨t⃗ | u = amb(t,v,w)⟩`,
/// applied when the non-amb side is a name and the extra principal port
/// already leads to an agent; identity otherwise.
pub fn rotate_amb(eq: Equation, sig: &Signature) -> Equation {
    let amb = sig.amb();
    let is_amb = |t: &NetTerm| matches!(t, NetTerm::Agent(s, _) if s.sym == amb);
    let (name, amb_term) = match (&eq.lhs, &eq.rhs) {
        (NetTerm::Name(_), t) if is_amb(t) => (eq.lhs.clone(), eq.rhs.clone()),
        (t, NetTerm::Name(_)) if is_amb(t) => (eq.rhs.clone(), eq.lhs.clone()),
        _ => return eq,
    };
    match amb_term {
        NetTerm::Agent(sym, mut ports) if matches!(ports[0], NetTerm::Agent(..)) => {
            let u = std::mem::replace(&mut ports[0], name);
            Equation::new(u, NetTerm::Agent(sym, ports))
        }
        _ => eq,
    }
}
