//! Generic interaction-calculus engine: configurations, guarded
//! payload-parametric rule tables, the non-deterministic `amb` extension,
//! the interaction/indirection reduction relation, and statistics.

mod engine;
mod net;
mod rules;
mod stats;

pub use engine::{
    reduce, reduce_traced, rotate_amb, step, EngineError, ReduceFailure, StepOutcome, Strategy,
    TraceEvent,
};
pub use net::{
    display_agent, AgentSym, Configuration, Equation, LinearityViolation, NameGen, NameId,
    NetTerm, Payload, PayloadKind, Signature, SignatureError, SymbolDef, SymbolId,
};
pub use rules::{
    guard_always, guard_level_lt, guard_levels_equal, Builder, Fresh, Guard, Rule, RuleError,
    RuleTable, StatCategory,
};
pub use stats::Stats;
