//! Normalization of pure untyped λK-terms on interaction nets.
//!
//! Terms are compiled into a sharing graph with level-indexed agents,
//! reduced by local rewriting in which every β-redex is blocked behind a
//! waiting construct until an eval token demands it, and decoded back to
//! text by read agents living inside the net itself. The final configuration
//! of a successful run is a single atom agent carrying the normal form.
//!
//! Module map:
//!
//! * [`term`] — λ-term syntax, substitution, and the normal-order reference
//!   reducer used as a correctness oracle.
//! * [`inet`] — generic interaction-calculus engine: configurations, guarded
//!   rule tables, the `amb` extension, scheduling strategies, statistics.
//! * [`optimal`] — the concrete interaction system: sharing rules, the
//!   waiting construct, read-back, encoder and decoder.
//! * [`dsl`] — a small rule-definition language for running user-supplied
//!   deterministic interaction systems on the same engine.
//! * [`corpus`] — bundled λ-terms used by the self-test command.
//!
//! ```
//! use lamopt::{build_system, parse_term, Strategy};
//!
//! let sys = build_system();
//! let term = parse_term("(\\f.\\x.f (f x)) (\\f.\\x.f (f x))").unwrap();
//! let (nf, _stats) = sys.normalize(&term, Strategy::Fifo, 100_000).unwrap();
//! assert_eq!(nf.to_string(), "λ_0.λ_1._0 (_0 (_0 (_0 _1)))");
//! ```

pub mod corpus;
pub mod dsl;
pub mod inet;
pub mod optimal;
pub mod term;

pub use inet::{Configuration, ReduceFailure, RuleTable, Stats, Strategy};
pub use optimal::{build_system, NormalizeError, OptimalSystem};
pub use term::{alpha_eq, normal_order_nf, parse_term, print_term, print_term_ascii, Term};
