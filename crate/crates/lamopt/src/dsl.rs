//! Rule-definition language for user-supplied deterministic interaction
//! systems, structured like yacc/lex input and lexically close to LaTeX.
//!
//! A program is a list of rules followed by `$$` and an initial
//! configuration:
//!
//! ```text
//! \epsilon { console.log("side effect, ignored"); } \delta[\epsilon, \epsilon];
//! \delta[\gamma(x, y), \gamma(v, w)] \gamma[\delta(x, v), \delta(y, w)];
//! $$
//! \delta(\epsilon, x) = \gamma(x, \epsilon);
//! ```
//!
//! Rule sides are written `\sym[args]` with `\sym(args)` trees inside the
//! argument lists; `{ … }` code blocks are lexed with brace balancing and
//! discarded with a warning. Signature and arities are inferred from use.
//! `\amb` is reserved with arity 3 and the engine's built-in behavior;
//! level-indexed or payload-carrying agents are not expressible here.

use crate::inet::{
    guard_always, Configuration, Equation, NameId, NetTerm, Payload, PayloadKind, Rule, RuleTable,
    StatCategory, SymbolId,
};
use std::collections::HashMap;
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DslTree {
    Agent(String, Vec<DslTree>),
    Name(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DslRule {
    pub left_symbol: String,
    pub left_args: Vec<DslTree>,
    pub right_symbol: String,
    pub right_args: Vec<DslTree>,
    /// Imperative block between the two sides, parsed and ignored.
    pub code: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DslProgram {
    pub rules: Vec<DslRule>,
    pub initial: Vec<(DslTree, DslTree)>,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum DslError {
    #[error("syntax error at {line}:{col}: {msg}")]
    Syntax { line: u32, col: u32, msg: String },
    #[error("symbol '{symbol}' used with arities {first} and {second}")]
    ArityMismatch {
        symbol: String,
        first: usize,
        second: usize,
    },
    #[error("rule {rule}: name '{name}' occurs {count} times (names must occur exactly twice)")]
    RuleLinearity {
        rule: usize,
        name: String,
        count: usize,
    },
    #[error("initial configuration: name '{name}' occurs {count} times")]
    InitialLinearity { name: String, count: usize },
    #[error("'\\amb' is reserved and cannot head a rule")]
    ReservedAmb,
    #[error("duplicate rule for pair {left} >< {right}")]
    DuplicateRule { left: String, right: String },
}

impl DslProgram {
    /// One warning per rule whose code block was parsed and discarded.
    pub fn warnings(&self) -> Vec<String> {
        self.rules
            .iter()
            .enumerate()
            .filter(|(_, r)| r.code.is_some())
            .map(|(i, r)| {
                format!(
                    "rule {} (\\{} >< \\{}): code block ignored (side effects are not executed)",
                    i + 1,
                    r.left_symbol,
                    r.right_symbol
                )
            })
            .collect()
    }
}

// --- parsing ---------------------------------------------------------------

struct Scanner {
    src: Vec<char>,
    pos: usize,
    line: u32,
    col: u32,
}

impl Scanner {
    fn new(text: &str) -> Self {
        Scanner {
            src: text.chars().collect(),
            pos: 0,
            line: 1,
            col: 1,
        }
    }

    fn err(&self, msg: impl Into<String>) -> DslError {
        DslError::Syntax {
            line: self.line,
            col: self.col,
            msg: msg.into(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.src.get(self.pos).copied()
    }

    fn peek2(&self) -> Option<char> {
        self.src.get(self.pos + 1).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.bump();
            } else if c == '#' {
                while let Some(c) = self.peek() {
                    if c == '\n' {
                        break;
                    }
                    self.bump();
                }
            } else {
                break;
            }
        }
    }

    fn expect(&mut self, c: char) -> Result<(), DslError> {
        self.skip_ws();
        match self.peek() {
            Some(got) if got == c => {
                self.bump();
                Ok(())
            }
            Some(got) => Err(self.err(format!("expected '{c}', found '{got}'"))),
            None => Err(self.err(format!("expected '{c}', found end of input"))),
        }
    }

    fn ident(&mut self) -> Result<String, DslError> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(c) = self.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' || c == '\'' {
                        s.push(c);
                        self.bump();
                    } else {
                        break;
                    }
                }
                Ok(s)
            }
            Some(c) => Err(self.err(format!("expected identifier, found '{c}'"))),
            None => Err(self.err("expected identifier, found end of input")),
        }
    }

    /// `\sym` — the backslash has been peeked, not consumed.
    fn agent_symbol(&mut self) -> Result<String, DslError> {
        self.expect('\\')?;
        self.ident()
    }

    /// A tree: `\sym`, `\sym(args)`, or a bare name.
    fn tree(&mut self) -> Result<DslTree, DslError> {
        self.skip_ws();
        match self.peek() {
            Some('\\') => {
                let sym = self.agent_symbol()?;
                self.skip_ws();
                let args = if self.peek() == Some('(') {
                    self.bump();
                    let args = self.tree_list(')')?;
                    self.expect(')')?;
                    args
                } else {
                    Vec::new()
                };
                Ok(DslTree::Agent(sym, args))
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => Ok(DslTree::Name(self.ident()?)),
            Some(c) => Err(self.err(format!("expected tree, found '{c}'"))),
            None => Err(self.err("expected tree, found end of input")),
        }
    }

    fn tree_list(&mut self, close: char) -> Result<Vec<DslTree>, DslError> {
        let mut out = Vec::new();
        self.skip_ws();
        if self.peek() == Some(close) {
            return Ok(out);
        }
        loop {
            out.push(self.tree()?);
            self.skip_ws();
            if self.peek() == Some(',') {
                self.bump();
            } else {
                return Ok(out);
            }
        }
    }

    /// One rule side: `\sym` optionally followed by `[args]`.
    fn rule_side(&mut self) -> Result<(String, Vec<DslTree>), DslError> {
        let sym = self.agent_symbol()?;
        self.skip_ws();
        let args = if self.peek() == Some('[') {
            self.bump();
            let args = self.tree_list(']')?;
            self.expect(']')?;
            args
        } else {
            Vec::new()
        };
        Ok((sym, args))
    }

    /// `{ … }` with brace balancing; returns the raw inner text.
    fn code_block(&mut self) -> Result<String, DslError> {
        self.expect('{')?;
        let mut depth = 1usize;
        let mut body = String::new();
        loop {
            match self.bump() {
                Some('{') => {
                    depth += 1;
                    body.push('{');
                }
                Some('}') => {
                    depth -= 1;
                    if depth == 0 {
                        return Ok(body.trim().to_string());
                    }
                    body.push('}');
                }
                Some(c) => body.push(c),
                None => return Err(self.err("unterminated code block")),
            }
        }
    }

    fn at_separator(&mut self) -> bool {
        self.skip_ws();
        self.peek() == Some('$') && self.peek2() == Some('$')
    }
}

/// Parse a full program; infers no signature yet, but checks rule-level
/// linearity and arity consistency (including the initial configuration).
pub fn parse_system(text: &str) -> Result<DslProgram, DslError> {
    let mut s = Scanner::new(text);
    let mut program = DslProgram::default();

    while !s.at_separator() {
        s.skip_ws();
        if s.peek().is_none() {
            return Err(s.err("expected '$$' before end of input"));
        }
        let (left_symbol, left_args) = s.rule_side()?;
        s.skip_ws();
        let code = if s.peek() == Some('{') {
            Some(s.code_block()?)
        } else {
            None
        };
        let (right_symbol, right_args) = s.rule_side()?;
        s.expect(';')?;
        program.rules.push(DslRule {
            left_symbol,
            left_args,
            right_symbol,
            right_args,
            code,
        });
    }
    s.expect('$')?;
    s.expect('$')?;

    loop {
        s.skip_ws();
        if s.peek().is_none() {
            break;
        }
        let lhs = s.tree()?;
        s.expect('=')?;
        let rhs = s.tree()?;
        s.expect(';')?;
        program.initial.push((lhs, rhs));
    }

    validate(&program)?;
    Ok(program)
}

fn collect_names<'t>(t: &'t DslTree, out: &mut HashMap<&'t str, usize>) {
    match t {
        DslTree::Name(n) => *out.entry(n.as_str()).or_insert(0) += 1,
        DslTree::Agent(_, args) => {
            for a in args {
                collect_names(a, out);
            }
        }
    }
}

fn infer_arity(t: &DslTree, arities: &mut HashMap<String, usize>) -> Result<(), DslError> {
    if let DslTree::Agent(sym, args) = t {
        if sym == "amb" && args.len() != 3 {
            return Err(DslError::ArityMismatch {
                symbol: sym.clone(),
                first: 3,
                second: args.len(),
            });
        }
        match arities.get(sym.as_str()) {
            Some(&seen) if seen != args.len() => {
                return Err(DslError::ArityMismatch {
                    symbol: sym.clone(),
                    first: seen,
                    second: args.len(),
                })
            }
            _ => {
                arities.insert(sym.clone(), args.len());
            }
        }
        for a in args {
            infer_arity(a, arities)?;
        }
    }
    Ok(())
}

fn validate(program: &DslProgram) -> Result<(), DslError> {
    let mut arities: HashMap<String, usize> = HashMap::new();
    for (i, rule) in program.rules.iter().enumerate() {
        if rule.left_symbol == "amb" || rule.right_symbol == "amb" {
            return Err(DslError::ReservedAmb);
        }
        for (sym, args) in [
            (&rule.left_symbol, &rule.left_args),
            (&rule.right_symbol, &rule.right_args),
        ] {
            let probe = DslTree::Agent(sym.clone(), args.clone());
            infer_arity(&probe, &mut arities)?;
        }
        let mut counts = HashMap::new();
        for t in rule.left_args.iter().chain(&rule.right_args) {
            collect_names(t, &mut counts);
        }
        if let Some((name, count)) = counts.into_iter().find(|&(_, c)| c != 2) {
            return Err(DslError::RuleLinearity {
                rule: i + 1,
                name: name.to_string(),
                count,
            });
        }
    }
    let mut counts = HashMap::new();
    for (lhs, rhs) in &program.initial {
        infer_arity(lhs, &mut arities)?;
        infer_arity(rhs, &mut arities)?;
        collect_names(lhs, &mut counts);
        collect_names(rhs, &mut counts);
    }
    if let Some((name, count)) = counts.into_iter().find(|&(_, c)| c != 2) {
        return Err(DslError::InitialLinearity {
            name: name.to_string(),
            count,
        });
    }
    Ok(())
}

// --- printing --------------------------------------------------------------

fn write_tree(t: &DslTree, out: &mut String) {
    match t {
        DslTree::Name(n) => out.push_str(n),
        DslTree::Agent(sym, args) => {
            out.push('\\');
            out.push_str(sym);
            if !args.is_empty() {
                out.push('(');
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    write_tree(a, out);
                }
                out.push(')');
            }
        }
    }
}

/// Canonical text for a program; parses back to the same `DslProgram`.
pub fn print_system(program: &DslProgram) -> String {
    let mut out = String::new();
    for rule in &program.rules {
        out.push('\\');
        out.push_str(&rule.left_symbol);
        if !rule.left_args.is_empty() {
            out.push('[');
            for (i, a) in rule.left_args.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write_tree(a, &mut out);
            }
            out.push(']');
        }
        if let Some(code) = &rule.code {
            let _ = write!(out, " {{ {code} }}");
        }
        out.push_str(" \\");
        out.push_str(&rule.right_symbol);
        if !rule.right_args.is_empty() {
            out.push('[');
            for (i, a) in rule.right_args.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write_tree(a, &mut out);
            }
            out.push(']');
        }
        out.push_str(";\n");
    }
    out.push_str("\n$$\n\n");
    for (lhs, rhs) in &program.initial {
        write_tree(lhs, &mut out);
        out.push_str(" = ");
        write_tree(rhs, &mut out);
        out.push_str(";\n");
    }
    out
}

// --- loading ---------------------------------------------------------------

/// Pattern templates pre-resolved to symbol ids, with rule names mapped to
/// local slots so each firing mints fresh engine names.
#[derive(Clone, Debug)]
enum Template {
    Slot(usize),
    Agent(SymbolId, Vec<Template>),
}

fn compile_template(
    t: &DslTree,
    syms: &HashMap<String, SymbolId>,
    slots: &mut HashMap<String, usize>,
) -> Template {
    match t {
        DslTree::Name(n) => {
            let next = slots.len();
            Template::Slot(*slots.entry(n.clone()).or_insert(next))
        }
        DslTree::Agent(sym, args) => Template::Agent(
            syms[sym.as_str()],
            args.iter()
                .map(|a| compile_template(a, syms, slots))
                .collect(),
        ),
    }
}

fn instantiate(t: &Template, names: &[NameId]) -> NetTerm {
    match t {
        Template::Slot(i) => NetTerm::Name(names[*i]),
        Template::Agent(sym, args) => NetTerm::Agent(
            crate::inet::AgentSym {
                sym: *sym,
                payload: Payload::None,
            },
            args.iter().map(|a| instantiate(a, names)).collect(),
        ),
    }
}

/// Register the inferred signature, compile every rule into the engine's
/// table, and build the initial configuration (empty interface).
pub fn load(program: &DslProgram) -> Result<(RuleTable, Configuration), DslError> {
    let mut table = RuleTable::new();
    let mut syms: HashMap<String, SymbolId> = HashMap::new();
    syms.insert("amb".to_string(), table.signature().amb());

    let mut arities: HashMap<String, usize> = HashMap::new();
    for rule in &program.rules {
        for (sym, args) in [
            (&rule.left_symbol, &rule.left_args),
            (&rule.right_symbol, &rule.right_args),
        ] {
            let probe = DslTree::Agent(sym.clone(), args.clone());
            infer_arity(&probe, &mut arities)?;
        }
    }
    for (lhs, rhs) in &program.initial {
        infer_arity(lhs, &mut arities)?;
        infer_arity(rhs, &mut arities)?;
    }
    let mut ordered: Vec<(String, usize)> = arities.into_iter().collect();
    ordered.sort();
    for (name, arity) in ordered {
        if name == "amb" {
            continue;
        }
        let id = table
            .register_agent(&name, arity, PayloadKind::None)
            .expect("validated signature");
        syms.insert(name, id);
    }

    for rule in &program.rules {
        let mut slots = HashMap::new();
        let left_pats: Vec<Template> = rule
            .left_args
            .iter()
            .map(|t| compile_template(t, &syms, &mut slots))
            .collect();
        let right_pats: Vec<Template> = rule
            .right_args
            .iter()
            .map(|t| compile_template(t, &syms, &mut slots))
            .collect();
        let slot_count = slots.len();
        let builder = move |_: &Payload, _: &Payload, f: &mut crate::inet::Fresh| {
            let names: Vec<NameId> = (0..slot_count)
                .map(|_| match f.name() {
                    NetTerm::Name(id) => id,
                    _ => unreachable!(),
                })
                .collect();
            (
                left_pats.iter().map(|t| instantiate(t, &names)).collect(),
                right_pats.iter().map(|t| instantiate(t, &names)).collect(),
            )
        };
        let compiled = Rule::new(
            syms[&rule.left_symbol],
            syms[&rule.right_symbol],
            format!("{}-{}", rule.left_symbol, rule.right_symbol),
            StatCategory::Other,
            guard_always(),
            Box::new(builder),
        );
        if let Err(crate::inet::RuleError::GuardOverlap { .. }) = table.add_rule(compiled) {
            return Err(DslError::DuplicateRule {
                left: rule.left_symbol.clone(),
                right: rule.right_symbol.clone(),
            });
        }
    }

    let mut config = Configuration::new(table.signature().clone());
    let mut names: HashMap<String, NameId> = HashMap::new();
    fn build(
        t: &DslTree,
        syms: &HashMap<String, SymbolId>,
        names: &mut HashMap<String, NameId>,
        cfg: &mut Configuration,
    ) -> NetTerm {
        match t {
            DslTree::Name(n) => {
                let id = *names
                    .entry(n.clone())
                    .or_insert_with(|| cfg.names.fresh());
                NetTerm::Name(id)
            }
            DslTree::Agent(sym, args) => {
                let ports = args
                    .iter()
                    .map(|a| build(a, syms, names, cfg))
                    .collect();
                NetTerm::Agent(
                    crate::inet::AgentSym {
                        sym: syms[sym.as_str()],
                        payload: Payload::None,
                    },
                    ports,
                )
            }
        }
    }
    for (lhs, rhs) in &program.initial {
        let l = build(lhs, &syms, &mut names, &mut config);
        let r = build(rhs, &syms, &mut names, &mut config);
        config.equations.push_back(Equation::new(l, r));
    }
    Ok((table, config))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inet::{reduce, EngineError, Strategy};

    const LOOP: &str = r#"
\epsilon {
        console.log("epsilon >< delta");
} \delta[\epsilon, \epsilon];

\epsilon {
        console.log("epsilon >< gamma");
} \gamma[\epsilon, \epsilon];

\delta[\gamma(x, y), \gamma(v, w)] {
        console.log("delta >< gamma");
} \gamma[\delta(x, v), \delta(y, w)];

$$

\delta(\epsilon, x) = \gamma(x, \epsilon);
"#;

    #[test]
    fn parses_the_loop_program() {
        let prog = parse_system(LOOP).unwrap();
        assert_eq!(prog.rules.len(), 3);
        assert_eq!(prog.initial.len(), 1);
        assert_eq!(prog.warnings().len(), 3);
    }

    #[test]
    fn print_parse_round_trip() {
        let prog = parse_system(LOOP).unwrap();
        let printed = print_system(&prog);
        assert_eq!(parse_system(&printed).unwrap(), prog);
    }

    #[test]
    fn arity_mismatch_is_reported() {
        let err = parse_system("\\a[x] \\b[x];\n$$\n\\a(y, z) = \\c(y, z);").unwrap_err();
        match err {
            DslError::ArityMismatch { symbol, first, second } => {
                assert_eq!(symbol, "a");
                assert_eq!((first, second), (1, 2));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rule_linearity_is_checked() {
        let err = parse_system("\\a[x, x, x] \\b;\n$$\n").unwrap_err();
        assert!(matches!(err, DslError::RuleLinearity { .. }));
    }

    #[test]
    fn self_equation_parses_then_deadlocks() {
        let prog = parse_system("$$ x = x;").unwrap();
        let (table, config) = load(&prog).unwrap();
        let err = reduce(config, &table, Strategy::Fifo, 10).unwrap_err();
        assert!(matches!(err.error, EngineError::Deadlocked { .. }));
    }

    #[test]
    fn missing_rule_surfaces_at_runtime() {
        let prog = parse_system("$$ \\a = \\b;").unwrap();
        let (table, config) = load(&prog).unwrap();
        let err = reduce(config, &table, Strategy::Fifo, 10).unwrap_err();
        assert!(matches!(err.error, EngineError::NoRule { .. }));
    }

    #[test]
    fn empty_program_reduces_immediately() {
        let prog = parse_system("$$").unwrap();
        let (table, config) = load(&prog).unwrap();
        let (out, stats) = reduce(config, &table, Strategy::Fifo, 10).unwrap();
        assert!(out.equations.is_empty());
        assert_eq!(stats.total, 0);
    }

    #[test]
    fn amb_cannot_head_a_rule() {
        let err = parse_system("\\amb[x, y, z] \\a[x, y, z];\n$$\n").unwrap_err();
        assert!(matches!(err, DslError::ReservedAmb));
    }

    #[test]
    fn loop_program_exhausts_fuel() {
        let prog = parse_system(LOOP).unwrap();
        let (table, config) = load(&prog).unwrap();
        let err = reduce(config, &table, Strategy::Fifo, 3).unwrap_err();
        assert!(matches!(err.error, EngineError::FuelExhausted { .. }));
    }
}
