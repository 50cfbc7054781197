//! Surface-syntax parser.
//!
//! Grammar: `\x.` or `λx.` for abstraction (body extends maximally right,
//! several binders may share one `λ`), application is left-associative,
//! identifiers match `[A-Za-z_][A-Za-z0-9_']*`, and `#` starts a line
//! comment. A lambda is also accepted unparenthesized as the last argument
//! of an application.

use super::Term;
use std::fmt;
use thiserror::Error;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("syntax error at {line}:{col}: {msg}")]
pub struct ParseError {
    pub line: u32,
    pub col: u32,
    pub msg: String,
}

struct Parser {
    src: Vec<char>,
    pos: usize,
    line: u32,
    col: u32,
}

impl Parser {
    fn new(text: &str) -> Self {
        Parser {
            src: text.chars().collect(),
            pos: 0,
            line: 1,
            col: 1,
        }
    }

    fn err(&self, msg: impl fmt::Display) -> ParseError {
        ParseError {
            line: self.line,
            col: self.col,
            msg: msg.to_string(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.src.get(self.pos).copied()
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

    fn is_ident_start(c: char) -> bool {
        c.is_ascii_alphabetic() || c == '_'
    }

    fn is_ident_cont(c: char) -> bool {
        c.is_ascii_alphanumeric() || c == '_' || c == '\''
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek() {
            Some(c) if Self::is_ident_start(c) => {
                let mut s = String::new();
                s.push(c);
                self.bump();
                while let Some(c) = self.peek() {
                    if Self::is_ident_cont(c) {
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

    fn lambda(&mut self) -> Result<Term, ParseError> {
        // caller consumed '\' or 'λ'
        let mut binders = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                Some(c) if Self::is_ident_start(c) => binders.push(self.ident()?),
                Some('.') => {
                    if binders.is_empty() {
                        return Err(self.err("abstraction needs at least one binder"));
                    }
                    self.bump();
                    break;
                }
                Some(c) => return Err(self.err(format!("expected binder or '.', found '{c}'"))),
                None => return Err(self.err("unterminated abstraction")),
            }
        }
        let body = self.term()?;
        Ok(binders
            .into_iter()
            .rev()
            .fold(body, |b, x| Term::Abs(x, Box::new(b))))
    }

    fn atom(&mut self) -> Result<Term, ParseError> {
        match self.peek() {
            Some('(') => {
                self.bump();
                let t = self.term()?;
                self.skip_ws();
                match self.peek() {
                    Some(')') => {
                        self.bump();
                        Ok(t)
                    }
                    Some(c) => Err(self.err(format!("expected ')', found '{c}'"))),
                    None => Err(self.err("unclosed '('")),
                }
            }
            Some(c) if Self::is_ident_start(c) => Ok(Term::Var(self.ident()?)),
            Some(c) => Err(self.err(format!("expected term, found '{c}'"))),
            None => Err(self.err("expected term, found end of input")),
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let mut items: Vec<Term> = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                Some('\\') | Some('λ') => {
                    self.bump();
                    // lambda extends maximally right: always the last item
                    items.push(self.lambda()?);
                    break;
                }
                Some('(') => items.push(self.atom()?),
                Some(c) if Self::is_ident_start(c) => items.push(self.atom()?),
                _ => break,
            }
        }
        let mut it = items.into_iter();
        match it.next() {
            Some(first) => Ok(it.fold(first, Term::app)),
            None => Err(self.err("expected term")),
        }
    }
}

/// Parse a complete λ-term; trailing non-whitespace input is an error.
pub fn parse_term(text: &str) -> Result<Term, ParseError> {
    let mut p = Parser::new(text);
    let t = p.term()?;
    p.skip_ws();
    match p.peek() {
        None => Ok(t),
        Some(c) => Err(p.err(format!("unexpected '{c}' after term"))),
    }
}
