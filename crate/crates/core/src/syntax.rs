//! Tokenizer and term parser shared by the line-oriented input formats.
//!
//! Term syntax: `ident`, `term & term` (left associative), `ident(term)` and
//! parentheses. Atoms are `t <= t` or `t = t`; a literal may be negated with a
//! leading `!`. `#` starts a comment that runs to the end of the line.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::terms::{mk_meet, Atom, Ident, Literal, Term, RESERVED};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Amp,
    LParen,
    RParen,
    Dot,
    Comma,
    Leq,
    Eq,
    Bang,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Amp => f.write_str("`&`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Dot => f.write_str("`.`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Leq => f.write_str("`<=`"),
            Tok::Eq => f.write_str("`=`"),
            Tok::Bang => f.write_str("`!`"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Spanned {
    pub tok: Tok,
    pub column: usize,
}

/// One non-blank source line, tokenized.
#[derive(Debug, Clone)]
pub struct Line {
    pub number: usize,
    pub tokens: Vec<Spanned>,
}

/// Splits `src` into tokenized lines, dropping comments and blank lines.
pub fn lines(src: &str) -> Result<Vec<Line>> {
    let mut out = Vec::new();
    for (idx, raw) in src.lines().enumerate() {
        let number = idx + 1;
        let tokens = tokenize(raw, number)?;
        if !tokens.is_empty() {
            out.push(Line { number, tokens });
        }
    }
    Ok(out)
}

fn tokenize(raw: &str, line: usize) -> Result<Vec<Spanned>> {
    let chars: Vec<char> = raw.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let ch = chars[i];
        let column = i + 1;
        let single = match ch {
            '#' => break,
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '&' => Some(Tok::Amp),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '.' => Some(Tok::Dot),
            ',' => Some(Tok::Comma),
            '=' => Some(Tok::Eq),
            '!' => Some(Tok::Bang),
            '<' => {
                if chars.get(i + 1) == Some(&'=') {
                    out.push(Spanned { tok: Tok::Leq, column });
                    i += 2;
                    continue;
                }
                return Err(Error::parse(line, column, "expected `<=`"));
            }
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Spanned { tok, column });
            i += 1;
            continue;
        }
        let start = i;
        while i < chars.len() && !chars[i].is_whitespace() && !RESERVED.contains(&chars[i]) {
            i += 1;
        }
        let word: String = chars[start..i].iter().collect();
        out.push(Spanned {
            tok: Tok::Ident(word),
            column,
        });
    }
    Ok(out)
}

/// Cursor over the tokens of a single line.
pub struct Cursor<'a> {
    line: &'a Line,
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(line: &'a Line) -> Self {
        Cursor { line, pos: 0 }
    }

    pub fn line_number(&self) -> usize {
        self.line.number
    }

    pub fn peek(&self) -> Option<&'a Tok> {
        self.line.tokens.get(self.pos).map(|s| &s.tok)
    }

    pub fn peek_at(&self, offset: usize) -> Option<&'a Tok> {
        self.line.tokens.get(self.pos + offset).map(|s| &s.tok)
    }

    pub fn column(&self) -> usize {
        match self.line.tokens.get(self.pos) {
            Some(s) => s.column,
            None => self.line.tokens.last().map_or(1, |s| s.column + 1),
        }
    }

    pub fn bump(&mut self) -> Option<&'a Tok> {
        let t = self.peek();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.line.tokens.len()
    }

    pub fn error(&self, message: impl Into<String>) -> Error {
        Error::parse(self.line.number, self.column(), message)
    }

    pub fn expect(&mut self, want: &Tok) -> Result<()> {
        match self.peek() {
            Some(t) if t == want => {
                self.pos += 1;
                Ok(())
            }
            Some(t) => Err(self.error(format!("expected {want}, found {t}"))),
            None => Err(self.error(format!("expected {want}, found end of line"))),
        }
    }

    pub fn ident(&mut self) -> Result<Ident> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let id = Ident::new(s).map_err(|_| self.error(format!("invalid identifier `{s}`")))?;
                self.pos += 1;
                Ok(id)
            }
            Some(t) => Err(self.error(format!("expected identifier, found {t}"))),
            None => Err(self.error("expected identifier, found end of line")),
        }
    }

    pub fn keyword(&mut self, kw: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Ident(s)) if s == kw) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn finish(&self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(t) => Err(self.error(format!("unexpected {t}"))),
        }
    }

    /// Remaining identifiers on the line.
    pub fn idents(&mut self) -> Result<Vec<Ident>> {
        let mut out = Vec::new();
        while !self.at_end() {
            out.push(self.ident()?);
        }
        Ok(out)
    }
}

/// Parses a term; applications must use a function in `functions`.
pub fn term(cur: &mut Cursor<'_>, functions: &BTreeSet<Ident>) -> Result<Term> {
    let mut args = vec![unary(cur, functions)?];
    while cur.peek() == Some(&Tok::Amp) {
        cur.bump();
        args.push(unary(cur, functions)?);
    }
    mk_meet(args)
}

fn unary(cur: &mut Cursor<'_>, functions: &BTreeSet<Ident>) -> Result<Term> {
    if cur.peek() == Some(&Tok::LParen) {
        cur.bump();
        let t = term(cur, functions)?;
        cur.expect(&Tok::RParen)?;
        return Ok(t);
    }
    let column = cur.column();
    let name = cur.ident()?;
    if cur.peek() == Some(&Tok::LParen) {
        if !functions.contains(&name) {
            return Err(Error::parse(
                cur.line_number(),
                column,
                format!("undeclared function `{name}`"),
            ));
        }
        cur.bump();
        let arg = term(cur, functions)?;
        cur.expect(&Tok::RParen)?;
        Ok(Term::app(name, arg))
    } else {
        Ok(Term::Const(name))
    }
}

pub fn atom(cur: &mut Cursor<'_>, functions: &BTreeSet<Ident>) -> Result<Atom> {
    let lhs = term(cur, functions)?;
    match cur.bump() {
        Some(Tok::Leq) => Ok(Atom::Leq(lhs, term(cur, functions)?)),
        Some(Tok::Eq) => Ok(Atom::Eq(lhs, term(cur, functions)?)),
        _ => Err(cur.error("expected `<=` or `=`")),
    }
}

pub fn literal(cur: &mut Cursor<'_>, functions: &BTreeSet<Ident>) -> Result<Literal> {
    let positive = if cur.peek() == Some(&Tok::Bang) {
        cur.bump();
        false
    } else {
        true
    };
    Ok(Literal {
        atom: atom(cur, functions)?,
        positive,
    })
}

/// Parses a standalone term, e.g. from a command-line argument.
pub fn parse_term(src: &str, functions: &BTreeSet<Ident>) -> Result<Term> {
    let ls = lines(src)?;
    match ls.as_slice() {
        [line] => {
            let mut cur = Cursor::new(line);
            let t = term(&mut cur, functions)?;
            cur.finish()?;
            Ok(t)
        }
        _ => Err(Error::parse(1, 1, "expected a single term")),
    }
}

/// Parses a standalone literal.
pub fn parse_literal(src: &str, functions: &BTreeSet<Ident>) -> Result<Literal> {
    let ls = lines(src)?;
    match ls.as_slice() {
        [line] => {
            let mut cur = Cursor::new(line);
            let l = literal(&mut cur, functions)?;
            cur.finish()?;
            Ok(l)
        }
        _ => Err(Error::parse(1, 1, "expected a single literal")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn funcs(names: &[&str]) -> BTreeSet<Ident> {
        names.iter().map(|&n| Ident::from(n)).collect()
    }

    #[test]
    fn parses_nested_terms() {
        let f = funcs(&["f", "g"]);
        let t = parse_term("b & f(a & c) & (d & a)", &f).unwrap();
        assert_eq!(t.to_string(), "a & b & d & f(a & c)");
        let t = parse_term("g(f(x))", &f).unwrap();
        assert_eq!(t, Term::app("g", Term::app("f", Term::constant("x"))));
    }

    #[test]
    fn parses_literals() {
        let f = funcs(&["f"]);
        let l = parse_literal("! a <= f(b)", &f).unwrap();
        assert!(!l.positive);
        assert_eq!(l.atom.to_string(), "a <= f(b)");
        let l = parse_literal("a=b # comment", &f).unwrap();
        assert_eq!(l.atom, Atom::Eq(Term::constant("a"), Term::constant("b")));
    }

    #[test]
    fn reports_positions() {
        let f = funcs(&["f"]);
        match parse_literal("a <= h(b)", &f) {
            Err(Error::Parse {
                line: 1,
                column: 6,
                message,
            }) => {
                assert!(message.contains("undeclared function"))
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_term("a <", &f), Err(Error::Parse { column: 3, .. })));
        assert!(parse_term("(a & b", &f).is_err());
    }
}
