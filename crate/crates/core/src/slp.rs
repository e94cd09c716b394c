//! The `.slp` problem format.
//!
//! ```text
//! functions f g
//! axiom composition f g g      # y <= g(x) -> f(y) <= h(x)
//! side A
//! d <= g(a)
//! side B
//! b <= f(b)
//! ! a <= b
//! goal b <= a
//! ```

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::locality::{Axiom, AxiomSet, Problem, Side};
use crate::syntax::{self, Cursor, Tok};
use crate::terms::Ident;

/// Parses `inclusion f g` or `composition f g h` after the `axiom` keyword.
pub(crate) fn axiom_line(cur: &mut Cursor<'_>, axioms: &mut AxiomSet) -> Result<()> {
    let col = cur.column();
    let axiom = if cur.keyword("inclusion") {
        let (f, g) = (cur.ident()?, cur.ident()?);
        Axiom::Inclusion { f, g }
    } else if cur.keyword("composition") {
        let (f, g, h) = (cur.ident()?, cur.ident()?, cur.ident()?);
        Axiom::Composition { f, g, h }
    } else {
        return Err(cur.error("expected `inclusion` or `composition`"));
    };
    cur.finish()?;
    axioms.add(axiom).map_err(|e| match e {
        Error::Usage(m) => Error::parse(cur.line_number(), col, m),
        other => other,
    })
}

pub fn parse_slp(src: &str) -> Result<Problem> {
    let lines = syntax::lines(src)?;
    let mut axioms = AxiomSet::default();
    let mut side: Option<Side> = None;
    let mut a = Vec::new();
    let mut b = Vec::new();
    let mut goal = None;
    for line in &lines {
        let mut cur = Cursor::new(line);
        // A keyword followed by an operator is an ordinary constant.
        let keyword_line = match cur.peek_at(1) {
            Some(Tok::Leq | Tok::Eq | Tok::Amp) => false,
            Some(Tok::LParen) => {
                !matches!(cur.peek(), Some(Tok::Ident(f)) if axioms.functions.iter().any(|g| g.as_str() == f))
            }
            _ => true,
        };
        if keyword_line && cur.keyword("functions") {
            for f in cur.idents()? {
                if !axioms.functions.insert(f.clone()) {
                    return Err(Error::parse(line.number, 1, format!("duplicate function `{f}`")));
                }
            }
        } else if keyword_line && cur.keyword("axiom") {
            axiom_line(&mut cur, &mut axioms)?;
        } else if keyword_line && cur.keyword("side") {
            let s = cur.ident()?;
            side = Some(match s.as_str() {
                "A" => Side::A,
                "B" => Side::B,
                _ => return Err(Error::parse(line.number, 6, "expected `A` or `B`")),
            });
            cur.finish()?;
        } else if keyword_line && cur.keyword("goal") {
            if goal.is_some() {
                return Err(cur.error("duplicate goal"));
            }
            goal = Some(syntax::atom(&mut cur, &axioms.functions)?);
            cur.finish()?;
        } else {
            let Some(s) = side else {
                return Err(cur.error("literal outside of a `side` section"));
            };
            let lit = syntax::literal(&mut cur, &axioms.functions)?;
            cur.finish()?;
            match s {
                Side::A => a.push(lit),
                Side::B => b.push(lit),
            }
        }
    }
    let goal = goal.ok_or_else(|| Error::parse(lines.last().map_or(1, |l| l.number), 1, "missing goal"))?;
    Ok(Problem::new(a, b, axioms, goal))
}

/// Renders a problem back into `.slp` syntax.
pub fn to_slp(p: &Problem) -> String {
    let mut out = String::new();
    let funcs: BTreeSet<&Ident> = p.axioms.functions.iter().collect();
    if !funcs.is_empty() {
        let names: Vec<&str> = funcs.iter().map(|f| f.as_str()).collect();
        out.push_str(&format!("functions {}\n", names.join(" ")));
    }
    for ax in &p.axioms.axioms {
        out.push_str(&format!("axiom {ax}\n"));
    }
    for (name, lits) in [("A", &p.a), ("B", &p.b)] {
        out.push_str(&format!("side {name}\n"));
        for l in lits {
            out.push_str(&format!("{l}\n"));
        }
    }
    out.push_str(&format!("goal {}\n", p.goal));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const SLO: &str = "\
functions f g
axiom composition f g g
side A
d <= g(a)
a <= c
g(c) <= a
side B
b <= d
b <= f(b)
goal b <= a
";

    #[test]
    fn parses_and_prints() {
        let p = parse_slp(SLO).unwrap();
        assert_eq!(p.a.len(), 3);
        assert_eq!(p.b.len(), 2);
        assert_eq!(p.axioms.axioms.len(), 1);
        assert_eq!(to_slp(&p), SLO);
        assert!(p.entails().unwrap());
    }

    #[test]
    fn errors() {
        let bad = |src: &str| parse_slp(src).unwrap_err();
        assert!(matches!(
            bad("side A\na <= h(b)\ngoal a <= b"),
            Error::Parse { line: 2, .. }
        ));
        assert!(matches!(
            bad("functions f\naxiom inclusion f g\ngoal a <= a"),
            Error::Parse { line: 2, .. }
        ));
        assert!(matches!(bad("a <= b\ngoal a <= b"), Error::Parse { line: 1, .. }));
        assert!(matches!(bad("side A\na <= b"), Error::Parse { .. }));
        assert!(matches!(bad("side C\ngoal a <= a"), Error::Parse { line: 1, .. }));
        assert!(matches!(bad("functions f f\ngoal a <= a"), Error::Parse { .. }));
    }

    #[test]
    fn keywords_can_be_constants() {
        let p = parse_slp("side A\ngoal <= side\ngoal goal <= side").unwrap();
        assert_eq!(p.a.len(), 1);
        assert_eq!(p.goal.to_string(), "goal <= side");
    }
}
