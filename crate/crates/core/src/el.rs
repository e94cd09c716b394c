//! EL+ front end.
//!
//! Concept descriptions map onto semilattice terms: concept names become
//! constants, conjunction becomes meet and `ex r . C` becomes the
//! application `r(C)`. A role inclusion `r <= s` becomes the axiom
//! `r(x) <= s(x)`, a chain `r o s <= t` the axiom `y <= s(x) -> r(y) <= t(x)`.
//! Subsumption in the CBox then coincides with entailment in the
//! semilattice theory.
//!
//! Problem syntax (`.elp`):
//!
//! ```text
//! roles part-of has-location
//! ri has-location o part-of <= has-location
//! side A
//! Endocardium <= ex part-of . HeartWall
//! side B
//! Disease & ex has-location . Heart <= HeartDisease
//! goal Endocarditis <= HeartDisease
//! ```
//!
//! `ex r . C` binds tighter than `&`; its filler is a name, another
//! existential or a parenthesized concept. There is no top concept.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::interp::{interpolate_with, InterpOptions, InterpolationResult};
use crate::locality::{Axiom, AxiomSet, Namer, Problem};
use crate::syntax::{self, Cursor, Tok};
use crate::terms::{mk_meet, Atom, Ident, Literal, Term};

/// An EL concept description, with conjunctions in ACI normal form.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Concept {
    Name(Ident),
    /// At least two conjuncts, none a conjunction, sorted and distinct.
    And(Vec<Concept>),
    Exists(Ident, Box<Concept>),
}

impl Concept {
    pub fn name(n: impl Into<Ident>) -> Concept {
        Concept::Name(n.into())
    }

    pub fn exists(role: impl Into<Ident>, filler: Concept) -> Concept {
        Concept::Exists(role.into(), Box::new(filler))
    }

    /// Normalized conjunction.
    pub fn and(parts: Vec<Concept>) -> Result<Concept> {
        let t = mk_meet(parts.iter().map(Concept::to_term).collect())?;
        Ok(Concept::from_term(&t))
    }

    pub fn to_term(&self) -> Term {
        match self {
            Concept::Name(n) => Term::Const(n.clone()),
            Concept::And(parts) => mk_meet(parts.iter().map(Concept::to_term).collect()).expect("nonempty"),
            Concept::Exists(r, c) => Term::app(r.clone(), c.to_term()),
        }
    }

    /// Reads a term as a concept, taking every function as a role.
    pub fn from_term(t: &Term) -> Concept {
        match t {
            Term::Const(c) => Concept::Name(c.clone()),
            Term::Meet(args) => Concept::And(args.iter().map(Concept::from_term).collect()),
            Term::App(r, arg) => Concept::exists(r.clone(), Concept::from_term(arg)),
        }
    }

    pub fn names(&self) -> BTreeSet<Ident> {
        self.to_term().constants()
    }

    pub fn roles(&self) -> BTreeSet<Ident> {
        self.to_term().functions()
    }
}

impl fmt::Display for Concept {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Concept::Name(n) => write!(f, "{n}"),
            Concept::And(parts) => {
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" & ")?;
                    }
                    write!(f, "{p}")?;
                }
                Ok(())
            }
            Concept::Exists(r, c) => match **c {
                Concept::And(_) => write!(f, "ex {r} . ({c})"),
                _ => write!(f, "ex {r} . {c}"),
            },
        }
    }
}

/// A general concept inclusion `lhs <= rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gci {
    pub lhs: Concept,
    pub rhs: Concept,
}

impl fmt::Display for Gci {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} <= {}", self.lhs, self.rhs)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RoleInclusion {
    /// `r <= s`
    Sub { r: Ident, s: Ident },
    /// `r1 o r2 <= s`
    Chain { r1: Ident, r2: Ident, s: Ident },
}

impl RoleInclusion {
    pub fn to_axiom(&self) -> Axiom {
        match self {
            RoleInclusion::Sub { r, s } => Axiom::Inclusion {
                f: r.clone(),
                g: s.clone(),
            },
            RoleInclusion::Chain { r1, r2, s } => Axiom::Composition {
                f: r1.clone(),
                g: r2.clone(),
                h: s.clone(),
            },
        }
    }
}

impl fmt::Display for RoleInclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RoleInclusion::Sub { r, s } => write!(f, "{r} <= {s}"),
            RoleInclusion::Chain { r1, r2, s } => write!(f, "{r1} o {r2} <= {s}"),
        }
    }
}

/// A subsumption question `C <= D` over two CBoxes sharing role axioms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElProblem {
    pub roles: Vec<Ident>,
    pub ris: Vec<RoleInclusion>,
    pub a: Vec<Gci>,
    pub b: Vec<Gci>,
    pub goal: Gci,
}

/// Reference to an axiom of an [`ElProblem`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ElItem {
    A(usize),
    B(usize),
    R(usize),
}

impl fmt::Display for ElItem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElItem::A(i) => write!(f, "A{}", i + 1),
            ElItem::B(i) => write!(f, "B{}", i + 1),
            ElItem::R(i) => write!(f, "R{}", i + 1),
        }
    }
}

impl ElProblem {
    /// All axioms in listing order: A, then B, then role inclusions.
    pub fn items(&self) -> Vec<ElItem> {
        (0..self.a.len())
            .map(ElItem::A)
            .chain((0..self.b.len()).map(ElItem::B))
            .chain((0..self.ris.len()).map(ElItem::R))
            .collect()
    }

    /// The axiom an item refers to, as text.
    pub fn describe(&self, item: ElItem) -> String {
        match item {
            ElItem::A(i) => self.a[i].to_string(),
            ElItem::B(i) => self.b[i].to_string(),
            ElItem::R(i) => self.ris[i].to_string(),
        }
    }

    pub fn restrict(&self, keep: &[ElItem]) -> ElProblem {
        let keep: BTreeSet<&ElItem> = keep.iter().collect();
        let pick = |v: &[Gci], mk: fn(usize) -> ElItem| -> Vec<Gci> {
            v.iter()
                .enumerate()
                .filter(|(i, _)| keep.contains(&mk(*i)))
                .map(|(_, g)| g.clone())
                .collect()
        };
        ElProblem {
            roles: self.roles.clone(),
            ris: self
                .ris
                .iter()
                .enumerate()
                .filter(|(i, _)| keep.contains(&ElItem::R(*i)))
                .map(|(_, r)| r.clone())
                .collect(),
            a: pick(&self.a, ElItem::A),
            b: pick(&self.b, ElItem::B),
            goal: self.goal.clone(),
        }
    }

    pub fn with_goal(&self, lhs: Concept, rhs: Concept) -> ElProblem {
        ElProblem {
            goal: Gci { lhs, rhs },
            ..self.clone()
        }
    }

    pub fn concept_names(&self) -> BTreeSet<Ident> {
        let mut out = BTreeSet::new();
        for g in self.a.iter().chain(&self.b).chain(std::iter::once(&self.goal)) {
            out.extend(g.lhs.names());
            out.extend(g.rhs.names());
        }
        out
    }
}

impl fmt::Display for ElProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let roles: Vec<&str> = self.roles.iter().map(|r| r.as_str()).collect();
        writeln!(f, "roles {}", roles.join(" "))?;
        for ri in &self.ris {
            writeln!(f, "ri {ri}")?;
        }
        for (name, gcis) in [("A", &self.a), ("B", &self.b)] {
            writeln!(f, "side {name}")?;
            for g in gcis {
                writeln!(f, "{g}")?;
            }
        }
        writeln!(f, "goal {}", self.goal)
    }
}

struct ConceptParser<'a> {
    roles: &'a BTreeSet<Ident>,
}

impl ConceptParser<'_> {
    fn concept(&self, cur: &mut Cursor<'_>) -> Result<Concept> {
        let mut parts = vec![self.unary(cur)?];
        while cur.peek() == Some(&Tok::Amp) {
            cur.bump();
            parts.push(self.unary(cur)?);
        }
        Concept::and(parts)
    }

    fn unary(&self, cur: &mut Cursor<'_>) -> Result<Concept> {
        if cur.peek() == Some(&Tok::LParen) {
            cur.bump();
            let c = self.concept(cur)?;
            cur.expect(&Tok::RParen)?;
            return Ok(c);
        }
        let is_exists = matches!(cur.peek(), Some(Tok::Ident(s)) if s == "ex")
            && matches!(cur.peek_at(1), Some(Tok::Ident(_)))
            && cur.peek_at(2) == Some(&Tok::Dot);
        if is_exists {
            cur.bump();
            let col = cur.column();
            let role = cur.ident()?;
            if !self.roles.contains(&role) {
                return Err(Error::parse(
                    cur.line_number(),
                    col,
                    format!("undeclared role `{role}`"),
                ));
            }
            cur.expect(&Tok::Dot)?;
            return Ok(Concept::exists(role, self.unary(cur)?));
        }
        Ok(Concept::Name(cur.ident()?))
    }

    fn gci(&self, cur: &mut Cursor<'_>) -> Result<Gci> {
        let lhs = self.concept(cur)?;
        cur.expect(&Tok::Leq)?;
        let rhs = self.concept(cur)?;
        cur.finish()?;
        Ok(Gci { lhs, rhs })
    }
}

/// Parses an `.elp` problem.
pub fn parse_elp(src: &str) -> Result<ElProblem> {
    let lines = syntax::lines(src)?;
    let mut roles = Vec::new();
    let mut role_set = BTreeSet::new();
    let mut ris = Vec::new();
    let mut side = None;
    let mut a = Vec::new();
    let mut b = Vec::new();
    let mut goal = None;
    for line in &lines {
        let mut cur = Cursor::new(line);
        let keyword_line = !matches!(cur.peek_at(1), Some(Tok::Leq | Tok::Amp) | None)
            || matches!(cur.peek(), Some(Tok::Ident(s)) if s == "roles");
        if keyword_line && cur.keyword("roles") {
            while !cur.at_end() {
                let col = cur.column();
                let r = cur.ident()?;
                if !role_set.insert(r.clone()) {
                    return Err(Error::parse(line.number, col, format!("duplicate role `{r}`")));
                }
                roles.push(r);
            }
        } else if keyword_line && cur.keyword("ri") {
            let role = |cur: &mut Cursor<'_>| -> Result<Ident> {
                let col = cur.column();
                let r = cur.ident()?;
                if role_set.contains(&r) {
                    Ok(r)
                } else {
                    Err(Error::parse(line.number, col, format!("undeclared role `{r}`")))
                }
            };
            let r1 = role(&mut cur)?;
            let ri = if cur.keyword("o") {
                let r2 = role(&mut cur)?;
                cur.expect(&Tok::Leq)?;
                RoleInclusion::Chain {
                    r1,
                    r2,
                    s: role(&mut cur)?,
                }
            } else {
                cur.expect(&Tok::Leq)?;
                RoleInclusion::Sub {
                    r: r1,
                    s: role(&mut cur)?,
                }
            };
            cur.finish()?;
            ris.push(ri);
        } else if keyword_line && cur.keyword("side") {
            let col = cur.column();
            side = Some(match cur.ident()?.as_str() {
                "A" => true,
                "B" => false,
                _ => return Err(Error::parse(line.number, col, "expected `A` or `B`")),
            });
            cur.finish()?;
        } else if keyword_line && cur.keyword("goal") {
            if goal.is_some() {
                return Err(cur.error("duplicate goal"));
            }
            goal = Some(ConceptParser { roles: &role_set }.gci(&mut cur)?);
        } else {
            let Some(is_a) = side else {
                return Err(cur.error("axiom outside of a `side` section"));
            };
            let g = ConceptParser { roles: &role_set }.gci(&mut cur)?;
            if is_a {
                a.push(g)
            } else {
                b.push(g)
            }
        }
    }
    let goal = goal.ok_or_else(|| Error::parse(lines.last().map_or(1, |l| l.number), 1, "missing goal"))?;
    Ok(ElProblem { roles, ris, a, b, goal })
}

/// An EL problem encoded as a semilattice problem.
#[derive(Debug, Clone)]
pub struct Translation {
    pub problem: Problem,
    /// Constants standing for non-name goal concepts, with their terms.
    pub goal_bindings: BTreeMap<Ident, Term>,
}

/// Encodes the problem. Goal concepts that are not names are bound to fresh
/// constants defined on their own side (left goal on A, right goal on B).
pub fn translate(p: &ElProblem) -> Result<Translation> {
    let mut axioms = AxiomSet::new(p.roles.iter().cloned());
    for ri in &p.ris {
        axioms.add(ri.to_axiom())?;
    }
    let lit = |g: &Gci| Literal::pos(Atom::leq(g.lhs.to_term(), g.rhs.to_term()));
    let mut a: Vec<Literal> = p.a.iter().map(lit).collect();
    let mut b: Vec<Literal> = p.b.iter().map(lit).collect();
    let mut namer = Namer::default();
    for n in p.concept_names().iter().chain(&p.roles) {
        namer.reserve(n);
    }
    let mut goal_bindings = BTreeMap::new();
    let mut bind = |c: &Concept, base: &str, side: &mut Vec<Literal>| -> Term {
        let t = c.to_term();
        if t.is_const() {
            return t;
        }
        let k = namer.fresh(base);
        let kt = Term::Const(k.clone());
        side.push(Literal::pos(Atom::leq(kt.clone(), t.clone())));
        side.push(Literal::pos(Atom::leq(t.clone(), kt.clone())));
        goal_bindings.insert(k, t);
        kt
    };
    let lhs = bind(&p.goal.lhs, "goal-lhs", &mut a);
    let rhs = bind(&p.goal.rhs, "goal-rhs", &mut b);
    Ok(Translation {
        problem: Problem::new(a, b, axioms, Atom::leq(lhs, rhs)),
        goal_bindings,
    })
}

/// Reads an encoded term back as a concept over the problem's vocabulary.
pub fn untranslate(t: &Term, p: &ElProblem) -> Result<Concept> {
    let names = p.concept_names();
    let roles: BTreeSet<&Ident> = p.roles.iter().collect();
    if let Some(c) = t.constants().into_iter().find(|c| !names.contains(c)) {
        return Err(Error::usage(format!("`{c}` is not a concept name of the problem")));
    }
    if let Some(r) = t.functions().into_iter().find(|r| !roles.contains(r)) {
        return Err(Error::usage(format!("`{r}` is not a role of the problem")));
    }
    Ok(Concept::from_term(t))
}

pub fn el_subsumes(p: &ElProblem) -> Result<bool> {
    translate(p)?.problem.entails()
}

/// Minimal subset of the axioms, found by dropping them one at a time from
/// last to first, that still entails the goal.
pub fn justify(p: &ElProblem) -> Result<Vec<ElItem>> {
    if !el_subsumes(p)? {
        return Err(Error::usage(format!("goal {} is not entailed", p.goal)));
    }
    let mut keep = p.items();
    for item in p.items().into_iter().rev() {
        let without: Vec<ElItem> = keep.iter().copied().filter(|&i| i != item).collect();
        if el_subsumes(&p.restrict(&without))? {
            keep = without;
        }
    }
    Ok(keep)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ElOptions {
    pub interp: InterpOptions,
    /// Restrict to a justification before interpolating.
    pub prepass: bool,
}

#[derive(Debug, Clone)]
pub struct ElInterpolation {
    pub concept: Concept,
    /// Axioms kept by the pre-pass, or all of them.
    pub used: Vec<ElItem>,
    pub result: InterpolationResult,
}

pub fn el_interpolate(p: &ElProblem) -> Result<ElInterpolation> {
    el_interpolate_with(p, ElOptions::default())
}

/// Computes a concept `T` over the shared vocabulary with
/// `A + B |= C <= T` and `A + B |= T <= D`.
pub fn el_interpolate_with(p: &ElProblem, opts: ElOptions) -> Result<ElInterpolation> {
    if !el_subsumes(p)? {
        return Err(Error::NotEntailed(p.goal.to_string()));
    }
    let used = if opts.prepass { justify(p)? } else { p.items() };
    let reduced = p.restrict(&used);
    let tr = translate(&reduced)?;
    let result = interpolate_with(&tr.problem, opts.interp)?;
    let concept = untranslate(&result.term, p)?;
    if opts.interp.verify {
        for (l, r) in [(&p.goal.lhs, &concept), (&concept, &p.goal.rhs)] {
            if !el_subsumes(&p.with_goal(l.clone(), r.clone()))? {
                return Err(Error::VerificationFailed(format!("{l} <= {r} is not entailed")));
            }
        }
    }
    Ok(ElInterpolation { concept, used, result })
}
