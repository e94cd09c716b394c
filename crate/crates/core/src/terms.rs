//! Ground meet-terms over constants and unary function symbols.
//!
//! Every [`Term`] handed out by this module is in ACI normal form: meets are
//! n-ary, flattened, duplicate-free and sorted by the derived total order on
//! `Term` (constants before applications before meets, then by name, then by
//! structure). Structural equality is therefore equality modulo
//! associativity, commutativity and idempotence of the meet.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::Deref;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Characters that may not appear in an identifier.
pub const RESERVED: &[char] = &['&', '(', ')', '.', '<', '=', '!', ',', '#'];

/// An interned symbol name.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ident(Arc<str>);

impl Ident {
    /// Validating constructor used by parsers and public builders.
    pub fn new(name: &str) -> Result<Self> {
        if is_valid_ident(name) {
            Ok(Ident(Arc::from(name)))
        } else {
            Err(Error::InvalidIdentifier(name.to_string()))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

pub fn is_valid_ident(name: &str) -> bool {
    !name.is_empty() && !name.chars().any(|c| c.is_whitespace() || RESERVED.contains(&c))
}

impl Deref for Ident {
    type Target = str;
    fn deref(&self) -> &str {
        &self.0
    }
}

impl From<&str> for Ident {
    /// Panics on an invalid identifier; meant for literals in code and tests.
    fn from(name: &str) -> Self {
        Ident::new(name).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl fmt::Display for Ident {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Ident {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SymbolKind {
    Constant,
    Function,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol {
    pub kind: SymbolKind,
    pub name: Ident,
}

impl Symbol {
    pub fn constant(name: impl Into<Ident>) -> Self {
        Symbol {
            kind: SymbolKind::Constant,
            name: name.into(),
        }
    }

    pub fn function(name: impl Into<Ident>) -> Self {
        Symbol {
            kind: SymbolKind::Function,
            name: name.into(),
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            SymbolKind::Constant => write!(f, "{}", self.name),
            SymbolKind::Function => write!(f, "{}/1", self.name),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Const(Ident),
    App(Ident, Box<Term>),
    /// At least two arguments, none a meet, strictly ascending.
    Meet(Vec<Term>),
}

impl Term {
    pub fn constant(name: impl Into<Ident>) -> Term {
        Term::Const(name.into())
    }

    pub fn app(func: impl Into<Ident>, arg: Term) -> Term {
        Term::App(func.into(), Box::new(arg))
    }

    /// Binary meet of two normalized terms.
    pub fn meet(self, other: Term) -> Term {
        mk_meet(vec![self, other]).expect("two arguments")
    }

    pub fn as_const(&self) -> Option<&Ident> {
        match self {
            Term::Const(c) => Some(c),
            _ => None,
        }
    }

    pub fn is_const(&self) -> bool {
        matches!(self, Term::Const(_))
    }

    /// Meet arguments, or the term itself as a singleton.
    pub fn conjuncts(&self) -> &[Term] {
        match self {
            Term::Meet(args) => args,
            other => std::slice::from_ref(other),
        }
    }

    pub fn constants(&self) -> BTreeSet<Ident> {
        let mut out = BTreeSet::new();
        self.visit(&mut |t| {
            if let Term::Const(c) = t {
                out.insert(c.clone());
            }
        });
        out
    }

    pub fn functions(&self) -> BTreeSet<Ident> {
        let mut out = BTreeSet::new();
        self.visit(&mut |t| {
            if let Term::App(f, _) = t {
                out.insert(f.clone());
            }
        });
        out
    }

    pub fn symbols(&self) -> BTreeSet<Symbol> {
        let mut out = BTreeSet::new();
        self.visit(&mut |t| match t {
            Term::Const(c) => {
                out.insert(Symbol::constant(c.clone()));
            }
            Term::App(f, _) => {
                out.insert(Symbol::function(f.clone()));
            }
            Term::Meet(_) => {}
        });
        out
    }

    pub fn has_app(&self) -> bool {
        let mut found = false;
        self.visit(&mut |t| found |= matches!(t, Term::App(..)));
        found
    }

    /// Pre-order traversal over structural subterms.
    pub fn visit(&self, f: &mut impl FnMut(&Term)) {
        f(self);
        match self {
            Term::Const(_) => {}
            Term::App(_, arg) => arg.visit(f),
            Term::Meet(args) => args.iter().for_each(|a| a.visit(f)),
        }
    }

    /// Renormalizes after an arbitrary bottom-up rewrite of constants.
    pub fn map_consts(&self, f: &mut impl FnMut(&Ident) -> Term) -> Term {
        match self {
            Term::Const(c) => f(c),
            Term::App(g, arg) => Term::app(g.clone(), arg.map_consts(f)),
            Term::Meet(args) => mk_meet(args.iter().map(|a| a.map_consts(f)).collect()).expect("nonempty"),
        }
    }

    pub fn rename(&self, consts: &impl Fn(&Ident) -> Ident, funcs: &impl Fn(&Ident) -> Ident) -> Term {
        match self {
            Term::Const(c) => Term::Const(consts(c)),
            Term::App(g, arg) => Term::app(funcs(g), arg.rename(consts, funcs)),
            Term::Meet(args) => mk_meet(args.iter().map(|a| a.rename(consts, funcs)).collect()).expect("nonempty"),
        }
    }

    /// Nesting depth: constants have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Term::Const(_) => 0,
            Term::App(_, arg) => 1 + arg.depth(),
            Term::Meet(args) => 1 + args.iter().map(Term::depth).max().unwrap_or(0),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Const(c) => write!(f, "{c}"),
            Term::App(g, arg) => write!(f, "{g}({arg})"),
            Term::Meet(args) => {
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" & ")?;
                    }
                    write!(f, "{a}")?;
                }
                Ok(())
            }
        }
    }
}

/// ACI normal form of the meet of `args`.
pub fn mk_meet(args: Vec<Term>) -> Result<Term> {
    if args.is_empty() {
        return Err(Error::EmptyMeet);
    }
    let mut flat = BTreeSet::new();
    for arg in args {
        match arg {
            Term::Meet(inner) => flat.extend(inner),
            other => {
                flat.insert(other);
            }
        }
    }
    let mut flat: Vec<Term> = flat.into_iter().collect();
    if flat.len() == 1 {
        Ok(flat.pop().unwrap())
    } else {
        Ok(Term::Meet(flat))
    }
}

/// The binary decomposition of a meet under the left-fold convention:
/// `a1 & ... & an` splits into `(a1 & ... & a(n-1), an)`.
pub fn meet_split(t: &Term) -> Option<(Term, Term)> {
    match t {
        Term::Meet(args) => {
            let (last, init) = args.split_last().expect("meet has >= 2 args");
            let prefix = mk_meet(init.to_vec()).expect("nonempty prefix");
            Some((prefix, last.clone()))
        }
        _ => None,
    }
}

/// All subterms of `t`, including `t` and the left-fold prefixes of every meet.
pub fn subterms(t: &Term) -> BTreeSet<Term> {
    let mut out = BTreeSet::new();
    collect_subterms(t, &mut out);
    out
}

pub(crate) fn collect_subterms(t: &Term, out: &mut BTreeSet<Term>) {
    if !out.insert(t.clone()) {
        return;
    }
    match t {
        Term::Const(_) => {}
        Term::App(_, arg) => collect_subterms(arg, out),
        Term::Meet(args) => {
            for a in args {
                collect_subterms(a, out);
            }
            let mut t = t.clone();
            while let Some((prefix, _)) = meet_split(&t) {
                out.insert(prefix.clone());
                t = prefix;
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    Leq(Term, Term),
    Eq(Term, Term),
}

impl Atom {
    pub fn leq(lhs: Term, rhs: Term) -> Atom {
        Atom::Leq(lhs, rhs)
    }

    pub fn sides(&self) -> (&Term, &Term) {
        match self {
            Atom::Leq(l, r) | Atom::Eq(l, r) => (l, r),
        }
    }

    /// `s = t` becomes `s <= t` and `t <= s`.
    pub fn expand(&self) -> Vec<Atom> {
        match self {
            Atom::Leq(..) => vec![self.clone()],
            Atom::Eq(l, r) => vec![Atom::Leq(l.clone(), r.clone()), Atom::Leq(r.clone(), l.clone())],
        }
    }

    pub fn symbols(&self) -> BTreeSet<Symbol> {
        let (l, r) = self.sides();
        let mut s = l.symbols();
        s.extend(r.symbols());
        s
    }

    pub fn map_terms(&self, mut f: impl FnMut(&Term) -> Term) -> Atom {
        match self {
            Atom::Leq(l, r) => Atom::Leq(f(l), f(r)),
            Atom::Eq(l, r) => Atom::Eq(f(l), f(r)),
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Leq(l, r) => write!(f, "{l} <= {r}"),
            Atom::Eq(l, r) => write!(f, "{l} = {r}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub atom: Atom,
    pub positive: bool,
}

impl Literal {
    pub fn pos(atom: Atom) -> Self {
        Literal { atom, positive: true }
    }

    pub fn neg(atom: Atom) -> Self {
        Literal { atom, positive: false }
    }
}

impl From<Atom> for Literal {
    fn from(atom: Atom) -> Self {
        Literal::pos(atom)
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.positive {
            f.write_str("! ")?;
        }
        write!(f, "{}", self.atom)
    }
}

/// Which axiom schema a ground clause instantiates, and with what.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Provenance {
    /// `x <= y -> f(x) <= f(y)`
    Mon { func: Ident, x: Term, y: Term },
    /// `f(x) <= g(x)`, axiom index into the axiom set
    Inclusion { axiom: usize, x: Term },
    /// `y <= g(x) -> f(y) <= h(x)`, axiom index into the axiom set
    Composition { axiom: usize, x: Term, y: Term },
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Mon { func, x, y } => write!(f, "Mon({func})[x:={x}, y:={y}]"),
            Provenance::Inclusion { axiom, x } => write!(f, "K{}[x:={x}]", axiom + 1),
            Provenance::Composition { axiom, x, y } => write!(f, "K{}[x:={x}, y:={y}]", axiom + 1),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroundHornClause {
    pub premises: Vec<Atom>,
    pub conclusion: Atom,
    pub provenance: Provenance,
}

impl GroundHornClause {
    pub fn constants(&self) -> BTreeSet<Ident> {
        let mut out = BTreeSet::new();
        for atom in self.premises.iter().chain(std::iter::once(&self.conclusion)) {
            let (l, r) = atom.sides();
            out.extend(l.constants());
            out.extend(r.constants());
        }
        out
    }
}

impl fmt::Display for GroundHornClause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.premises.iter().enumerate() {
            if i > 0 {
                f.write_str(" , ")?;
            }
            write!(f, "{p}")?;
        }
        if !self.premises.is_empty() {
            f.write_str(" -> ")?;
        }
        write!(f, "{}", self.conclusion)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Color {
    ALocal,
    BLocal,
    Shared,
}

impl Color {
    /// Color of a compound built from parts of colors `self` and `other`.
    /// Shared is the unit; two distinct local colors have no common side and
    /// yield `None`.
    pub fn join(self, other: Color) -> Option<Color> {
        match (self, other) {
            (Color::Shared, c) | (c, Color::Shared) => Some(c),
            (a, b) if a == b => Some(a),
            _ => None,
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Color::ALocal => "A-local",
            Color::BLocal => "B-local",
            Color::Shared => "shared",
        })
    }
}

pub type Coloring = BTreeMap<Symbol, Color>;

pub fn literal_symbols<'a>(lits: impl IntoIterator<Item = &'a Literal>) -> BTreeSet<Symbol> {
    lits.into_iter().flat_map(|l| l.atom.symbols()).collect()
}

/// Colors every symbol by the sides it occurs in.
pub fn color_problem(a: &[Literal], b: &[Literal]) -> Coloring {
    color_symbols(&literal_symbols(a), &literal_symbols(b))
}

pub fn color_symbols(a: &BTreeSet<Symbol>, b: &BTreeSet<Symbol>) -> Coloring {
    let mut out = Coloring::new();
    for s in a {
        let c = if b.contains(s) { Color::Shared } else { Color::ALocal };
        out.insert(s.clone(), c);
    }
    for s in b.difference(a) {
        out.insert(s.clone(), Color::BLocal);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: &str) -> Term {
        Term::constant(n)
    }

    #[test]
    fn meet_idempotent_and_flattening() {
        assert_eq!(mk_meet(vec![c("a"), c("a")]).unwrap(), c("a"));
        let inner = mk_meet(vec![c("c"), c("a")]).unwrap();
        assert_eq!(
            mk_meet(vec![c("b"), inner]).unwrap(),
            Term::Meet(vec![c("a"), c("b"), c("c")])
        );
        assert_eq!(mk_meet(vec![]), Err(Error::EmptyMeet));
    }

    #[test]
    fn meet_of_encoded_interpolant() {
        let t = mk_meet(vec![c("D"), Term::app("hl", c("V"))]).unwrap();
        assert_eq!(t, Term::Meet(vec![c("D"), Term::app("hl", c("V"))]));
        assert_eq!(t.to_string(), "D & hl(V)");
    }

    #[test]
    fn subterms_examples() {
        assert_eq!(subterms(&c("a")), BTreeSet::from([c("a")]));

        let ab = c("a").meet(c("b"));
        let fab = Term::app("f", ab.clone());
        assert_eq!(subterms(&fab), BTreeSet::from([fab.clone(), ab, c("a"), c("b")]));

        let abc = mk_meet(vec![c("c"), c("b"), c("a")]).unwrap();
        assert_eq!(
            subterms(&abc),
            BTreeSet::from([abc.clone(), c("a").meet(c("b")), c("a"), c("b"), c("c")])
        );
    }

    #[test]
    fn coloring() {
        let lit = |l: &str, r: &str| Literal::pos(Atom::leq(c(l), c(r)));
        let colors = color_problem(&[lit("a", "c")], &[lit("b", "c")]);
        assert_eq!(colors[&Symbol::constant("a")], Color::ALocal);
        assert_eq!(colors[&Symbol::constant("b")], Color::BLocal);
        assert_eq!(colors[&Symbol::constant("c")], Color::Shared);

        let same = color_problem(&[lit("a", "b")], &[lit("a", "b")]);
        assert!(same.values().all(|&col| col == Color::Shared));
    }

    #[test]
    fn identifiers() {
        assert!(Ident::new("part-of").is_ok());
        assert!(Ident::new("a'").is_ok());
        assert!(Ident::new("").is_err());
        assert!(Ident::new("a b").is_err());
        assert!(Ident::new("a&b").is_err());
    }

    #[test]
    fn color_join() {
        assert_eq!(Color::Shared.join(Color::ALocal), Some(Color::ALocal));
        assert_eq!(Color::BLocal.join(Color::BLocal), Some(Color::BLocal));
        assert_eq!(Color::ALocal.join(Color::BLocal), None);
    }
}
