//! Hierarchical reasoning for semilattices with monotone operators.
//!
//! A ground problem over `SLat + Mon + K` is reduced to pure SLat by
//! naming every flat application `f(c)` with a fresh constant, closing the
//! set of flat terms under the axioms (the Ψ operator), and instantiating the
//! axiom schemas over that set. The instances are then used for forward
//! chaining with [`crate::slat`] as the base reasoner.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::slat::PropHornProblem;
use crate::terms::{
    literal_symbols, mk_meet, Atom, Color, Coloring, GroundHornClause, Ident, Literal, Provenance, Symbol, SymbolKind,
    Term,
};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    /// `f(x) <= g(x)`
    Inclusion { f: Ident, g: Ident },
    /// `y <= g(x) -> f(y) <= h(x)`
    Composition { f: Ident, g: Ident, h: Ident },
}

impl Axiom {
    pub fn functions(&self) -> Vec<&Ident> {
        match self {
            Axiom::Inclusion { f, g } => vec![f, g],
            Axiom::Composition { f, g, h } => vec![f, g, h],
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Axiom::Inclusion { f, g } => write!(fm, "inclusion {f} {g}"),
            Axiom::Composition { f, g, h } => write!(fm, "composition {f} {g} {h}"),
        }
    }
}

/// The extension signature and its axioms. Every function carries `Mon(f)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AxiomSet {
    pub functions: BTreeSet<Ident>,
    pub axioms: Vec<Axiom>,
}

impl AxiomSet {
    pub fn new(functions: impl IntoIterator<Item = Ident>) -> Self {
        AxiomSet {
            functions: functions.into_iter().collect(),
            axioms: Vec::new(),
        }
    }

    pub fn add(&mut self, axiom: Axiom) -> Result<()> {
        if let Some(f) = axiom.functions().into_iter().find(|f| !self.functions.contains(*f)) {
            return Err(Error::usage(format!("axiom `{axiom}` uses undeclared function `{f}`")));
        }
        self.axioms.push(axiom);
        Ok(())
    }

    pub fn with(mut self, axiom: Axiom) -> Result<Self> {
        self.add(axiom)?;
        Ok(self)
    }
}

/// A flat application `func(arg)` with a constant argument.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FlatTerm {
    pub func: Ident,
    pub arg: Ident,
}

impl FlatTerm {
    pub fn new(func: impl Into<Ident>, arg: impl Into<Ident>) -> Self {
        FlatTerm {
            func: func.into(),
            arg: arg.into(),
        }
    }
}

impl fmt::Display for FlatTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.func, self.arg)
    }
}

pub type FlatTermSet = BTreeSet<FlatTerm>;

/// A ground entailment problem `A /\ B |= goal` modulo `SLat + Mon + K`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Problem {
    pub a: Vec<Literal>,
    pub b: Vec<Literal>,
    pub axioms: AxiomSet,
    pub goal: Atom,
}

impl Problem {
    pub fn new(a: Vec<Literal>, b: Vec<Literal>, axioms: AxiomSet, goal: Atom) -> Self {
        Problem { a, b, axioms, goal }
    }

    /// Every applied function must be declared in the axiom set.
    pub fn validate(&self) -> Result<()> {
        let mut funcs: BTreeSet<Ident> = self.goal.symbols().into_iter().filter(is_fn).map(|s| s.name).collect();
        for l in self.a.iter().chain(&self.b) {
            funcs.extend(l.atom.symbols().into_iter().filter(is_fn).map(|s| s.name));
        }
        match funcs.iter().find(|f| !self.axioms.functions.contains(*f)) {
            Some(f) => Err(Error::usage(format!("function `{f}` is not declared"))),
            None => Ok(()),
        }
    }

    /// Same problem with another goal.
    pub fn with_goal(&self, goal: Atom) -> Problem {
        Problem { goal, ..self.clone() }
    }

    /// Decides the problem.
    pub fn entails(&self) -> Result<bool> {
        Ok(decide(&reduce(self)?).entailed)
    }

    /// Sub-problem keeping only the listed items.
    pub fn restrict(&self, keep: &[Item]) -> Problem {
        let keep: BTreeSet<&Item> = keep.iter().collect();
        let pick = |lits: &[Literal], mk: fn(usize) -> Item| -> Vec<Literal> {
            lits.iter()
                .enumerate()
                .filter(|(i, _)| keep.contains(&mk(*i)))
                .map(|(_, l)| l.clone())
                .collect()
        };
        let axioms = AxiomSet {
            functions: self.axioms.functions.clone(),
            axioms: self
                .axioms
                .axioms
                .iter()
                .enumerate()
                .filter(|(i, _)| keep.contains(&Item::K(*i)))
                .map(|(_, a)| a.clone())
                .collect(),
        };
        Problem {
            a: pick(&self.a, Item::A),
            b: pick(&self.b, Item::B),
            axioms,
            goal: self.goal.clone(),
        }
    }

    /// All input items in listing order: A literals, B literals, axioms.
    pub fn items(&self) -> Vec<Item> {
        (0..self.a.len())
            .map(Item::A)
            .chain((0..self.b.len()).map(Item::B))
            .chain((0..self.axioms.axioms.len()).map(Item::K))
            .collect()
    }
}

fn is_fn(s: &Symbol) -> bool {
    s.kind == SymbolKind::Function
}

/// Reference to an input literal or axiom of a [`Problem`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Item {
    A(usize),
    B(usize),
    K(usize),
}

impl fmt::Display for Item {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Item::A(i) => write!(f, "A{}", i + 1),
            Item::B(i) => write!(f, "B{}", i + 1),
            Item::K(i) => write!(f, "K{}", i + 1),
        }
    }
}

/// Side of a two-sided problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn of(color: Color) -> Side {
        match color {
            Color::BLocal => Side::B,
            _ => Side::A,
        }
    }

    pub fn color(self) -> Color {
        match self {
            Side::A => Color::ALocal,
            Side::B => Color::BLocal,
        }
    }
}

/// A problem after flattening and purification, ready for chaining.
#[derive(Debug, Clone)]
pub struct PurifiedProblem {
    /// Name of each flat term.
    pub defs: BTreeMap<FlatTerm, Ident>,
    /// Constants introduced for non-constant application arguments.
    pub bindings: BTreeMap<Ident, Term>,
    pub a0: Vec<Atom>,
    pub b0: Vec<Atom>,
    /// Atoms of the negative input literals.
    pub a_neg: Vec<Atom>,
    pub b_neg: Vec<Atom>,
    pub instances: Vec<GroundHornClause>,
    pub goal: Atom,
    pub colors: Coloring,
    /// The Ψ-closed flat term set the instances range over.
    pub terms: FlatTermSet,
}

impl PurifiedProblem {
    pub fn color(&self, c: &Ident) -> Color {
        self.colors
            .get(&Symbol::constant(c.clone()))
            .copied()
            .unwrap_or(Color::Shared)
    }

    pub fn name_of(&self, func: &Ident, arg: &Ident) -> Option<&Ident> {
        self.defs.get(&FlatTerm::new(func.clone(), arg.clone()))
    }

    /// Inverse of `defs`.
    pub fn named_terms(&self) -> BTreeMap<Ident, FlatTerm> {
        self.defs.iter().map(|(t, n)| (n.clone(), t.clone())).collect()
    }

    pub fn negatives(&self) -> impl Iterator<Item = &Atom> {
        self.a_neg.iter().chain(&self.b_neg)
    }
}

/// Generates identifiers that avoid every name seen so far.
#[derive(Debug, Clone, Default)]
pub struct Namer {
    used: BTreeSet<String>,
    counter: usize,
}

impl Namer {
    pub fn reserve(&mut self, name: &str) {
        self.used.insert(name.to_string());
    }

    /// `base`, or `base_1`, `base_2`, ... if taken.
    pub fn fresh(&mut self, base: &str) -> Ident {
        let mut name = base.to_string();
        let mut i = 0;
        while self.used.contains(&name) {
            i += 1;
            name = format!("{base}_{i}");
        }
        self.used.insert(name.clone());
        Ident::new(&name).expect("derived from valid identifiers")
    }

    /// `prefix1`, `prefix2`, ... skipping names already taken.
    pub fn numbered(&mut self, prefix: &str) -> Ident {
        loop {
            self.counter += 1;
            let name = format!("{prefix}{}", self.counter);
            if self.used.insert(name.clone()) {
                return Ident::new(&name).expect("valid");
            }
        }
    }
}

/// Colors of the input symbols; symbols occurring only in the goal are
/// colored by position (left only: A, right only: B, both: shared).
pub fn default_coloring(a: &[Literal], b: &[Literal], goal: &Atom) -> Coloring {
    let mut colors = crate::terms::color_problem(a, b);
    let (l, r) = goal.sides();
    let (ls, rs) = (l.symbols(), r.symbols());
    for s in ls.union(&rs) {
        if colors.contains_key(s) {
            continue;
        }
        let c = match (ls.contains(s), rs.contains(s)) {
            (true, true) => Color::Shared,
            (true, false) => Color::ALocal,
            _ => Color::BLocal,
        };
        colors.insert(s.clone(), c);
    }
    colors
}

struct Purifier {
    colors: Coloring,
    namer: Namer,
    defs: BTreeMap<FlatTerm, Ident>,
    bindings: BTreeMap<Ident, Term>,
    bound: BTreeMap<Term, Ident>,
    a0: Vec<Atom>,
    b0: Vec<Atom>,
}

impl Purifier {
    fn color_of(&self, s: Symbol) -> Color {
        self.colors.get(&s).copied().unwrap_or(Color::Shared)
    }

    fn term_color(&self, t: &Term) -> Option<Color> {
        t.symbols()
            .into_iter()
            .try_fold(Color::Shared, |acc, s| acc.join(self.color_of(s)))
    }

    fn name(&mut self, func: &Ident, arg: &Ident) -> Ident {
        let key = FlatTerm::new(func.clone(), arg.clone());
        if let Some(n) = self.defs.get(&key) {
            return n.clone();
        }
        let n = self.namer.fresh(&format!("{func}_{arg}"));
        let fc = self.color_of(Symbol::function(func.clone()));
        let color = fc.join(self.color_of(Symbol::constant(arg.clone()))).unwrap_or(fc);
        self.colors.insert(Symbol::constant(n.clone()), color);
        self.defs.insert(key, n.clone());
        n
    }

    /// `side` is `None` for goal terms, whose bindings follow their color.
    fn purify(&mut self, t: &Term, side: Option<Side>) -> Term {
        match t {
            Term::Const(_) => t.clone(),
            Term::Meet(args) => mk_meet(args.iter().map(|a| self.purify(a, side)).collect()).expect("nonempty"),
            Term::App(f, arg) => {
                let p = self.purify(arg, side);
                let c = match p {
                    Term::Const(c) => c,
                    other => self.bind(other, side),
                };
                Term::Const(self.name(f, &c))
            }
        }
    }

    fn bind(&mut self, t: Term, side: Option<Side>) -> Ident {
        if let Some(k) = self.bound.get(&t) {
            return k.clone();
        }
        let k = self.namer.numbered("k");
        let color = self.term_color(&t).unwrap_or(match side {
            Some(s) => s.color(),
            None => Color::ALocal,
        });
        self.colors.insert(Symbol::constant(k.clone()), color);
        let side = side.unwrap_or(Side::of(color));
        let defining = [
            Atom::Leq(Term::Const(k.clone()), t.clone()),
            Atom::Leq(t.clone(), Term::Const(k.clone())),
        ];
        match side {
            Side::A => self.a0.extend(defining),
            Side::B => self.b0.extend(defining),
        }
        self.bindings.insert(k.clone(), t.clone());
        self.bound.insert(t, k.clone());
        k
    }
}

/// Flattens and purifies a problem using occurrence-based colors.
pub fn flatten_purify(a: &[Literal], b: &[Literal], goal: &Atom) -> (PurifiedProblem, FlatTermSet) {
    flatten_purify_colored(a, b, goal, default_coloring(a, b, goal))
}

/// Flattens and purifies with the given colors for the input symbols.
/// Fresh names take the join of their constituents' colors.
pub fn flatten_purify_colored(
    a: &[Literal],
    b: &[Literal],
    goal: &Atom,
    colors: Coloring,
) -> (PurifiedProblem, FlatTermSet) {
    let mut namer = Namer::default();
    let mut all = literal_symbols(a.iter().chain(b));
    all.extend(goal.symbols());
    for s in all.iter().chain(colors.keys()) {
        namer.reserve(&s.name);
    }
    let mut p = Purifier {
        colors,
        namer,
        defs: BTreeMap::new(),
        bindings: BTreeMap::new(),
        bound: BTreeMap::new(),
        a0: Vec::new(),
        b0: Vec::new(),
    };
    let mut negs = (Vec::new(), Vec::new());
    for (lits, side) in [(a, Side::A), (b, Side::B)] {
        for lit in lits {
            let atom = lit.atom.map_terms(|t| p.purify(t, Some(side)));
            let (pos, neg) = match side {
                Side::A => (&mut p.a0, &mut negs.0),
                Side::B => (&mut p.b0, &mut negs.1),
            };
            if lit.positive {
                pos.extend(atom.expand());
            } else {
                neg.push(atom);
            }
        }
    }
    let goal = goal.map_terms(|t| p.purify(t, None));
    let terms: FlatTermSet = p.defs.keys().cloned().collect();
    let problem = PurifiedProblem {
        defs: p.defs,
        bindings: p.bindings,
        a0: p.a0,
        b0: p.b0,
        a_neg: negs.0,
        b_neg: negs.1,
        instances: Vec::new(),
        goal,
        colors: p.colors,
        terms: terms.clone(),
    };
    (problem, terms)
}

/// Least superset of `t` closed under the pairings demanded by the axioms:
/// `f(c)` and `g(c)` for an inclusion `(f, g)`, `g(c)` and `h(c)` for a
/// composition `(f, g, h)`.
pub fn psi_closure(t: &FlatTermSet, k: &AxiomSet) -> FlatTermSet {
    let pairs: Vec<(&Ident, &Ident)> = k
        .axioms
        .iter()
        .map(|ax| match ax {
            Axiom::Inclusion { f, g } => (f, g),
            Axiom::Composition { g, h, .. } => (g, h),
        })
        .collect();
    let mut out = t.clone();
    loop {
        let mut added = Vec::new();
        for ft in &out {
            for &(p, q) in &pairs {
                for (from, to) in [(p, q), (q, p)] {
                    if &ft.func == from {
                        let new = FlatTerm::new(to.clone(), ft.arg.clone());
                        if !out.contains(&new) {
                            added.push(new);
                        }
                    }
                }
            }
        }
        if added.is_empty() {
            return out;
        }
        out.extend(added);
    }
}

/// Ground instances of `Mon(f)` for every function and of every axiom in
/// `k`, with flat terms replaced by their names. Instances whose conclusion
/// is syntactically reflexive are skipped.
pub fn instantiate(k: &AxiomSet, t: &FlatTermSet, defs: &BTreeMap<FlatTerm, Ident>) -> Result<Vec<GroundHornClause>> {
    if &psi_closure(t, k) != t {
        return Err(Error::usage("term set is not closed under the axioms"));
    }
    let name = |f: &Ident, c: &Ident| -> Result<Term> {
        defs.get(&FlatTerm::new(f.clone(), c.clone()))
            .map(|n| Term::Const(n.clone()))
            .ok_or_else(|| Error::usage(format!("no name for {f}({c})")))
    };
    let mut by_func: BTreeMap<&Ident, Vec<&Ident>> = BTreeMap::new();
    for ft in t {
        by_func.entry(&ft.func).or_default().push(&ft.arg);
    }
    let args = |f: &Ident| by_func.get(f).cloned().unwrap_or_default();
    let mut out = Vec::new();
    let mut push = |premises: Vec<Atom>, conclusion: Atom, provenance: Provenance| {
        let (l, r) = conclusion.sides();
        if l != r {
            out.push(GroundHornClause {
                premises,
                conclusion,
                provenance,
            });
        }
    };
    for f in &k.functions {
        for &c in &args(f) {
            for &d in &args(f) {
                if c != d {
                    push(
                        vec![Atom::Leq(Term::Const(c.clone()), Term::Const(d.clone()))],
                        Atom::Leq(name(f, c)?, name(f, d)?),
                        Provenance::Mon {
                            func: f.clone(),
                            x: Term::Const(c.clone()),
                            y: Term::Const(d.clone()),
                        },
                    );
                }
            }
        }
    }
    for (i, ax) in k.axioms.iter().enumerate() {
        match ax {
            Axiom::Inclusion { f, g } => {
                for &c in &args(f) {
                    push(
                        vec![],
                        Atom::Leq(name(f, c)?, name(g, c)?),
                        Provenance::Inclusion {
                            axiom: i,
                            x: Term::Const(c.clone()),
                        },
                    );
                }
            }
            Axiom::Composition { f, g, h } => {
                for &c in &args(g) {
                    for &d in &args(f) {
                        push(
                            vec![Atom::Leq(Term::Const(d.clone()), name(g, c)?)],
                            Atom::Leq(name(f, d)?, name(h, c)?),
                            Provenance::Composition {
                                axiom: i,
                                x: Term::Const(c.clone()),
                                y: Term::Const(d.clone()),
                            },
                        );
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Names every flat term of `terms` not yet named, coloring the new names.
fn name_closure(p: &mut PurifiedProblem, terms: &FlatTermSet) {
    let mut namer = Namer::default();
    for s in p.colors.keys() {
        namer.reserve(&s.name);
    }
    for ft in terms {
        if p.defs.contains_key(ft) {
            continue;
        }
        let n = namer.fresh(&format!("{}_{}", ft.func, ft.arg));
        let color_of = |s: Symbol| p.colors.get(&s).copied().unwrap_or(Color::Shared);
        let fc = color_of(Symbol::function(ft.func.clone()));
        let color = fc.join(color_of(Symbol::constant(ft.arg.clone()))).unwrap_or(fc);
        p.colors.insert(Symbol::constant(n.clone()), color);
        p.defs.insert(ft.clone(), n);
    }
}

/// Flattening, Ψ-closure and instantiation in one step.
pub fn reduce(problem: &Problem) -> Result<PurifiedProblem> {
    let colors = default_coloring(&problem.a, &problem.b, &problem.goal);
    reduce_colored(problem, colors)
}

pub fn reduce_colored(problem: &Problem, colors: Coloring) -> Result<PurifiedProblem> {
    problem.validate()?;
    let (mut p, est) = flatten_purify_colored(&problem.a, &problem.b, &problem.goal, colors);
    let closed = psi_closure(&est, &problem.axioms);
    name_closure(&mut p, &closed);
    p.instances = instantiate(&problem.axioms, &closed, &p.defs)?;
    p.terms = closed;
    Ok(p)
}

/// Incremental SLat entailment over a growing atom set, caching the
/// propagation from each left-hand side.
pub(crate) struct Entailer {
    enc: PropHornProblem,
    cache: HashMap<usize, Option<Vec<bool>>>,
}

impl Entailer {
    pub(crate) fn new<'a>(atoms: impl IntoIterator<Item = &'a Atom>) -> Self {
        Entailer {
            enc: crate::slat::encode(atoms),
            cache: HashMap::new(),
        }
    }

    pub(crate) fn add(&mut self, atom: &Atom) {
        self.enc.add_atom(atom);
        self.cache.clear();
    }

    pub(crate) fn leq(&mut self, s: &Term, t: &Term) -> bool {
        if s == t {
            return true;
        }
        let n = self.enc.vars().len();
        let (vs, vt) = (self.enc.register(s), self.enc.register(t));
        if self.enc.vars().len() != n {
            self.cache.clear();
        }
        let enc = &self.enc;
        let closure = self.cache.entry(vs).or_insert_with(|| enc.propagate(&[vs]));
        match closure {
            None => true,
            Some(v) => v[vt],
        }
    }

    pub(crate) fn holds(&mut self, atom: &Atom) -> bool {
        atom.expand().iter().all(|a| {
            let (s, t) = a.sides();
            self.leq(s, t)
        })
    }
}

/// Why chaining stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    GoalEntailed,
    /// The positive atoms contradict a negative input literal.
    Inconsistent,
    Fixpoint,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Firing {
    pub round: usize,
    /// Index into the instance list.
    pub index: usize,
    pub clause: GroundHornClause,
}

impl fmt::Display for Firing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "round {}: {}  [{}]", self.round, self.clause, self.clause.provenance)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decision {
    pub entailed: bool,
    pub outcome: Outcome,
    pub trace: Vec<Firing>,
    pub derived: Vec<Atom>,
}

pub(crate) fn stop_reason(state: &mut Entailer, goal: &Atom, negatives: &[&Atom]) -> Option<Outcome> {
    if negatives.iter().any(|n| state.holds(n)) {
        Some(Outcome::Inconsistent)
    } else if state.holds(goal) {
        Some(Outcome::GoalEntailed)
    } else {
        None
    }
}

/// Forward chaining in rounds. Each round fires, in instance order, every
/// unfired instance whose premises follow from the atoms known at the start
/// of the round. The goal and the negative literals are checked between
/// rounds; a round that fires nothing is a fixpoint.
pub fn decide(problem: &PurifiedProblem) -> Decision {
    let negatives: Vec<&Atom> = problem.negatives().collect();
    let mut state = Entailer::new(problem.a0.iter().chain(&problem.b0));
    let mut fired = vec![false; problem.instances.len()];
    let mut trace = Vec::new();
    let mut derived = Vec::new();
    for round in 1.. {
        if let Some(outcome) = stop_reason(&mut state, &problem.goal, &negatives) {
            return Decision {
                entailed: true,
                outcome,
                trace,
                derived,
            };
        }
        let ready: Vec<usize> = (0..problem.instances.len())
            .filter(|&i| !fired[i] && problem.instances[i].premises.iter().all(|p| state.holds(p)))
            .collect();
        if ready.is_empty() {
            break;
        }
        for i in ready {
            fired[i] = true;
            let clause = &problem.instances[i];
            state.add(&clause.conclusion);
            derived.push(clause.conclusion.clone());
            trace.push(Firing {
                round,
                index: i,
                clause: clause.clone(),
            });
        }
    }
    Decision {
        entailed: false,
        outcome: Outcome::Fixpoint,
        trace,
        derived,
    }
}

/// Deletion-based minimization, trying the items from last to first: an
/// item is dropped if the goal stays entailed without it.
pub fn minimize_axioms(problem: &Problem) -> Result<Vec<Item>> {
    if !problem.entails()? {
        return Err(Error::usage(format!("goal {} is not entailed", problem.goal)));
    }
    let mut keep = problem.items();
    for item in problem.items().into_iter().rev() {
        let without: Vec<Item> = keep.iter().copied().filter(|&i| i != item).collect();
        if problem.restrict(&without).entails()? {
            keep = without;
        }
    }
    Ok(keep)
}
