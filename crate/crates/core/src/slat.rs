//! Ground reasoning in the theory of semilattices.
//!
//! Entailment between atoms is decided through the propositional Horn
//! encoding: one variable `P_e` per term, `P_{e1 & e2} <-> P_e1 /\ P_e2` for
//! every meet, and `P_e1 -> P_e2` for every atom `e1 <= e2`. Since every
//! semilattice embeds in a power of the two-element one, `ctx |= s <= t`
//! holds iff `ctx /\ P_s /\ !P_t` is unsatisfiable, which unit propagation
//! decides. Applications are treated as opaque variables; callers purify
//! them away when function axioms matter.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::locality::{Axiom, AxiomSet};
use crate::syntax::{self, Cursor};
use crate::terms::{meet_split, Atom, Ident, Literal, Term};

/// Propositional Horn clause `premises -> conclusion`; `None` stands for false.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropClause {
    pub premises: Vec<usize>,
    pub conclusion: Option<usize>,
}

/// Horn encoding of a set of ground atoms.
#[derive(Debug, Clone, Default)]
pub struct PropHornProblem {
    vars: Vec<Term>,
    index: HashMap<Term, usize>,
    clauses: Vec<PropClause>,
}

impl PropHornProblem {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vars(&self) -> &[Term] {
        &self.vars
    }

    pub fn clauses(&self) -> &[PropClause] {
        &self.clauses
    }

    pub fn var(&self, t: &Term) -> Option<usize> {
        self.index.get(t).copied()
    }

    /// Adds variables for `t` and its subterms, with the meet clauses.
    pub fn register(&mut self, t: &Term) -> usize {
        if let Some(&v) = self.index.get(t) {
            return v;
        }
        let parts = match t {
            Term::App(_, arg) => {
                self.register(arg);
                None
            }
            Term::Meet(args) => {
                for a in args {
                    self.register(a);
                }
                let (l, r) = meet_split(t).expect("meet");
                Some((self.register(&l), self.register(&r)))
            }
            Term::Const(_) => None,
        };
        let v = self.vars.len();
        self.vars.push(t.clone());
        self.index.insert(t.clone(), v);
        if let Some((l, r)) = parts {
            self.clauses.push(PropClause {
                premises: vec![v],
                conclusion: Some(l),
            });
            self.clauses.push(PropClause {
                premises: vec![v],
                conclusion: Some(r),
            });
            self.clauses.push(PropClause {
                premises: if l == r { vec![l] } else { vec![l, r] },
                conclusion: Some(v),
            });
        }
        v
    }

    pub fn add_atom(&mut self, atom: &Atom) {
        for a in atom.expand() {
            let (l, r) = a.sides();
            let (l, r) = (self.register(l), self.register(r));
            self.clauses.push(PropClause {
                premises: vec![l],
                conclusion: Some(r),
            });
        }
    }

    /// Variables forced true once every variable in `seeds` is true.
    /// Returns `None` if a clause with conclusion false fires.
    pub fn propagate(&self, seeds: &[usize]) -> Option<Vec<bool>> {
        let n = self.vars.len();
        let mut watch: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut missing: Vec<usize> = Vec::with_capacity(self.clauses.len());
        let mut value = vec![false; n];
        let mut queue: Vec<usize> = Vec::new();
        for (ci, c) in self.clauses.iter().enumerate() {
            let mut prem: Vec<usize> = c.premises.clone();
            prem.sort_unstable();
            prem.dedup();
            for &p in &prem {
                watch[p].push(ci);
            }
            missing.push(prem.len());
            if prem.is_empty() {
                {
                    let v = c.conclusion?;
                    queue.push(v)
                }
            }
        }
        queue.extend_from_slice(seeds);
        while let Some(v) = queue.pop() {
            if value[v] {
                continue;
            }
            value[v] = true;
            for &ci in &watch[v] {
                missing[ci] -= 1;
                if missing[ci] == 0 {
                    {
                        let w = self.clauses[ci].conclusion?;
                        if !value[w] {
                            queue.push(w)
                        }
                    }
                }
            }
        }
        Some(value)
    }

    /// `self |= s <= t`.
    pub fn entails(&mut self, s: &Term, t: &Term) -> bool {
        if s == t {
            return true;
        }
        let (vs, vt) = (self.register(s), self.register(t));
        match self.propagate(&[vs]) {
            None => true,
            Some(value) => value[vt],
        }
    }

    /// Every registered term `e` with `self |= s <= e`.
    pub fn upper_bounds(&mut self, s: &Term) -> BTreeSet<Term> {
        let vs = self.register(s);
        match self.propagate(&[vs]) {
            None => self.vars.iter().cloned().collect(),
            Some(value) => self
                .vars
                .iter()
                .zip(value)
                .filter(|(_, v)| *v)
                .map(|(t, _)| t.clone())
                .collect(),
        }
    }
}

pub fn encode<'a>(atoms: impl IntoIterator<Item = &'a Atom>) -> PropHornProblem {
    let mut p = PropHornProblem::new();
    for a in atoms {
        p.add_atom(a);
    }
    p
}

/// `context |= goal` in SLat. `Eq` goals require both directions.
pub fn entails_atom<'a>(context: impl IntoIterator<Item = &'a Atom>, goal: &Atom) -> bool {
    let mut p = encode(context);
    goal.expand().iter().all(|g| {
        let (s, t) = g.sides();
        p.entails(s, t)
    })
}

/// Whether a set of literals has a model. By convexity each negative literal
/// can be checked on its own against the positive part.
pub fn is_consistent<'a>(literals: impl IntoIterator<Item = &'a Literal>) -> bool {
    let (pos, neg): (Vec<&Literal>, Vec<&Literal>) = literals.into_iter().partition(|l| l.positive);
    let mut p = encode(pos.iter().map(|l| &l.atom));
    neg.iter().all(|l| {
        !l.atom.expand().iter().all(|g| {
            let (s, t) = g.sides();
            p.entails(s, t)
        })
    })
}

/// Meet of all candidates `e` with `A |= a <= e`.
///
/// Requires `AB |= a <= b`; the result `t` is checked to satisfy
/// `A |= a <= t` and `AB |= t <= b` before it is returned.
pub fn intermediate_term(
    a_atoms: &[Atom],
    ab_atoms: &[Atom],
    a: &Term,
    b: &Term,
    candidates: &BTreeSet<Term>,
) -> Result<Term> {
    let mut ab = encode(ab_atoms);
    if !ab.entails(a, b) {
        return Err(Error::NotEntailed(format!("{a} <= {b}")));
    }
    let mut pa = encode(a_atoms);
    let chosen: Vec<Term> = candidates.iter().filter(|e| pa.entails(a, e)).cloned().collect();
    if chosen.is_empty() {
        return Err(Error::NoSharedWitness {
            lhs: a.clone(),
            rhs: b.clone(),
        });
    }
    let t = crate::terms::mk_meet(chosen)?;
    if !pa.entails(a, &t) {
        return Err(Error::Internal(format!("A does not entail {a} <= {t}")));
    }
    if !ab.entails(&t, b) {
        return Err(Error::Internal(format!("A and B do not entail {t} <= {b}")));
    }
    Ok(t)
}

/// Largest number of constants [`brute_force_entails`] accepts.
pub const BRUTE_FORCE_LIMIT: usize = 20;

/// Decides `context |= goal` by enumerating all valuations of the constants
/// in the two-element semilattice.
pub fn brute_force_entails(context: &[Atom], goal: &Atom) -> Result<bool> {
    let mut consts = BTreeSet::new();
    for atom in context.iter().chain(std::iter::once(goal)) {
        let (l, r) = atom.sides();
        for t in [l, r] {
            if t.has_app() {
                return Err(Error::usage(format!(
                    "brute-force oracle needs constant-only terms, got {t}"
                )));
            }
            consts.extend(t.constants());
        }
    }
    if consts.len() > BRUTE_FORCE_LIMIT {
        return Err(Error::TooManyConstants {
            limit: BRUTE_FORCE_LIMIT,
            got: consts.len(),
        });
    }
    let pos: BTreeMap<&Ident, usize> = consts.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let mask = |t: &Term| -> u32 { t.constants().iter().fold(0, |m, c| m | (1 << pos[c])) };
    let compile = |atoms: &[Atom]| -> Vec<(u32, u32)> {
        atoms
            .iter()
            .flat_map(|a| a.expand())
            .map(|a| {
                let (l, r) = a.sides();
                (mask(l), mask(r))
            })
            .collect()
    };
    let ctx = compile(context);
    let goal = compile(std::slice::from_ref(goal));
    // A meet evaluates to 1 iff all its constants are 1.
    let holds = |v: u32, (l, r): (u32, u32)| v & l != l || v & r == r;
    for v in 0..(1u32 << consts.len()) {
        if ctx.iter().all(|&c| holds(v, c)) && !goal.iter().all(|&g| holds(v, g)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A finite semilattice with unary operations and constant interpretations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteModel {
    pub carrier: Vec<Ident>,
    /// `meet[x][y]` is the index of `x & y`.
    pub meet: Vec<Vec<usize>>,
    pub funcs: BTreeMap<Ident, Vec<usize>>,
    pub consts: BTreeMap<Ident, usize>,
}

impl FiniteModel {
    pub fn element(&self, name: &str) -> Option<usize> {
        self.carrier.iter().position(|e| &**e == name)
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.meet[x][y] == x
    }

    fn func(&self, f: &Ident) -> Result<&[usize]> {
        self.funcs
            .get(f)
            .map(Vec::as_slice)
            .ok_or_else(|| Error::usage(format!("function `{f}` is not interpreted in the model")))
    }

    pub fn holds(&self, atom: &Atom) -> Result<bool> {
        let (l, r) = atom.sides();
        let (x, y) = (eval_term(self, l)?, eval_term(self, r)?);
        Ok(match atom {
            Atom::Leq(..) => self.leq(x, y),
            Atom::Eq(..) => x == y,
        })
    }
}

/// Value of a ground term in `m`.
pub fn eval_term(m: &FiniteModel, t: &Term) -> Result<usize> {
    match t {
        Term::Const(c) => m
            .consts
            .get(c)
            .copied()
            .ok_or_else(|| Error::usage(format!("constant `{c}` is not interpreted in the model"))),
        Term::App(f, arg) => {
            let v = eval_term(m, arg)?;
            Ok(m.func(f)?[v])
        }
        Term::Meet(args) => {
            let mut acc = eval_term(m, &args[0])?;
            for a in &args[1..] {
                acc = m.meet[acc][eval_term(m, a)?];
            }
            Ok(acc)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelCheck {
    pub name: String,
    pub passed: bool,
    /// Counterexample for a failed check.
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ModelReport {
    pub checks: Vec<ModelCheck>,
}

impl ModelReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn push(&mut self, name: String, failure: Option<String>) {
        self.checks.push(ModelCheck {
            name,
            passed: failure.is_none(),
            detail: failure,
        });
    }
}

impl fmt::Display for ModelReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            write!(f, "{} {}", if c.passed { "PASS" } else { "FAIL" }, c.name)?;
            if let Some(d) = &c.detail {
                write!(f, ": {d}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Checks the semilattice laws, monotonicity of every operation, each axiom
/// by enumeration and each ground atom.
pub fn check_finite_model(m: &FiniteModel, axioms: &AxiomSet, atoms: &[Atom]) -> Result<ModelReport> {
    let n = m.carrier.len();
    let name = |x: usize| m.carrier[x].to_string();
    let mut report = ModelReport::default();

    let pairs = || (0..n).flat_map(|x| (0..n).map(move |y| (x, y)));
    let idem = (0..n).find(|&x| m.meet[x][x] != x);
    report.push("meet idempotent".into(), idem.map(|x| format!("fails for {}", name(x))));
    let comm = pairs().find(|&(x, y)| m.meet[x][y] != m.meet[y][x]);
    report.push(
        "meet commutative".into(),
        comm.map(|(x, y)| format!("fails for {}, {}", name(x), name(y))),
    );
    let assoc = pairs()
        .flat_map(|(x, y)| (0..n).map(move |z| (x, y, z)))
        .find(|&(x, y, z)| m.meet[m.meet[x][y]][z] != m.meet[x][m.meet[y][z]]);
    report.push(
        "meet associative".into(),
        assoc.map(|(x, y, z)| format!("fails for {}, {}, {}", name(x), name(y), name(z))),
    );

    let mut funcs: BTreeSet<&Ident> = m.funcs.keys().collect();
    funcs.extend(axioms.functions.iter());
    for f in funcs {
        let table = m.func(f)?;
        let bad = pairs().find(|&(x, y)| m.leq(x, y) && !m.leq(table[x], table[y]));
        report.push(
            format!("Mon({f})"),
            bad.map(|(x, y)| format!("x = {}, y = {}", name(x), name(y))),
        );
    }

    for axiom in &axioms.axioms {
        let bad = match axiom {
            Axiom::Inclusion { f, g } => {
                let (tf, tg) = (m.func(f)?, m.func(g)?);
                (0..n)
                    .find(|&x| !m.leq(tf[x], tg[x]))
                    .map(|x| format!("x = {}", name(x)))
            }
            Axiom::Composition { f, g, h } => {
                let (tf, tg, th) = (m.func(f)?, m.func(g)?, m.func(h)?);
                pairs()
                    .find(|&(x, y)| m.leq(y, tg[x]) && !m.leq(tf[y], th[x]))
                    .map(|(x, y)| format!("x = {}, y = {}", name(x), name(y)))
            }
        };
        report.push(axiom.to_string(), bad);
    }

    for atom in atoms {
        let bad = if m.holds(atom)? {
            None
        } else {
            let (l, r) = atom.sides();
            Some(format!(
                "{l} = {}, {r} = {}",
                name(eval_term(m, l)?),
                name(eval_term(m, r)?)
            ))
        };
        report.push(format!("atom {atom}"), bad);
    }
    Ok(report)
}

/// A model together with the axioms and atoms it should satisfy, as read
/// from a `.model` file.
#[derive(Debug, Clone)]
pub struct ModelFile {
    pub model: FiniteModel,
    pub axioms: AxiomSet,
    pub atoms: Vec<Atom>,
}

impl ModelFile {
    pub fn check(&self) -> Result<ModelReport> {
        check_finite_model(&self.model, &self.axioms, &self.atoms)
    }
}

/// Parses the `.model` format:
///
/// ```text
/// carrier a e b d
/// meet a  a e d d      # row for a: a&a a&e a&b a&d
/// func f  a a d d      # f applied to each carrier element
/// const e e
/// axiom composition f g g
/// atom a <= f(e)
/// ```
pub fn parse_model(src: &str) -> Result<ModelFile> {
    let lines = syntax::lines(src)?;
    let mut carrier: Option<Vec<Ident>> = None;
    let mut rows: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut funcs = BTreeMap::new();
    let mut consts = BTreeMap::new();
    let mut axiom_lines = Vec::new();
    let mut atom_lines = Vec::new();

    for line in &lines {
        let mut cur = Cursor::new(line);
        if cur.keyword("carrier") {
            if carrier.is_some() {
                return Err(cur.error("duplicate carrier declaration"));
            }
            let elems = cur.idents()?;
            if elems.is_empty() {
                return Err(cur.error("empty carrier"));
            }
            let distinct: BTreeSet<_> = elems.iter().collect();
            if distinct.len() != elems.len() {
                return Err(cur.error("duplicate carrier element"));
            }
            carrier = Some(elems);
            continue;
        }
        if cur.keyword("axiom") {
            axiom_lines.push(line);
            continue;
        }
        if cur.keyword("atom") {
            atom_lines.push(line);
            continue;
        }
        let Some(elems) = carrier.as_ref() else {
            return Err(cur.error("expected `carrier` declaration first"));
        };
        let lookup = |cur: &mut Cursor<'_>| -> Result<usize> {
            let col = cur.column();
            let id = cur.ident()?;
            elems
                .iter()
                .position(|e| *e == id)
                .ok_or_else(|| Error::parse(cur.line_number(), col, format!("unknown element `{id}`")))
        };
        let table = |cur: &mut Cursor<'_>| -> Result<Vec<usize>> {
            let mut out = Vec::new();
            while !cur.at_end() {
                out.push(lookup(cur)?);
            }
            if out.len() != elems.len() {
                return Err(cur.error(format!("expected {} entries, found {}", elems.len(), out.len())));
            }
            Ok(out)
        };
        if cur.keyword("meet") {
            let x = lookup(&mut cur)?;
            let row = table(&mut cur)?;
            if rows.insert(x, row).is_some() {
                return Err(Error::parse(line.number, 1, "duplicate meet row"));
            }
        } else if cur.keyword("func") {
            let f = cur.ident()?;
            let row = table(&mut cur)?;
            if funcs.insert(f, row).is_some() {
                return Err(Error::parse(line.number, 1, "duplicate function table"));
            }
        } else if cur.keyword("const") {
            let c = cur.ident()?;
            let v = lookup(&mut cur)?;
            cur.finish()?;
            if consts.insert(c, v).is_some() {
                return Err(Error::parse(line.number, 1, "duplicate constant"));
            }
        } else {
            return Err(cur.error("expected `carrier`, `meet`, `func`, `const`, `axiom` or `atom`"));
        }
    }

    let carrier = carrier.ok_or_else(|| Error::parse(1, 1, "missing carrier declaration"))?;
    if rows.len() != carrier.len() {
        let missing = (0..carrier.len()).find(|x| !rows.contains_key(x)).unwrap();
        return Err(Error::usage(format!(
            "meet table has no row for `{}`",
            carrier[missing]
        )));
    }
    let meet = rows.into_values().collect();
    let fnames: BTreeSet<Ident> = funcs.keys().cloned().collect();
    let mut axioms = AxiomSet::new(fnames.iter().cloned());
    for line in axiom_lines {
        let mut cur = Cursor::new(line);
        cur.keyword("axiom");
        crate::slp::axiom_line(&mut cur, &mut axioms)?;
    }
    let mut atoms = Vec::new();
    for line in atom_lines {
        let mut cur = Cursor::new(line);
        cur.keyword("atom");
        atoms.push(syntax::atom(&mut cur, &fnames)?);
        cur.finish()?;
    }
    Ok(ModelFile {
        model: FiniteModel {
            carrier,
            meet,
            funcs,
            consts,
        },
        axioms,
        atoms,
    })
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::terms::mk_meet;

    fn c(n: &str) -> Term {
        Term::constant(n)
    }

    fn leq(l: &str, r: &str) -> Atom {
        Atom::leq(c(l), c(r))
    }

    #[test]
    fn encode_examples() {
        let p = encode(&[leq("a", "b")]);
        assert_eq!(p.vars(), &[c("a"), c("b")]);
        assert_eq!(
            p.clauses(),
            &[PropClause {
                premises: vec![0],
                conclusion: Some(1)
            }]
        );

        let ab = c("a").meet(c("b"));
        let p = encode(&[Atom::leq(ab.clone(), c("c"))]);
        let v = |t: &Term| p.var(t).unwrap();
        assert_eq!(p.vars().len(), 4);
        let expect = [
            (vec![v(&ab)], v(&c("a"))),
            (vec![v(&ab)], v(&c("b"))),
            (vec![v(&c("a")), v(&c("b"))], v(&ab)),
            (vec![v(&ab)], v(&c("c"))),
        ];
        for (prem, concl) in expect {
            assert!(p.clauses().contains(&PropClause {
                premises: prem,
                conclusion: Some(concl)
            }));
        }
        assert_eq!(p.clauses().len(), 4);

        let p = encode(&[]);
        assert!(p.vars().is_empty() && p.clauses().is_empty());
    }

    fn chain() -> (Vec<Atom>, Vec<Atom>) {
        let a = vec![leq("a1", "c1"), leq("c2", "a2"), leq("a2", "c3")];
        let b = vec![leq("c1", "b1"), leq("b1", "c2"), leq("c3", "b2")];
        (a, b)
    }

    #[test]
    fn entailment_examples() {
        let (a, b) = chain();
        let ab: Vec<Atom> = a.iter().chain(&b).cloned().collect();
        assert!(entails_atom(&ab, &leq("a1", "b2")));
        assert!(entails_atom(&[], &leq("a", "a")));
        assert!(!entails_atom(&[leq("a", "b")], &leq("b", "a")));
        assert!(!brute_force_entails(&[leq("a", "b")], &leq("b", "a")).unwrap());
    }

    #[test]
    fn consistency_examples() {
        let ab = Literal::pos(leq("a", "b"));
        assert!(!is_consistent(&[ab.clone(), Literal::neg(leq("a", "b"))]));
        assert!(is_consistent(&[ab.clone(), Literal::neg(leq("b", "a"))]));
        let chain = [ab, Literal::pos(leq("b", "c")), Literal::neg(leq("a", "c"))];
        assert!(!is_consistent(&chain));
        assert!(brute_force_entails(&[leq("a", "b"), leq("b", "c")], &leq("a", "c")).unwrap());
    }

    #[test]
    fn intermediate_term_examples() {
        let (a, b) = chain();
        let ab: Vec<Atom> = a.iter().chain(&b).cloned().collect();
        let cands = BTreeSet::from([c("c1"), c("c2"), c("c3")]);
        assert_eq!(intermediate_term(&a, &ab, &c("a1"), &c("b2"), &cands).unwrap(), c("c1"));

        let cands = BTreeSet::from([c("a")]);
        let ab = [leq("a", "b")];
        assert_eq!(intermediate_term(&[], &ab, &c("a"), &c("b"), &cands).unwrap(), c("a"));

        // B-side saturation of the SLO example: b <= d, b <= b1, b1 <= d1.
        let bside = [
            leq("b", "d"),
            leq("b", "b1"),
            leq("b1", "d1"),
            leq("d1", "a1"),
            leq("d", "a1"),
        ];
        let ab: Vec<Atom> = bside.iter().cloned().chain([leq("a1", "c1"), leq("c1", "a")]).collect();
        let cands = BTreeSet::from([c("d"), c("d1")]);
        let t = intermediate_term(&bside[..3], &ab, &c("b"), &c("a"), &cands).unwrap();
        assert_eq!(t, mk_meet(vec![c("d"), c("d1")]).unwrap());
    }

    #[test]
    fn intermediate_term_errors() {
        let ab = [leq("a", "b")];
        let none = BTreeSet::from([c("z")]);
        assert!(matches!(
            intermediate_term(&ab, &ab, &c("a"), &c("b"), &none),
            Err(Error::NoSharedWitness { .. })
        ));
        assert!(matches!(
            intermediate_term(&[], &[], &c("a"), &c("b"), &none),
            Err(Error::NotEntailed(_))
        ));
    }

    #[test]
    fn brute_force_limits() {
        assert!(!brute_force_entails(&[], &leq("a", "b")).unwrap());
        let app = Atom::leq(Term::app("f", c("a")), c("b"));
        assert!(matches!(
            brute_force_entails(&[app], &leq("a", "b")),
            Err(Error::Usage(_))
        ));
        let many: Vec<Atom> = (0..21).map(|i| leq(&format!("x{i}"), "x0")).collect();
        assert!(matches!(
            brute_force_entails(&many, &leq("x0", "x1")),
            Err(Error::TooManyConstants { limit: 20, got: 21 })
        ));
    }

    pub(crate) const MODEL_S: &str = "\
carrier a e b d
meet a  a e d d
meet e  e e d d
meet b  d d b d
meet d  d d d d
func f  a a d d
func g  d d a d
const a a
const e e
const b b
const d d
axiom composition f g g
atom a <= f(e)
atom e <= g(b)
atom g(b) <= a
";

    #[test]
    fn four_element_model_passes() {
        let file = parse_model(MODEL_S).unwrap();
        let report = file.check().unwrap();
        assert!(report.all_passed(), "{report}");
        // 3 laws, Mon(f), Mon(g), one axiom, three atoms
        assert_eq!(report.checks.len(), 9);

        let m = &file.model;
        let name = |t: &Term| m.carrier[eval_term(m, t).unwrap()].to_string();
        assert_eq!(name(&c("e")), "e");
        assert_eq!(name(&Term::app("g", c("e"))), "d");
        assert_eq!(name(&Term::app("f", c("e"))), "a");

        let bad = check_finite_model(m, &file.axioms, &[leq("a", "e")]).unwrap();
        assert!(!bad.all_passed());
        assert!(!bad.checks.last().unwrap().passed);
    }

    #[test]
    fn two_element_chain() {
        let src = "carrier 0 1\nmeet 0 0 0\nmeet 1 0 1\nfunc f 0 1\naxiom inclusion f f\n";
        let report = parse_model(src).unwrap().check().unwrap();
        assert!(report.all_passed(), "{report}");
    }

    #[test]
    fn model_errors() {
        let file = parse_model(MODEL_S).unwrap();
        assert!(matches!(eval_term(&file.model, &c("zz")), Err(Error::Usage(_))));
        assert!(matches!(
            check_finite_model(&file.model, &file.axioms, &[leq("a", "zz")]),
            Err(Error::Usage(_))
        ));
        assert!(matches!(parse_model("meet a a"), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_model("carrier a b\nmeet a a q"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(parse_model("carrier a b\nmeet a a"), Err(Error::Parse { .. })));
    }
}
