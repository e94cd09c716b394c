//! Interpolating terms for `A /\ B |= a <= b`.
//!
//! The instances of the reduced problem are fired as in
//! [`crate::locality::decide`]. A fired instance whose constants mix A-local
//! and B-local symbols is split through a shared intermediate term `t` of its
//! premise `c <= d` and a fresh shared name `u` for `f(t)`: one half
//! `c <= t -> f(c) <= u` goes to the premise's side, the other
//! `t <= d -> u <= ...` to the opposite side. Once the goal follows, the
//! interpolant is the meet of all shared candidates above `a` on `a`'s side,
//! with every name unfolded back into a ground term.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use petgraph::unionfind::UnionFind;

use crate::error::{Error, Result};
use crate::locality::{
    decide, default_coloring, reduce_colored, stop_reason, Entailer, Firing, Namer, Outcome, Problem, PurifiedProblem,
    Side,
};
use crate::slat::{entails_atom, intermediate_term};
use crate::terms::{Atom, Color, GroundHornClause, Ident, Provenance, Symbol, SymbolKind, Term};

/// Which function symbols count as shared between the two sides.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SharingMode {
    /// Functions linked through axioms are shared together.
    #[default]
    Theta,
    /// Only functions occurring on both sides are shared.
    Intersection,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SharingMap {
    /// Equivalence classes of functions under co-occurrence in an axiom.
    pub classes: Vec<BTreeSet<Ident>>,
    /// Functions reachable from the A side (Θ(ΣA) in theta mode, ΣA otherwise).
    pub a_functions: BTreeSet<Ident>,
    pub b_functions: BTreeSet<Ident>,
    pub shared_functions: BTreeSet<Ident>,
    pub shared_constants: BTreeSet<Ident>,
}

impl SharingMap {
    pub fn function_color(&self, f: &Ident) -> Color {
        match (self.a_functions.contains(f), self.b_functions.contains(f)) {
            (true, false) => Color::ALocal,
            (false, true) => Color::BLocal,
            _ => Color::Shared,
        }
    }

    /// Whether `t` only uses shared functions and constants.
    pub fn admits(&self, t: &Term) -> bool {
        t.functions().is_subset(&self.shared_functions) && t.constants().is_subset(&self.shared_constants)
    }
}

/// Θ-sharing: close ΣA and ΣB under the co-occurrence classes of `k`.
pub fn theta_sharing(
    k: &crate::locality::AxiomSet,
    sigma_a: &BTreeSet<Ident>,
    sigma_b: &BTreeSet<Ident>,
) -> SharingMap {
    let all: Vec<&Ident> = k
        .functions
        .iter()
        .chain(sigma_a)
        .chain(sigma_b)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let index: BTreeMap<&Ident, usize> = all.iter().enumerate().map(|(i, f)| (*f, i)).collect();
    let mut uf = UnionFind::<usize>::new(all.len());
    for ax in &k.axioms {
        let fs = ax.functions();
        for w in fs.windows(2) {
            uf.union(index[w[0]], index[w[1]]);
        }
    }
    let mut by_root: BTreeMap<usize, BTreeSet<Ident>> = BTreeMap::new();
    for (i, f) in all.iter().enumerate() {
        by_root.entry(uf.find(i)).or_default().insert((*f).clone());
    }
    let mut classes: Vec<BTreeSet<Ident>> = by_root.into_values().collect();
    classes.sort();
    let close = |sigma: &BTreeSet<Ident>| -> BTreeSet<Ident> {
        classes
            .iter()
            .filter(|c| !c.is_disjoint(sigma))
            .flat_map(|c| c.iter().cloned())
            .collect()
    };
    let (a_functions, b_functions) = (close(sigma_a), close(sigma_b));
    SharingMap {
        shared_functions: a_functions.intersection(&b_functions).cloned().collect(),
        classes,
        a_functions,
        b_functions,
        shared_constants: BTreeSet::new(),
    }
}

/// Intersection sharing, keeping the Θ classes for reference.
pub fn intersection_sharing(
    k: &crate::locality::AxiomSet,
    sigma_a: &BTreeSet<Ident>,
    sigma_b: &BTreeSet<Ident>,
) -> SharingMap {
    let theta = theta_sharing(k, sigma_a, sigma_b);
    SharingMap {
        classes: theta.classes,
        a_functions: sigma_a.clone(),
        b_functions: sigma_b.clone(),
        shared_functions: sigma_a.intersection(sigma_b).cloned().collect(),
        shared_constants: BTreeSet::new(),
    }
}

/// Sharing map of a problem: symbol sides come from the literals, with
/// goal-only symbols colored by their position in the goal.
pub fn problem_sharing(problem: &Problem, mode: SharingMode) -> SharingMap {
    let colors = default_coloring(&problem.a, &problem.b, &problem.goal);
    let side_fns = |want: Color| -> BTreeSet<Ident> {
        colors
            .iter()
            .filter(|(s, c)| s.kind == SymbolKind::Function && (**c == want || **c == Color::Shared))
            .map(|(s, _)| s.name.clone())
            .collect()
    };
    let (sa, sb) = (side_fns(Color::ALocal), side_fns(Color::BLocal));
    let mut map = match mode {
        SharingMode::Theta => theta_sharing(&problem.axioms, &sa, &sb),
        SharingMode::Intersection => intersection_sharing(&problem.axioms, &sa, &sb),
    };
    map.shared_constants = colors
        .iter()
        .filter(|(s, c)| s.kind == SymbolKind::Constant && **c == Color::Shared)
        .map(|(s, _)| s.name.clone())
        .collect();
    map
}

/// One event of the separation run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Step {
    /// A pure instance fired; its conclusion joins `side`.
    Fired {
        round: usize,
        clause: GroundHornClause,
        side: Side,
    },
    /// A mixed instance replaced by two halves through `term`, named `name`.
    Split {
        round: usize,
        clause: GroundHornClause,
        term: Term,
        name: Ident,
        halves: Box<[(GroundHornClause, Side); 2]>,
    },
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Step::Fired { round, clause, side } => {
                write!(
                    f,
                    "round {round}: fire {clause}  [{}] -> side {side:?}",
                    clause.provenance
                )
            }
            Step::Split {
                round,
                clause,
                term,
                name,
                halves,
            } => {
                write!(f, "round {round}: split {clause} at t = {term}, named {name}")?;
                for (h, side) in halves.iter() {
                    write!(f, "\n  side {side:?}: {h}  [{}]", h.provenance)?;
                }
                Ok(())
            }
        }
    }
}

/// A verified entailment `A /\ B /\ K |= goal`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub goal: Atom,
    pub trace: Vec<Firing>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterpolationResult {
    /// The interpolant over the original signature.
    pub term: Term,
    /// The same term before unfolding fresh names.
    pub separating: Term,
    /// Each fresh name occurring in the separating term, with what it denotes.
    pub names: BTreeMap<Ident, Term>,
    /// `a <= term` and `term <= b`, empty when verification is off.
    pub certificates: Vec<Certificate>,
    pub sharing: SharingMap,
    pub steps: Vec<Step>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InterpOptions {
    pub mode: SharingMode,
    pub verify: bool,
}

impl Default for InterpOptions {
    fn default() -> Self {
        InterpOptions {
            mode: SharingMode::Theta,
            verify: true,
        }
    }
}

/// Interpolates with Θ-sharing and verification.
pub fn interpolate(problem: &Problem) -> Result<InterpolationResult> {
    interpolate_with(problem, InterpOptions::default())
}

pub fn interpolate_with(problem: &Problem, opts: InterpOptions) -> Result<InterpolationResult> {
    let (a, b) = match &problem.goal {
        Atom::Leq(a, b) => (a.clone(), b.clone()),
        Atom::Eq(..) => return Err(Error::usage("interpolation goal must be `a <= b`")),
    };
    let sharing = problem_sharing(problem, opts.mode);
    let mut colors = default_coloring(&problem.a, &problem.b, &problem.goal);
    for (sym, color) in colors.iter_mut() {
        if sym.kind == SymbolKind::Function {
            *color = sharing.function_color(&sym.name);
        }
    }
    let uses = |t: &Term, c: Color| t.symbols().iter().any(|s| colors.get(s) == Some(&c));
    let a_to_b = !uses(&a, Color::BLocal) && !uses(&b, Color::ALocal);
    let b_to_a = !uses(&a, Color::ALocal) && !uses(&b, Color::BLocal);
    if !a_to_b && !b_to_a {
        return Err(Error::usage(format!(
            "goal {} must go from one side's vocabulary to the other's",
            problem.goal
        )));
    }
    let pp = reduce_colored(problem, colors)?;
    let check = decide(&pp);
    if !check.entailed {
        return Err(Error::NotEntailed(problem.goal.to_string()));
    }
    if check.outcome == Outcome::Inconsistent {
        return Err(Error::NoSharedWitness { lhs: a, rhs: b });
    }

    let mut sep = Separator::new(&pp, &sharing);
    sep.run()?;
    let (ga, gb) = match &pp.goal {
        Atom::Leq(x, y) => (x.clone(), y.clone()),
        Atom::Eq(..) => unreachable!("checked above"),
    };
    let side = match sep.term_color(&ga) {
        Some(c) => Side::of(c),
        None => Side::A,
    };
    let candidates = sep.candidates();
    let separating = intermediate_term(sep.side(side), &sep.all, &ga, &gb, &candidates).map_err(|e| match e {
        Error::NoSharedWitness { .. } => Error::NoSharedWitness {
            lhs: a.clone(),
            rhs: b.clone(),
        },
        other => other,
    })?;
    let term = sep.unfold(&separating)?;
    let mut names = BTreeMap::new();
    for c in separating.constants() {
        if !sharing.shared_constants.contains(&c) {
            names.insert(c.clone(), sep.unfold(&Term::Const(c))?);
        }
    }

    let steps = std::mem::take(&mut sep.steps);
    drop(sep);
    let mut certificates = Vec::new();
    if opts.verify {
        if !sharing.admits(&term) {
            return Err(Error::VerificationFailed(format!(
                "{term} is not over the shared signature"
            )));
        }
        for goal in [Atom::leq(a.clone(), term.clone()), Atom::leq(term.clone(), b.clone())] {
            let d = decide(&crate::locality::reduce(&problem.with_goal(goal.clone()))?);
            if !d.entailed {
                return Err(Error::VerificationFailed(format!("{goal} is not entailed")));
            }
            certificates.push(Certificate { goal, trace: d.trace });
        }
    }
    Ok(InterpolationResult {
        term,
        separating,
        names,
        certificates,
        sharing,
        steps,
    })
}

struct Separator<'a> {
    pp: &'a PurifiedProblem,
    sharing: &'a SharingMap,
    named: BTreeMap<Ident, crate::locality::FlatTerm>,
    side_a: Vec<Atom>,
    side_b: Vec<Atom>,
    all: Vec<Atom>,
    state: Entailer,
    /// Fresh shared names introduced by splits: name -> (f, t).
    sep_names: BTreeMap<Ident, (Ident, Term)>,
    sep_lookup: BTreeMap<(Ident, Term), Ident>,
    namer: Namer,
    steps: Vec<Step>,
}

impl<'a> Separator<'a> {
    fn new(pp: &'a PurifiedProblem, sharing: &'a SharingMap) -> Self {
        let mut namer = Namer::default();
        for s in pp.colors.keys() {
            namer.reserve(&s.name);
        }
        let all: Vec<Atom> = pp.a0.iter().chain(&pp.b0).cloned().collect();
        Separator {
            pp,
            sharing,
            named: pp.named_terms(),
            side_a: pp.a0.clone(),
            side_b: pp.b0.clone(),
            state: Entailer::new(&all),
            all,
            sep_names: BTreeMap::new(),
            sep_lookup: BTreeMap::new(),
            namer,
            steps: Vec::new(),
        }
    }

    fn side(&self, s: Side) -> &[Atom] {
        match s {
            Side::A => &self.side_a,
            Side::B => &self.side_b,
        }
    }

    fn color(&self, c: &Ident) -> Color {
        if self.sep_names.contains_key(c) {
            Color::Shared
        } else {
            self.pp.color(c)
        }
    }

    fn term_color(&self, t: &Term) -> Option<Color> {
        t.constants()
            .iter()
            .try_fold(Color::Shared, |acc, c| acc.join(self.color(c)))
    }

    fn candidates(&self) -> BTreeSet<Term> {
        self.pp
            .colors
            .iter()
            .filter(|(s, c)| s.kind == SymbolKind::Constant && **c == Color::Shared)
            .map(|(s, _)| Term::Const(s.name.clone()))
            .chain(self.sep_names.keys().map(|n| Term::Const(n.clone())))
            .collect()
    }

    fn derive(&mut self, atom: &Atom, side: Side) {
        match side {
            Side::A => self.side_a.push(atom.clone()),
            Side::B => self.side_b.push(atom.clone()),
        }
        self.all.push(atom.clone());
        self.state.add(atom);
    }

    fn run(&mut self) -> Result<()> {
        let instances = &self.pp.instances;
        let negatives: Vec<&Atom> = self.pp.negatives().collect();
        let mut fired = vec![false; instances.len()];
        for round in 1.. {
            if stop_reason(&mut self.state, &self.pp.goal, &negatives).is_some() {
                return Ok(());
            }
            let ready: Vec<usize> = (0..instances.len())
                .filter(|&i| !fired[i] && instances[i].premises.iter().all(|p| self.state.holds(p)))
                .collect();
            if ready.is_empty() {
                return Err(Error::Internal("separation reached a fixpoint before the goal".into()));
            }
            for i in ready {
                fired[i] = true;
                self.fire(round, &instances[i])?;
            }
        }
        unreachable!()
    }

    fn fire(&mut self, round: usize, clause: &GroundHornClause) -> Result<()> {
        let colors: BTreeSet<Color> = clause
            .constants()
            .iter()
            .map(|c| self.color(c))
            .filter(|&c| c != Color::Shared)
            .collect();
        if colors.len() < 2 {
            let side = colors.first().map_or(Side::A, |&c| Side::of(c));
            self.derive(&clause.conclusion, side);
            self.steps.push(Step::Fired {
                round,
                clause: clause.clone(),
                side,
            });
            return Ok(());
        }
        let step = self.split(round, clause)?;
        if let Step::Split { halves, .. } = &step {
            for (h, side) in halves.iter() {
                self.derive(&h.conclusion, *side);
            }
        }
        self.steps.push(step);
        Ok(())
    }

    fn split(&mut self, round: usize, clause: &GroundHornClause) -> Result<Step> {
        let not_sep = |why: &str| Error::NotSeparable(format!("{clause}: {why}"));
        let [premise] = clause.premises.as_slice() else {
            return Err(not_sep("mixed clause without a single premise"));
        };
        let (Atom::Leq(c, d), Atom::Leq(l, r)) = (premise, &clause.conclusion) else {
            return Err(not_sep("unexpected atom shape"));
        };
        let group = |x: &Term, y: &Term| -> Option<Color> { self.term_color(x)?.join(self.term_color(y)?) };
        let (Some(cx), Some(cy)) = (group(c, l), group(d, r)) else {
            return Err(not_sep("a side of the clause mixes A and B symbols"));
        };
        if cx == Color::Shared || cy == Color::Shared || cx == cy {
            return Err(not_sep("cannot attribute the clause halves to sides"));
        }
        let (sx, sy) = (Side::of(cx), Side::of(cy));
        let func = l
            .as_const()
            .and_then(|n| self.named.get(n))
            .map(|ft| ft.func.clone())
            .ok_or_else(|| not_sep("conclusion is not a named application"))?;
        if !self.sharing.shared_functions.contains(&func) {
            return Err(not_sep(&format!("function `{func}` is not shared")));
        }
        let t = intermediate_term(self.side(sx), &self.all, c, d, &self.candidates()).map_err(|e| match e {
            Error::NoSharedWitness { .. } => not_sep("premise has no shared intermediate term"),
            other => other,
        })?;
        let u = self.name_for(&func, &t);
        let uterm = Term::Const(u.clone());
        let first = GroundHornClause {
            premises: vec![Atom::leq(c.clone(), t.clone())],
            conclusion: Atom::leq(l.clone(), uterm.clone()),
            provenance: Provenance::Mon {
                func: func.clone(),
                x: c.clone(),
                y: t.clone(),
            },
        };
        let second_prov = match &clause.provenance {
            Provenance::Mon { func, y, .. } => Provenance::Mon {
                func: func.clone(),
                x: t.clone(),
                y: y.clone(),
            },
            Provenance::Composition { axiom, x, .. } => Provenance::Composition {
                axiom: *axiom,
                x: x.clone(),
                y: t.clone(),
            },
            Provenance::Inclusion { .. } => return Err(not_sep("inclusion instance has no premise")),
        };
        let second = GroundHornClause {
            premises: vec![Atom::leq(t.clone(), d.clone())],
            conclusion: Atom::leq(uterm, r.clone()),
            provenance: second_prov,
        };
        let halves_entail = entails_atom(
            &[
                Atom::leq(c.clone(), t.clone()),
                Atom::leq(t.clone(), d.clone()),
                first.conclusion.clone(),
                second.conclusion.clone(),
            ],
            &clause.conclusion,
        );
        if !halves_entail {
            return Err(Error::Internal(format!("split of {clause} loses its conclusion")));
        }
        Ok(Step::Split {
            round,
            clause: clause.clone(),
            term: t,
            name: u,
            halves: Box::new([(first, sx), (second, sy)]),
        })
    }

    /// A shared name for `f(t)`: an existing purification name, an earlier
    /// separation name, or a fresh one.
    fn name_for(&mut self, f: &Ident, t: &Term) -> Ident {
        if let Term::Const(tc) = t {
            if let Some(n) = self.pp.name_of(f, tc) {
                if self.pp.color(n) == Color::Shared {
                    return n.clone();
                }
            }
        }
        let key = (f.clone(), t.clone());
        if let Some(n) = self.sep_lookup.get(&key) {
            return n.clone();
        }
        let parts: Vec<String> = t.constants().iter().map(|c| c.to_string()).collect();
        let n = self.namer.fresh(&format!("{f}_{}", parts.join("_")));
        self.sep_names.insert(n.clone(), key.clone());
        self.sep_lookup.insert(key, n.clone());
        n
    }

    /// Replaces every fresh name in `t` by the term it denotes.
    fn unfold(&self, t: &Term) -> Result<Term> {
        self.unfold_depth(t, 0)
    }

    fn unfold_depth(&self, t: &Term, depth: usize) -> Result<Term> {
        if depth > self.sep_names.len() + self.named.len() + self.pp.bindings.len() + 1 {
            return Err(Error::Internal(format!("cyclic name definitions at {t}")));
        }
        let mut err = None;
        let out = t.map_consts(&mut |c| {
            let r = if let Some((f, arg)) = self.sep_names.get(c) {
                self.unfold_depth(arg, depth + 1).map(|a| Term::app(f.clone(), a))
            } else if let Some(ft) = self.named.get(c) {
                self.unfold_depth(&Term::Const(ft.arg.clone()), depth + 1)
                    .map(|a| Term::app(ft.func.clone(), a))
            } else if let Some(b) = self.pp.bindings.get(c) {
                self.unfold_depth(b, depth + 1)
            } else {
                Ok(Term::Const(c.clone()))
            };
            r.unwrap_or_else(|e| {
                err.get_or_insert(e);
                Term::Const(c.clone())
            })
        });
        match err {
            Some(e) => Err(e),
            None => Ok(out),
        }
    }
}

/// Replaces names by the terms they denote. `names` maps a name to a term
/// that may itself mention names.
pub fn unfold(t: &Term, names: &BTreeMap<Ident, Term>) -> Result<Term> {
    fn go(t: &Term, names: &BTreeMap<Ident, Term>, stack: &mut Vec<Ident>) -> Result<Term> {
        let mut err = None;
        let out = t.map_consts(&mut |c| match names.get(c) {
            None => Term::Const(c.clone()),
            Some(_) if stack.contains(c) => {
                err.get_or_insert(Error::Internal(format!("cyclic definition of `{c}`")));
                Term::Const(c.clone())
            }
            Some(def) => {
                stack.push(c.clone());
                let r = go(def, names, stack);
                stack.pop();
                r.unwrap_or_else(|e| {
                    err.get_or_insert(e);
                    Term::Const(c.clone())
                })
            }
        });
        match err {
            Some(e) => Err(e),
            None => Ok(out),
        }
    }
    go(t, names, &mut Vec::new())
}

/// Symbols of the interpolant that are not shared, if any.
pub fn signature_violations(t: &Term, sharing: &SharingMap) -> Vec<Symbol> {
    t.symbols()
        .into_iter()
        .filter(|s| match s.kind {
            SymbolKind::Constant => !sharing.shared_constants.contains(&s.name),
            SymbolKind::Function => !sharing.shared_functions.contains(&s.name),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::locality::{Axiom, AxiomSet};
    use crate::slp::parse_slp;
    use crate::terms::mk_meet;

    fn c(n: &str) -> Term {
        Term::constant(n)
    }

    fn ids(names: &[&str]) -> BTreeSet<Ident> {
        names.iter().map(|&n| Ident::from(n)).collect()
    }

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
    fn theta_examples() {
        let k = AxiomSet::new(ids(&["f", "g"]))
            .with(Axiom::Composition {
                f: "f".into(),
                g: "g".into(),
                h: "g".into(),
            })
            .unwrap();
        let m = theta_sharing(&k, &ids(&["g"]), &ids(&["f"]));
        assert_eq!(m.shared_functions, ids(&["f", "g"]));

        let m = theta_sharing(
            &AxiomSet::new(ids(&["f", "g", "h"])),
            &ids(&["f", "g"]),
            &ids(&["g", "h"]),
        );
        assert_eq!(m.shared_functions, ids(&["g"]));

        let k = AxiomSet::new(ids(&["po", "hl", "ao"]))
            .with(Axiom::Composition {
                f: "po".into(),
                g: "po".into(),
                h: "po".into(),
            })
            .unwrap()
            .with(Axiom::Composition {
                f: "hl".into(),
                g: "po".into(),
                h: "hl".into(),
            })
            .unwrap();
        let m = theta_sharing(&k, &ids(&["po", "hl", "ao"]), &ids(&["po", "hl"]));
        assert_eq!(m.classes, vec![ids(&["ao"]), ids(&["hl", "po"])]);
        assert_eq!(m.shared_functions, ids(&["hl", "po"]));
    }

    #[test]
    fn slo_interpolant() {
        let p = parse_slp(SLO).unwrap();
        let r = interpolate(&p).unwrap();
        assert_eq!(r.term, mk_meet(vec![c("d"), Term::app("f", c("d"))]).unwrap());
        assert_eq!(r.separating, mk_meet(vec![c("d"), c("f_d")]).unwrap());
        let split = r
            .steps
            .iter()
            .find_map(|s| match s {
                Step::Split { term, halves, .. } => Some((term.clone(), halves.clone())),
                _ => None,
            })
            .unwrap();
        assert_eq!(split.0, c("d"));
        assert_eq!(split.1[0].0.to_string(), "b <= d -> f_b <= f_d");
        assert_eq!(split.1[0].1, Side::B);
        assert_eq!(split.1[1].0.to_string(), "d <= g_a -> f_d <= g_a");
        assert_eq!(split.1[1].1, Side::A);
        assert_eq!(r.certificates.len(), 2);
    }

    #[test]
    fn shared_lhs_already_below() {
        let p = parse_slp("side A\na <= b\nside B\na <= z\ngoal a <= b").unwrap();
        let r = interpolate(&p).unwrap();
        assert_eq!(r.term, c("a"));
    }

    #[test]
    fn not_entailed_and_inconsistent() {
        let p = parse_slp("side A\na <= c\nside B\nc <= b\ngoal b <= a").unwrap();
        assert!(matches!(interpolate(&p), Err(Error::NotEntailed(_))));
        let p = parse_slp("side A\na <= c\n! a <= c\nside B\nc <= b\ngoal b <= a").unwrap();
        assert!(matches!(interpolate(&p), Err(Error::NoSharedWitness { .. })));
    }

    #[test]
    fn unfold_examples() {
        let names = BTreeMap::from([(Ident::from("d1"), Term::app("f", c("d")))]);
        let t = mk_meet(vec![c("d"), c("d1")]).unwrap();
        assert_eq!(unfold(&t, &names).unwrap().to_string(), "d & f(d)");
        assert_eq!(unfold(&c("x"), &names).unwrap(), c("x"));
        let names = BTreeMap::from([(Ident::from("hl_V"), Term::app("hl", c("V")))]);
        let t = mk_meet(vec![c("D"), c("hl_V")]).unwrap();
        assert_eq!(unfold(&t, &names).unwrap().to_string(), "D & hl(V)");
        let cyc = BTreeMap::from([(Ident::from("x"), Term::app("f", c("x")))]);
        assert!(matches!(unfold(&c("x"), &cyc), Err(Error::Internal(_))));
    }
}
