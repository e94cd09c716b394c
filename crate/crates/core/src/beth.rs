//! Beth definability by signature doubling.
//!
//! A constant `a` is implicitly defined by `A` over a subsignature `S` when
//! `A /\ A' |= a = a'`, where `A'` is `A` with every symbol outside `S`
//! replaced by a primed copy. An explicit definition is a term `t` over `S`
//! with `A |= a = t`; it is extracted by interpolating `a <= a'` in the
//! doubled problem and checked afterwards.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::interp::{interpolate_with, InterpOptions, SharingMode};
use crate::locality::{Axiom, AxiomSet, Namer, Problem};
use crate::slat::{eval_term, FiniteModel};
use crate::terms::{literal_symbols, mk_meet, Atom, Ident, Literal, Symbol, SymbolKind, Term};

/// `A` together with its primed copy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubledProblem {
    pub original: Vec<Literal>,
    pub renamed: Vec<Literal>,
    /// `K` together with its primed copy.
    pub axioms: AxiomSet,
    pub sigma_s: BTreeSet<Symbol>,
    pub target: Ident,
    pub target_primed: Ident,
    /// Primed name of every symbol outside `sigma_s`.
    pub renaming: BTreeMap<Symbol, Ident>,
}

impl DoubledProblem {
    pub fn new(a: &[Literal], k: &AxiomSet, sigma_s: &BTreeSet<Symbol>, target: &Ident) -> Result<Self> {
        let symbols = literal_symbols(a);
        if !symbols.contains(&Symbol::constant(target.clone())) {
            return Err(Error::usage(format!("`{target}` does not occur in the literals")));
        }
        let mut namer = Namer::default();
        let functions = k.functions.iter().map(|f| Symbol::function(f.clone()));
        let all: BTreeSet<Symbol> = symbols.iter().cloned().chain(functions).collect();
        for s in all.iter().chain(sigma_s) {
            namer.reserve(&s.name);
        }
        let renaming: BTreeMap<Symbol, Ident> = all
            .iter()
            .filter(|s| !sigma_s.contains(s))
            .map(|s| (s.clone(), namer.fresh(&format!("{}'", s.name))))
            .collect();
        let rename_fn = |f: &Ident| {
            renaming
                .get(&Symbol::function(f.clone()))
                .cloned()
                .unwrap_or_else(|| f.clone())
        };
        let rename_const = |c: &Ident| {
            renaming
                .get(&Symbol::constant(c.clone()))
                .cloned()
                .unwrap_or_else(|| c.clone())
        };
        let renamed: Vec<Literal> = a
            .iter()
            .map(|l| Literal {
                positive: l.positive,
                atom: l.atom.map_terms(|t| t.rename(&rename_const, &rename_fn)),
            })
            .collect();
        let mut axioms = k.clone();
        axioms.functions.extend(k.functions.iter().map(rename_fn));
        for ax in &k.axioms {
            let primed = match ax {
                Axiom::Inclusion { f, g } => Axiom::Inclusion {
                    f: rename_fn(f),
                    g: rename_fn(g),
                },
                Axiom::Composition { f, g, h } => Axiom::Composition {
                    f: rename_fn(f),
                    g: rename_fn(g),
                    h: rename_fn(h),
                },
            };
            if !axioms.axioms.contains(&primed) {
                axioms.add(primed)?;
            }
        }
        Ok(DoubledProblem {
            original: a.to_vec(),
            renamed,
            axioms,
            sigma_s: sigma_s.clone(),
            target: target.clone(),
            target_primed: rename_const(target),
            renaming,
        })
    }

    /// `A` on side A, `A'` on side B.
    pub fn problem(&self, goal: Atom) -> Problem {
        Problem::new(self.original.clone(), self.renamed.clone(), self.axioms.clone(), goal)
    }

    pub fn forward_goal(&self) -> Atom {
        Atom::leq(
            Term::Const(self.target.clone()),
            Term::Const(self.target_primed.clone()),
        )
    }

    pub fn backward_goal(&self) -> Atom {
        Atom::leq(
            Term::Const(self.target_primed.clone()),
            Term::Const(self.target.clone()),
        )
    }

    /// Maps primed symbols back to their originals.
    pub fn unprime(&self, t: &Term) -> Term {
        let back: BTreeMap<(SymbolKind, &Ident), &Ident> =
            self.renaming.iter().map(|(s, p)| ((s.kind, p), &s.name)).collect();
        let get = |kind: SymbolKind, x: &Ident| back.get(&(kind, x)).map_or_else(|| x.clone(), |o| (*o).clone());
        t.rename(&|c| get(SymbolKind::Constant, c), &|f| get(SymbolKind::Function, f))
    }
}

/// Whether `A /\ A' |= target = target'` modulo `K` and its primed copy.
pub fn is_implicitly_defined(a: &[Literal], k: &AxiomSet, sigma_s: &BTreeSet<Symbol>, target: &Ident) -> Result<bool> {
    let d = DoubledProblem::new(a, k, sigma_s, target)?;
    Ok(d.problem(d.forward_goal()).entails()? && d.problem(d.backward_goal()).entails()?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Definition {
    Found(Term),
    Failure { reason: String },
}

impl fmt::Display for Definition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Definition::Found(t) => write!(f, "{t}"),
            Definition::Failure { reason } => write!(f, "no definition: {reason}"),
        }
    }
}

/// Extracts a term `t` with `A |= target = t` from an interpolant of
/// `target <= target'` in the doubled problem.
///
/// Separation and verification failures are reported as
/// [`Definition::Failure`]; other errors propagate.
pub fn explicit_definition(
    a: &[Literal],
    k: &AxiomSet,
    sigma_s: &BTreeSet<Symbol>,
    target: &Ident,
    mode: SharingMode,
) -> Result<Definition> {
    let d = DoubledProblem::new(a, k, sigma_s, target)?;
    let opts = InterpOptions { mode, verify: true };
    let result = match interpolate_with(&d.problem(d.forward_goal()), opts) {
        Ok(r) => r,
        Err(e @ (Error::NotSeparable(_) | Error::NoSharedWitness { .. } | Error::VerificationFailed(_))) => {
            return Ok(Definition::Failure { reason: e.to_string() })
        }
        Err(e) => return Err(e),
    };
    let t = d.unprime(&result.term);
    let single = Problem::new(
        a.to_vec(),
        Vec::new(),
        k.clone(),
        Atom::leq(Term::Const(target.clone()), t.clone()),
    );
    for goal in [single.goal.clone(), Atom::leq(t.clone(), Term::Const(target.clone()))] {
        if !single.with_goal(goal.clone()).entails()? {
            return Ok(Definition::Failure {
                reason: format!("extracted term {t} fails {goal}"),
            });
        }
    }
    Ok(Definition::Found(t))
}

/// Outcome of evaluating every term over a signature up to some depth.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Refutation {
    pub depth: usize,
    /// Number of distinct terms evaluated.
    pub terms: usize,
    /// False if the enumeration stopped at the cap.
    pub complete: bool,
    /// Model elements reached, by carrier name.
    pub values: BTreeSet<Ident>,
    /// A term evaluating to the target element, if any.
    pub witness: Option<Term>,
}

impl Refutation {
    /// Every enumerated term differs from the target in the model.
    pub fn refutes(&self) -> bool {
        self.complete && self.witness.is_none()
    }
}

pub const DEFAULT_DEPTH: usize = 3;
pub const DEFAULT_TERM_CAP: usize = 100_000;

/// All terms over the given symbols of depth at most `depth`, in ACI normal
/// form, or `None` past `cap` terms.
pub fn enumerate_terms(
    constants: &BTreeSet<Ident>,
    functions: &BTreeSet<Ident>,
    depth: usize,
    cap: usize,
) -> Option<BTreeSet<Term>> {
    let base: BTreeSet<Term> = constants.iter().map(|c| Term::Const(c.clone())).collect();
    let mut level = base.clone();
    for _ in 0..depth {
        let mut next = base.clone();
        for t in &level {
            for f in functions {
                next.insert(Term::app(f.clone(), t.clone()));
            }
        }
        // Meets of depth k + 1 are meets of non-meet terms of depth <= k.
        let atoms: Vec<&Term> = level.iter().filter(|t| !matches!(t, Term::Meet(_))).collect();
        if atoms.len() >= usize::BITS as usize - 1 || (1usize << atoms.len()) > cap {
            return None;
        }
        for mask in 1usize..(1 << atoms.len()) {
            if mask.count_ones() >= 2 {
                let parts = atoms
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, t)| (*t).clone())
                    .collect();
                next.insert(mk_meet(parts).expect("nonempty"));
            }
        }
        next.extend(level);
        if next.len() > cap {
            return None;
        }
        level = next;
    }
    Some(level)
}

/// Evaluates every term over `sigma_s` up to `depth` in `model` and looks
/// for one equal to the interpretation of `target`.
pub fn refute_definitions(
    model: &FiniteModel,
    sigma_s: &BTreeSet<Symbol>,
    target: &Ident,
    depth: usize,
    cap: usize,
) -> Result<Refutation> {
    let want = eval_term(model, &Term::Const(target.clone()))?;
    let pick = |kind: SymbolKind| -> BTreeSet<Ident> {
        sigma_s
            .iter()
            .filter(|s| s.kind == kind)
            .map(|s| s.name.clone())
            .collect()
    };
    let Some(terms) = enumerate_terms(&pick(SymbolKind::Constant), &pick(SymbolKind::Function), depth, cap) else {
        return Ok(Refutation {
            depth,
            terms: 0,
            complete: false,
            values: BTreeSet::new(),
            witness: None,
        });
    };
    let mut values = BTreeSet::new();
    let mut witness = None;
    for t in &terms {
        let v = eval_term(model, t)?;
        values.insert(model.carrier[v].clone());
        if v == want && witness.is_none() {
            witness = Some(t.clone());
        }
    }
    Ok(Refutation {
        depth,
        terms: terms.len(),
        complete: true,
        values,
        witness,
    })
}
