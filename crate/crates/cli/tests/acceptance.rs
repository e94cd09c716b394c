//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero on any failure.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use semilat::beth::{explicit_definition, is_implicitly_defined, refute_definitions, Definition};
use semilat::el::{el_interpolate, el_subsumes, justify, parse_elp, translate};
use semilat::interp::{interpolate, signature_violations, SharingMode, Step};
use semilat::locality::{decide, flatten_purify, psi_closure, reduce, FlatTerm, FlatTermSet, Problem, Side};
use semilat::slat::{brute_force_entails, entails_atom, intermediate_term, parse_model};
use semilat::slp::parse_slp;
use semilat::terms::{mk_meet, Atom, Ident, Literal, Symbol, Term};
use semilat::{Axiom, AxiomSet};

const CONSTS: [&str; 8] = ["a", "b", "c", "d", "e", "k", "m", "n"];
const FUNCS: [&str; 3] = ["f", "g", "h"];

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || format!("took {elapsed:?}, limit {limit:?}"))
}

fn data(name: &str) -> String {
    std::fs::read_to_string(common::data_dir().join(name)).unwrap()
}

fn e<T: std::fmt::Display>(x: T) -> String {
    x.to_string()
}

fn c(name: &str) -> Term {
    Term::constant(name)
}

fn pure_intermediate_term() -> Outcome {
    let p = parse_slp(&data("chain.slp")).map_err(e)?;
    let a: Vec<Atom> = p.a.iter().map(|l| l.atom.clone()).collect();
    let ab: Vec<Atom> = a.iter().cloned().chain(p.b.iter().map(|l| l.atom.clone())).collect();
    let candidates: BTreeSet<Term> = ["c1", "c2", "c3"].into_iter().map(c).collect();
    let (lhs, rhs) = p.goal.sides();
    let start = Instant::now();
    let t = intermediate_term(&a, &ab, lhs, rhs, &candidates).map_err(e)?;
    let elapsed = start.elapsed();
    ensure(t == c("c1"), || format!("got {t}"))?;
    within(elapsed, Duration::from_millis(10))?;
    Ok(format!("t = {t} in {elapsed:?}"))
}

fn operator_example() -> Outcome {
    let p = parse_slp(&data("slo.slp")).map_err(e)?;
    let start = Instant::now();
    let entailed = decide(&reduce(&p).map_err(e)?).entailed;
    let r = interpolate(&p).map_err(e)?;
    let elapsed = start.elapsed();
    ensure(entailed, || "decide returned false".into())?;
    let want = mk_meet(vec![c("d"), Term::app("f", c("d"))]).map_err(e)?;
    ensure(r.term == want, || format!("interpolant {}", r.term))?;
    let split = r.steps.iter().find_map(|s| match s {
        Step::Split { term, halves, .. } => Some((term, halves)),
        _ => None,
    });
    let (t, halves) = split.ok_or("no split recorded")?;
    ensure(*t == c("d"), || format!("split at {t}"))?;
    let shown = [halves[0].0.to_string(), halves[1].0.to_string()];
    ensure(
        shown == ["b <= d -> f_b <= f_d", "d <= g_a -> f_d <= g_a"] && halves[0].1 == Side::B && halves[1].1 == Side::A,
        || format!("halves {shown:?}"),
    )?;
    ensure(r.certificates.len() == 2, || "missing certificates".into())?;
    for cert in &r.certificates {
        ensure(p.with_goal(cert.goal.clone()).entails().map_err(e)?, || {
            format!("{} fails", cert.goal)
        })?;
    }
    within(elapsed, Duration::from_millis(100))?;
    Ok(format!("{} in {elapsed:?}", r.term))
}

fn medical_ontology() -> Outcome {
    let start = Instant::now();
    let p = parse_elp(&data("omed.elp")).map_err(e)?;
    ensure(el_subsumes(&p).map_err(e)?, || "not entailed".into())?;
    for only in ["omed_A_only.elp", "omed_B_only.elp"] {
        let q = parse_elp(&data(only)).map_err(e)?;
        ensure(!el_subsumes(&q).map_err(e)?, || format!("{only} entails the goal"))?;
    }
    let core = justify(&p).map_err(e)?;
    let labels: Vec<String> = core.iter().map(|i| i.to_string()).collect();
    ensure(
        labels == ["A2", "A4", "A6", "A8", "A9", "A11", "B1", "B4", "R2"],
        || format!("justification {labels:?}"),
    )?;
    let reduced = translate(&p.restrict(&core)).map_err(e)?.problem;
    let (_, g) = flatten_purify(&reduced.a, &reduced.b, &reduced.goal);
    let closed = psi_closure(&g, &reduced.axioms);
    let expected: FlatTermSet = [
        ("part-of", "Endocardium"),
        ("part-of", "HeartWall"),
        ("part-of", "LeftVentricle"),
        ("part-of", "Heart"),
        ("has-location", "Endocardium"),
        ("has-location", "HeartWall"),
        ("has-location", "LeftVentricle"),
        ("has-location", "Heart"),
    ]
    .into_iter()
    .map(|(f, a)| FlatTerm::new(f, a))
    .collect();
    ensure(closed == expected, || format!("closure has {} terms", closed.len()))?;
    let r = el_interpolate(&p).map_err(e)?;
    let shown = r.concept.to_string();
    ensure(shown == "Disease & ex has-location . Ventricle", || {
        format!("interpolant {shown}")
    })?;
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(1))?;
    Ok(format!("{shown} in {elapsed:?}"))
}

fn beth_example() -> Outcome {
    let file = parse_model(&data("four_element.model")).map_err(e)?;
    let report = file.check().map_err(e)?;
    ensure(report.all_passed(), || report.to_string())?;
    let p = parse_slp(&data("beth.slp")).map_err(e)?;
    let sigma = BTreeSet::from([Symbol::function("g"), Symbol::constant("e")]);
    let a = Ident::from("a");
    ensure(is_implicitly_defined(&p.a, &p.axioms, &sigma, &a).map_err(e)?, || {
        "not implicitly defined".into()
    })?;
    let theta = explicit_definition(&p.a, &p.axioms, &sigma, &a, SharingMode::Theta).map_err(e)?;
    let fe = Term::app("f", c("e"));
    ensure(theta == Definition::Found(fe.clone()), || {
        format!("theta sharing gave {theta}")
    })?;
    for goal in [Atom::leq(c("a"), fe.clone()), Atom::leq(fe, c("a"))] {
        let single = Problem::new(p.a.clone(), Vec::new(), p.axioms.clone(), goal.clone());
        ensure(single.entails().map_err(e)?, || format!("{goal} not verified"))?;
    }
    let strict = explicit_definition(&p.a, &p.axioms, &sigma, &a, SharingMode::Intersection).map_err(e)?;
    ensure(matches!(strict, Definition::Failure { .. }), || {
        format!("intersection sharing gave {strict}")
    })?;
    let refutation = refute_definitions(&file.model, &sigma, &a, 3, 100_000).map_err(e)?;
    ensure(refutation.refutes(), || format!("{refutation:?}"))?;
    Ok(format!(
        "f(e) under theta; {} terms up to depth 3 all differ from a",
        refutation.terms
    ))
}

fn random_flat_term(rng: &mut ChaCha8Rng, n: usize) -> Term {
    let k = rng.random_range(1..=3);
    mk_meet((0..k).map(|_| c(CONSTS[rng.random_range(0..n)])).collect()).unwrap()
}

fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    let start = Instant::now();
    let instances = 1000;
    let mut entailed = 0;
    for i in 0..instances {
        let n = rng.random_range(1..=8);
        let len = rng.random_range(0..=12);
        let ctx: Vec<Atom> = (0..len)
            .map(|_| Atom::leq(random_flat_term(&mut rng, n), random_flat_term(&mut rng, n)))
            .collect();
        let goal = Atom::leq(random_flat_term(&mut rng, n), random_flat_term(&mut rng, n));
        let fast = entails_atom(&ctx, &goal);
        let slow = brute_force_entails(&ctx, &goal).map_err(e)?;
        ensure(fast == slow, || format!("instance {i} disagrees on {goal}"))?;
        entailed += usize::from(fast);
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(5))?;
    Ok(format!(
        "{instances} instances ({entailed} entailed), 0 discrepancies in {elapsed:?}"
    ))
}

fn random_term(rng: &mut ChaCha8Rng, n: usize, funcs: usize, depth: usize) -> Term {
    if depth == 0 || rng.random_bool(0.5) {
        return c(CONSTS[rng.random_range(0..n)]);
    }
    if rng.random_bool(0.6) {
        Term::app(FUNCS[rng.random_range(0..funcs)], random_term(rng, n, funcs, depth - 1))
    } else {
        let k = rng.random_range(2..=3);
        mk_meet((0..k).map(|_| random_term(rng, n, funcs, depth - 1)).collect()).unwrap()
    }
}

fn random_axioms(rng: &mut ChaCha8Rng, funcs: usize) -> AxiomSet {
    let mut k = AxiomSet::new(FUNCS[..funcs].iter().map(|f| Ident::from(*f)));
    for _ in 0..rng.random_range(0..=3) {
        let inclusion = rng.random_bool(0.5);
        let mut f = || Ident::from(FUNCS[rng.random_range(0..funcs)]);
        let ax = if inclusion {
            Axiom::Inclusion { f: f(), g: f() }
        } else {
            Axiom::Composition { f: f(), g: f(), h: f() }
        };
        if !k.axioms.contains(&ax) {
            k.add(ax).unwrap();
        }
    }
    k
}

fn random_problem(rng: &mut ChaCha8Rng) -> Problem {
    let n = rng.random_range(2..=6);
    let funcs = rng.random_range(1..=3);
    let side = |rng: &mut ChaCha8Rng| -> Vec<Atom> {
        (0..rng.random_range(1..=5))
            .map(|_| Atom::leq(random_term(rng, n, funcs, 2), random_term(rng, n, funcs, 2)))
            .collect()
    };
    let (a, b) = (side(rng), side(rng));
    let consts = |v: &[Atom]| -> Vec<Ident> {
        let set: BTreeSet<Ident> = v
            .iter()
            .flat_map(|at| {
                let (l, r) = at.sides();
                l.constants().into_iter().chain(r.constants())
            })
            .collect();
        set.into_iter().collect()
    };
    let x = c(consts(&a).choose(rng).unwrap());
    let y = c(consts(&b).choose(rng).unwrap());
    let goal = if rng.random_bool(0.5) {
        Atom::leq(x, y)
    } else {
        Atom::leq(y, x)
    };
    let lits = |v: Vec<Atom>| v.into_iter().map(Literal::pos).collect();
    Problem::new(lits(a), lits(b), random_axioms(rng, funcs), goal)
}

fn random_flat_set(rng: &mut ChaCha8Rng) -> FlatTermSet {
    (0..rng.random_range(0..8))
        .map(|_| FlatTerm::new(FUNCS[rng.random_range(0..3)], CONSTS[rng.random_range(0..5)]))
        .collect()
}

fn property_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    let (mut entailed, mut tried) = (0, 0);
    while entailed < 150 {
        tried += 1;
        ensure(tried <= 50_000, || {
            format!("only {entailed} entailed problems generated")
        })?;
        let p = random_problem(&mut rng);
        let pp = reduce(&p).map_err(e)?;
        let base = decide(&pp).entailed;
        for _ in 0..20 {
            let mut q = pp.clone();
            q.instances.shuffle(&mut rng);
            ensure(decide(&q).entailed == base, || {
                format!("order changed the answer on\n{}", semilat::slp::to_slp(&p))
            })?;
        }
        if !base {
            continue;
        }
        entailed += 1;
        let r = interpolate(&p).map_err(|err| format!("{err} on\n{}", semilat::slp::to_slp(&p)))?;
        let (x, y) = p.goal.sides();
        for goal in [
            Atom::leq(x.clone(), r.term.clone()),
            Atom::leq(r.term.clone(), y.clone()),
        ] {
            ensure(p.with_goal(goal.clone()).entails().map_err(e)?, || {
                format!("{goal} fails")
            })?;
        }
        let bad = signature_violations(&r.term, &r.sharing);
        ensure(bad.is_empty(), || format!("{} uses unshared {bad:?}", r.term))?;
    }
    let sets = 500;
    for _ in 0..sets {
        let k = random_axioms(&mut rng, 3);
        let t1 = random_flat_set(&mut rng);
        let t2: FlatTermSet = t1.union(&random_flat_set(&mut rng)).cloned().collect();
        let c1 = psi_closure(&t1, &k);
        ensure(t1.is_subset(&c1), || "closure not extensive".into())?;
        ensure(c1.is_subset(&psi_closure(&t2, &k)), || "closure not monotone".into())?;
        ensure(psi_closure(&c1, &k) == c1, || "closure not idempotent".into())?;
    }
    Ok(format!(
        "{entailed} entailed of {tried} problems certified, 20 orders each; {sets} closure checks"
    ))
}

fn golden_determinism() -> Outcome {
    let cases = common::cases();
    for case in &cases {
        let (first, code1) = common::run(&case.args);
        let (second, code2) = common::run(&case.args);
        ensure(first == second && code1 == code2, || {
            format!("{} differs between runs", case.name)
        })?;
        ensure(code1 == case.exit, || {
            format!("{} exit {code1}, expected {}", case.name, case.exit)
        })?;
        let want = common::expected(case).ok_or_else(|| format!("{} has no golden file", case.name))?;
        ensure(first == want, || format!("{} differs from its golden file", case.name))?;
    }
    Ok(format!("{} golden cases byte-identical", cases.len()))
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("1 pure semilattice intermediate term", pure_intermediate_term),
        ("2 operator example interpolant", operator_example),
        ("3 medical ontology", medical_ontology),
        ("4 definability example and model", beth_example),
        ("5 oracle equivalence", oracle_equivalence),
        ("6 random property suite", property_suite),
        ("7 golden determinism", golden_determinism),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL {name}: {why}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
