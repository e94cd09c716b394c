//! `semilat`: entailment, interpolation, justification and definability
//! checks for semilattice and EL+ problems.

mod report;

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use semilat::beth::{explicit_definition, is_implicitly_defined, refute_definitions, Definition, DEFAULT_TERM_CAP};
use semilat::el::{self, ElOptions, ElProblem};
use semilat::interp::{interpolate_with, InterpOptions, SharingMode};
use semilat::locality::{decide, minimize_axioms, reduce, Item, Outcome, Problem};
use semilat::slat::parse_model;
use semilat::slp::parse_slp;
use semilat::terms::{Ident, Symbol, Term};
use semilat::Error;

use report::{CertificateReport, CheckLine, ErrorKind, LabeledAxiom, ModelRefutation, Report, Trace};

#[derive(Parser)]
#[command(
    name = "semilat",
    version,
    about = "Reasoning in semilattices with monotone operators and EL+"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the goal follows.
    Check(Common),
    /// Compute a term over the shared symbols between the goal sides.
    Interpolate {
        #[command(flatten)]
        common: Common,
        /// Restrict EL problems to a justification first.
        #[arg(long)]
        prepass: bool,
        #[arg(long, value_enum, default_value_t = Sharing::Theta)]
        sharing: Sharing,
    },
    /// List a minimal set of axioms that still entails the goal.
    Justify(Common),
    /// Check whether a constant is definable over a subsignature.
    Beth {
        #[command(flatten)]
        common: Common,
        /// Subsignature, as names separated by commas or spaces.
        #[arg(long)]
        sigma: String,
        /// Constant to define; defaults to the left side of the goal.
        #[arg(long)]
        target: Option<String>,
        /// Finite model used to refute definitions when none is found.
        #[arg(long)]
        model: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Sharing::Theta)]
        sharing: Sharing,
    },
    /// Check the semilattice laws and axioms in a finite model.
    ModelCheck(Common),
}

#[derive(Args)]
struct Common {
    input: PathBuf,
    /// Input format; inferred from the extension by default.
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long, value_enum, default_value_t = Output::Text)]
    output: Output,
    /// Skip re-checking interpolants.
    #[arg(long)]
    no_verify: bool,
    /// Print the forward-chaining trace.
    #[arg(long)]
    trace: bool,
    /// Depth bound for term enumeration.
    #[arg(long, default_value_t = semilat::beth::DEFAULT_DEPTH)]
    depth: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Slp,
    Elp,
    Model,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Sharing {
    Theta,
    Intersection,
}

impl From<Sharing> for SharingMode {
    fn from(s: Sharing) -> Self {
        match s {
            Sharing::Theta => SharingMode::Theta,
            Sharing::Intersection => SharingMode::Intersection,
        }
    }
}

/// A failure together with the exit code class it maps to.
struct Failure {
    kind: ErrorKind,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            kind: if e.is_input_error() {
                ErrorKind::Input
            } else {
                ErrorKind::Engine
            },
            message: e.to_string(),
        }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure {
        kind: ErrorKind::Input,
        message: message.into(),
    }
}

enum Input {
    Slp(Problem),
    Elp(ElProblem),
    Model(semilat::slat::ModelFile),
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| input_error(format!("cannot read input: {e}")))
}

fn load(c: &Common) -> Result<Input, Failure> {
    let format = match c.format {
        Some(f) => f,
        None => match c.input.extension().and_then(|e| e.to_str()) {
            Some("slp") => Format::Slp,
            Some("elp") => Format::Elp,
            Some("model") => Format::Model,
            _ => return Err(input_error("cannot infer the input format; pass --format")),
        },
    };
    let src = read(&c.input)?;
    Ok(match format {
        Format::Slp => Input::Slp(parse_slp(&src)?),
        Format::Elp => Input::Elp(el::parse_elp(&src)?),
        Format::Model => Input::Model(parse_model(&src)?),
    })
}

fn wrong_format(command: &str) -> Failure {
    input_error(format!("`{command}` does not accept this input format"))
}

fn trace_of(p: &Problem) -> Result<(bool, Trace), Failure> {
    let d = decide(&reduce(p)?);
    let outcome = match d.outcome {
        Outcome::GoalEntailed => "goal entailed",
        Outcome::Inconsistent => "premises inconsistent",
        Outcome::Fixpoint => "fixpoint",
    };
    let firings = d.trace.iter().map(|f| f.to_string()).collect();
    Ok((
        d.entailed,
        Trace {
            outcome: outcome.to_string(),
            firings,
        },
    ))
}

fn check(c: &Common) -> Result<Report, Failure> {
    let problem = match load(c)? {
        Input::Slp(p) => p,
        Input::Elp(p) => el::translate(&p)?.problem,
        Input::Model(_) => return Err(wrong_format("check")),
    };
    let (entailed, trace) = trace_of(&problem)?;
    Ok(Report::Check {
        entailed,
        trace: c.trace.then_some(trace),
    })
}

fn interpolate(c: &Common, prepass: bool, sharing: Sharing) -> Result<Report, Failure> {
    let opts = InterpOptions {
        mode: sharing.into(),
        verify: !c.no_verify,
    };
    let count =
        |r: &semilat::interp::InterpolationResult| r.certificates.iter().map(|c| c.trace.len()).collect::<Vec<_>>();
    let (rendered, goals, firings, steps) = match load(c)? {
        Input::Slp(p) => {
            if !p.entails()? {
                return Ok(not_entailed());
            }
            let r = interpolate_with(&p, opts)?;
            let goals = r.certificates.iter().map(|c| c.goal.to_string()).collect();
            (r.term.to_string(), goals, count(&r), r.steps)
        }
        Input::Elp(p) => {
            if !el::el_subsumes(&p)? {
                return Ok(not_entailed());
            }
            let r = el::el_interpolate_with(&p, ElOptions { interp: opts, prepass })?;
            let t = &r.concept;
            let goals = if opts.verify {
                vec![format!("{} <= {t}", p.goal.lhs), format!("{t} <= {}", p.goal.rhs)]
            } else {
                Vec::new()
            };
            (t.to_string(), goals, count(&r.result), r.result.steps)
        }
        Input::Model(_) => return Err(wrong_format("interpolate")),
    };
    let certificates = goals
        .into_iter()
        .zip(firings)
        .map(|(goal, firings)| CertificateReport { goal, firings })
        .collect();
    Ok(Report::Interpolate {
        entailed: true,
        interpolant: Some(rendered),
        certificates,
        steps: c.trace.then(|| steps.iter().map(|s| s.to_string()).collect()),
    })
}

fn not_entailed() -> Report {
    Report::Interpolate {
        entailed: false,
        interpolant: None,
        certificates: Vec::new(),
        steps: None,
    }
}

fn justify(c: &Common) -> Result<Report, Failure> {
    let (entailed, axioms) = match load(c)? {
        Input::Slp(p) => {
            if !p.entails()? {
                (false, Vec::new())
            } else {
                let items = minimize_axioms(&p)?;
                let describe = |i: Item| match i {
                    Item::A(k) => p.a[k].to_string(),
                    Item::B(k) => p.b[k].to_string(),
                    Item::K(k) => p.axioms.axioms[k].to_string(),
                };
                let axioms = items
                    .into_iter()
                    .map(|i| LabeledAxiom {
                        label: i.to_string(),
                        axiom: describe(i),
                    })
                    .collect();
                (true, axioms)
            }
        }
        Input::Elp(p) => {
            if !el::el_subsumes(&p)? {
                (false, Vec::new())
            } else {
                let axioms = el::justify(&p)?
                    .into_iter()
                    .map(|i| LabeledAxiom {
                        label: i.to_string(),
                        axiom: p.describe(i),
                    })
                    .collect();
                (true, axioms)
            }
        }
        Input::Model(_) => return Err(wrong_format("justify")),
    };
    Ok(Report::Justify { entailed, axioms })
}

fn beth(
    c: &Common,
    sigma: &str,
    target: Option<&str>,
    model: Option<&Path>,
    sharing: Sharing,
) -> Result<Report, Failure> {
    let Input::Slp(p) = load(c)? else {
        return Err(wrong_format("beth"));
    };
    let target = match target {
        Some(t) => Ident::new(t)?,
        None => match p.goal.sides().0 {
            Term::Const(t) => t.clone(),
            _ => return Err(input_error("goal left side is not a constant; pass --target")),
        },
    };
    let mut sigma_s = BTreeSet::new();
    for name in sigma.split([',', ' ']).filter(|s| !s.is_empty()) {
        let id = Ident::new(name)?;
        sigma_s.insert(if p.axioms.functions.contains(&id) {
            Symbol::function(id)
        } else {
            Symbol::constant(id)
        });
    }
    let implicit = is_implicitly_defined(&p.a, &p.axioms, &sigma_s, &target)?;
    let (definition, failure) = if implicit {
        match explicit_definition(&p.a, &p.axioms, &sigma_s, &target, sharing.into())? {
            Definition::Found(t) => (Some(t.to_string()), None),
            Definition::Failure { reason } => (None, Some(reason)),
        }
    } else {
        (None, Some("not implicitly defined".to_string()))
    };
    let model = match (model, &definition) {
        (Some(path), None) => {
            let m = parse_model(&read(path)?)?.model;
            let r = refute_definitions(&m, &sigma_s, &target, c.depth, DEFAULT_TERM_CAP)?;
            Some(ModelRefutation {
                depth: r.depth,
                terms: r.terms,
                complete: r.complete,
                values: r.values.iter().map(|v| v.to_string()).collect(),
                witness: r.witness.map(|w| w.to_string()),
            })
        }
        _ => None,
    };
    Ok(Report::Beth {
        target: target.to_string(),
        sigma: sigma_s.iter().map(|s| s.name.to_string()).collect(),
        implicit,
        definition,
        failure,
        model,
    })
}

fn model_check(c: &Common) -> Result<Report, Failure> {
    let Input::Model(m) = load(c)? else {
        return Err(wrong_format("model-check"));
    };
    let report = m.check()?;
    Ok(Report::ModelCheck {
        passed: report.all_passed(),
        checks: report
            .checks
            .into_iter()
            .map(|c| CheckLine {
                name: c.name,
                passed: c.passed,
                detail: c.detail,
            })
            .collect(),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (common, result) = match &cli.command {
        Command::Check(c) => (c, check(c)),
        Command::Interpolate {
            common,
            prepass,
            sharing,
        } => (common, interpolate(common, *prepass, *sharing)),
        Command::Justify(c) => (c, justify(c)),
        Command::Beth {
            common,
            sigma,
            target,
            model,
            sharing,
        } => (
            common,
            beth(common, sigma, target.as_deref(), model.as_deref(), *sharing),
        ),
        Command::ModelCheck(c) => (c, model_check(c)),
    };
    let report = result.unwrap_or_else(|f| Report::Error {
        kind: f.kind,
        message: f.message,
    });
    match (common.output, &report) {
        (Output::Json, _) => print!("{}", report.json()),
        (Output::Text, Report::Error { .. }) => eprint!("{}", report.text()),
        (Output::Text, _) => print!("{}", report.text()),
    }
    ExitCode::from(report.exit_code())
}
