//! Command results and their text and JSON renderings.

use std::fmt::Write as _;

use serde::Serialize;

#[derive(Debug, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Report {
    Check {
        entailed: bool,
        #[serde(skip_serializing_if = "Option::is_none")]
        trace: Option<Trace>,
    },
    Interpolate {
        entailed: bool,
        #[serde(skip_serializing_if = "Option::is_none")]
        interpolant: Option<String>,
        certificates: Vec<CertificateReport>,
        #[serde(skip_serializing_if = "Option::is_none")]
        steps: Option<Vec<String>>,
    },
    Justify {
        entailed: bool,
        axioms: Vec<LabeledAxiom>,
    },
    Beth {
        target: String,
        sigma: Vec<String>,
        implicit: bool,
        definition: Option<String>,
        failure: Option<String>,
        #[serde(skip_serializing_if = "Option::is_none")]
        model: Option<ModelRefutation>,
    },
    ModelCheck {
        passed: bool,
        checks: Vec<CheckLine>,
    },
    Error {
        kind: ErrorKind,
        message: String,
    },
}

#[derive(Debug, Serialize)]
pub struct Trace {
    pub outcome: String,
    pub firings: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct CertificateReport {
    pub goal: String,
    pub firings: usize,
}

#[derive(Debug, Serialize)]
pub struct LabeledAxiom {
    pub label: String,
    pub axiom: String,
}

#[derive(Debug, Serialize)]
pub struct ModelRefutation {
    pub depth: usize,
    pub terms: usize,
    pub complete: bool,
    pub values: Vec<String>,
    pub witness: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct CheckLine {
    pub name: String,
    pub passed: bool,
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Copy, Serialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum ErrorKind {
    Input,
    Engine,
}

impl Report {
    /// 0 for a positive answer, 1 for a negative one, 2 and 3 for errors.
    pub fn exit_code(&self) -> u8 {
        let positive = match self {
            Report::Check { entailed, .. } | Report::Justify { entailed, .. } => *entailed,
            Report::Interpolate { interpolant, .. } => interpolant.is_some(),
            Report::Beth { definition, .. } => definition.is_some(),
            Report::ModelCheck { passed, .. } => *passed,
            Report::Error { kind, .. } => {
                return match kind {
                    ErrorKind::Input => 2,
                    ErrorKind::Engine => 3,
                }
            }
        };
        if positive {
            0
        } else {
            1
        }
    }

    pub fn json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        let verdict = |e: bool| if e { "ENTAILED" } else { "NOT-ENTAILED" };
        match self {
            Report::Check { entailed, trace } => {
                writeln!(out, "{}", verdict(*entailed)).unwrap();
                if let Some(t) = trace {
                    for f in &t.firings {
                        writeln!(out, "  {f}").unwrap();
                    }
                    writeln!(out, "  outcome: {}", t.outcome).unwrap();
                }
            }
            Report::Interpolate {
                entailed,
                interpolant,
                certificates,
                steps,
            } => {
                match interpolant {
                    Some(t) => writeln!(out, "{t}").unwrap(),
                    None => writeln!(out, "{}", verdict(*entailed)).unwrap(),
                }
                for c in certificates {
                    writeln!(out, "  verified: {}  ({} firings)", c.goal, c.firings).unwrap();
                }
                for s in steps.iter().flatten() {
                    for line in s.lines() {
                        writeln!(out, "  {line}").unwrap();
                    }
                }
            }
            Report::Justify { entailed, axioms } => {
                if !entailed {
                    writeln!(out, "{}", verdict(false)).unwrap();
                }
                for a in axioms {
                    writeln!(out, "{}: {}", a.label, a.axiom).unwrap();
                }
            }
            Report::Beth {
                target,
                sigma,
                implicit,
                definition,
                failure,
                model,
            } => {
                writeln!(out, "target: {target}").unwrap();
                writeln!(out, "sigma: {}", sigma.join(" ")).unwrap();
                writeln!(out, "implicitly defined: {}", if *implicit { "yes" } else { "no" }).unwrap();
                match (definition, failure) {
                    (Some(d), _) => writeln!(out, "definition: {d}").unwrap(),
                    (None, Some(f)) => writeln!(out, "definition: none ({f})").unwrap(),
                    (None, None) => {}
                }
                if let Some(m) = model {
                    let line = match (&m.witness, m.complete) {
                        (Some(w), _) => format!("{w} takes the value of {target}"),
                        (None, false) => format!("enumeration cap reached at depth {}", m.depth),
                        (None, true) => format!(
                            "{} terms up to depth {} take values {{{}}}, none equal to {target}",
                            m.terms,
                            m.depth,
                            m.values.join(", ")
                        ),
                    };
                    writeln!(out, "model: {line}").unwrap();
                }
            }
            Report::ModelCheck { checks, .. } => {
                for c in checks {
                    match (&c.detail, c.passed) {
                        (_, true) => writeln!(out, "PASS {}", c.name).unwrap(),
                        (Some(d), false) => writeln!(out, "FAIL {}: {d}", c.name).unwrap(),
                        (None, false) => writeln!(out, "FAIL {}", c.name).unwrap(),
                    }
                }
            }
            Report::Error { message, .. } => writeln!(out, "error: {message}").unwrap(),
        }
        out
    }
}
