//! Execution state shared by every command: the seeded generator, the
//! stages recorded so far and the provenance block.

use leviflat::algebra::gaussian::{format_complex, format_rational};
use leviflat::leviflat::{SampleOptions, SampleTable, Witness};
use leviflat::{Error, Poly};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::input::AnalysisRequest;
use crate::report::{Echo, Failure, NamedText, Provenance, Report, Stage, Status, Tier, Verdict, REPORT_SCHEMA};

pub const GENERATOR: &str = "ChaCha8";

/// A failed stage: the stage name and the error that stopped it.
#[derive(Debug)]
pub struct StageError {
    pub stage: &'static str,
    pub status: Status,
    pub message: String,
}

impl StageError {
    pub fn core(stage: &'static str, e: Error) -> Self {
        StageError {
            stage,
            status: classify(&e),
            message: e.to_string(),
        }
    }

    pub fn input(stage: &'static str, msg: impl Into<String>) -> Self {
        StageError {
            stage,
            status: Status::InputError,
            message: msg.into(),
        }
    }

    pub fn rejected(stage: &'static str, msg: impl Into<String>) -> Self {
        StageError {
            stage,
            status: Status::Rejected,
            message: msg.into(),
        }
    }

    pub fn oracle(stage: &'static str, msg: impl Into<String>) -> Self {
        StageError {
            stage,
            status: Status::OracleDisagreement,
            message: msg.into(),
        }
    }
}

/// Maps a core error to the exit class it belongs to.
pub fn classify(e: &Error) -> Status {
    match e {
        Error::ArityMismatch { .. }
        | Error::UnknownVariable(_)
        | Error::OddRoster(_)
        | Error::DegreeTooSmall { .. }
        | Error::NotHomogeneous
        | Error::DegreeMismatch { .. }
        | Error::Parse { .. }
        | Error::InvalidInput(_)
        | Error::Zero(_)
        | Error::RankDeficientPlane(_) => Status::InputError,
        Error::OracleDisagreement(_)
        | Error::IncompletePointSet { .. }
        | Error::ShearExhausted(_)
        | Error::FieldEscape(_)
        | Error::TruncationTooShort(_) => Status::OracleDisagreement,
        _ => Status::Rejected,
    }
}

/// Extension to tag core results with their stage.
pub trait AtStage<T> {
    fn at(self, stage: &'static str) -> Result<T, StageError>;
}

impl<T> AtStage<T> for leviflat::Result<T> {
    fn at(self, stage: &'static str) -> Result<T, StageError> {
        self.map_err(|e| StageError::core(stage, e))
    }
}

pub struct Run<'a> {
    pub req: &'a AnalysisRequest,
    pub rng: ChaCha8Rng,
    pub stages: Vec<Stage>,
    pub provenance: Provenance,
    /// Set when a verdict (rather than an error) rejects the input.
    pub rejected: bool,
}

impl<'a> Run<'a> {
    pub fn new(req: &'a AnalysisRequest) -> Self {
        let o = &req.options;
        Run {
            req,
            rng: ChaCha8Rng::seed_from_u64(o.seed),
            stages: Vec::new(),
            provenance: Provenance {
                seed: o.seed,
                generator: GENERATOR.to_string(),
                samples: o.samples,
                tol: format_rational(&o.tol),
                truncation: o.truncation,
                shears: Vec::new(),
                truncations: Vec::new(),
                sample_lines: 0,
            },
            rejected: false,
        }
    }

    pub fn sample_options(&self) -> SampleOptions {
        SampleOptions {
            samples: self.req.options.samples,
            tol: self.req.options.tol.clone(),
        }
    }

    pub fn push(&mut self, stage: &str, verdict: Verdict, tier: Option<Tier>, evidence: Value) {
        self.stages.push(Stage {
            stage: stage.to_string(),
            verdict,
            tier,
            evidence,
        });
    }

    pub fn finish(self, outcome: Result<(), StageError>) -> Report {
        let (status, failure) = match outcome {
            Ok(()) if self.rejected => (Status::Rejected, None),
            Ok(()) => (Status::Completed, None),
            Err(e) => (
                e.status,
                Some(Failure {
                    stage: e.stage.to_string(),
                    message: e.message,
                }),
            ),
        };
        Report {
            schema: REPORT_SCHEMA,
            name: self.req.name.clone(),
            command: self.req.command.as_str().to_string(),
            status,
            echo: echo(self.req),
            stages: self.stages,
            failure,
            provenance: self.provenance,
        }
    }
}

fn echo(req: &AnalysisRequest) -> Echo {
    Echo {
        variables: req.variables.clone(),
        conjugate_pairs: req.conjugate_pairs.iter().map(|(a, b)| [a.clone(), b.clone()]).collect(),
        real_pairs: req.real_pairs.iter().map(|(a, b)| [a.clone(), b.clone()]).collect(),
        polynomials: req
            .polynomials
            .iter()
            .map(|(k, p)| NamedText {
                name: k.clone(),
                text: text(p),
            })
            .collect(),
        points: req
            .points
            .iter()
            .map(|(k, v)| NamedText {
                name: k.clone(),
                text: format!("({})", v.iter().map(format_complex).collect::<Vec<_>>().join(", ")),
            })
            .collect(),
        matrix: req
            .matrix
            .as_ref()
            .map(|m| m.iter().map(|r| r.iter().map(format_rational).collect()).collect()),
    }
}

/// Canonical text of a polynomial, with its roster.
pub fn text(p: &Poly) -> String {
    format!("{p}  on ({})", p.vars().join(", "))
}

pub fn texts(ps: &[Poly]) -> Vec<String> {
    ps.iter().map(|p| p.to_string()).collect()
}

pub fn table_json(t: &SampleTable) -> Value {
    json!({
        "points": t.points,
        "lines_tried": t.lines_tried,
        "singular_skipped": t.singular_skipped,
        "max_upper_bound": format_rational(&t.max_upper),
        "tol": format_rational(&t.tol),
    })
}

pub fn witness_json(w: &Witness) -> Value {
    json!({
        "line": w.line,
        "point": w.point.iter().map(format_complex).collect::<Vec<_>>(),
        "radius": format_rational(&w.radius),
        "value": format_complex(&w.value),
        "value_radius": format_rational(&w.value_radius),
    })
}
