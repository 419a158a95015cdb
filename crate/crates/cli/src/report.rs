use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};
use tvlab::Error;

/// Everything a run depends on; embedded in every report for replay.
#[derive(Clone, Debug, Default, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub inputs: Vec<String>,
    pub r: Option<usize>,
    #[serde(rename = "N")]
    pub n: Option<usize>,
    pub d: Option<usize>,
    pub p: Option<u64>,
    pub s: Option<i64>,
    pub seed: u64,
    pub cell_cap: u64,
    pub random: Option<usize>,
    pub output: Option<String>,
    pub options: BTreeMap<String, Value>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FailureKind {
    Input,
    Cap,
    Invariant,
}

impl FailureKind {
    pub fn exit_code(self) -> u8 {
        match self {
            FailureKind::Input => 2,
            FailureKind::Cap => 3,
            FailureKind::Invariant => 4,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Failure {
    pub kind: FailureKind,
    pub message: String,
    /// Partial result reported alongside the error, e.g. failing fuzz seeds.
    pub result: Option<Value>,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Failure { kind: FailureKind::Input, message: message.into(), result: None }
    }

    pub fn invariant(message: impl Into<String>, result: Value) -> Self {
        Failure { kind: FailureKind::Invariant, message: message.into(), result: Some(result) }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let kind = match e {
            Error::CapExceeded { .. } => FailureKind::Cap,
            Error::SearchInvariantViolated | Error::NotAChainComplex(_) => FailureKind::Invariant,
            _ => FailureKind::Input,
        };
        Failure { kind, message: e.to_string(), result: None }
    }
}

pub type Outcome = Result<Value, Failure>;

pub fn render(config: &RunConfig, outcome: &Outcome) -> String {
    let body = match outcome {
        Ok(result) => json!({ "config": config, "result": result }),
        Err(f) => {
            let mut v = json!({
                "config": config,
                "error": { "kind": f.kind, "message": f.message },
            });
            if let Some(r) = &f.result {
                v["result"] = r.clone();
            }
            v
        }
    };
    let mut s = serde_json::to_string_pretty(&body).expect("reports are plain JSON");
    s.push('\n');
    s
}

pub fn emit(config: &RunConfig, outcome: &Outcome, path: Option<&Path>) -> std::io::Result<()> {
    let text = render(config, outcome);
    match path {
        Some(p) => std::fs::write(p, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}
