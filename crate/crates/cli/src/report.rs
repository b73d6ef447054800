//! Report files: command echo, input digest, results, verdict and timing.

use std::path::Path;

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::scenario::{Scenario, SCHEMA_VERSION};
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
        }
    }
}

/// What a command computed.
pub struct Outcome {
    pub results: Value,
    pub verdict: Verdict,
    /// How the verdict follows from `results`.
    pub criterion: String,
    pub csv: Option<String>,
}

pub fn build(command: &str, raw_input: &[u8], scenario: &Scenario, outcome: &Outcome, seconds: f64) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "input_digest": format!("sha256:{}", hex::encode(Sha256::digest(raw_input))),
        "input": scenario,
        "results": outcome.results,
        "verdict": outcome.verdict.as_str(),
        "criterion": outcome.criterion,
        "timing_seconds": seconds,
    })
}

pub fn write(report: &Value, out: Option<&Path>) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(report).expect("reports serialize") + "\n";
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::input(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
