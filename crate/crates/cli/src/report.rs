//! Run summaries and exit codes.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use serde::Serialize;
use sha2::{Digest, Sha256};

/// Why a command did not succeed, by exit code.
#[derive(Debug)]
pub enum Failure {
    /// Valid input, but the checked property fails.
    Verification(String),
    Input(String),
    Internal(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Verification(_) => 1,
            Failure::Input(_) => 2,
            Failure::Internal(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Verification(m) | Failure::Input(m) | Failure::Internal(m) => m,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Fail,
    /// The constraint ideal is proper: solutions exist.
    Proper,
    /// The constraint ideal is the unit ideal.
    Trivial,
    Error,
}

#[derive(Serialize)]
struct Summary<'a> {
    command: &'a str,
    inputs_digest: String,
    outcome: Outcome,
    artifacts: &'a [PathBuf],
    wall_time_ms: u128,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<&'a str>,
}

/// Written as one JSON line on stderr when the command ends.
pub struct RunReport {
    args: Vec<String>,
    started: Instant,
    hasher: Sha256,
    outcome: Outcome,
    artifacts: Vec<PathBuf>,
}

impl RunReport {
    pub fn start(args: Vec<String>) -> Self {
        let mut hasher = Sha256::new();
        for a in &args {
            hasher.update(a.as_bytes());
            hasher.update([0]);
        }
        RunReport { args, started: Instant::now(), hasher, outcome: Outcome::Pass, artifacts: Vec::new() }
    }

    /// Read an input file and fold its bytes into the digest.
    pub fn read_input(&mut self, path: &Path) -> Result<String, Failure> {
        let src = std::fs::read_to_string(path)
            .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
        self.hasher.update(src.as_bytes());
        Ok(src)
    }

    pub fn write_artifact(&mut self, path: &Path, contents: &str) -> Result<(), Failure> {
        std::fs::write(path, contents)
            .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))?;
        self.artifacts.push(path.to_path_buf());
        Ok(())
    }

    pub fn set_outcome(&mut self, o: Outcome) {
        self.outcome = o;
    }

    pub fn finish(self, result: Result<(), Failure>) -> ExitCode {
        let (outcome, code, error) = match &result {
            Ok(()) => (self.outcome, 0, None),
            Err(f) => {
                eprintln!("error: {}", f.message());
                let o = if matches!(f, Failure::Verification(_)) { Outcome::Fail } else { Outcome::Error };
                (o, f.code(), Some(f.message()))
            }
        };
        let summary = Summary {
            command: self.args.iter().find(|a| !a.starts_with('-')).map_or("", String::as_str),
            inputs_digest: hex::encode(self.hasher.finalize()),
            outcome,
            artifacts: if code == 0 { &self.artifacts } else { &[] },
            wall_time_ms: self.started.elapsed().as_millis(),
            error,
        };
        eprintln!("{}", serde_json::to_string(&summary).expect("summary serializes"));
        ExitCode::from(code)
    }
}
