//! Job runner behind the `comax` binary.
//!
//! A job is a JSON object naming a ring, optionally a module and an ideal
//! family, and a command. Running it yields a report with sorted keys and
//! an exit code.

pub mod codec;
mod commands;
mod oracle_check;
pub mod text;

use std::fmt;

use comax_core::Error;
use serde_json::{json, Map, Value};

pub use commands::COMMANDS;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Input(String),
    Core(Error),
    OracleMismatch(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "input error: {m}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::OracleMismatch(m) => write!(f, "oracle mismatch: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_CONDITION: i32 = 2;
pub const EXIT_ORACLE: i32 = 3;
pub const EXIT_UNSUPPORTED: i32 = 4;
pub const EXIT_BUDGET: i32 = 5;
pub const EXIT_VERIFICATION: i32 = 6;

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::OracleMismatch(_) => EXIT_ORACLE,
            CliError::Core(e) => match e {
                Error::ConditionNotEstablished { .. }
                | Error::NotTorsion
                | Error::ZeroAnnihilator(_)
                | Error::NoStabilization(_) => EXIT_CONDITION,
                Error::Unsupported(_) => EXIT_UNSUPPORTED,
                Error::BudgetExceeded(_) => EXIT_BUDGET,
                Error::VerificationFailed(_) => EXIT_VERIFICATION,
                _ => EXIT_INPUT,
            },
        }
    }

    fn to_json(&self) -> Value {
        let mut o = Map::new();
        o.insert("message".into(), json!(self.to_string()));
        match self {
            CliError::Core(Error::ConditionNotEstablished { generator, reason }) => {
                o.insert("generator".into(), json!(generator));
                o.insert("reason".into(), json!(reason));
            }
            CliError::Core(Error::ZeroAnnihilator(k)) => {
                o.insert("generator".into(), json!(k));
            }
            CliError::Core(Error::NotComaximal(i, j)) => {
                o.insert("pair".into(), json!([i, j]));
            }
            _ => {}
        }
        Value::Object(o)
    }
}

pub fn status_name(code: i32) -> &'static str {
    match code {
        EXIT_OK => "ok",
        EXIT_INPUT => "input-error",
        EXIT_CONDITION => "condition-not-established",
        EXIT_ORACLE => "oracle-mismatch",
        EXIT_UNSUPPORTED => "unsupported",
        EXIT_BUDGET => "budget-exceeded",
        _ => "verification-failed",
    }
}

/// Command-line settings that take precedence over the job file.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub command: Option<String>,
    pub oracle: bool,
    pub max_exponent: Option<u32>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub exit_code: i32,
    pub report: Value,
}

fn finish(command: Option<&str>, result: Result<(Value, Option<Value>), CliError>) -> Outcome {
    let mut o = Map::new();
    o.insert("command".into(), command.map_or(Value::Null, |c| json!(c)));
    let code = match result {
        Ok((r, oracle)) => {
            o.insert("result".into(), r);
            if let Some(v) = oracle {
                o.insert("oracle".into(), v);
            }
            EXIT_OK
        }
        Err(e) => {
            o.insert("error".into(), e.to_json());
            e.exit_code()
        }
    };
    o.insert("exit_code".into(), json!(code));
    o.insert("status".into(), json!(status_name(code)));
    Outcome {
        exit_code: code,
        report: Value::Object(o),
    }
}

/// Runs one job given as a JSON value.
pub fn run_value(job: &Value, ov: &Overrides) -> Outcome {
    let command = ov
        .command
        .clone()
        .or_else(|| job.get("command").and_then(Value::as_str).map(str::to_owned));
    let result = match &command {
        None => Err(CliError::Input("no command given".into())),
        Some(c) => commands::dispatch(c, job, ov),
    };
    finish(command.as_deref(), result)
}

/// Runs one job given as JSON text.
pub fn run_str(text: &str, ov: &Overrides) -> Outcome {
    match serde_json::from_str::<Value>(text) {
        Ok(v) => run_value(&v, ov),
        Err(e) => finish(
            ov.command.as_deref(),
            Err(CliError::Input(format!("invalid JSON: {e}"))),
        ),
    }
}

/// Runs a JSON array of jobs. The exit code is the largest one seen.
pub fn run_batch(text: &str, ov: &Overrides) -> Outcome {
    let jobs = match serde_json::from_str::<Value>(text) {
        Ok(Value::Array(v)) => v,
        Ok(_) => return finish(None, Err(CliError::Input("a batch must be a JSON array of jobs".into()))),
        Err(e) => return finish(None, Err(CliError::Input(format!("invalid JSON: {e}")))),
    };
    let outcomes: Vec<Outcome> = std::thread::scope(|s| {
        let handles: Vec<_> = jobs.iter().map(|j| s.spawn(|| run_value(j, ov))).collect();
        handles.into_iter().map(|h| h.join().expect("job thread panicked")).collect()
    });
    Outcome {
        exit_code: outcomes.iter().map(|o| o.exit_code).max().unwrap_or(EXIT_OK),
        report: Value::Array(outcomes.into_iter().map(|o| o.report).collect()),
    }
}

/// Pretty JSON with a trailing newline. Keys come out sorted.
pub fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable report");
    s.push('\n');
    s
}
