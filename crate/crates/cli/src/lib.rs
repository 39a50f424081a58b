//! Batch front-end: reads an exact-rational problem file, runs one
//! operation and renders a deterministic JSON result document.

pub mod commands;
pub mod error;
pub mod problem;

use serde_json::{json, Value};

pub use error::CliError;
pub use problem::{Problem, RawProblem};

/// Environment variable overriding the LP size cap.
pub const SIZE_CAP_VAR: &str = "PREDYNKIN_SIZE_CAP";

/// Command-line overrides applied on top of the file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub event: Option<String>,
    pub cond: Option<String>,
    pub depth: Option<usize>,
}

/// Parses `text`, applies the overrides and returns the full document.
pub fn run(operation: &str, text: &str, overrides: &Overrides) -> Result<Value, CliError> {
    if !commands::OPERATIONS.contains(&operation) {
        return Err(CliError::field("operation", format!("unknown operation {operation:?}")));
    }
    let mut problem = Problem::from_json(text)?;
    if let Some(spec) = &overrides.event {
        problem.event = Some(problem::event_spec("--event", spec, problem.ground)?);
    }
    if let Some(spec) = &overrides.cond {
        problem.cond = Some(problem::event_spec("--cond", spec, problem.ground)?);
    }
    if overrides.depth.is_some() {
        problem.depth = overrides.depth;
    }
    let result = commands::dispatch(operation, &problem)?;
    let echo = serde_json::to_value(problem.to_raw()).expect("plain data serializes");
    Ok(json!({ "operation": operation, "input": echo, "result": result }))
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn render(doc: &Value) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("plain data serializes");
    s.push('\n');
    s
}

/// Reads the size cap override, if set.
pub fn size_cap_from_env() -> Result<Option<usize>, CliError> {
    match std::env::var(SIZE_CAP_VAR) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(cap) if cap > 0 => Ok(Some(cap)),
            _ => Err(CliError::SizeCap(v)),
        },
        Err(_) => Ok(None),
    }
}
