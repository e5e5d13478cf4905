use std::io::Write;

use gbt_core::tree::DEFAULT_MAX_VERTICES;
use gbt_core::Error;
use serde_json::{Map, Value};

use crate::{Cli, Format};

pub const MAX_VERTICES_VAR: &str = "GBT_MAX_VERTICES";

#[derive(Debug)]
pub enum Failure {
    /// Bad arguments or inputs outside a precondition; exit code 2.
    Usage(String),
    /// A computation that could not complete; exit code 1.
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NoConvergence { .. } | Error::Residual { .. } => Failure::Runtime(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, Failure>;

pub fn max_vertices() -> CliResult<u64> {
    match std::env::var(MAX_VERTICES_VAR) {
        Ok(raw) => raw.trim().parse().map_err(|_| {
            Failure::Usage(format!("{MAX_VERTICES_VAR}={raw:?} is not a vertex count"))
        }),
        Err(_) => Ok(DEFAULT_MAX_VERTICES),
    }
}

/// Rebuilds every object with its keys in sorted order, whatever map
/// ordering `serde_json` was compiled with.
pub fn sorted(value: Value) -> Value {
    match value {
        Value::Object(map) => {
            let mut entries: Vec<(String, Value)> = map.into_iter().collect();
            entries.sort_by(|a, b| a.0.cmp(&b.0));
            Value::Object(
                entries
                    .into_iter()
                    .map(|(k, v)| (k, sorted(v)))
                    .collect::<Map<_, _>>(),
            )
        }
        Value::Array(items) => Value::Array(items.into_iter().map(sorted).collect()),
        other => other,
    }
}

pub fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize to JSON")
}

/// Writes the report in the requested format, to `--out` or standard output.
pub fn emit(cli: &Cli, json: Value, text: impl FnOnce() -> String) -> CliResult<()> {
    let mut body = match cli.format {
        Format::Json => serde_json::to_string_pretty(&sorted(json)).expect("JSON values serialize"),
        Format::Text => text(),
    };
    if !body.ends_with('\n') {
        body.push('\n');
    }
    match &cli.out {
        Some(path) => std::fs::write(path, body)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(body.as_bytes())
                .and_then(|()| stdout.flush())
                .map_err(|e| Failure::Runtime(format!("cannot write to standard output: {e}")))
        }
    }
}
