//! Versioned JSON report envelope and atomic file output.

use std::io::Write;
use std::path::Path;

use chrono::{SecondsFormat, Utc};
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::RunConfig;
use crate::Failure;

pub const SCHEMA: &str = "jastrow-lab/1";

#[derive(Debug, Clone)]
pub struct Report {
    pub command: String,
    pub pass: bool,
    pub result: Value,
    /// Human-readable lines for text output.
    pub summary: Vec<String>,
    pub csv: Option<String>,
}

impl Report {
    pub fn new(command: &str, pass: bool, result: impl Serialize) -> Self {
        Report {
            command: command.into(),
            pass,
            result: serde_json::to_value(result).expect("report values serialize"),
            summary: Vec::new(),
            csv: None,
        }
    }

    pub fn line(mut self, s: impl Into<String>) -> Self {
        self.summary.push(s.into());
        self
    }

    pub fn with_csv(mut self, csv: String) -> Self {
        self.csv = Some(csv);
        self
    }

    pub fn envelope(&self, config: &RunConfig) -> Value {
        json!({
            "schema": SCHEMA,
            "command": self.command,
            "timestamp": Utc::now().to_rfc3339_opts(SecondsFormat::Secs, true),
            "pass": self.pass,
            "config": config,
            "result": self.result,
        })
    }
}

/// Writes through a temporary file in the target directory, then renames.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let io = |e: std::io::Error| Failure::io(format!("cannot write {}: {e}", path.display()));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(bytes).map_err(io)?;
    tmp.as_file().sync_all().map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}
