//! Report assembly: run manifest, JSON and table rendering, exit codes.

use std::fmt::Write as _;
use std::path::Path;
use std::time::Duration;

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use picard_core::Error;

use crate::stages::error_kind;

pub const EXIT_OK: u8 = 0;
pub const EXIT_STAGE_FAILURE: u8 = 1;
pub const EXIT_INPUT_ERROR: u8 = 2;

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// Everything needed to reproduce a report. `timing` is the only field
/// that varies between identical runs.
pub struct RunManifest {
    pub command: String,
    pub input: Value,
    pub config: Value,
    pub timing: Vec<(String, Duration)>,
}

impl RunManifest {
    pub fn new(command: &str, input: Value, config: Value) -> Self {
        RunManifest { command: command.to_string(), input, config, timing: Vec::new() }
    }

    /// Input description for a file read from disk.
    pub fn file_input(path: &Path, bytes: &[u8]) -> Value {
        json!({ "path": path.display().to_string(), "sha256": sha256_hex(bytes) })
    }

    fn to_json(&self) -> Value {
        let total: Duration = self.timing.iter().map(|(_, d)| *d).sum();
        let stages: Map<String, Value> =
            self.timing.iter().map(|(k, d)| (k.clone(), json!(format!("{:.3}", d.as_secs_f64() * 1e3)))).collect();
        json!({
            "command": self.command,
            "input": self.input,
            "config": self.config,
            "tool": { "name": "picard", "version": env!("CARGO_PKG_VERSION") },
            "timing": { "total_ms": format!("{:.3}", total.as_secs_f64() * 1e3), "stages_ms": stages },
        })
    }
}

pub struct StageOutcome {
    pub name: String,
    pub result: std::result::Result<Value, Error>,
}

impl StageOutcome {
    fn to_json(&self) -> Value {
        match &self.result {
            Ok(v) => json!({ "stage": self.name, "status": "ok", "result": v }),
            Err(e) => json!({
                "stage": self.name,
                "status": "error",
                "error": { "kind": error_kind(e), "message": e.to_string() },
            }),
        }
    }
}

pub struct Report {
    pub manifest: RunManifest,
    pub subject: Option<String>,
    pub stages: Vec<StageOutcome>,
    /// One line per stage in the table form.
    pub compact: bool,
}

impl Report {
    pub fn new(manifest: RunManifest, subject: Option<String>) -> Self {
        Report { manifest, subject, stages: Vec::new(), compact: false }
    }

    pub fn push(&mut self, name: &str, elapsed: Duration, result: std::result::Result<Value, Error>) {
        self.manifest.timing.push((name.to_string(), elapsed));
        self.stages.push(StageOutcome { name: name.to_string(), result });
    }

    pub fn failed(&self) -> usize {
        self.stages.iter().filter(|s| s.result.is_err()).count()
    }

    pub fn exit_code(&self) -> u8 {
        if self.failed() == 0 {
            EXIT_OK
        } else {
            EXIT_STAGE_FAILURE
        }
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "manifest": self.manifest.to_json(),
            "subject": self.subject,
            "status": if self.failed() == 0 { "ok" } else { "failed" },
            "stages": self.stages.iter().map(StageOutcome::to_json).collect::<Vec<_>>(),
        });
        stringify_numbers(&mut v);
        v
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let m = &self.manifest;
        let _ = writeln!(out, "picard {} ({})", m.command, env!("CARGO_PKG_VERSION"));
        if let Some(s) = &self.subject {
            let _ = writeln!(out, "subject   {s}");
        }
        if let Some(h) = m.input.get("sha256").and_then(Value::as_str) {
            let _ = writeln!(out, "sha256    {h}");
        }
        for s in &self.stages {
            if self.compact {
                match &s.result {
                    Ok(_) => {
                        let _ = writeln!(out, "PASS  {}", s.name);
                    }
                    Err(e) => {
                        let _ = writeln!(out, "FAIL  {}: {e}", s.name);
                    }
                }
                continue;
            }
            let _ = writeln!(out);
            match &s.result {
                Ok(v) => {
                    let _ = writeln!(out, "[{}] ok", s.name);
                    let mut v = v.clone();
                    stringify_numbers(&mut v);
                    let mut rows = Vec::new();
                    flatten("", &v, &mut rows);
                    let w = rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
                    for (k, val) in rows {
                        let _ = writeln!(out, "  {k:<w$}  {val}");
                    }
                }
                Err(e) => {
                    let _ = writeln!(out, "[{}] error ({}): {e}", s.name, error_kind(e));
                }
            }
        }
        let _ = writeln!(out);
        let _ = writeln!(out, "{} stage(s), {} failed", self.stages.len(), self.failed());
        out
    }
}

/// Replaces every JSON number by its decimal string.
pub fn stringify_numbers(v: &mut Value) {
    match v {
        Value::Number(n) => *v = Value::String(n.to_string()),
        Value::Array(a) => a.iter_mut().for_each(stringify_numbers),
        Value::Object(o) => o.values_mut().for_each(stringify_numbers),
        _ => {}
    }
}

const SCALAR_ARRAY_HEAD: usize = 12;
const OBJECT_ARRAY_MAX: usize = 8;

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn flatten(prefix: &str, v: &Value, rows: &mut Vec<(String, String)>) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(o) => {
            for (k, x) in o {
                flatten(&key(k), x, rows);
            }
        }
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
            let head: Vec<String> = a.iter().take(SCALAR_ARRAY_HEAD).map(scalar).collect();
            let mut s = head.join(", ");
            if a.len() > SCALAR_ARRAY_HEAD {
                s.push_str(&format!(", ... ({} total)", a.len()));
            }
            rows.push((prefix.to_string(), format!("[{s}]")));
        }
        Value::Array(a) if a.len() > OBJECT_ARRAY_MAX => {
            rows.push((prefix.to_string(), format!("{} entries (see --json)", a.len())));
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                flatten(&key(&i.to_string()), x, rows);
            }
        }
        other => rows.push((prefix.to_string(), scalar(other))),
    }
}
