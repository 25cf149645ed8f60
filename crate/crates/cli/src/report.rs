use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::time::Duration;

use indexlab_core::Error;
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    VerificationFailed,
    BudgetExhausted,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::VerificationFailed => 1,
            Status::BudgetExhausted => 3,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

#[derive(Debug)]
pub struct Outcome {
    pub status: Status,
    pub inputs: Vec<InputDigest>,
    pub results: Value,
    pub counters: BTreeMap<String, u64>,
    /// Wall-clock figures kept out of the comparable section.
    pub timings: BTreeMap<String, f64>,
}

impl Outcome {
    pub fn new(results: Value) -> Self {
        Outcome {
            status: Status::Ok,
            inputs: Vec::new(),
            results,
            counters: BTreeMap::new(),
            timings: BTreeMap::new(),
        }
    }

    pub fn status(mut self, s: Status) -> Self {
        self.status = s;
        self
    }

    pub fn inputs(mut self, inputs: Vec<InputDigest>) -> Self {
        self.inputs = inputs;
        self
    }

    pub fn counter(mut self, name: &str, v: u64) -> Self {
        self.counters.insert(name.to_string(), v);
        self
    }
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Verification(String),
    Budget(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Verification(_) => 1,
            CliError::Budget(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Verification(m) | CliError::Budget(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExhausted(_) => CliError::Budget(e.to_string()),
            Error::Construction(_) | Error::ProtocolFailure { .. } | Error::NotRepresenting(_) | Error::Decode(_) => {
                CliError::Verification(e.to_string())
            }
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Usage(format!("json: {e}"))
    }
}

/// The full report; everything under `report` is reproducible.
pub fn render(argv: &[String], o: Outcome, elapsed: Duration, threads: usize, pretty: bool) -> String {
    let comparable = json!({
        "command": argv,
        "inputs": o.inputs,
        "status": o.status,
        "results": o.results,
        "counters": o.counters,
    });
    let mut timing = serde_json::Map::new();
    timing.insert("wall_seconds".into(), json!(elapsed.as_secs_f64()));
    timing.insert("threads".into(), json!(threads));
    for (k, v) in &o.timings {
        timing.insert(k.clone(), json!(v));
    }
    if pretty {
        let mut lines = Vec::new();
        lines.push(format!("status    {}", serde_json::to_string(&o.status).unwrap().trim_matches('"')));
        flatten("", &comparable["results"], &mut lines);
        for (k, v) in &o.counters {
            lines.push(format!("{k:<9} {v}"));
        }
        lines.push(format!("wall      {:.3}s", elapsed.as_secs_f64()));
        return lines.join("\n") + "\n";
    }
    let full = json!({ "report": comparable, "timing": timing });
    serde_json::to_string_pretty(&full).unwrap() + "\n"
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<String>) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, x, out);
            }
        }
        Value::Array(a) if a.iter().any(|x| x.is_object() || x.is_array()) => {
            for (i, x) in a.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), x, out);
            }
        }
        _ => out.push(format!("{prefix:<30} {v}")),
    }
}

pub fn emit(text: &str, path: Option<&Path>) -> std::io::Result<()> {
    match path {
        Some(p) => std::fs::write(p, text),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(text.as_bytes())
        }
    }
}
