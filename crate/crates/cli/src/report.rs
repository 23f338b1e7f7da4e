use std::time::Instant;

use serde_json::{json, Map, Value};
use tracegenus::Error;

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_TOO_LARGE: i32 = 3;

/// JSON report assembled by a subcommand.
pub struct Report {
    command: String,
    argv: Vec<String>,
    inputs: Map<String, Value>,
    exact: Map<String, Value>,
    monte_carlo: Map<String, Value>,
    verdicts: Vec<Value>,
    timings: Map<String, Value>,
    start: Instant,
}

impl Report {
    pub fn new(command: &str, argv: Vec<String>) -> Self {
        Report {
            command: command.into(),
            argv,
            inputs: Map::new(),
            exact: Map::new(),
            monte_carlo: Map::new(),
            verdicts: Vec::new(),
            timings: Map::new(),
            start: Instant::now(),
        }
    }

    pub fn input(&mut self, key: &str, value: impl Into<Value>) {
        self.inputs.insert(key.into(), value.into());
    }

    pub fn exact(&mut self, key: &str, value: impl Into<Value>) {
        self.exact.insert(key.into(), value.into());
    }

    pub fn monte_carlo(&mut self, key: &str, value: impl Into<Value>) {
        self.monte_carlo.insert(key.into(), value.into());
    }

    pub fn verdict(&mut self, name: &str, passed: bool, tolerance: &str, detail: Value) {
        self.verdicts.push(json!({
            "name": name,
            "passed": passed,
            "tolerance": tolerance,
            "detail": detail,
        }));
    }

    /// Runs `f` and records its wall-clock time under `<key>_ms`.
    pub fn time<T>(&mut self, key: &str, f: impl FnOnce() -> T) -> T {
        let t = Instant::now();
        let out = f();
        self.timings
            .insert(format!("{key}_ms"), json!(t.elapsed().as_secs_f64() * 1e3));
        out
    }

    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v["passed"] == json!(true))
    }

    pub fn into_json(mut self) -> Value {
        let passed = self.passed();
        self.timings.insert(
            "total_ms".into(),
            json!(self.start.elapsed().as_secs_f64() * 1e3),
        );
        json!({
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "argv": self.argv,
            "inputs": self.inputs,
            "exact": self.exact,
            "monte_carlo": self.monte_carlo,
            "verdicts": self.verdicts,
            "passed": passed,
            "timings": self.timings,
        })
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::TooLarge(_) => EXIT_TOO_LARGE,
        Error::IdentityMismatch { .. } => EXIT_CHECK_FAILED,
        _ => EXIT_USAGE,
    }
}

fn kind(e: &Error) -> &'static str {
    match e {
        Error::Syntax { .. } => "syntax",
        Error::EmptyWord => "empty_word",
        Error::InvalidPairing(_) => "invalid_pairing",
        Error::NoPairing => "no_pairing",
        Error::UnsupportedConfiguration(_) => "unsupported_configuration",
        Error::TooLarge(_) => "too_large",
        Error::NotStarFree => "not_star_free",
        Error::MissingLetter(_) => "missing_letter",
        Error::InvalidArgument(_) => "invalid_argument",
        Error::IdentityMismatch { .. } => "identity_mismatch",
    }
}

/// Error report; `source` is the text being parsed, if any.
pub fn error_json(command: &str, argv: Vec<String>, e: &Error, source: Option<&str>) -> Value {
    let mut err = json!({ "kind": kind(e), "message": e.to_string() });
    match e {
        Error::Syntax { position, expected } => {
            err["position"] = json!(position);
            err["expected"] = json!(expected);
            if let Some(s) = source {
                err["input"] = json!(s);
            }
        }
        Error::IdentityMismatch { what, left, right } => {
            err["what"] = json!(what);
            err["left"] = json!(left);
            err["right"] = json!(right);
        }
        _ => {}
    }
    json!({
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "argv": argv,
        "error": err,
    })
}

/// Human-readable diagnostic with a caret under a syntax error.
pub fn diagnostic(e: &Error, source: Option<&str>) -> String {
    let mut out = format!("error: {e}");
    if let (Error::Syntax { position, .. }, Some(s)) = (e, source) {
        let col = s[..(*position).min(s.len())].chars().count();
        out.push_str(&format!("\n  {s}\n  {}^", " ".repeat(col)));
    }
    out
}
