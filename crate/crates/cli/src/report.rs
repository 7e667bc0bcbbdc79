use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    /// `null` in JSON when the quantity could not be measured.
    pub measured: f64,
    pub tolerance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

/// Everything a command produced. Serialized as the `--report` file.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Vec<InputDigest>,
    pub outputs: Value,
    pub checks: Vec<Check>,
    #[serde(skip)]
    pub notes: Vec<String>,
}

impl RunReport {
    pub fn new(command: impl Into<String>) -> Self {
        Self {
            command: command.into(),
            inputs: Vec::new(),
            outputs: Value::Null,
            checks: Vec::new(),
            notes: Vec::new(),
        }
    }

    /// Records `measured ≤ tolerance`. NaN never passes.
    pub fn check_le(&mut self, name: &str, measured: f64, tolerance: f64) -> bool {
        self.check(name, measured <= tolerance, measured, tolerance)
    }

    pub fn check(&mut self, name: &str, pass: bool, measured: f64, tolerance: f64) -> bool {
        self.checks.push(Check {
            name: name.to_owned(),
            pass,
            measured,
            tolerance,
        });
        pass
    }

    pub fn note(&mut self, line: impl Into<String>) {
        self.notes.push(line.into());
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    /// Human-readable summary; `with_outputs` also prints the payload.
    pub fn render(&self, with_outputs: bool) -> String {
        let mut out = String::new();
        for line in &self.notes {
            let _ = writeln!(out, "{line}");
        }
        if with_outputs && !self.outputs.is_null() {
            let _ = writeln!(out, "{}", human_value(&self.outputs));
        }
        for c in &self.checks {
            let _ = writeln!(
                out,
                "check {}: {} (measured {}, tolerance {})",
                c.name,
                if c.pass { "pass" } else { "FAIL" },
                sig6(c.measured),
                sig6(c.tolerance)
            );
        }
        out
    }
}

/// `%g`-style formatting with six significant digits.
pub fn sig6(x: f64) -> String {
    if x.is_nan() {
        return "n/a".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.into();
    }
    if x == 0.0 {
        return "0".into();
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..6).contains(&exp) {
        let decimals = (5 - exp).max(0) as usize;
        let s = format!("{x:.decimals$}");
        let s = if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_owned()
        } else {
            s
        };
        if s == "-0" {
            "0".into()
        } else {
            s
        }
    } else {
        let s = format!("{x:.5e}");
        let (mantissa, exponent) = s.split_once('e').expect("exponent form");
        let mantissa = if mantissa.contains('.') {
            mantissa.trim_end_matches('0').trim_end_matches('.')
        } else {
            mantissa
        };
        format!("{mantissa}e{exponent}")
    }
}

/// Compact JSON-like rendering with numbers shortened to six digits.
pub fn human_value(v: &Value) -> String {
    match v {
        Value::Number(n) => match n.as_f64() {
            Some(x) if n.is_f64() => sig6(x),
            _ => n.to_string(),
        },
        Value::Array(items) => {
            let inner: Vec<String> = items.iter().map(human_value).collect();
            format!("[{}]", inner.join(", "))
        }
        Value::Object(map) => {
            let inner: Vec<String> = map
                .iter()
                .map(|(k, v)| format!("{k}: {}", human_value(v)))
                .collect();
            format!("{{{}}}", inner.join(", "))
        }
        other => other.to_string(),
    }
}
