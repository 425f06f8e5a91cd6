//! Check reports shared by the identity checkers and the CLI.

use std::fmt;
use std::time::Instant;

use num_complex::Complex64;
use serde::Serialize;
use serde_json::{Map, Value};

use crate::algebra::Elem;
use crate::scalar::{Scalar, ShowScalar};

/// A printed value together with its JSON form.
#[derive(Clone, Debug, Serialize)]
#[serde(into = "Value")]
pub struct ReportValue {
    pub text: String,
    pub json: Value,
}

impl From<ReportValue> for Value {
    fn from(v: ReportValue) -> Value {
        v.json
    }
}

impl ReportValue {
    pub fn elem<S: Scalar>(e: &Elem<S>) -> Self {
        ReportValue {
            text: e.to_string(),
            json: e.to_json(),
        }
    }

    pub fn scalar(z: Complex64) -> Self {
        ReportValue {
            text: ShowScalar(&z).to_string(),
            json: serde_json::json!([z.re, z.im]),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub check_id: String,
    pub inputs: Map<String, Value>,
    pub lhs: ReportValue,
    pub rhs: ReportValue,
    pub deviation: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub runtime_ms: u64,
}

impl CheckReport {
    /// `pass` is derived from `deviation <= tolerance`; NaN never passes.
    pub fn new(
        check_id: impl Into<String>,
        inputs: Vec<(&str, String)>,
        lhs: ReportValue,
        rhs: ReportValue,
        deviation: f64,
        tolerance: f64,
        started: Instant,
    ) -> Self {
        CheckReport {
            check_id: check_id.into(),
            inputs: inputs
                .into_iter()
                .map(|(k, v)| (k.to_string(), Value::String(v)))
                .collect(),
            lhs,
            rhs,
            deviation,
            tolerance,
            pass: deviation <= tolerance,
            runtime_ms: started.elapsed().as_millis() as u64,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "check     {}", self.check_id)?;
        for (k, v) in &self.inputs {
            writeln!(f, "  {k:<9} {}", v.as_str().unwrap_or_default())?;
        }
        writeln!(f, "lhs       {}", self.lhs.text)?;
        writeln!(f, "rhs       {}", self.rhs.text)?;
        writeln!(f, "deviation {:.3e} (tolerance {:.1e})", self.deviation, self.tolerance)?;
        write!(
            f,
            "{} in {} ms",
            if self.pass { "PASS" } else { "FAIL" },
            self.runtime_ms
        )
    }
}
