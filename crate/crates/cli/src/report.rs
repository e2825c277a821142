use serde::Serialize;
use serde_json::Value;

pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fingerprint: Option<String>,
    pub pass: bool,
    pub results: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
    #[serde(skip)]
    pub lines: Vec<String>,
    /// Printed verbatim instead of the summary (used by `build`).
    #[serde(skip)]
    pub raw: Option<String>,
}

impl Report {
    pub fn new(command: &'static str, fingerprint: Option<String>, pass: bool, results: Value, lines: Vec<String>) -> Report {
        Report {
            schema_version: REPORT_SCHEMA_VERSION,
            command,
            fingerprint,
            pass,
            results,
            elapsed_ms: None,
            lines,
            raw: None,
        }
    }

    pub fn human(&self) -> String {
        if let Some(raw) = &self.raw {
            return raw.clone();
        }
        let mut out = String::new();
        for l in &self.lines {
            out.push_str(l);
            out.push('\n');
        }
        if let Some(ms) = self.elapsed_ms {
            out.push_str(&format!("elapsed: {ms:.1} ms\n"));
        }
        out.push_str(if self.pass { "PASS\n" } else { "FAIL\n" });
        out
    }
}
