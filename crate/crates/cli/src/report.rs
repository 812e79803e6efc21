//! Report documents: everything a command computed plus its pass/fail checks.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::document::SCHEMA_VERSION;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub check: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<String>,
}

impl Verdict {
    pub fn new(check: impl Into<String>, pass: bool) -> Self {
        Verdict { check: check.into(), pass, detail: None }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: String,
    pub command: String,
    pub arguments: BTreeMap<String, String>,
    /// `sha256:<hex>` of the input bytes, or `none`.
    pub inputs_digest: String,
    pub seed: Option<u64>,
    pub results: Value,
    pub verdicts: Vec<Verdict>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub warnings: Vec<String>,
    pub passed: bool,
}

impl ReportDocument {
    pub fn new(command: &str, arguments: BTreeMap<String, String>, input: Option<&[u8]>, seed: Option<u64>) -> Self {
        ReportDocument {
            schema_version: SCHEMA_VERSION.into(),
            command: command.into(),
            arguments,
            inputs_digest: digest(input),
            seed,
            results: Value::Null,
            verdicts: Vec::new(),
            warnings: Vec::new(),
            passed: true,
        }
    }

    pub fn finish(mut self, results: Value, verdicts: Vec<Verdict>) -> Self {
        self.passed = verdicts.iter().all(|v| v.pass);
        self.results = results;
        self.verdicts = verdicts;
        self
    }

    pub fn render(&self, pretty: bool) -> String {
        let mut s = if pretty {
            serde_json::to_string_pretty(self).expect("reports serialize")
        } else {
            serde_json::to_string(self).expect("reports serialize")
        };
        s.push('\n');
        s
    }
}

pub fn digest(input: Option<&[u8]>) -> String {
    match input {
        Some(bytes) => {
            let h = Sha256::digest(bytes);
            let hex: String = h.iter().map(|b| format!("{b:02x}")).collect();
            format!("sha256:{hex}")
        }
        None => "none".into(),
    }
}
