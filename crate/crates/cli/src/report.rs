//! Reports: deterministic JSON plus a plain-text summary.

use serde::Serialize;
use specialherm::metrics::Verdict;
use specialherm::{BiForm, VecForm};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Holds,
    Fails,
    NotApplicable,
    Mismatch,
}

#[derive(Clone, Debug, Serialize)]
pub struct Entry {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Entry {
    pub fn verdict(name: impl Into<String>, v: &Verdict) -> Entry {
        match v {
            Verdict::Holds => Entry::holds(name),
            Verdict::Fails { witness } => Entry::fails(name, Some(witness.to_string()), None),
        }
    }

    pub fn holds(name: impl Into<String>) -> Entry {
        Entry { name: name.into(), status: Status::Holds, witness: None, detail: None }
    }

    pub fn fails(name: impl Into<String>, witness: Option<String>, detail: Option<String>) -> Entry {
        Entry { name: name.into(), status: Status::Fails, witness, detail }
    }

    pub fn zero_check(name: impl Into<String>, form: &BiForm) -> Entry {
        if form.is_zero() {
            Entry::holds(name)
        } else {
            Entry::fails(name, Some(form.to_string()), None)
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Entry {
        self.detail = Some(detail.into());
        self
    }
}

/// Canonical text of a vector form: `d/dz^j: component` pieces.
pub fn vecform_text(v: &VecForm) -> String {
    let parts: Vec<String> = v
        .components()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(j, c)| format!("[{}] ⊗ d/dz{}", c, j + 1))
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Value {
    pub name: String,
    pub value: serde_json::Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub format: u32,
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub manifest: Option<String>,
    pub seed: u64,
    pub exit_code: i32,
    pub entries: Vec<Entry>,
    pub values: Vec<Value>,
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
}

impl Report {
    pub fn new(command: &str, manifest: Option<String>, seed: u64) -> Report {
        Report {
            format: 1,
            command: command.into(),
            manifest,
            seed,
            exit_code: 0,
            entries: Vec::new(),
            values: Vec::new(),
            notes: Vec::new(),
            error: None,
            timing_ms: None,
        }
    }

    pub fn push(&mut self, e: Entry) {
        self.entries.push(e);
    }

    pub fn value(&mut self, name: &str, value: serde_json::Value) {
        self.values.push(Value { name: name.into(), value });
    }

    /// 3 on any mismatch, else 1 on any failure, else 0.
    pub fn settle(&mut self) {
        self.exit_code = if self.entries.iter().any(|e| e.status == Status::Mismatch) {
            3
        } else if self.entries.iter().any(|e| e.status == Status::Fails) {
            1
        } else {
            0
        };
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(e) = &self.error {
            out.push_str(&format!("error: {e}\n"));
        }
        for e in &self.entries {
            let status = match e.status {
                Status::Holds => "holds",
                Status::Fails => "FAILS",
                Status::NotApplicable => "n/a",
                Status::Mismatch => "MISMATCH",
            };
            out.push_str(&format!("{:<28} {status}", e.name));
            if let Some(d) = &e.detail {
                out.push_str(&format!("  ({d})"));
            }
            out.push('\n');
            if let Some(w) = &e.witness {
                out.push_str(&format!("    witness: {w}\n"));
            }
        }
        for v in &self.values {
            let text = match &v.value {
                serde_json::Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            out.push_str(&format!("{:<28} {text}\n", v.name));
        }
        for n in &self.notes {
            out.push_str(&format!("note: {n}\n"));
        }
        out
    }
}
