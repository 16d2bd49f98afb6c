//! Check records, JSON and text emission, and a stable digest.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::config::Config;

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// A number stated in the source literature.
    Anchor,
    /// Computed by an independent route and pinned here.
    Derived,
    /// Follows from the definitions.
    Trivial,
}

impl Provenance {
    pub fn label(&self) -> &'static str {
        match self {
            Provenance::Anchor => "anchor",
            Provenance::Derived => "derived",
            Provenance::Trivial => "trivial",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Informational; never fails a run.
    Report,
}

impl Status {
    pub fn label(&self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Report => "REPORT",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub case: String,
    pub criterion: u8,
    pub expected: String,
    pub computed: String,
    pub provenance: Provenance,
    pub status: Status,
    pub wall_ms: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub config: Config,
    pub checks: Vec<CheckRecord>,
}

impl Report {
    pub fn new(suite: impl Into<String>, config: Config, mut checks: Vec<CheckRecord>) -> Self {
        checks.sort_by(|a, b| (a.criterion, &a.name).cmp(&(b.criterion, &b.name)));
        Self { suite: suite.into(), config, checks }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn for_criterion(&self, criterion: u8) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(move |c| c.criterion == criterion)
    }

    pub fn get(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(src: &str) -> serde_json::Result<Self> {
        serde_json::from_str(src)
    }

    /// SHA-256 over the JSON form with wall times zeroed.
    pub fn digest(&self) -> String {
        let mut timeless = self.clone();
        for c in &mut timeless.checks {
            c.wall_ms = 0;
        }
        let bytes = serde_json::to_vec(&timeless).expect("report serializes");
        hex::encode(Sha256::digest(&bytes))
    }

    pub fn to_text(&self) -> String {
        let head = ["status", "crit", "check", "expected", "computed", "source", "ms"];
        let rows: Vec<[String; 7]> = self
            .checks
            .iter()
            .map(|c| {
                [
                    c.status.label().to_string(),
                    c.criterion.to_string(),
                    c.name.clone(),
                    c.expected.clone(),
                    c.computed.clone(),
                    c.provenance.label().to_string(),
                    c.wall_ms.to_string(),
                ]
            })
            .collect();
        let mut w = head.map(str::len);
        for r in &rows {
            for (i, cell) in r.iter().enumerate() {
                w[i] = w[i].max(cell.chars().count());
            }
        }
        let mut out = String::new();
        let line = |out: &mut String, cells: &[&str]| {
            let mut s = String::new();
            for (i, cell) in cells.iter().enumerate() {
                let pad = w[i] - cell.chars().count();
                if i == 6 {
                    let _ = write!(s, "{}{cell}", " ".repeat(pad));
                } else {
                    let _ = write!(s, "{cell}{}  ", " ".repeat(pad));
                }
            }
            out.push_str(s.trim_end());
            out.push('\n');
        };
        let _ = writeln!(
            out,
            "suite {}  field {}  seed {}",
            self.suite,
            self.config.field_spec().label(),
            self.config.seed
        );
        line(&mut out, &head);
        for (r, c) in rows.iter().zip(&self.checks) {
            let cells: Vec<&str> = r.iter().map(String::as_str).collect();
            line(&mut out, &cells);
            if let Some(n) = &c.note {
                let _ = writeln!(out, "    note: {n}");
            }
        }
        let fails = self.failures().count();
        let _ = writeln!(
            out,
            "{} checks, {} failed: {}",
            self.checks.len(),
            fails,
            if fails == 0 { "PASS" } else { "FAIL" }
        );
        out
    }
}
