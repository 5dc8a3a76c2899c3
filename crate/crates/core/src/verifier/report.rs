use std::fmt::Write;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Holds,
    Fails,
    Skipped(String),
    /// Recorded for comparison; never counts as a failure.
    Informational,
}

impl Status {
    pub fn label(&self) -> &str {
        match self {
            Status::Holds => "holds",
            Status::Fails => "fails",
            Status::Skipped(_) => "skipped",
            Status::Informational => "informational",
        }
    }

    pub fn from_bool(holds: bool) -> Status {
        if holds {
            Status::Holds
        } else {
            Status::Fails
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClaimResult {
    pub claim: String,
    pub group: String,
    pub status: Status,
    pub witness: Value,
    pub ms: u64,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub holds: u64,
    pub fails: u64,
    pub skipped: u64,
    pub informational: u64,
}

impl Summary {
    pub fn tally(results: &[ClaimResult]) -> Summary {
        let mut s = Summary::default();
        for r in results {
            match r.status {
                Status::Holds => s.holds += 1,
                Status::Fails => s.fails += 1,
                Status::Skipped(_) => s.skipped += 1,
                Status::Informational => s.informational += 1,
            }
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub version: String,
    pub catalog: Vec<String>,
    pub results: Vec<ClaimResult>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn new(catalog: Vec<String>, results: Vec<ClaimResult>) -> Self {
        VerificationReport {
            version: crate::VERSION.to_string(),
            catalog,
            summary: Summary::tally(&results),
            results,
        }
    }

    pub fn passed(&self) -> bool {
        self.summary.fails == 0
    }

    /// Sets every elapsed time to zero so runs can be compared byte for byte.
    pub fn normalize_timings(&mut self) {
        for r in &mut self.results {
            r.ms = 0;
        }
    }

    pub fn find(&self, claim: &str, group: &str) -> Option<&ClaimResult> {
        self.results.iter().find(|r| r.claim == claim && r.group == group)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Other(format!("report parse: {e}")))
    }

    /// One table per claim, in result order.
    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        writeln!(out, "# Verification report (solgraph {})\n", self.version).unwrap();
        writeln!(out, "Catalog: {}\n", self.catalog.join(", ")).unwrap();
        let s = &self.summary;
        writeln!(
            out,
            "Summary: {} holds, {} fails, {} skipped, {} informational\n",
            s.holds, s.fails, s.skipped, s.informational
        )
        .unwrap();
        let mut current: Option<&str> = None;
        for r in &self.results {
            if current != Some(r.claim.as_str()) {
                if current.is_some() {
                    out.push('\n');
                }
                current = Some(&r.claim);
                writeln!(out, "## {}\n", r.claim).unwrap();
                writeln!(out, "| group | status | witness | ms |").unwrap();
                writeln!(out, "|---|---|---|---|").unwrap();
            }
            let status = match &r.status {
                Status::Skipped(reason) => format!("skipped ({reason})"),
                other => other.label().to_string(),
            };
            let witness = r.witness.to_string().replace('|', "\\|");
            writeln!(out, "| {} | {} | `{}` | {} |", r.group, status, witness, r.ms).unwrap();
        }
        out
    }

    /// Columns `claim,group,status,reason,witness,ms`.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["claim", "group", "status", "reason", "witness", "ms"])
            .expect("in-memory write");
        for r in &self.results {
            let reason = match &r.status {
                Status::Skipped(reason) => reason.as_str(),
                _ => "",
            };
            w.write_record([
                r.claim.as_str(),
                r.group.as_str(),
                r.status.label(),
                reason,
                &r.witness.to_string(),
                &r.ms.to_string(),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn sample() -> VerificationReport {
        VerificationReport::new(
            vec!["A5".into(), "S4".into()],
            vec![
                ClaimResult {
                    claim: "P3.6i".into(),
                    group: "A5".into(),
                    status: Status::Holds,
                    witness: json!({"formula": 571, "direct": 571}),
                    ms: 3,
                },
                ClaimResult {
                    claim: "P3.6i".into(),
                    group: "S4".into(),
                    status: Status::Skipped("group is soluble".into()),
                    witness: Value::Null,
                    ms: 0,
                },
                ClaimResult {
                    claim: "E3.1".into(),
                    group: "S3".into(),
                    status: Status::Informational,
                    witness: json!({"computed": "1/2", "stated": "1/3"}),
                    ms: 0,
                },
            ],
        )
    }

    #[test]
    fn json_round_trip() {
        let r = sample();
        assert_eq!(VerificationReport::from_json(&r.to_json()).unwrap(), r);
        assert_eq!(r.summary, Summary { holds: 1, fails: 0, skipped: 1, informational: 1 });
        let v: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["results"][0]["status"], json!("holds"));
        assert_eq!(v["results"][1]["status"], json!({"skipped": "group is soluble"}));
    }

    #[test]
    fn markdown_and_csv() {
        let r = sample();
        let md = r.to_markdown();
        assert!(md.contains("## P3.6i"));
        assert!(md.contains("| S4 | skipped (group is soluble) |"));
        assert_eq!(md.matches("## ").count(), 2);
        let csv = r.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("claim,group,status,reason,witness,ms"));
        assert!(lines.next().unwrap().starts_with("P3.6i,A5,holds,,"));
    }

    #[test]
    fn empty_report() {
        let r = VerificationReport::new(vec![], vec![]);
        assert_eq!(r.summary, Summary::default());
        assert!(r.passed());
    }
}
