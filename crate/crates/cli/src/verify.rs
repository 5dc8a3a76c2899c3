use std::fmt::Write;

use clap::Args;
use serde_json::json;
use solgraph::catalog::{standard_catalog_with_threshold, CatalogEntry, GroupSpec};
use solgraph::verifier::{verify, Plan, VerificationReport, CLAIMS};

use crate::{Failure, Format, Session, EXIT_CHECK_FAILED};

#[derive(Args)]
pub struct VerifyArgs {
    /// Run every claim (the default when no --claim is given).
    #[arg(long)]
    pub all: bool,
    /// Claim id to run; repeatable.
    #[arg(long = "claim", conflicts_with = "all")]
    pub claims: Vec<String>,
    /// Restrict to these groups instead of the standard catalog; repeatable.
    #[arg(long = "group")]
    pub groups: Vec<String>,
}

fn catalog(session: &Session, groups: &[String]) -> Result<Vec<CatalogEntry>, Failure> {
    let threshold = session.args.tier_threshold;
    let standard = standard_catalog_with_threshold(threshold);
    if groups.is_empty() {
        return Ok(standard);
    }
    let mut out: Vec<CatalogEntry> = Vec::new();
    for text in groups {
        let spec = GroupSpec::parse(text)?;
        let name = spec.to_string();
        if out.iter().any(|e| e.name() == name) {
            continue;
        }
        let entry = match standard.iter().find(|e| e.name() == name) {
            Some(e) => e.clone(),
            None => CatalogEntry::new(spec, threshold)?,
        };
        out.push(entry);
    }
    Ok(out)
}

pub fn render(report: &VerificationReport, format: Format) -> String {
    match format {
        Format::Json => report.to_json(),
        Format::Md => report.to_markdown(),
        Format::Csv => report.to_csv(),
    }
}

pub fn run(session: &Session, args: &VerifyArgs) -> Result<u8, Failure> {
    let mut plan = if args.all || args.claims.is_empty() {
        Plan::all()
    } else {
        Plan::from_ids(&args.claims)?
    };
    plan.include_unsupported = args.groups.is_empty();
    let entries = catalog(session, &args.groups)?;
    let mut report = verify(&plan, entries, session.source.clone());
    if session.args.no_timings {
        report.normalize_timings();
    }
    session.emit(&render(&report, session.args.format))?;
    let s = report.summary;
    eprintln!(
        "verify: {} holds, {} fails, {} skipped, {} informational",
        s.holds, s.fails, s.skipped, s.informational
    );
    Ok(if report.passed() { 0 } else { EXIT_CHECK_FAILED })
}

pub fn list_claims(session: &Session) -> Result<u8, Failure> {
    let text = match session.args.format {
        Format::Json => {
            let rows: Vec<_> = CLAIMS
                .iter()
                .map(|c| json!({"id": c.id, "statement": c.statement, "scope": format!("{:?}", c.scope), "informational": c.informational}))
                .collect();
            serde_json::to_string_pretty(&rows).expect("serializable")
        }
        Format::Md => {
            let mut out = String::from("| id | checks | scope |\n|---|---|---|\n");
            for c in CLAIMS {
                let note = if c.informational { " (informational)" } else { "" };
                writeln!(out, "| {} | {}{} | {:?} |", c.id, c.statement.replace('|', "\\|"), note, c.scope).unwrap();
            }
            out
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["id", "statement", "scope", "informational"]).expect("in-memory write");
            for c in CLAIMS {
                w.write_record([c.id, c.statement, &format!("{:?}", c.scope), &c.informational.to_string()])
                    .expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
        }
    };
    session.emit(&text)?;
    Ok(0)
}
