//! One checker per claim, run across a catalog into a verification report.
//!
//! Claim ids such as `P3.6i` are opaque identifiers; [`CLAIMS`] carries the
//! statement each one checks.

mod claims;
mod report;
mod workbench;

use std::time::Instant;

use rayon::prelude::*;
use serde_json::Value;

pub use claims::{find_claim, Claim, Scope, CLAIMS, UNSUPPORTED_SIMPLE};
pub use report::{ClaimResult, Status, Summary, VerificationReport};
pub use workbench::{
    ArtifactKey, ArtifactStore, ContextSource, GraphData, NoStore, Prepared, RadicalQuotient,
    Workbench, WorkbenchConfig,
};

use crate::catalog::CatalogEntry;
use crate::error::{Error, Result};

/// Groups some checkers compare against, prepared even when the catalog
/// omits them.
pub const AUXILIARY_SPECS: &[&str] = &["SL(2,5)", "A5 x C2"];

/// An ordered list of claims to check.
#[derive(Clone)]
pub struct Plan {
    claims: Vec<&'static Claim>,
    /// Emit skipped rows for groups a claim names but no construction covers.
    pub include_unsupported: bool,
}

impl Plan {
    pub fn all() -> Plan {
        Plan {
            claims: CLAIMS.iter().collect(),
            include_unsupported: true,
        }
    }

    /// Rejects unknown ids. Duplicates keep their first position.
    pub fn from_ids<S: AsRef<str>>(ids: &[S]) -> Result<Plan> {
        let mut claims: Vec<&'static Claim> = Vec::new();
        for id in ids {
            let c = find_claim(id.as_ref()).ok_or_else(|| Error::UnknownClaim(id.as_ref().to_string()))?;
            if !claims.iter().any(|x| x.id == c.id) {
                claims.push(c);
            }
        }
        Ok(Plan {
            claims,
            include_unsupported: true,
        })
    }

    pub fn ids(&self) -> Vec<&'static str> {
        self.claims.iter().map(|c| c.id).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.claims.is_empty()
    }

    /// Whether any claim reads groups other than the one it runs on.
    pub fn needs_auxiliary(&self) -> bool {
        self.claims
            .iter()
            .any(|c| matches!(c.id, "S4-iso-example" | "P4-vertexcount" | "P5.3"))
    }
}

fn skipped(claim: &str, group: &str, reason: String) -> ClaimResult {
    ClaimResult {
        claim: claim.to_string(),
        group: group.to_string(),
        status: Status::Skipped(reason),
        witness: Value::Null,
        ms: 0,
    }
}

fn run_prepared(claim: &Claim, wb: &Workbench, p: &Prepared) -> ClaimResult {
    let name = p.name();
    if let Some(reason) = claim.scope.skip_reason(p) {
        return skipped(claim.id, &name, reason.to_string());
    }
    let start = Instant::now();
    let (status, witness) = match (claim.check)(wb, p) {
        Ok((Status::Fails, w)) if claim.informational => (Status::Informational, w),
        Ok(out) => out,
        Err(e) if e.is_budget_error() => (Status::Skipped(e.to_string()), Value::Null),
        Err(e) => (Status::Fails, serde_json::json!({"error": e.to_string()})),
    };
    ClaimResult {
        claim: claim.id.to_string(),
        group: name,
        status,
        witness,
        ms: start.elapsed().as_millis() as u64,
    }
}

/// Runs one claim on one prepared catalog entry.
pub fn run_claim(claim_id: &str, wb: &Workbench, group: &str) -> Result<ClaimResult> {
    let claim = find_claim(claim_id).ok_or_else(|| Error::UnknownClaim(claim_id.to_string()))?;
    match wb.entries.iter().find(|(n, _)| n == group) {
        Some((_, Ok(p))) => Ok(run_prepared(claim, wb, p)),
        Some((_, Err(e))) => Ok(skipped(claim.id, group, workbench::preparation_failure(e))),
        None => Err(Error::Other(format!("group `{group}` is not in the catalog"))),
    }
}

/// Runs every claim of `plan` on every catalog entry of `wb`. Results are
/// ordered by plan position, then catalog position, whatever the thread
/// count.
pub fn run_suite(plan: &Plan, wb: &Workbench) -> VerificationReport {
    let pairs: Vec<(&Claim, usize)> = plan
        .claims
        .iter()
        .flat_map(|&c| (0..wb.entries.len()).map(move |i| (c, i)))
        .collect();
    let computed: Vec<ClaimResult> = pairs
        .par_iter()
        .map(|&(claim, i)| match &wb.entries[i] {
            (_, Ok(p)) => run_prepared(claim, wb, p),
            (name, Err(e)) => skipped(claim.id, name, workbench::preparation_failure(e)),
        })
        .collect();
    let per_claim = wb.entries.len();
    let mut results = Vec::with_capacity(computed.len());
    let mut chunks = computed.into_iter();
    for claim in &plan.claims {
        results.extend(chunks.by_ref().take(per_claim));
        if claim.id == "P3.9" && plan.include_unsupported {
            for group in UNSUPPORTED_SIMPLE {
                results.push(skipped(claim.id, group, "construction unsupported".into()));
            }
        }
    }
    VerificationReport::new(wb.catalog_names(), results)
}

/// Prepares `entries` and runs `plan` on them.
pub fn verify(plan: &Plan, entries: Vec<CatalogEntry>, source: ContextSource) -> VerificationReport {
    if plan.is_empty() {
        return VerificationReport::new(entries.iter().map(|e| e.name()).collect(), Vec::new());
    }
    let aux: &[&str] = if plan.needs_auxiliary() { AUXILIARY_SPECS } else { &[] };
    run_suite(plan, &Workbench::prepare(entries, aux, source))
}
