use std::fmt::Write;
use std::path::PathBuf;

use clap::Args;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use solgraph::catalog::{CatalogEntry, GroupSpec};
use solgraph::graph::{are_isomorphic, canonical_certificate, is_isomorphism};
use solgraph::verifier::{GraphData, Prepared};
use solgraph::Error;

use crate::{Failure, Format, Session};

#[derive(Args)]
pub struct IsoArgs {
    pub first: String,
    pub second: String,
    /// Write the verified vertex bijection here when isomorphic.
    #[arg(long)]
    pub bijection: Option<PathBuf>,
    /// Also canonicalize this many random relabelings of the first graph.
    #[arg(long, default_value_t = 0)]
    pub relabel_trials: u32,
}

#[derive(Serialize)]
struct Side {
    group: String,
    vertices: usize,
    edges: u64,
    certificate_sha256: String,
}

#[derive(Serialize)]
struct RelabelTrials {
    trials: u32,
    seed: u64,
    all_identical: bool,
}

#[derive(Serialize)]
struct IsoReport {
    first: Side,
    second: Side,
    isomorphic: bool,
    decided_by: String,
    bijection_verified: Option<bool>,
    search_nodes: u64,
    relabel_trials: Option<RelabelTrials>,
}

fn prepare(session: &Session, text: &str) -> Result<Prepared, Failure> {
    let threshold = session.args.tier_threshold;
    let entry = CatalogEntry::new(GroupSpec::parse(text)?, threshold)?;
    if !entry.expected_insoluble {
        return Err(Error::SolubleGroup.into());
    }
    if entry.vertex_count() > threshold {
        return Err(Error::TierViolation {
            vertices: entry.vertex_count(),
            threshold,
        }
        .into());
    }
    Ok(Prepared::build(entry, &session.source)?)
}

fn side(p: &Prepared) -> Side {
    let g = p.graph.as_ref().expect("full tier");
    Side {
        group: p.name(),
        vertices: g.graph.n(),
        edges: g.metrics.edge_count,
        certificate_sha256: g.certificate.sha256(),
    }
}

fn relabel_trials(g: &GraphData, trials: u32, seed: u64, budget: u64) -> Result<RelabelTrials, Failure> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let adj = g.graph.adjacency();
    let mut all_identical = true;
    for _ in 0..trials {
        let mut perm: Vec<usize> = (0..adj.n()).collect();
        perm.shuffle(&mut rng);
        let cert = canonical_certificate(&adj.relabel(&perm), budget)?;
        all_identical &= cert.encoding == g.certificate.encoding;
    }
    Ok(RelabelTrials {
        trials,
        seed,
        all_identical,
    })
}

fn render(r: &IsoReport, format: Format) -> String {
    let rows = [
        ("first", format!("{} ({} vertices, {} edges)", r.first.group, r.first.vertices, r.first.edges)),
        ("second", format!("{} ({} vertices, {} edges)", r.second.group, r.second.vertices, r.second.edges)),
        ("isomorphic", r.isomorphic.to_string()),
        ("decided_by", r.decided_by.clone()),
        (
            "bijection_verified",
            r.bijection_verified.map_or("-".into(), |b| b.to_string()),
        ),
        ("search_nodes", r.search_nodes.to_string()),
        (
            "relabel_trials",
            r.relabel_trials
                .as_ref()
                .map_or("-".into(), |t| format!("{} (seed {}), identical: {}", t.trials, t.seed, t.all_identical)),
        ),
    ];
    match format {
        Format::Json => serde_json::to_string_pretty(r).expect("serializable"),
        Format::Md => {
            let mut out = String::from("| quantity | value |\n|---|---|\n");
            for (k, v) in rows {
                writeln!(out, "| {k} | {v} |").unwrap();
            }
            out
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["quantity", "value"]).expect("in-memory write");
            for (k, v) in rows {
                w.write_record([k, v.as_str()]).expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
        }
    }
}

pub fn run(session: &Session, args: &IsoArgs) -> Result<u8, Failure> {
    let a = prepare(session, &args.first)?;
    let b = prepare(session, &args.second)?;
    let (ga, gb) = (a.graph.as_ref().expect("full tier"), b.graph.as_ref().expect("full tier"));
    let budget = session.args.budget_iso_nodes;
    let v = are_isomorphic(ga.graph.adjacency(), gb.graph.adjacency(), budget)?;
    let verified = v
        .bijection
        .as_ref()
        .map(|m| is_isomorphism(ga.graph.adjacency(), gb.graph.adjacency(), m));
    if let (Some(path), Some(map)) = (&args.bijection, &v.bijection) {
        let mut text = String::from("# first_vertex second_vertex first_element second_element\n");
        for (i, &j) in map.iter().enumerate() {
            let x = &ga.graph.vertex_elements()[i];
            let y = &gb.graph.vertex_elements()[j as usize];
            writeln!(text, "{i} {j} {x} {y}").unwrap();
        }
        std::fs::write(path, text)?;
    }
    let trials = if args.relabel_trials > 0 {
        Some(relabel_trials(ga, args.relabel_trials, session.args.seed, budget)?)
    } else {
        None
    };
    let report = IsoReport {
        first: side(&a),
        second: side(&b),
        isomorphic: v.isomorphic,
        decided_by: v.decided_by,
        bijection_verified: verified,
        search_nodes: v.nodes,
        relabel_trials: trials,
    };
    session.emit(&render(&report, session.args.format))?;
    let consistent = verified != Some(false) && report.relabel_trials.as_ref().is_none_or(|t| t.all_identical);
    Ok(if consistent { 0 } else { crate::EXIT_CHECK_FAILED })
}
