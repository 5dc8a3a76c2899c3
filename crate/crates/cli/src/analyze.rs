use std::collections::BTreeMap;
use std::fmt::Write;
use std::path::PathBuf;

use clap::Args;
use serde::Serialize;
use solgraph::catalog::{CatalogEntry, GroupSpec, Tier};
use solgraph::graph::write_edge_list;
use solgraph::verifier::Prepared;
use solgraph::Error;

use crate::{Failure, Format, Session};

#[derive(Args)]
pub struct AnalyzeArgs {
    /// Group spec, e.g. "A5 x C2" or "PSL(2,7)".
    pub spec: String,
    /// Write the graph as an edge list.
    #[arg(long)]
    pub export_graph: Option<PathBuf>,
    /// Write the canonical certificate as hex.
    #[arg(long)]
    pub export_certificate: Option<PathBuf>,
}

#[derive(Serialize)]
pub struct DegreeSummary {
    pub n: u64,
    pub min_degree: u64,
    pub max_degree: u64,
    pub distinct: Vec<u64>,
    /// Degree to number of vertices.
    pub counts: BTreeMap<u64, u64>,
}

#[derive(Serialize)]
pub struct GraphSummary {
    pub edges: u64,
    pub girth: Option<u32>,
    pub diameter: Option<u32>,
    pub connected: bool,
    pub k4_witness: Option<[u32; 4]>,
    pub regular: bool,
    pub certificate_sha256: String,
    pub certificate_nodes: u64,
}

#[derive(Serialize)]
pub struct Analysis {
    pub version: &'static str,
    pub group: String,
    pub order: u64,
    pub soluble: bool,
    pub radical_order: u64,
    pub class_count: u64,
    pub ps: String,
    pub pr: String,
    pub tier: Tier,
    pub edges_formula: Option<u64>,
    pub degrees: Option<DegreeSummary>,
    pub graph: Option<GraphSummary>,
}

impl Analysis {
    fn of(p: &Prepared) -> Analysis {
        Analysis {
            version: solgraph::VERSION,
            group: p.name(),
            order: p.ctx.order(),
            soluble: !p.is_insoluble(),
            radical_order: p.ctx.radical_order(),
            class_count: p.ctx.classes().count() as u64,
            ps: p.solubility_degree.to_string(),
            pr: p.commutativity_degree.to_string(),
            tier: p.entry.tier,
            edges_formula: p.formula_edges,
            degrees: p.degrees.as_ref().map(|d| DegreeSummary {
                n: d.n,
                min_degree: d.min_degree,
                max_degree: d.max_degree,
                distinct: d.degree_set(),
                counts: d.degree_counts.clone(),
            }),
            graph: p.graph.as_ref().map(|g| GraphSummary {
                edges: g.metrics.edge_count,
                girth: g.metrics.girth,
                diameter: g.metrics.diameter,
                connected: g.metrics.is_connected,
                k4_witness: g.metrics.k4_witness,
                regular: g.metrics.is_regular,
                certificate_sha256: g.certificate.sha256(),
                certificate_nodes: g.certificate.nodes,
            }),
        }
    }

    /// Flat `(key, value)` rows shared by the Markdown and CSV renderings.
    fn rows(&self) -> Vec<(String, String)> {
        let opt = |x: Option<String>| x.unwrap_or_else(|| "-".into());
        let mut rows = vec![
            ("group".into(), self.group.clone()),
            ("order".into(), self.order.to_string()),
            ("soluble".into(), self.soluble.to_string()),
            ("radical_order".into(), self.radical_order.to_string()),
            ("class_count".into(), self.class_count.to_string()),
            ("ps".into(), self.ps.clone()),
            ("pr".into(), self.pr.clone()),
            ("tier".into(), self.tier.to_string()),
            ("edges_formula".into(), opt(self.edges_formula.map(|e| e.to_string()))),
        ];
        if let Some(d) = &self.degrees {
            rows.push(("vertices".into(), d.n.to_string()));
            rows.push(("min_degree".into(), d.min_degree.to_string()));
            rows.push(("max_degree".into(), d.max_degree.to_string()));
            let counts: Vec<String> = d.counts.iter().map(|(k, v)| format!("{k}^{v}")).collect();
            rows.push(("degree_pattern".into(), counts.join(" ")));
        }
        if let Some(g) = &self.graph {
            rows.push(("edges".into(), g.edges.to_string()));
            rows.push(("girth".into(), opt(g.girth.map(|x| x.to_string()))));
            rows.push(("diameter".into(), opt(g.diameter.map(|x| x.to_string()))));
            rows.push(("connected".into(), g.connected.to_string()));
            rows.push(("k4_witness".into(), opt(g.k4_witness.map(|k| format!("{k:?}")))));
            rows.push(("regular".into(), g.regular.to_string()));
            rows.push(("certificate_sha256".into(), g.certificate_sha256.clone()));
        }
        rows
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("serializable"),
            Format::Md => {
                let mut out = format!("# {}\n\n| quantity | value |\n|---|---|\n", self.group);
                for (k, v) in self.rows() {
                    writeln!(out, "| {k} | {v} |").unwrap();
                }
                out
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(["quantity", "value"]).expect("in-memory write");
                for (k, v) in self.rows() {
                    w.write_record([k, v]).expect("in-memory write");
                }
                String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
            }
        }
    }
}

pub fn run(session: &Session, args: &AnalyzeArgs) -> Result<u8, Failure> {
    let spec = GroupSpec::parse(&args.spec)?;
    let entry = CatalogEntry::new(spec, session.args.tier_threshold)?;
    let wants_graph = args.export_graph.is_some() || args.export_certificate.is_some();
    if wants_graph && entry.expected_insoluble && entry.tier == Tier::InvariantOnly {
        return Err(Error::TierViolation {
            vertices: entry.vertex_count(),
            threshold: session.args.tier_threshold,
        }
        .into());
    }
    let p = Prepared::build(entry, &session.source)?;
    if wants_graph {
        let g = p.graph.as_ref().ok_or(Error::SolubleGroup)?;
        if let Some(path) = &args.export_graph {
            std::fs::write(path, write_edge_list(g.graph.adjacency()))?;
        }
        if let Some(path) = &args.export_certificate {
            std::fs::write(path, format!("{}\n", g.certificate.hex()))?;
        }
    }
    session.emit(&Analysis::of(&p).render(session.args.format))?;
    Ok(0)
}
