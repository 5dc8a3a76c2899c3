use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::catalog::{CatalogEntry, GroupSpec, Tier, DEFAULT_TIER_THRESHOLD};
use crate::error::{Error, Result};
use crate::graph::{
    build_graph, canonical_certificate, metrics, GraphCertificate, GraphMetrics, SolubilityGraph,
    DEFAULT_NODE_BUDGET,
};
use crate::permgroup::{quotient, PermutationGroup, QuotientMap};
use crate::solubility::{
    edge_count_formula, ClassSolubility, DegreeData, ExactProbability, Limits, SolubilityContext,
};

/// Identifies a cached artifact. Implementations add the toolkit version.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ArtifactKey {
    pub spec: String,
    pub kind: &'static str,
    pub params: String,
}

/// Persistent storage for expensive intermediate results.
pub trait ArtifactStore: Send + Sync {
    fn load(&self, key: &ArtifactKey) -> Option<Vec<u8>>;
    fn save(&self, key: &ArtifactKey, payload: &[u8]);
}

/// Stores nothing.
pub struct NoStore;

impl ArtifactStore for NoStore {
    fn load(&self, _: &ArtifactKey) -> Option<Vec<u8>> {
        None
    }

    fn save(&self, _: &ArtifactKey, _: &[u8]) {}
}

#[derive(Clone, Copy, Debug)]
pub struct WorkbenchConfig {
    pub limits: Limits,
    pub tier_threshold: u64,
    pub node_budget: u64,
}

impl Default for WorkbenchConfig {
    fn default() -> Self {
        WorkbenchConfig {
            limits: Limits::default(),
            tier_threshold: DEFAULT_TIER_THRESHOLD,
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }
}

/// Builds solubility contexts through an artifact store.
#[derive(Clone)]
pub struct ContextSource {
    pub config: WorkbenchConfig,
    store: Arc<dyn ArtifactStore>,
}

impl ContextSource {
    pub fn new(config: WorkbenchConfig, store: Arc<dyn ArtifactStore>) -> Self {
        ContextSource { config, store }
    }

    /// Parameters include a digest of the generators, so a generator file
    /// edited under the same spec gets a fresh key.
    fn key(&self, spec: &str, group: &PermutationGroup, kind: &'static str) -> ArtifactKey {
        let mut h = Sha256::new();
        h.update(group.degree().to_le_bytes());
        for g in group.generators() {
            h.update(g.to_string().as_bytes());
            h.update(b";");
        }
        let generators = hex::encode(h.finalize());
        let params = match kind {
            "certificate" => format!("nodes={};generators={generators}", self.config.node_budget),
            _ => format!("enumeration={};generators={generators}", self.config.limits.enumeration),
        };
        ArtifactKey {
            spec: spec.to_string(),
            kind,
            params,
        }
    }

    /// Context for `group`, cached under the name `spec`.
    pub fn context(&self, spec: &str, group: PermutationGroup) -> Result<SolubilityContext> {
        let key = self.key(spec, &group, "class-solubility");
        let limits = self.config.limits;
        if let Some(bytes) = self.store.load(&key) {
            if let Ok(data) = serde_json::from_slice::<ClassSolubility>(&bytes) {
                if let Ok(ctx) = SolubilityContext::from_class_data(group.clone(), limits, &data) {
                    return Ok(ctx);
                }
            }
        }
        let ctx = SolubilityContext::new(group, limits)?;
        let payload = serde_json::to_vec(&ctx.class_data()).expect("serializable");
        self.store.save(&key, &payload);
        Ok(ctx)
    }

    pub fn certificate(
        &self,
        spec: &str,
        group: &PermutationGroup,
        graph: &SolubilityGraph,
    ) -> Result<GraphCertificate> {
        let key = self.key(spec, group, "certificate");
        if let Some(bytes) = self.store.load(&key) {
            if let Ok(cert) = serde_json::from_slice::<GraphCertificate>(&bytes) {
                if cert.labeling.len() == graph.n() {
                    return Ok(cert);
                }
            }
        }
        let cert = canonical_certificate(graph.adjacency(), self.config.node_budget)?;
        self.store
            .save(&key, &serde_json::to_vec(&cert).expect("serializable"));
        Ok(cert)
    }
}

/// `G/R(G)` with its own context.
pub struct RadicalQuotient {
    pub map: QuotientMap,
    pub ctx: SolubilityContext,
}

/// Graph-level data, present for insoluble full-tier groups.
pub struct GraphData {
    pub graph: SolubilityGraph,
    pub metrics: GraphMetrics,
    pub certificate: GraphCertificate,
}

/// Everything the checkers read about one group.
pub struct Prepared {
    pub entry: CatalogEntry,
    pub ctx: SolubilityContext,
    pub solubility_degree: ExactProbability,
    pub commutativity_degree: ExactProbability,
    pub is_abelian: bool,
    pub is_simple: bool,
    /// Insoluble groups only.
    pub degrees: Option<DegreeData>,
    /// Edge count from the solubility degree; insoluble groups only.
    pub formula_edges: Option<u64>,
    pub graph: Option<GraphData>,
    /// Present when `1 < |R(G)| < |G|`.
    pub radical_quotient: Option<RadicalQuotient>,
}

impl Prepared {
    pub fn build(entry: CatalogEntry, source: &ContextSource) -> Result<Prepared> {
        let name = entry.name();
        let ctx = source.context(&name, entry.group.clone())?;
        let insoluble = !ctx.is_soluble_group();
        let solubility_degree = ctx.solubility_degree();
        let degrees = if insoluble { Some(ctx.degree_data()?) } else { None };
        let formula_edges = if insoluble {
            Some(edge_count_formula(ctx.order(), &solubility_degree, ctx.radical_order())?)
        } else {
            None
        };
        let graph = if insoluble && entry.tier == Tier::FullGraph {
            let graph = build_graph(&ctx, source.config.tier_threshold)?;
            let metrics = metrics(graph.adjacency());
            let certificate = source.certificate(&name, ctx.group(), &graph)?;
            Some(GraphData {
                graph,
                metrics,
                certificate,
            })
        } else {
            None
        };
        let r = ctx.radical_order();
        let radical_quotient = if r > 1 && r < ctx.order() {
            let map = quotient(ctx.group(), ctx.radical())?;
            let qctx = source.context(&format!("{name} / R"), map.image().clone())?;
            Some(RadicalQuotient { map, ctx: qctx })
        } else {
            None
        };
        Ok(Prepared {
            commutativity_degree: ctx.commutativity_degree(),
            is_abelian: ctx.group().is_abelian(),
            is_simple: ctx.is_simple(),
            solubility_degree,
            degrees,
            formula_edges,
            graph,
            radical_quotient,
            entry,
            ctx,
        })
    }

    pub fn name(&self) -> String {
        self.entry.name()
    }

    pub fn is_insoluble(&self) -> bool {
        !self.ctx.is_soluble_group()
    }
}

/// Prepared data for a catalog plus auxiliary groups some checkers compare
/// against.
pub struct Workbench {
    pub source: ContextSource,
    pub entries: Vec<(String, Result<Prepared>)>,
    aux: BTreeMap<String, Result<Prepared>>,
}

impl Workbench {
    /// Prepares every entry, in parallel across entries. `aux_specs` name
    /// extra groups that are prepared if absent from `entries`.
    pub fn prepare(
        entries: Vec<CatalogEntry>,
        aux_specs: &[&str],
        source: ContextSource,
    ) -> Workbench {
        let names: Vec<String> = entries.iter().map(|e| e.name()).collect();
        let threshold = source.config.tier_threshold;
        let mut aux_entries = Vec::new();
        for &spec in aux_specs {
            let spec = GroupSpec::parse(spec).expect("auxiliary spec parses");
            if !names.contains(&spec.to_string()) {
                aux_entries.push(spec);
            }
        }
        let prepared: Vec<(String, Result<Prepared>)> = entries
            .into_par_iter()
            .map(|e| (e.name(), Prepared::build(e, &source)))
            .collect();
        let aux = aux_entries
            .into_par_iter()
            .map(|spec| {
                let name = spec.to_string();
                let p = CatalogEntry::new(spec, threshold).and_then(|e| Prepared::build(e, &source));
                (name, p)
            })
            .collect();
        Workbench {
            source,
            entries: prepared,
            aux,
        }
    }

    /// A prepared group by printed spec, from the catalog or the auxiliary set.
    pub fn lookup(&self, name: &str) -> Option<&Prepared> {
        self.entries
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, p)| p)
            .or_else(|| self.aux.get(name))
            .and_then(|p| p.as_ref().ok())
    }

    pub fn prepared(&self) -> impl Iterator<Item = &Prepared> {
        self.entries.iter().filter_map(|(_, p)| p.as_ref().ok())
    }

    /// Catalog entries followed by auxiliary groups, skipping failures.
    pub fn all_prepared(&self) -> impl Iterator<Item = &Prepared> {
        self.prepared()
            .chain(self.aux.values().filter_map(|p| p.as_ref().ok()))
    }

    pub fn catalog_names(&self) -> Vec<String> {
        self.entries.iter().map(|(n, _)| n.clone()).collect()
    }
}

/// Error text recorded when a group could not be prepared.
pub(crate) fn preparation_failure(err: &Error) -> String {
    format!("preparation failed: {err}")
}
