//! Named group constructions, the group-spec language and the standard corpus.
//!
//! Grammar: `atom ( 'x' atom )*` with atoms `A n`, `S n`, `C n`, `D n`
//! (dihedral of order `n`), `PSL(2,q)`, `SL(2,q)` and `file:path`, all
//! case-insensitive. `×` is accepted as a product sign.

mod build;
mod spec;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use build::{alternating, build, build_atom, cyclic, dihedral, psl2, sl2, symmetric};
pub use spec::{Atom, GroupSpec, MAX_FIELD_PRIME};

use crate::error::Result;
use crate::permgroup::PermutationGroup;
use crate::solubility::soluble_radical;

/// Default largest vertex count for which the graph is materialized.
pub const DEFAULT_TIER_THRESHOLD: u64 = 500;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Tier {
    FullGraph,
    InvariantOnly,
}

impl Tier {
    pub fn for_vertex_count(vertices: u64, threshold: u64) -> Tier {
        if vertices <= threshold {
            Tier::FullGraph
        } else {
            Tier::InvariantOnly
        }
    }
}

impl fmt::Display for Tier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tier::FullGraph => "full-graph",
            Tier::InvariantOnly => "invariant-only",
        })
    }
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub spec: GroupSpec,
    pub group: PermutationGroup,
    pub tier: Tier,
    pub expected_insoluble: bool,
    pub order: u64,
    pub radical_order: u64,
}

impl CatalogEntry {
    /// Builds the group and assigns its tier from `|G| − |R(G)|`.
    pub fn new(spec: GroupSpec, threshold: u64) -> Result<Self> {
        let group = build(&spec)?;
        let order = group.order() as u64;
        let radical_order = soluble_radical(&group)?.order() as u64;
        Ok(CatalogEntry {
            tier: Tier::for_vertex_count(order - radical_order, threshold),
            expected_insoluble: radical_order < order,
            spec,
            group,
            order,
            radical_order,
        })
    }

    pub fn vertex_count(&self) -> u64 {
        self.order - self.radical_order
    }

    pub fn name(&self) -> String {
        self.spec.to_string()
    }
}

/// Specs of the standard corpus with their expected insolubility.
pub const STANDARD_SPECS: &[(&str, bool)] = &[
    ("A5", true),
    ("S5", true),
    ("A5 x C2", true),
    ("SL(2,5)", true),
    ("PSL(2,7)", true),
    ("A6", true),
    ("C3 x A5", true),
    ("PSL(2,11)", true),
    ("PSL(2,13)", true),
    ("PSL(2,17)", true),
    ("A7", true),
    ("S3", false),
    ("S4", false),
    ("C6", false),
];

pub fn standard_catalog() -> Vec<CatalogEntry> {
    standard_catalog_with_threshold(DEFAULT_TIER_THRESHOLD)
}

pub fn standard_catalog_with_threshold(threshold: u64) -> Vec<CatalogEntry> {
    STANDARD_SPECS
        .iter()
        .map(|&(text, insoluble)| {
            let spec = GroupSpec::parse(text).expect("standard spec parses");
            let mut entry = CatalogEntry::new(spec, threshold).expect("standard group builds");
            entry.expected_insoluble = insoluble;
            entry
        })
        .collect()
}
