//! The solubility graph, its metrics and canonical certificates.

mod canon;
mod export;
mod metrics;

pub use canon::{
    are_isomorphic, canonical_certificate, is_isomorphism, refinement_signature, GraphCertificate, IsoVerdict,
    DEFAULT_NODE_BUDGET,
};
pub use export::{certificate_hex, encode_adjacency, parse_edge_list, write_edge_list};
pub use metrics::{direct_edge_count, metrics, GraphMetrics};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::permgroup::Permutation;
use crate::solubility::SolubilityContext;

/// Symmetric 0/1 matrix stored as packed 64-bit rows.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64);
        BitMatrix {
            n,
            words,
            bits: vec![0; n * words],
        }
    }

    /// Builds from rows of packed words, each `n.div_ceil(64)` long.
    fn from_rows(n: usize, rows: Vec<Vec<u64>>) -> Self {
        let words = n.div_ceil(64);
        let mut bits = Vec::with_capacity(n * words);
        for row in rows {
            debug_assert_eq!(row.len(), words);
            bits.extend(row);
        }
        BitMatrix { n, words, bits }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut m = BitMatrix::new(n);
        for &(i, j) in edges {
            if i >= n || j >= n || i == j {
                return Err(Error::Other(format!("invalid edge {i} {j} for {n} vertices")));
            }
            m.set_edge(i, j);
        }
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Words per row.
    pub fn words(&self) -> usize {
        self.words
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.row(i)[j / 64] >> (j % 64) & 1 == 1
    }

    pub fn set_edge(&mut self, i: usize, j: usize) {
        let w = self.words;
        self.bits[i * w + j / 64] |= 1 << (j % 64);
        self.bits[j * w + i / 64] |= 1 << (i % 64);
    }

    pub fn degree(&self, i: usize) -> u64 {
        self.row(i).iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        iter_bits(self.row(i))
    }

    pub fn edge_count(&self) -> u64 {
        (0..self.n).map(|i| self.degree(i)).sum::<u64>() / 2
    }

    /// Copy with vertex `i` renamed to `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> BitMatrix {
        assert_eq!(perm.len(), self.n);
        let mut out = BitMatrix::new(self.n);
        for i in 0..self.n {
            for j in self.neighbors(i).filter(|&j| j > i) {
                out.set_edge(perm[i], perm[j]);
            }
        }
        out
    }

    pub fn is_symmetric_loopless(&self) -> bool {
        (0..self.n).all(|i| !self.get(i, i) && self.neighbors(i).all(|j| self.get(j, i)))
    }
}

pub(crate) fn iter_bits(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(k, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                None
            } else {
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(k * 64 + b)
            }
        })
    })
}

/// `Γ_S(G)`: vertices are the non-radical elements in enumeration order, and
/// distinct vertices are adjacent when they generate a soluble subgroup.
#[derive(Clone, Debug)]
pub struct SolubilityGraph {
    adjacency: BitMatrix,
    vertex_ranks: Vec<u32>,
    vertex_elements: Vec<Permutation>,
}

impl SolubilityGraph {
    pub fn n(&self) -> usize {
        self.adjacency.n()
    }

    pub fn adjacency(&self) -> &BitMatrix {
        &self.adjacency
    }

    /// Element rank of each vertex.
    pub fn vertex_ranks(&self) -> &[u32] {
        &self.vertex_ranks
    }

    pub fn vertex_elements(&self) -> &[Permutation] {
        &self.vertex_elements
    }

    pub fn vertex_of(&self, x: &Permutation) -> Option<usize> {
        self.vertex_elements.iter().position(|v| v == x)
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adjacency.get(i, j)
    }

    pub fn degree(&self, i: usize) -> u64 {
        self.adjacency.degree(i)
    }
}

fn check_buildable(ctx: &SolubilityContext, threshold: u64) -> Result<Vec<u32>> {
    if ctx.is_soluble_group() {
        return Err(Error::SolubleGroup);
    }
    if ctx.vertex_count() > threshold {
        return Err(Error::TierViolation {
            vertices: ctx.vertex_count(),
            threshold,
        });
    }
    let classes = ctx.classes();
    Ok((0..ctx.order() as u32)
        .filter(|&r| !ctx.class_in_radical(classes.class_of_rank(r as u64)))
        .collect())
}

fn assemble(ctx: &SolubilityContext, ranks: Vec<u32>, rows: Vec<Vec<u64>>) -> SolubilityGraph {
    let vertex_elements = ranks
        .iter()
        .map(|&r| ctx.elements()[r as usize].clone())
        .collect();
    SolubilityGraph {
        adjacency: BitMatrix::from_rows(ranks.len(), rows),
        vertex_ranks: ranks,
        vertex_elements,
    }
}

/// Builds the graph from the class-level solubilizers, conjugating each
/// representative's set onto the other class members.
pub fn build_graph(ctx: &SolubilityContext, threshold: u64) -> Result<SolubilityGraph> {
    let ranks = check_buildable(ctx, threshold)?;
    let n = ranks.len();
    let mut vertex_of_rank = vec![u32::MAX; ctx.order() as usize];
    for (v, &r) in ranks.iter().enumerate() {
        vertex_of_rank[r as usize] = v as u32;
    }
    let sets = ctx.class_solubilizer_sets();
    let classes = ctx.classes();
    let chain = ctx.group().chain();
    let elements = ctx.elements();
    let words = n.div_ceil(64);
    let rows: Vec<Vec<u64>> = ranks
        .par_iter()
        .enumerate()
        .map(|(v, &r)| {
            let g = classes.conjugator(r as u64);
            let mut row = vec![0u64; words];
            for &s in &sets[classes.class_of_rank(r as u64)] {
                let y = elements[s as usize].conjugate_by(g);
                let ry = chain.rank(&y).expect("conjugate is a member");
                let w = vertex_of_rank[ry as usize];
                if w != u32::MAX && w as usize != v {
                    row[w as usize / 64] |= 1 << (w % 64);
                }
            }
            row
        })
        .collect();
    Ok(assemble(ctx, ranks, rows))
}

/// Builds the graph by testing every vertex pair directly. Independent of the
/// class reduction; used as a cross-check.
pub fn build_graph_direct(ctx: &SolubilityContext, threshold: u64) -> Result<SolubilityGraph> {
    let ranks = check_buildable(ctx, threshold)?;
    let n = ranks.len();
    let words = n.div_ceil(64);
    let rows: Vec<Vec<u64>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut row = vec![0u64; words];
            for j in 0..n {
                if i != j && ctx.pair_soluble_ranks(ranks[i], ranks[j])? {
                    row[j / 64] |= 1 << (j % 64);
                }
            }
            Ok(row)
        })
        .collect::<Result<_>>()?;
    Ok(assemble(ctx, ranks, rows))
}
