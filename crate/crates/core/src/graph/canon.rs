//! Canonical labeling by individualization and refinement.
//!
//! Vertices with equal closed neighbourhoods (closed twins) are first merged;
//! isomorphisms permute twin classes, so the graph is determined up to
//! isomorphism by the quotient coloured with class sizes. The quotient is
//! canonised by a backtracking search:
//!
//! - refinement is colour refinement to the coarsest equitable partition,
//!   new cells ordered by (old cell, neighbour counts per old cell);
//! - the target cell is the first smallest non-singleton cell, and its
//!   vertices are tried in index order;
//! - every node carries a hash of its equitable partition; a leaf is ranked
//!   by (sequence of node hashes, adjacency encoding) and the greatest leaf
//!   is canonical;
//! - leaves equal to the first or best leaf yield automorphisms, which prune
//!   children in the same orbit of the pointwise stabilizer of the current
//!   path.
//!
//! Expanding the canonical quotient order (twins by vertex index) gives the
//! labeling of the original graph.

use std::cmp::Ordering;
use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::export::{certificate_hex, encode_adjacency};
use super::BitMatrix;
use crate::error::{Error, Result};

/// Default cap on search-tree nodes per canonisation.
pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphCertificate {
    /// Adjacency encoding of the canonically relabeled graph.
    #[serde(with = "hex_bytes")]
    pub encoding: Vec<u8>,
    /// `labeling[v]` is the canonical position of vertex `v`.
    pub labeling: Vec<u32>,
    /// Search-tree nodes visited.
    pub nodes: u64,
    /// Number of closed-twin classes.
    pub twin_classes: usize,
}

impl GraphCertificate {
    pub fn hex(&self) -> String {
        certificate_hex(&self.encoding)
    }

    pub fn sha256(&self) -> String {
        hex::encode(Sha256::digest(&self.encoding))
    }
}

mod hex_bytes {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(bytes: &[u8], s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&hex::encode(bytes))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<u8>, D::Error> {
        let text = String::deserialize(d)?;
        hex::decode(text).map_err(serde::de::Error::custom)
    }
}

struct Fnv(u64);

impl Fnv {
    fn new() -> Self {
        Fnv(0xcbf2_9ce4_8422_2325)
    }

    fn write(&mut self, x: u64) {
        for b in x.to_le_bytes() {
            self.0 ^= b as u64;
            self.0 = self.0.wrapping_mul(0x0100_0000_01b3);
        }
    }
}

/// Ordered partition: `cell_of[v]` in `0..cells`.
#[derive(Clone)]
struct Partition {
    cell_of: Vec<u32>,
    cells: usize,
}

impl Partition {
    fn from_colors(colors: &[u64]) -> Self {
        let mut distinct: Vec<u64> = colors.to_vec();
        distinct.sort_unstable();
        distinct.dedup();
        Partition {
            cell_of: colors
                .iter()
                .map(|c| distinct.binary_search(c).expect("present") as u32)
                .collect(),
            cells: distinct.len(),
        }
    }

    fn is_discrete(&self) -> bool {
        self.cells == self.cell_of.len()
    }

    /// Splits `w` off its cell, placing it first.
    fn individualize(&self, w: usize) -> Partition {
        let c = self.cell_of[w];
        let cell_of = self
            .cell_of
            .iter()
            .enumerate()
            .map(|(v, &x)| {
                if x > c || (x == c && v != w) {
                    x + 1
                } else {
                    x
                }
            })
            .collect();
        Partition {
            cell_of,
            cells: self.cells + 1,
        }
    }

    /// First smallest non-singleton cell, as sorted vertices.
    fn target_cell(&self) -> Vec<usize> {
        let mut sizes = vec![0usize; self.cells];
        for &c in &self.cell_of {
            sizes[c as usize] += 1;
        }
        let target = (0..self.cells)
            .filter(|&c| sizes[c] > 1)
            .min_by_key(|&c| (sizes[c], c))
            .expect("partition is not discrete");
        (0..self.cell_of.len())
            .filter(|&v| self.cell_of[v] as usize == target)
            .collect()
    }
}

/// Refines to the coarsest equitable partition and returns a hash of its
/// cell sizes and quotient matrix.
fn refine(g: &BitMatrix, p: &mut Partition) -> u64 {
    let n = g.n();
    let words = g.words();
    loop {
        let mut masks = vec![0u64; p.cells * words];
        for v in 0..n {
            masks[p.cell_of[v] as usize * words + v / 64] |= 1 << (v % 64);
        }
        let signatures: Vec<Vec<u32>> = (0..n)
            .map(|v| {
                let row = g.row(v);
                let mut s = Vec::with_capacity(p.cells + 1);
                s.push(p.cell_of[v]);
                for c in 0..p.cells {
                    let mask = &masks[c * words..(c + 1) * words];
                    s.push(row.iter().zip(mask).map(|(a, b)| (a & b).count_ones()).sum());
                }
                s
            })
            .collect();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| signatures[a].cmp(&signatures[b]));
        let mut cell_of = vec![0u32; n];
        let mut cells = 0usize;
        let mut hash = Fnv::new();
        let mut run = 0u64;
        for (i, &v) in order.iter().enumerate() {
            if i > 0 && signatures[v] != signatures[order[i - 1]] {
                hash.write(run);
                run = 0;
                cells += 1;
            }
            if run == 0 {
                for &x in &signatures[v] {
                    hash.write(x as u64);
                }
            }
            run += 1;
            cell_of[v] = cells as u32;
        }
        hash.write(run);
        let cells = if n == 0 { 0 } else { cells + 1 };
        if cells == p.cells {
            return hash.0;
        }
        *p = Partition { cell_of, cells };
    }
}

/// Hash of the equitable refinement of the unit partition. Isomorphic graphs
/// have equal signatures.
pub fn refinement_signature(g: &BitMatrix) -> u64 {
    let mut p = Partition::from_colors(&vec![0; g.n()]);
    refine(g, &mut p)
}

struct Quotient {
    graph: BitMatrix,
    colors: Vec<u64>,
    /// Twin class of each original vertex.
    class_of: Vec<usize>,
}

fn twin_quotient(g: &BitMatrix) -> Quotient {
    let n = g.n();
    let mut index: HashMap<Vec<u64>, usize> = HashMap::new();
    let mut class_of = Vec::with_capacity(n);
    let mut reps = Vec::new();
    for v in 0..n {
        let mut closed = g.row(v).to_vec();
        closed[v / 64] |= 1 << (v % 64);
        let next = reps.len();
        let class = *index.entry(closed).or_insert(next);
        if class == next {
            reps.push(v);
        }
        class_of.push(class);
    }
    let m = reps.len();
    let mut colors = vec![0u64; m];
    for &c in &class_of {
        colors[c] += 1;
    }
    let mut graph = BitMatrix::new(m);
    for a in 0..m {
        for b in a + 1..m {
            if g.get(reps[a], reps[b]) {
                graph.set_edge(a, b);
            }
        }
    }
    Quotient {
        graph,
        colors,
        class_of,
    }
}

#[derive(Clone)]
struct Leaf {
    trace: Vec<u64>,
    encoding: Vec<u8>,
    /// Position of each vertex.
    lab: Vec<u32>,
    path: Vec<usize>,
}

impl Leaf {
    fn key_cmp(&self, other: &Leaf) -> Ordering {
        self.trace
            .cmp(&other.trace)
            .then_with(|| self.encoding.cmp(&other.encoding))
    }

    fn inverse(&self) -> Vec<usize> {
        let mut inv = vec![0usize; self.lab.len()];
        for (v, &p) in self.lab.iter().enumerate() {
            inv[p as usize] = v;
        }
        inv
    }
}

struct Search<'a> {
    graph: &'a BitMatrix,
    colors: &'a [u64],
    first: Option<Leaf>,
    best: Option<Leaf>,
    automorphisms: Vec<Vec<usize>>,
    nodes: u64,
    budget: u64,
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

impl Search<'_> {
    fn encode(&self, lab: &[u32]) -> Vec<u8> {
        let perm: Vec<usize> = lab.iter().map(|&p| p as usize).collect();
        let mut by_position = vec![0u64; lab.len()];
        for (v, &p) in perm.iter().enumerate() {
            by_position[p] = self.colors[v];
        }
        let mut out: Vec<u8> = by_position.iter().flat_map(|c| c.to_be_bytes()).collect();
        out.extend(encode_adjacency(&self.graph.relabel(&perm)));
        out
    }

    /// Orbit representatives among `cell` under the stored automorphisms
    /// that fix `path` pointwise, tested for `w` against `explored`.
    fn equivalent_to_explored(&self, path: &[usize], explored: &[usize], w: usize) -> bool {
        if explored.is_empty() {
            return false;
        }
        let n = self.graph.n();
        let mut parent: Vec<usize> = (0..n).collect();
        for gamma in &self.automorphisms {
            if path.iter().all(|&v| gamma[v] == v) {
                for v in 0..n {
                    let (a, b) = (find(&mut parent, v), find(&mut parent, gamma[v]));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        let root = find(&mut parent, w);
        explored.iter().any(|&e| find(&mut parent, e) == root)
    }

    /// Records the automorphism taking `leaf` onto `target` and returns the
    /// depth to backjump to when it maps the leaf's path onto the target's.
    fn automorphism(&mut self, leaf: &Leaf, target: &Leaf) -> Option<usize> {
        let inv = target.inverse();
        let gamma: Vec<usize> = leaf.lab.iter().map(|&p| inv[p as usize]).collect();
        let maps_path = leaf
            .path
            .iter()
            .zip(&target.path)
            .all(|(&u, &t)| gamma[u] == t);
        let divergence = leaf.path.iter().zip(&target.path).position(|(u, t)| u != t);
        self.automorphisms.push(gamma);
        if maps_path {
            divergence
        } else {
            None
        }
    }

    fn leaf(&mut self, p: &Partition, trace: &[u64], path: &[usize]) -> Option<usize> {
        let leaf = Leaf {
            trace: trace.to_vec(),
            encoding: self.encode(&p.cell_of),
            lab: p.cell_of.clone(),
            path: path.to_vec(),
        };
        let Some(first) = self.first.clone() else {
            self.best = Some(leaf.clone());
            self.first = Some(leaf);
            return None;
        };
        if leaf.key_cmp(&first) == Ordering::Equal {
            return self.automorphism(&leaf, &first);
        }
        let best = self.best.clone().expect("set with first");
        match leaf.key_cmp(&best) {
            Ordering::Greater => {
                self.best = Some(leaf);
                None
            }
            Ordering::Equal => self.automorphism(&leaf, &best),
            Ordering::Less => None,
        }
    }

    /// Returns `Some(d)` to abandon everything below the node at depth `d`
    /// other than that node's remaining children.
    fn visit(&mut self, p: Partition, trace: &mut Vec<u64>, path: &mut Vec<usize>) -> Result<Option<usize>> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded {
                what: "canonical-labeling nodes",
                limit: self.budget,
            });
        }
        if let Some(best) = &self.best {
            let common = trace.len().min(best.trace.len());
            if trace[..common] < best.trace[..common] {
                return Ok(None);
            }
        }
        if p.is_discrete() {
            return Ok(self.leaf(&p, trace, path));
        }
        let depth = path.len();
        let mut explored = Vec::new();
        for w in p.target_cell() {
            if self.equivalent_to_explored(path, &explored, w) {
                continue;
            }
            let mut child = p.individualize(w);
            trace.push(refine(self.graph, &mut child));
            path.push(w);
            let jump = self.visit(child, trace, path)?;
            trace.pop();
            path.pop();
            explored.push(w);
            if let Some(d) = jump {
                if d < depth {
                    return Ok(Some(d));
                }
            }
        }
        Ok(None)
    }
}

fn canonical_quotient_labeling(q: &Quotient, budget: u64) -> Result<(Vec<u32>, u64)> {
    let m = q.graph.n();
    let mut root = Partition::from_colors(&q.colors);
    let hash = refine(&q.graph, &mut root);
    if m == 0 {
        return Ok((Vec::new(), 1));
    }
    let mut search = Search {
        graph: &q.graph,
        colors: &q.colors,
        first: None,
        best: None,
        automorphisms: Vec::new(),
        nodes: 0,
        budget,
    };
    search.visit(root, &mut vec![hash], &mut Vec::new())?;
    let best = search.best.expect("search reaches a leaf");
    Ok((best.lab, search.nodes))
}

/// Canonical form of `g` within a search budget of `budget` nodes.
pub fn canonical_certificate(g: &BitMatrix, budget: u64) -> Result<GraphCertificate> {
    let q = twin_quotient(g);
    let (class_position, nodes) = canonical_quotient_labeling(&q, budget)?;
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by_key(|&v| (class_position[q.class_of[v]], v));
    let mut labeling = vec![0u32; g.n()];
    for (pos, &v) in order.iter().enumerate() {
        labeling[v] = pos as u32;
    }
    let perm: Vec<usize> = labeling.iter().map(|&p| p as usize).collect();
    Ok(GraphCertificate {
        encoding: encode_adjacency(&g.relabel(&perm)),
        labeling,
        nodes,
        twin_classes: q.graph.n(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoVerdict {
    pub isomorphic: bool,
    /// Which test decided the verdict.
    pub decided_by: String,
    /// `bijection[v]` is the image in the second graph of vertex `v` of the
    /// first, verified on every pair.
    pub bijection: Option<Vec<u32>>,
    pub nodes: u64,
}

impl IsoVerdict {
    fn rejected(reason: &str, nodes: u64) -> Self {
        IsoVerdict {
            isomorphic: false,
            decided_by: reason.into(),
            bijection: None,
            nodes,
        }
    }
}

pub fn are_isomorphic(g1: &BitMatrix, g2: &BitMatrix, budget: u64) -> Result<IsoVerdict> {
    if g1.n() != g2.n() {
        return Ok(IsoVerdict::rejected("vertex count", 0));
    }
    let degrees = |g: &BitMatrix| {
        let mut d: Vec<u64> = (0..g.n()).map(|v| g.degree(v)).collect();
        d.sort_unstable();
        d
    };
    if degrees(g1) != degrees(g2) {
        return Ok(IsoVerdict::rejected("degree sequence", 0));
    }
    if refinement_signature(g1) != refinement_signature(g2) {
        return Ok(IsoVerdict::rejected("refinement signature", 0));
    }
    let c1 = canonical_certificate(g1, budget)?;
    let c2 = canonical_certificate(g2, budget)?;
    let nodes = c1.nodes + c2.nodes;
    if c1.encoding != c2.encoding {
        return Ok(IsoVerdict::rejected("certificate", nodes));
    }
    let mut at_position = vec![0u32; g2.n()];
    for (v, &p) in c2.labeling.iter().enumerate() {
        at_position[p as usize] = v as u32;
    }
    let bijection: Vec<u32> = c1.labeling.iter().map(|&p| at_position[p as usize]).collect();
    if !is_isomorphism(g1, g2, &bijection) {
        return Err(Error::Other(
            "equal certificates but the induced bijection is not an isomorphism".into(),
        ));
    }
    Ok(IsoVerdict {
        isomorphic: true,
        decided_by: "certificate".into(),
        bijection: Some(bijection),
        nodes,
    })
}

/// Whether `map` is a bijection preserving adjacency and non-adjacency.
pub fn is_isomorphism(g1: &BitMatrix, g2: &BitMatrix, map: &[u32]) -> bool {
    let n = g1.n();
    if g2.n() != n || map.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &x in map {
        if x as usize >= n || std::mem::replace(&mut seen[x as usize], true) {
            return false;
        }
    }
    (0..n).all(|i| (i + 1..n).all(|j| g1.get(i, j) == g2.get(map[i] as usize, map[j] as usize)))
}
