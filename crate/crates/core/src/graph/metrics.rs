use std::collections::VecDeque;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{iter_bits, BitMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphMetrics {
    pub n: u64,
    pub edge_count: u64,
    /// Weakly decreasing.
    pub degree_sequence: Vec<u64>,
    /// `None` for a forest.
    pub girth: Option<u32>,
    /// `None` when disconnected or empty.
    pub diameter: Option<u32>,
    pub is_connected: bool,
    /// Four pairwise adjacent vertices, if any.
    pub k4_witness: Option<[u32; 4]>,
    pub is_regular: bool,
    /// `n ≥ 3` and every degree at least `n/2`.
    pub dirac_holds: bool,
    /// `|E| ≥ C(n−1, 2) + 2`.
    pub ore_bondy_edge_bound_holds: bool,
}

impl GraphMetrics {
    pub fn has_k4(&self) -> bool {
        self.k4_witness.is_some()
    }

    pub fn min_degree(&self) -> u64 {
        self.degree_sequence.last().copied().unwrap_or(0)
    }

    pub fn max_degree(&self) -> u64 {
        self.degree_sequence.first().copied().unwrap_or(0)
    }
}

/// Number of edges, from the upper triangle.
pub fn direct_edge_count(g: &BitMatrix) -> u64 {
    (0..g.n())
        .map(|i| {
            let row = g.row(i);
            let first = (i + 1) / 64;
            let mut count = 0u64;
            for (k, &w) in row.iter().enumerate().skip(first) {
                let w = if k == first {
                    // keep bits strictly above the diagonal
                    let shift = (i + 1) % 64;
                    if shift == 0 { w } else { w & !((1u64 << shift) - 1) }
                } else {
                    w
                };
                count += w.count_ones() as u64;
            }
            count
        })
        .sum()
}

pub fn metrics(g: &BitMatrix) -> GraphMetrics {
    let n = g.n();
    let mut degree_sequence: Vec<u64> = (0..n).map(|i| g.degree(i)).collect();
    degree_sequence.sort_unstable_by(|a, b| b.cmp(a));
    let edge_count = direct_edge_count(g);
    let (is_connected, diameter) = diameter(g);
    let min = degree_sequence.last().copied().unwrap_or(0);
    let n64 = n as u64;
    let ore_bound = if n64 >= 1 { (n64 - 1) * n64.saturating_sub(2) / 2 + 2 } else { 2 };
    GraphMetrics {
        n: n64,
        edge_count,
        is_regular: degree_sequence.windows(2).all(|w| w[0] == w[1]),
        girth: girth(g),
        diameter,
        is_connected,
        k4_witness: k4_witness(g),
        dirac_holds: n >= 3 && 2 * min >= n64,
        ore_bondy_edge_bound_holds: edge_count >= ore_bound,
        degree_sequence,
    }
}

fn has_triangle(g: &BitMatrix) -> bool {
    (0..g.n()).into_par_iter().any(|i| {
        g.neighbors(i)
            .filter(|&j| j > i)
            .any(|j| g.row(i).iter().zip(g.row(j)).any(|(a, b)| a & b != 0))
    })
}

/// Shortest cycle length. Triangles are tested first; otherwise a BFS from
/// every vertex finds the shortest cycle through it.
fn girth(g: &BitMatrix) -> Option<u32> {
    if has_triangle(g) {
        return Some(3);
    }
    (0..g.n())
        .into_par_iter()
        .filter_map(|s| shortest_cycle_from(g, s))
        .min()
}

fn shortest_cycle_from(g: &BitMatrix, s: usize) -> Option<u32> {
    let n = g.n();
    let mut dist = vec![u32::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut best = u32::MAX;
    dist[s] = 0;
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        if 2 * dist[u] + 1 >= best {
            break;
        }
        for v in g.neighbors(u) {
            if dist[v] == u32::MAX {
                dist[v] = dist[u] + 1;
                parent[v] = u;
                queue.push_back(v);
            } else if parent[u] != v {
                best = best.min(dist[u] + dist[v] + 1);
            }
        }
    }
    (best != u32::MAX).then_some(best)
}

/// Eccentricity of `s` by bitset BFS, or `None` if some vertex is unreachable.
fn eccentricity(g: &BitMatrix, s: usize) -> Option<u32> {
    let n = g.n();
    let words = g.words();
    let mut visited = vec![0u64; words];
    let mut frontier = vec![0u64; words];
    visited[s / 64] |= 1 << (s % 64);
    frontier[s / 64] |= 1 << (s % 64);
    let mut seen = 1;
    let mut depth = 0;
    while seen < n {
        let mut next = vec![0u64; words];
        for u in iter_bits(&frontier) {
            for (x, r) in next.iter_mut().zip(g.row(u)) {
                *x |= r;
            }
        }
        for (x, v) in next.iter_mut().zip(&visited) {
            *x &= !v;
        }
        let added: usize = next.iter().map(|w| w.count_ones() as usize).sum();
        if added == 0 {
            return None;
        }
        for (v, x) in visited.iter_mut().zip(&next) {
            *v |= x;
        }
        seen += added;
        depth += 1;
        frontier = next;
    }
    Some(depth)
}

fn diameter(g: &BitMatrix) -> (bool, Option<u32>) {
    if g.n() == 0 {
        return (false, None);
    }
    let ecc: Option<Vec<u32>> = (0..g.n())
        .into_par_iter()
        .map(|s| eccentricity(g, s))
        .collect();
    match ecc {
        Some(e) => (true, e.into_iter().max()),
        None => (false, None),
    }
}

/// The lexicographically first K4 `a < b < c < d`.
fn k4_witness(g: &BitMatrix) -> Option<[u32; 4]> {
    let words = g.words();
    for a in 0..g.n() {
        for b in g.neighbors(a).filter(|&b| b > a) {
            let ab: Vec<u64> = g.row(a).iter().zip(g.row(b)).map(|(x, y)| x & y).collect();
            for c in iter_bits(&ab).filter(|&c| c > b) {
                let abc: Vec<u64> = (0..words).map(|k| ab[k] & g.row(c)[k]).collect();
                let d = iter_bits(&abc).find(|&d| d > c);
                if let Some(d) = d {
                    return Some([a as u32, b as u32, c as u32, d as u32]);
                }
            }
        }
    }
    None
}
