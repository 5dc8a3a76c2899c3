//! Text and byte formats for graphs.
//!
//! Edge list: a header line `n m`, then one `i j` line per edge with
//! `0 ≤ i < j < n`, sorted.
//!
//! Adjacency encoding: `n` as 4 big-endian bytes followed by the upper
//! triangle `(0,1), (0,2), …, (0,n−1), (1,2), …` one bit per pair, most
//! significant bit first, zero-padded to a whole byte.

use std::fmt::Write;

use super::BitMatrix;
use crate::error::{Error, Result};

pub fn write_edge_list(g: &BitMatrix) -> String {
    let mut out = String::new();
    writeln!(out, "{} {}", g.n(), g.edge_count()).expect("string write");
    for i in 0..g.n() {
        for j in g.neighbors(i).filter(|&j| j > i) {
            writeln!(out, "{i} {j}").expect("string write");
        }
    }
    out
}

pub fn parse_edge_list(text: &str) -> Result<BitMatrix> {
    let bad = |line: usize, msg: &str| Error::Other(format!("edge list line {line}: {msg}"));
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = lines.next().ok_or_else(|| bad(1, "missing header"))?;
    let nums: Vec<usize> = header
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| bad(1, "expected `n m`")))
        .collect::<Result<_>>()?;
    let [n, m] = nums[..] else {
        return Err(bad(1, "expected `n m`"));
    };
    let mut edges = Vec::with_capacity(m);
    for (k, line) in lines {
        let pair: Vec<usize> = line
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| bad(k + 1, "expected `i j`")))
            .collect::<Result<_>>()?;
        let [i, j] = pair[..] else {
            return Err(bad(k + 1, "expected `i j`"));
        };
        edges.push((i, j));
    }
    let g = BitMatrix::from_edges(n, &edges)?;
    if g.edge_count() != m as u64 || edges.len() != m {
        return Err(bad(1, "edge count does not match the header"));
    }
    Ok(g)
}

pub fn encode_adjacency(g: &BitMatrix) -> Vec<u8> {
    let n = g.n();
    let mut out = Vec::with_capacity(4 + (n * n.saturating_sub(1) / 2).div_ceil(8));
    out.extend_from_slice(&(n as u32).to_be_bytes());
    let mut byte = 0u8;
    let mut filled = 0;
    for i in 0..n {
        for j in i + 1..n {
            byte = byte << 1 | g.get(i, j) as u8;
            filled += 1;
            if filled == 8 {
                out.push(byte);
                byte = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(byte << (8 - filled));
    }
    out
}

pub fn certificate_hex(encoding: &[u8]) -> String {
    hex::encode(encoding)
}
