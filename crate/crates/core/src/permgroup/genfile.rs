//! Generator files: one permutation per line in 1-based disjoint cycle
//! notation. Blank lines and `#` comments are ignored. The degree is the
//! largest point mentioned unless a `degree N` header line overrides it.

use super::group::PermutationGroup;
use super::perm::{parse_cycle_list, Permutation};
use crate::error::{Error, Result};

pub fn parse_generator_file(text: &str) -> Result<PermutationGroup> {
    let mut declared: Option<usize> = None;
    let mut lines = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("degree") {
            let n = rest.trim().parse::<usize>().map_err(|_| {
                Error::GeneratorFile(format!("line {}: bad degree header `{line}`", no + 1))
            })?;
            if declared.is_some() || !lines.is_empty() {
                return Err(Error::GeneratorFile(format!(
                    "line {}: degree header must precede all generators",
                    no + 1
                )));
            }
            declared = Some(n);
            continue;
        }
        let cycles = parse_cycle_list(line)
            .map_err(|e| Error::GeneratorFile(format!("line {}: {e}", no + 1)))?;
        lines.push((no + 1, cycles));
    }
    let max_point = lines
        .iter()
        .flat_map(|(_, cycles)| cycles.iter().flatten())
        .map(|&p| p + 1)
        .max()
        .unwrap_or(0);
    let degree = match declared {
        Some(n) if n < max_point => {
            return Err(Error::GeneratorFile(format!(
                "degree {n} is smaller than the largest point {max_point}"
            )))
        }
        Some(n) => n,
        None => max_point.max(1),
    };
    let gens = lines
        .into_iter()
        .map(|(no, cycles)| {
            Permutation::from_cycles(degree, &cycles)
                .map_err(|e| Error::GeneratorFile(format!("line {no}: {e}")))
        })
        .collect::<Result<Vec<_>>>()?;
    PermutationGroup::new(degree, gens)
}

/// Writes generators in the format read by [`parse_generator_file`].
pub fn format_generator_file(group: &PermutationGroup) -> String {
    let mut out = format!("degree {}\n", group.degree());
    for g in group.generators() {
        out.push_str(&g.to_string());
        out.push('\n');
    }
    out
}
