use std::fs;

use super::spec::{Atom, GroupSpec};
use crate::error::{Error, Result};
use crate::permgroup::{direct_product, parse_generator_file, Permutation, PermutationGroup};

pub fn build(spec: &GroupSpec) -> Result<PermutationGroup> {
    let mut factors = spec.factors.iter();
    let first = factors
        .next()
        .ok_or_else(|| Error::Syntax {
            position: 0,
            message: "empty spec".into(),
        })
        .and_then(build_atom)?;
    factors.try_fold(first, |acc, atom| {
        let next = build_atom(atom)?;
        Ok(direct_product(&acc, &next).group)
    })
}

pub fn build_atom(atom: &Atom) -> Result<PermutationGroup> {
    match *atom {
        Atom::Alternating(n) => Ok(alternating(n)),
        Atom::Symmetric(n) => Ok(symmetric(n)),
        Atom::Cyclic(n) => Ok(cyclic(n)),
        Atom::Dihedral(n) => dihedral(n),
        Atom::Psl2(q) => Ok(psl2(q)),
        Atom::Sl2(q) => Ok(sl2(q)),
        Atom::File(ref path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Error::GeneratorFile(format!("{path}: {e}")))?;
            parse_generator_file(&text)
        }
    }
}

fn cycle(degree: usize, points: impl IntoIterator<Item = usize>) -> Permutation {
    Permutation::from_cycles(degree, &[points.into_iter().collect()]).expect("valid cycle")
}

fn group(degree: usize, gens: Vec<Permutation>) -> PermutationGroup {
    PermutationGroup::new(degree, gens).expect("generators share the degree")
}

/// `A_n` on `n` points from `(1 2 3)` and an `n`- or `(n−1)`-cycle.
pub fn alternating(n: usize) -> PermutationGroup {
    if n < 3 {
        return PermutationGroup::trivial(n);
    }
    let long = if n % 2 == 1 {
        cycle(n, 0..n)
    } else {
        cycle(n, 1..n)
    };
    group(n, vec![cycle(n, [0, 1, 2]), long])
}

pub fn symmetric(n: usize) -> PermutationGroup {
    if n < 2 {
        return PermutationGroup::trivial(n);
    }
    group(n, vec![cycle(n, [0, 1]), cycle(n, 0..n)])
}

pub fn cyclic(n: usize) -> PermutationGroup {
    if n < 2 {
        return PermutationGroup::trivial(n);
    }
    group(n, vec![cycle(n, 0..n)])
}

/// Dihedral group of order `n` acting on `n/2` points; order 4 is the Klein
/// four-group on 4 points.
pub fn dihedral(n: usize) -> Result<PermutationGroup> {
    if n < 4 || !n.is_multiple_of(2) {
        return Err(Error::Unsupported(format!(
            "dihedral order must be even and at least 4, found {n}"
        )));
    }
    if n == 4 {
        let a = Permutation::from_cycles(4, &[vec![0, 1], vec![2, 3]])?;
        let b = Permutation::from_cycles(4, &[vec![0, 2], vec![1, 3]])?;
        return Ok(group(4, vec![a, b]));
    }
    let m = n / 2;
    let reflection = Permutation::from_images((0..m).map(|i| (m - i) % m).collect())?;
    Ok(group(m, vec![cycle(m, 0..m), reflection]))
}

type Matrix = [[u32; 2]; 2];

/// Standard generators of `SL(2,q)`: `[[1,1],[0,1]]` and `[[0,−1],[1,0]]`.
fn sl2_generators(q: u32) -> [Matrix; 2] {
    [[[1, 1], [0, 1]], [[0, q - 1], [1, 0]]]
}

fn apply(m: &Matrix, v: (u32, u32), q: u32) -> (u32, u32) {
    (
        (m[0][0] * v.0 + m[0][1] * v.1) % q,
        (m[1][0] * v.0 + m[1][1] * v.1) % q,
    )
}

fn inverse_mod(a: u32, q: u32) -> u32 {
    (1..q).find(|&b| a * b % q == 1).expect("q is prime and a is nonzero")
}

/// `PSL(2,q)` acting on the `q + 1` points of the projective line: points
/// `0..q` are `(x : 1)` and point `q` is `(1 : 0)`.
pub fn psl2(q: u32) -> PermutationGroup {
    let n = q as usize + 1;
    let point = |v: (u32, u32)| -> usize {
        if v.1 == 0 {
            q as usize
        } else {
            (v.0 * inverse_mod(v.1, q) % q) as usize
        }
    };
    let gens = sl2_generators(q)
        .iter()
        .map(|m| {
            let images = (0..n)
                .map(|p| {
                    let v = if p == q as usize { (1, 0) } else { (p as u32, 1) };
                    point(apply(m, v, q))
                })
                .collect();
            Permutation::from_images(images).expect("matrix acts bijectively")
        })
        .collect();
    group(n, gens)
}

/// `SL(2,q)` acting on the `q² − 1` nonzero vectors of the plane over the
/// prime field; vector `(x, y)` is point `x·q + y − 1`.
pub fn sl2(q: u32) -> PermutationGroup {
    let n = (q * q - 1) as usize;
    let index = |v: (u32, u32)| (v.0 * q + v.1 - 1) as usize;
    let gens = sl2_generators(q)
        .iter()
        .map(|m| {
            let images = (1..=n as u32)
                .map(|k| index(apply(m, (k / q, k % q), q)))
                .collect();
            Permutation::from_images(images).expect("matrix acts bijectively")
        })
        .collect();
    group(n, gens)
}
