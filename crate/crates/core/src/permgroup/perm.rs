use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};

/// Largest supported degree. Points are stored as `u16`.
pub const MAX_DEGREE: usize = 1 << 16;

/// A permutation of `{0, …, degree−1}` stored as its image vector.
///
/// Products are read left to right: `p.then(&q)` applies `p` first and then
/// `q`, so `(p.then(&q)).apply(i) == q.apply(p.apply(i))`. Conjugation follows
/// the same convention, `x^g = g⁻¹·x·g`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u16>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        assert!(degree <= MAX_DEGREE, "degree {degree} exceeds {MAX_DEGREE}");
        Permutation {
            images: (0..degree).map(|i| i as u16).collect(),
        }
    }

    /// Builds a permutation from 0-based images, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n > MAX_DEGREE {
            return Err(Error::InvalidPermutation(format!(
                "degree {n} exceeds {MAX_DEGREE}"
            )));
        }
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::InvalidPermutation(format!(
                    "images {images:?} are not a bijection on 0..{n}"
                )));
            }
            seen[x] = true;
        }
        Ok(Permutation {
            images: images.into_iter().map(|x| x as u16).collect(),
        })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u16>) -> Self {
        debug_assert!(Self::from_images(images.iter().map(|&x| x as usize).collect()).is_ok());
        Permutation { images }
    }

    /// Builds a permutation of the given degree from 0-based disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                if a >= degree {
                    return Err(Error::InvalidPermutation(format!(
                        "point {} outside degree {degree}",
                        a + 1
                    )));
                }
                if touched[a] {
                    return Err(Error::InvalidPermutation(format!(
                        "point {} appears twice in cycle notation",
                        a + 1
                    )));
                }
                touched[a] = true;
                images[a] = cycle[(k + 1) % cycle.len()];
            }
        }
        Self::from_images(images)
    }

    /// Parses 1-based disjoint cycle notation such as `(1 2 3)(4 5)`.
    /// `()` denotes the identity.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Self> {
        let cycles = parse_cycle_list(text)?;
        Self::from_cycles(degree, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> &[u16] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// Checked product: `p` then `q`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                expected: self.degree(),
                found: other.degree(),
            });
        }
        Ok(self.then(other))
    }

    /// Unchecked product: `self` then `other`. Degrees must agree.
    #[inline]
    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self
                .images
                .iter()
                .map(|&x| other.images[x as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u16; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u16;
        }
        Permutation { images: inv }
    }

    /// `g⁻¹·self·g`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        // g⁻¹ x g maps g(i) to g(x(i)).
        let mut out = vec![0u16; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            out[g.images[i] as usize] = g.images[x as usize];
        }
        Permutation { images: out }
    }

    /// `[a, b] = a⁻¹·b⁻¹·a·b`.
    pub fn commutator(&self, other: &Permutation) -> Permutation {
        self.inverse()
            .then(&other.inverse())
            .then(self)
            .then(other)
    }

    pub fn pow(&self, exp: u64) -> Permutation {
        let mut result = Permutation::identity(self.degree());
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = result.then(&base);
            }
            base = base.then(&base);
            e >>= 1;
        }
        result
    }

    /// Disjoint cycles of length ≥ 2, each starting at its smallest point,
    /// ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut j = self.apply(start);
            while j != start {
                seen[j] = true;
                cycle.push(j);
                j = self.apply(j);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Least `l ≥ 1` with `p^l = 1`: the lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| acc.lcm(&(c.len() as u64)))
    }

    pub fn smallest_moved_point(&self) -> Option<usize> {
        self.images
            .iter()
            .enumerate()
            .find(|(i, &x)| *i != x as usize)
            .map(|(i, _)| i)
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }

    /// Same permutation acting on `degree ≥ self.degree()` points, fixing the
    /// new points, with every point shifted up by `offset`.
    pub fn embed(&self, degree: usize, offset: usize) -> Permutation {
        assert!(offset + self.degree() <= degree);
        let mut images: Vec<u16> = (0..degree).map(|i| i as u16).collect();
        for (i, &x) in self.images.iter().enumerate() {
            images[offset + i] = (offset + x as usize) as u16;
        }
        Permutation { images }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (k, p) in cycle.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", p + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}]{}", self.degree(), self)
    }
}

/// Parses `(1 2 3)(4 5)` into 0-based cycles. Commas are accepted as
/// separators inside a cycle.
pub fn parse_cycle_list(text: &str) -> Result<Vec<Vec<usize>>> {
    let bad = |msg: String| Error::InvalidPermutation(msg);
    let mut cycles = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let Some(body) = rest.strip_prefix('(') else {
            return Err(bad(format!("expected `(` in `{text}`")));
        };
        let Some(close) = body.find(')') else {
            return Err(bad(format!("unclosed cycle in `{text}`")));
        };
        let mut cycle = Vec::new();
        for tok in body[..close]
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
        {
            let point: usize = tok
                .parse()
                .map_err(|_| bad(format!("bad point `{tok}` in `{text}`")))?;
            if point == 0 {
                return Err(bad(format!("points are 1-based, found 0 in `{text}`")));
            }
            cycle.push(point - 1);
        }
        if cycle.len() > 1 {
            cycles.push(cycle);
        }
        rest = body[close + 1..].trim_start();
    }
    Ok(cycles)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(deg: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(s, deg).unwrap()
    }

    #[test]
    fn compose_with_inverse_is_identity() {
        let c = p(3, "(1 2 3)");
        assert!(c.compose(&c.inverse()).unwrap().is_identity());
    }

    #[test]
    fn compose_is_left_to_right() {
        // 0 -> 1 -> 2, 1 -> 0 -> 0, 2 -> 2 -> 1: the cycle (0 2 1).
        let a = p(3, "(1 2)");
        let b = p(3, "(2 3)");
        let ab = a.compose(&b).unwrap();
        assert_eq!(ab.images(), &[2, 0, 1]);
        assert_eq!(ab.to_string(), "(1 3 2)");
    }

    #[test]
    fn identity_is_neutral() {
        let c = p(5, "(1 4)(2 5 3)");
        assert_eq!(Permutation::identity(5).compose(&c).unwrap(), c);
    }

    #[test]
    fn compose_rejects_degree_mismatch() {
        let err = p(3, "(1 2)").compose(&p(4, "(1 2)")).unwrap_err();
        assert_eq!(err, Error::DegreeMismatch { expected: 3, found: 4 });
    }

    #[test]
    fn element_orders() {
        assert_eq!(Permutation::identity(4).order(), 1);
        assert_eq!(p(5, "(1 2 3 4 5)").order(), 5);
        assert_eq!(p(5, "(1 2)(3 4)").order(), 2);
        assert_eq!(p(7, "(1 2)(3 4 5)").order(), 6);
    }

    #[test]
    fn conjugation_matches_definition() {
        let x = p(5, "(1 2 3)");
        let g = p(5, "(1 4)(2 5)");
        let direct = g.inverse().then(&x).then(&g);
        assert_eq!(x.conjugate_by(&g), direct);
        assert_eq!(x.conjugate_by(&g).to_string(), "(3 4 5)");
    }

    #[test]
    fn display_round_trips() {
        let c = p(6, "(2 5)(1 3 6)");
        assert_eq!(c.to_string(), "(1 3 6)(2 5)");
        assert_eq!(p(6, &c.to_string()), c);
        assert_eq!(Permutation::identity(3).to_string(), "()");
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::parse_cycles("(1 2)(2 3)", 3).is_err());
        assert!(Permutation::parse_cycles("(0 1)", 3).is_err());
        assert!(Permutation::parse_cycles("(1 4)", 3).is_err());
        assert!(Permutation::parse_cycles("1 2", 3).is_err());
    }

    #[test]
    fn pow_and_parity() {
        let c = p(5, "(1 2 3 4 5)");
        assert_eq!(c.pow(5), Permutation::identity(5));
        assert_eq!(c.pow(2).to_string(), "(1 3 5 2 4)");
        assert!(c.is_even());
        assert!(!p(5, "(1 2)").is_even());
    }
}
