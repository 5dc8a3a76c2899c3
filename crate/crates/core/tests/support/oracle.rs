//! Brute-force group oracle on multiplication tables. Shares no code with
//! the library beyond reading permutation images.
#![allow(dead_code)]

use std::collections::{HashMap, HashSet, VecDeque};

pub type Images = Vec<u16>;

/// `(p then q)(i) = q(p(i))`.
pub fn compose(p: &Images, q: &Images) -> Images {
    p.iter().map(|&i| q[i as usize]).collect()
}

/// Every product of the generators, by breadth-first closure.
pub fn closure(degree: usize, gens: &[Images]) -> Vec<Images> {
    let id: Images = (0..degree as u16).collect();
    let mut seen: HashSet<Images> = HashSet::from([id.clone()]);
    let mut out = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = compose(&x, g);
            if seen.insert(y.clone()) {
                out.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    out
}

/// A finite group as a Cayley table on `0..n`.
pub struct TableGroup {
    pub n: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    pub identity: usize,
}

impl TableGroup {
    pub fn from_elements(elements: &[Images]) -> TableGroup {
        let index: HashMap<&Images, usize> = elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let n = elements.len();
        let mut mul = vec![0u32; n * n];
        for (i, a) in elements.iter().enumerate() {
            for (j, b) in elements.iter().enumerate() {
                mul[i * n + j] = index[&compose(a, b)] as u32;
            }
        }
        Self::from_table(n, mul)
    }

    fn from_table(n: usize, mul: Vec<u32>) -> TableGroup {
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| mul[e * n + x] as usize == x))
            .expect("identity");
        let inv = (0..n)
            .map(|x| (0..n).find(|&y| mul[x * n + y] as usize == identity).expect("inverse") as u32)
            .collect();
        TableGroup { n, mul, inv, identity }
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    fn conj(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    /// Membership vector of the subgroup generated by `gens`.
    pub fn generate(&self, gens: &[usize]) -> Vec<bool> {
        let mut member = vec![false; self.n];
        member[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !member[y] {
                    member[y] = true;
                    queue.push_back(y);
                }
            }
        }
        member
    }

    pub fn conjugacy_class(&self, x: usize) -> Vec<usize> {
        let mut c: Vec<usize> = (0..self.n).map(|g| self.conj(x, g)).collect();
        c.sort_unstable();
        c.dedup();
        c
    }

    pub fn normal_closure(&self, x: usize) -> Vec<bool> {
        self.generate(&self.conjugacy_class(x))
    }

    pub fn class_count(&self) -> usize {
        let mut seen = vec![false; self.n];
        let mut k = 0;
        for x in 0..self.n {
            if !seen[x] {
                k += 1;
                for y in self.conjugacy_class(x) {
                    seen[y] = true;
                }
            }
        }
        k
    }

    fn is_abelian_set(&self, member: &[bool]) -> bool {
        let xs: Vec<usize> = (0..self.n).filter(|&i| member[i]).collect();
        xs.iter().all(|&a| xs.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// A minimal normal subgroup: the smallest normal closure of a single
    /// nonidentity element.
    fn minimal_normal(&self) -> Vec<bool> {
        let mut seen = vec![false; self.n];
        let mut best: Option<(usize, Vec<bool>)> = None;
        for x in 0..self.n {
            if x == self.identity || seen[x] {
                continue;
            }
            for y in self.conjugacy_class(x) {
                seen[y] = true;
            }
            let n = self.normal_closure(x);
            let size = n.iter().filter(|&&b| b).count();
            if best.as_ref().is_none_or(|(s, _)| size < *s) {
                best = Some((size, n));
            }
        }
        best.expect("nontrivial group").1
    }

    /// `G/N` for a normal subgroup given by membership.
    pub fn quotient(&self, normal: &[bool]) -> TableGroup {
        self.quotient_with_cosets(normal).0
    }

    /// The quotient and the coset number of each element.
    fn quotient_with_cosets(&self, normal: &[bool]) -> (TableGroup, Vec<usize>) {
        let mut coset = vec![usize::MAX; self.n];
        let mut reps = Vec::new();
        let n_elems: Vec<usize> = (0..self.n).filter(|&i| normal[i]).collect();
        for x in 0..self.n {
            if coset[x] == usize::MAX {
                let c = reps.len();
                reps.push(x);
                for &k in &n_elems {
                    coset[self.mul(k, x)] = c;
                }
            }
        }
        let m = reps.len();
        let mut mul = vec![0u32; m * m];
        for (i, &a) in reps.iter().enumerate() {
            for (j, &b) in reps.iter().enumerate() {
                mul[i * m + j] = coset[self.mul(a, b)] as u32;
            }
        }
        (TableGroup::from_table(m, mul), coset)
    }

    /// Soluble iff every chief factor is abelian. Chief factors are found by
    /// repeatedly dividing out a minimal normal subgroup.
    pub fn is_soluble_by_chief_series(&self) -> bool {
        if self.n == 1 {
            return true;
        }
        let m = self.minimal_normal();
        self.is_abelian_set(&m) && self.quotient(&m).is_soluble_by_chief_series()
    }

    /// Orders of the chief factors from the top of the series down.
    pub fn chief_factor_orders(&self) -> Vec<usize> {
        if self.n == 1 {
            return Vec::new();
        }
        let m = self.minimal_normal();
        let mut out = self.quotient(&m).chief_factor_orders();
        out.push(m.iter().filter(|&&b| b).count());
        out
    }

    /// Largest soluble normal subgroup. While the quotient by the current
    /// candidate has a nontrivial abelian normal subgroup, pull one back.
    /// Every nontrivial soluble normal subgroup contains one, and each
    /// contains the normal closure of any of its elements.
    pub fn radical_order(&self) -> usize {
        let mut r = vec![false; self.n];
        r[self.identity] = true;
        loop {
            let (q, coset) = self.quotient_with_cosets(&r);
            let grown = (0..q.n)
                .filter(|&y| y != q.identity)
                .map(|y| q.normal_closure(y))
                .find(|nc| q.is_abelian_set(nc));
            match grown {
                Some(nc) => r = (0..self.n).map(|x| nc[coset[x]]).collect(),
                None => return r.iter().filter(|&&b| b).count(),
            }
        }
    }
}

