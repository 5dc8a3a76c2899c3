use std::collections::VecDeque;
use std::sync::OnceLock;

use super::chain::StabChain;
use super::perm::Permutation;
use crate::error::{Error, Result};

/// Default cap on explicit element enumeration.
pub const DEFAULT_ENUMERATION_LIMIT: u64 = 10_080;

/// A permutation group given by generators. The stabilizer chain is built on
/// first use; after that the group is immutable and can be shared freely.
#[derive(Clone, Debug)]
pub struct PermutationGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: OnceLock<StabChain>,
}

impl PermutationGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let generators = generators.into_iter().filter(|g| !g.is_identity()).collect();
        Ok(PermutationGroup {
            degree,
            generators,
            chain: OnceLock::new(),
        })
    }

    pub fn trivial(degree: usize) -> Self {
        PermutationGroup {
            degree,
            generators: Vec::new(),
            chain: OnceLock::new(),
        }
    }

    fn from_chain(degree: usize, generators: Vec<Permutation>, chain: StabChain) -> Self {
        let cell = OnceLock::new();
        let _ = cell.set(chain);
        PermutationGroup {
            degree,
            generators,
            chain: cell,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    /// The stabilizer chain, built on first call.
    pub fn chain(&self) -> &StabChain {
        self.chain
            .get_or_init(|| StabChain::from_generators(self.degree, &self.generators))
    }

    pub fn order(&self) -> u128 {
        self.chain().order()
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn contains(&self, p: &Permutation) -> Result<bool> {
        self.check_degree(p)?;
        Ok(self.chain().contains(p))
    }

    fn check_degree(&self, p: &Permutation) -> Result<()> {
        if p.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: p.degree(),
            });
        }
        Ok(())
    }

    /// Index of `p` in the deterministic enumeration order.
    pub fn rank(&self, p: &Permutation) -> Option<u64> {
        self.chain().rank(p)
    }

    pub fn unrank(&self, index: u64) -> Permutation {
        self.chain().unrank(index)
    }

    /// Every element exactly once, ordered by [`rank`](Self::rank). The
    /// identity comes first.
    pub fn elements(&self) -> Result<Vec<Permutation>> {
        self.elements_with_limit(DEFAULT_ENUMERATION_LIMIT)
    }

    pub fn elements_with_limit(&self, limit: u64) -> Result<Vec<Permutation>> {
        let order = self.order();
        if order > limit as u128 {
            return Err(Error::BudgetExceeded {
                what: "enumeration",
                limit,
            });
        }
        let chain = self.chain();
        Ok((0..order as u64).map(|i| chain.unrank(i)).collect())
    }

    pub fn is_abelian(&self) -> bool {
        let gens = &self.generators;
        gens.iter()
            .enumerate()
            .all(|(i, a)| gens[i + 1..].iter().all(|b| a.then(b) == b.then(a)))
    }

    pub fn is_subgroup_of(&self, other: &PermutationGroup) -> bool {
        self.degree == other.degree
            && self.generators.iter().all(|g| other.chain().contains(g))
    }

    /// Normality test on generators: `n^g ∈ self` for generators `n` of
    /// `self` and `g` of `parent`.
    pub fn is_normal_in(&self, parent: &PermutationGroup) -> bool {
        let chain = self.chain();
        self.is_subgroup_of(parent)
            && parent.generators.iter().all(|g| {
                self.generators
                    .iter()
                    .all(|n| chain.contains(&n.conjugate_by(g)))
            })
    }

    /// Smallest normal subgroup containing `set`.
    pub fn normal_closure(&self, set: &[Permutation]) -> Result<PermutationGroup> {
        for s in set {
            if !self.contains(s)? {
                return Err(Error::NotAMember);
            }
        }
        Ok(self.normal_closure_unchecked(set))
    }

    fn normal_closure_unchecked(&self, set: &[Permutation]) -> PermutationGroup {
        let target = self.order();
        let mut chain = StabChain::new(self.degree);
        let mut gens = Vec::new();
        let mut queue = VecDeque::new();
        for s in set {
            if chain.add_generator(s) {
                gens.push(s.clone());
                queue.push_back(s.clone());
            }
        }
        while let Some(n) = queue.pop_front() {
            if chain.order() == target {
                break;
            }
            for g in &self.generators {
                let c = n.conjugate_by(g);
                if chain.add_generator(&c) {
                    gens.push(c.clone());
                    queue.push_back(c);
                }
            }
        }
        PermutationGroup::from_chain(self.degree, gens, chain)
    }

    /// The commutator subgroup: the normal closure of the commutators of
    /// generator pairs.
    pub fn derived_subgroup(&self) -> PermutationGroup {
        let gens = &self.generators;
        let mut commutators = Vec::new();
        for (i, a) in gens.iter().enumerate() {
            for b in &gens[i + 1..] {
                let c = a.commutator(b);
                if !c.is_identity() {
                    commutators.push(c);
                }
            }
        }
        self.normal_closure_unchecked(&commutators)
    }

    /// `G = G⁽⁰⁾ ≥ G⁽¹⁾ ≥ …` down to the first term equal to its successor.
    pub fn derived_series(&self) -> Vec<PermutationGroup> {
        let mut series = vec![self.clone()];
        loop {
            let last = series.last().expect("nonempty");
            let next = last.derived_subgroup();
            if next.order() == last.order() {
                return series;
            }
            series.push(next);
        }
    }

    /// Derived-series solubility test with two order shortcuts: groups of
    /// order below 60 are soluble, and so are groups whose order has at most
    /// two prime divisors.
    pub fn is_soluble(&self) -> bool {
        let mut current = self.clone();
        loop {
            let order = current.order();
            if order < 60 || distinct_prime_divisors(order) <= 2 {
                return true;
            }
            let next = current.derived_subgroup();
            if next.order() == order {
                return false;
            }
            current = next;
        }
    }

    /// Stabilizer of a point, generated by the Schreier generators of its
    /// orbit.
    pub fn point_stabilizer(&self, point: usize) -> PermutationGroup {
        let n = self.degree;
        let id = self.identity();
        let mut reps: Vec<Option<Permutation>> = vec![None; n];
        reps[point] = Some(id);
        let mut queue = VecDeque::from([point]);
        let mut orbit = vec![point];
        while let Some(b) = queue.pop_front() {
            let u = reps[b].clone().expect("visited");
            for s in &self.generators {
                let c = s.apply(b);
                if reps[c].is_none() {
                    reps[c] = Some(u.then(s));
                    queue.push_back(c);
                    orbit.push(c);
                }
            }
        }
        let mut chain = StabChain::new(n);
        let mut gens = Vec::new();
        for &b in &orbit {
            let u = reps[b].as_ref().expect("visited");
            for s in &self.generators {
                let c = s.apply(b);
                let sg = u.then(s).then(&reps[c].as_ref().expect("visited").inverse());
                if chain.add_generator(&sg) {
                    gens.push(sg);
                }
            }
        }
        PermutationGroup::from_chain(n, gens, chain)
    }
}

/// `⟨gens⟩` on `degree` points.
pub fn generated_subgroup(degree: usize, gens: &[Permutation]) -> Result<PermutationGroup> {
    PermutationGroup::new(degree, gens.to_vec())
}

pub(crate) fn distinct_prime_divisors(mut n: u128) -> usize {
    let mut count = 0;
    let mut p = 2u128;
    while p * p <= n {
        if n.is_multiple_of(p) {
            count += 1;
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        count += 1;
    }
    count
}

/// `G × H` acting on the disjoint union of the two point sets; `G` moves
/// points `0..deg G` and `H` the points after them.
#[derive(Clone, Debug)]
pub struct DirectProduct {
    pub group: PermutationGroup,
    pub left_degree: usize,
    pub right_degree: usize,
}

impl DirectProduct {
    pub fn embed_left(&self, p: &Permutation) -> Permutation {
        p.embed(self.group.degree(), 0)
    }

    pub fn embed_right(&self, p: &Permutation) -> Permutation {
        p.embed(self.group.degree(), self.left_degree)
    }

    pub fn project_left(&self, p: &Permutation) -> Permutation {
        let images: Vec<u16> = p.images()[..self.left_degree].to_vec();
        Permutation::from_images_unchecked(images)
    }

    pub fn project_right(&self, p: &Permutation) -> Permutation {
        let off = self.left_degree;
        let images: Vec<u16> = p.images()[off..]
            .iter()
            .map(|&x| x - off as u16)
            .collect();
        Permutation::from_images_unchecked(images)
    }
}

pub fn direct_product(g: &PermutationGroup, h: &PermutationGroup) -> DirectProduct {
    let degree = g.degree() + h.degree();
    let mut gens: Vec<Permutation> = g.generators().iter().map(|p| p.embed(degree, 0)).collect();
    gens.extend(h.generators().iter().map(|p| p.embed(degree, g.degree())));
    DirectProduct {
        group: PermutationGroup::new(degree, gens).expect("degrees agree"),
        left_degree: g.degree(),
        right_degree: h.degree(),
    }
}
