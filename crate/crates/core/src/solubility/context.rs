use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU64, Ordering};

use dashmap::DashMap;
use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::prob::ExactProbability;
use crate::error::{Error, Result};
use crate::permgroup::{ConjugacyClasses, Permutation, PermutationGroup, DEFAULT_ENUMERATION_LIMIT};

/// Default cap on pair-solubility evaluations per group.
pub const DEFAULT_PAIR_BUDGET: u64 = 50_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    pub enumeration: u64,
    pub pair_calls: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            enumeration: DEFAULT_ENUMERATION_LIMIT,
            pair_calls: DEFAULT_PAIR_BUDGET,
        }
    }
}

/// Class-level solubilizer orders, the expensive part of a context. This is
/// what result caches store.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassSolubility {
    pub representative_ranks: Vec<u32>,
    pub class_sizes: Vec<u64>,
    pub sol_orders: Vec<u64>,
    /// Solubilizer of each representative as sorted element ranks.
    pub members: Vec<Vec<u32>>,
}

/// Memo of two-generator solubility verdicts, keyed by element ranks.
///
/// `⟨x, y⟩` is unchanged by swapping the arguments or inverting either, so
/// each rank is replaced by the smaller of itself and its inverse's rank and
/// the pair is sorted.
struct PairCache {
    verdicts: DashMap<(u32, u32), bool>,
    calls: AtomicU64,
    limit: u64,
}

impl PairCache {
    fn new(limit: u64) -> Self {
        PairCache {
            verdicts: DashMap::new(),
            calls: AtomicU64::new(0),
            limit,
        }
    }
}

/// Degree statistics of the solubility graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeData {
    /// Number of vertices, `|G| − |R(G)|`.
    pub n: u64,
    /// All vertex degrees in weakly decreasing order.
    pub pattern: Vec<u64>,
    pub min_degree: u64,
    pub max_degree: u64,
    /// Distinct degrees with multiplicities.
    pub degree_counts: BTreeMap<u64, u64>,
}

impl DegreeData {
    pub fn degree_set(&self) -> Vec<u64> {
        self.degree_counts.keys().copied().collect()
    }

    pub fn is_constant(&self) -> bool {
        self.degree_counts.len() <= 1
    }
}

/// A group together with its conjugacy classes, soluble radical and
/// class-level solubilizer orders.
pub struct SolubilityContext {
    group: PermutationGroup,
    elements: Vec<Permutation>,
    inverse_rank: Vec<u32>,
    classes: ConjugacyClasses,
    radical: PermutationGroup,
    radical_order: u64,
    class_in_radical: Vec<bool>,
    sol_order_by_class: Vec<u64>,
    sol_sets: Vec<Vec<u32>>,
    pairs: PairCache,
}

impl SolubilityContext {
    pub fn new(group: PermutationGroup, limits: Limits) -> Result<Self> {
        let mut ctx = Self::skeleton(group, limits)?;
        let sets = ctx.compute_class_sets()?;
        ctx.sol_order_by_class = sets.iter().map(|s| s.len() as u64).collect();
        ctx.sol_sets = sets;
        Ok(ctx)
    }

    /// Rebuilds a context from previously computed class-level data without
    /// any pair tests. The class structure is recomputed and must match the
    /// stored one.
    pub fn from_class_data(
        group: PermutationGroup,
        limits: Limits,
        data: &ClassSolubility,
    ) -> Result<Self> {
        let mut ctx = Self::skeleton(group, limits)?;
        let order = ctx.order() as u32;
        let consistent = data.representative_ranks == ctx.classes.representative_ranks
            && data.class_sizes == ctx.classes.class_sizes
            && data.sol_orders.len() == ctx.classes.count()
            && data.members.len() == ctx.classes.count()
            && data.members.iter().zip(&data.sol_orders).all(|(m, &s)| {
                m.len() as u64 == s
                    && m.windows(2).all(|w| w[0] < w[1])
                    && m.last().is_none_or(|&r| r < order)
            });
        if !consistent {
            return Err(Error::Other(
                "stored class data does not match the group".into(),
            ));
        }
        ctx.sol_order_by_class = data.sol_orders.clone();
        ctx.sol_sets = data.members.clone();
        Ok(ctx)
    }

    fn skeleton(group: PermutationGroup, limits: Limits) -> Result<Self> {
        let elements = group.elements_with_limit(limits.enumeration)?;
        let chain = group.chain();
        let inverse_rank = elements
            .iter()
            .map(|x| chain.rank(&x.inverse()).expect("inverse is a member") as u32)
            .collect();
        let classes = ConjugacyClasses::compute(&group, &elements);
        let radical = radical_from_classes(&group, &classes);
        let radical_order = radical.order() as u64;
        let class_in_radical = classes
            .representatives
            .iter()
            .map(|r| radical.chain().contains(r))
            .collect();
        Ok(SolubilityContext {
            group,
            elements,
            inverse_rank,
            classes,
            radical,
            radical_order,
            class_in_radical,
            sol_order_by_class: Vec::new(),
            sol_sets: Vec::new(),
            pairs: PairCache::new(limits.pair_calls),
        })
    }

    /// Solubilizer member sets of every class representative, as sorted ranks.
    fn compute_class_sets(&self) -> Result<Vec<Vec<u32>>> {
        let order = self.elements.len();
        let reps = &self.classes.representative_ranks;
        let verdicts: Vec<bool> = (0..reps.len() * order)
            .into_par_iter()
            .map(|k| self.pair_soluble_ranks(reps[k / order], (k % order) as u32))
            .collect::<Result<_>>()?;
        Ok(verdicts
            .chunks(order)
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(_, &s)| s)
                    .map(|(y, _)| y as u32)
                    .collect()
            })
            .collect())
    }

    pub fn group(&self) -> &PermutationGroup {
        &self.group
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    /// Elements in rank order.
    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn classes(&self) -> &ConjugacyClasses {
        &self.classes
    }

    pub fn radical(&self) -> &PermutationGroup {
        &self.radical
    }

    pub fn radical_order(&self) -> u64 {
        self.radical_order
    }

    pub fn is_soluble_group(&self) -> bool {
        self.radical_order == self.order()
    }

    pub fn vertex_count(&self) -> u64 {
        self.order() - self.radical_order
    }

    pub fn class_in_radical(&self, class: usize) -> bool {
        self.class_in_radical[class]
    }

    pub fn class_sol_orders(&self) -> &[u64] {
        &self.sol_order_by_class
    }

    pub fn class_data(&self) -> ClassSolubility {
        ClassSolubility {
            representative_ranks: self.classes.representative_ranks.clone(),
            class_sizes: self.classes.class_sizes.clone(),
            sol_orders: self.sol_order_by_class.clone(),
            members: self.sol_sets.clone(),
        }
    }

    /// Number of pair verdicts requested so far, cache hits included.
    pub fn pair_calls(&self) -> u64 {
        self.pairs.calls.load(Ordering::Relaxed)
    }

    pub fn rank(&self, x: &Permutation) -> Result<u64> {
        if x.degree() != self.group.degree() {
            return Err(Error::DegreeMismatch {
                expected: self.group.degree(),
                found: x.degree(),
            });
        }
        self.group.rank(x).ok_or(Error::NotAMember)
    }

    pub fn inverse_rank(&self, rank: u32) -> u32 {
        self.inverse_rank[rank as usize]
    }

    pub fn class_of(&self, x: &Permutation) -> Result<usize> {
        Ok(self.classes.class_of_rank(self.rank(x)?))
    }

    pub fn in_radical(&self, x: &Permutation) -> Result<bool> {
        Ok(self.class_in_radical[self.class_of(x)?])
    }

    /// Whether `⟨x, y⟩` is soluble.
    pub fn pair_soluble(&self, x: &Permutation, y: &Permutation) -> Result<bool> {
        let a = self.rank(x)? as u32;
        let b = self.rank(y)? as u32;
        self.pair_soluble_ranks(a, b)
    }

    pub fn pair_soluble_ranks(&self, a: u32, b: u32) -> Result<bool> {
        let calls = self.pairs.calls.fetch_add(1, Ordering::Relaxed) + 1;
        if calls > self.pairs.limit {
            return Err(Error::BudgetExceeded {
                what: "pair-solubility",
                limit: self.pairs.limit,
            });
        }
        let a = a.min(self.inverse_rank[a as usize]);
        let b = b.min(self.inverse_rank[b as usize]);
        let key = (a.min(b), a.max(b));
        if let Some(v) = self.pairs.verdicts.get(&key) {
            return Ok(*v);
        }
        let verdict = two_generator_soluble(&self.elements[key.0 as usize], &self.elements[key.1 as usize]);
        self.pairs.verdicts.insert(key, verdict);
        Ok(verdict)
    }

    /// `|Sol_G(x)|`.
    pub fn solubilizer_order(&self, x: &Permutation) -> Result<u64> {
        Ok(self.sol_order_by_class[self.class_of(x)?])
    }

    /// Solubilizer of every class representative as sorted ranks.
    pub fn class_solubilizer_sets(&self) -> &[Vec<u32>] {
        &self.sol_sets
    }

    /// Member set of `Sol_G(x)` as sorted ranks, obtained from the class
    /// representative via `Sol_G(r^g) = Sol_G(r)^g`.
    pub fn solubilizer_ranks(&self, x: &Permutation) -> Result<Vec<u32>> {
        let rank = self.rank(x)?;
        let class = self.classes.class_of_rank(rank);
        let rep_set = &self.sol_sets[class];
        let g = self.classes.conjugator(rank);
        let chain = self.group.chain();
        let mut out: Vec<u32> = rep_set
            .iter()
            .map(|&s| {
                chain
                    .rank(&self.elements[s as usize].conjugate_by(g))
                    .expect("conjugate is a member") as u32
            })
            .collect();
        out.sort_unstable();
        Ok(out)
    }

    pub fn solubilizer(&self, x: &Permutation) -> Result<Vec<Permutation>> {
        Ok(self
            .solubilizer_ranks(x)?
            .into_iter()
            .map(|r| self.elements[r as usize].clone())
            .collect())
    }

    /// `deg(x) = |Sol_G(x)| − |R(G)| − 1`. Radical elements are not vertices.
    pub fn vertex_degree(&self, x: &Permutation) -> Result<u64> {
        let class = self.class_of(x)?;
        self.class_degree(class)
    }

    pub fn class_degree(&self, class: usize) -> Result<u64> {
        if self.class_in_radical[class] {
            return Err(Error::NotAVertex);
        }
        Ok(self.sol_order_by_class[class] - self.radical_order - 1)
    }

    pub fn degree_data(&self) -> Result<DegreeData> {
        if self.is_soluble_group() {
            return Err(Error::SolubleGroup);
        }
        let mut counts = BTreeMap::new();
        for class in 0..self.classes.count() {
            if self.class_in_radical[class] {
                continue;
            }
            let d = self.class_degree(class)?;
            *counts.entry(d).or_insert(0u64) += self.classes.class_sizes[class];
        }
        let pattern: Vec<u64> = counts
            .iter()
            .rev()
            .flat_map(|(&d, &m)| std::iter::repeat_n(d, m as usize))
            .collect();
        Ok(DegreeData {
            n: self.vertex_count(),
            min_degree: *pattern.last().expect("insoluble group has vertices"),
            max_degree: pattern[0],
            pattern,
            degree_counts: counts,
        })
    }

    /// `Σ_x |Sol_G(x)|`, the number of ordered pairs generating a soluble
    /// subgroup.
    pub fn soluble_pair_count(&self) -> u64 {
        self.classes
            .class_sizes
            .iter()
            .zip(&self.sol_order_by_class)
            .map(|(c, s)| c * s)
            .sum()
    }

    /// `P_s(G) = Σ_x |Sol_G(x)| / |G|²`.
    pub fn solubility_degree(&self) -> ExactProbability {
        let n = BigInt::from(self.order());
        ExactProbability::from_rational(BigRational::new(
            BigInt::from(self.soluble_pair_count()),
            &n * &n,
        ))
    }

    /// `Pr(G) = k(G)/|G|`.
    pub fn commutativity_degree(&self) -> ExactProbability {
        ExactProbability::new(self.classes.count() as u64, self.order())
    }

    /// Ranks of the elements `x` with `⟨x, y⟩` soluble for every `y`, i.e. the
    /// intersection of all solubilizers. Independent of the normal-closure
    /// radical computation.
    pub fn radical_by_solubilizers(&self) -> Vec<u32> {
        let order = self.order();
        let full: Vec<bool> = self.sol_order_by_class.iter().map(|&s| s == order).collect();
        (0..order as u32)
            .filter(|&r| full[self.classes.class_of_rank(r as u64)])
            .collect()
    }

    /// Simple: nontrivial and every non-identity class generates `G` as a
    /// normal subgroup.
    pub fn is_simple(&self) -> bool {
        let order = self.group.order();
        order > 1
            && self.classes.representatives[1..]
                .iter()
                .all(|r| self.group.normal_closure(std::slice::from_ref(r)).map(|n| n.order()) == Ok(order))
    }
}

/// Whether `⟨x, y⟩` is soluble. Commuting pairs are answered without
/// building a chain.
pub fn two_generator_soluble(x: &Permutation, y: &Permutation) -> bool {
    if x.then(y) == y.then(x) {
        return true;
    }
    PermutationGroup::new(x.degree(), vec![x.clone(), y.clone()])
        .expect("same degree")
        .is_soluble()
}

/// The soluble radical: the subgroup generated by the normal closures of
/// class representatives whose normal closure is soluble.
pub fn soluble_radical(group: &PermutationGroup) -> Result<PermutationGroup> {
    let elements = group.elements()?;
    let classes = ConjugacyClasses::compute(group, &elements);
    Ok(radical_from_classes(group, &classes))
}

fn radical_from_classes(group: &PermutationGroup, classes: &ConjugacyClasses) -> PermutationGroup {
    let soluble_reps: Vec<Permutation> = classes
        .representatives
        .iter()
        .filter(|r| !r.is_identity())
        .filter(|r| {
            group
                .normal_closure(std::slice::from_ref(r))
                .expect("representative is a member")
                .is_soluble()
        })
        .cloned()
        .collect();
    group
        .normal_closure(&soluble_reps)
        .expect("representatives are members")
}

/// `|E| = (|G|²·P_s + r² + r − |G|(2r + 1)) / 2` in exact arithmetic.
pub fn edge_count_formula(order: u64, ps: &ExactProbability, radical_order: u64) -> Result<u64> {
    let g = BigRational::from_integer(BigInt::from(order));
    let r = BigRational::from_integer(BigInt::from(radical_order));
    let two = BigRational::from_integer(BigInt::from(2));
    let one = BigRational::from_integer(BigInt::from(1));
    let twice = &g * &g * ps.value() + &r * &r + &r - &g * (&two * &r + one);
    if !twice.is_integer() {
        return Err(Error::EdgeFormula(format!("2|E| = {twice}")));
    }
    let twice = twice.to_integer();
    if twice < BigInt::from(0) || (&twice % 2u32) != BigInt::from(0) {
        return Err(Error::EdgeFormula(format!("2|E| = {twice}")));
    }
    u64::try_from(twice / 2u32).map_err(|e| Error::EdgeFormula(e.to_string()))
}
