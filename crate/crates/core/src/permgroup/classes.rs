use std::collections::VecDeque;

use super::group::PermutationGroup;
use super::perm::Permutation;
use crate::error::Result;

/// Conjugacy classes of an enumerated group.
///
/// Classes are ordered by the rank of their representative, which is the
/// minimal-rank member, so the identity class comes first. For every element
/// `x` (by rank) a conjugator `c` with `rep^c = x` is recorded.
#[derive(Clone, Debug)]
pub struct ConjugacyClasses {
    pub representatives: Vec<Permutation>,
    pub representative_ranks: Vec<u32>,
    pub class_sizes: Vec<u64>,
    class_of: Vec<u32>,
    conjugators: Vec<Permutation>,
}

impl ConjugacyClasses {
    /// Computes the classes of `group`, whose elements (in rank order) are
    /// `elements`.
    pub fn compute(group: &PermutationGroup, elements: &[Permutation]) -> Self {
        const UNSEEN: u32 = u32::MAX;
        let order = elements.len();
        let chain = group.chain();
        let gens = group.generators();
        let mut class_of = vec![UNSEEN; order];
        // conjugator from the BFS root of the class to each element
        let mut from_root: Vec<Option<Permutation>> = vec![None; order];
        let mut roots = Vec::new();
        let mut members: Vec<Vec<u32>> = Vec::new();

        for start in 0..order {
            if class_of[start] != UNSEEN {
                continue;
            }
            // ranks are visited in increasing order, so `start` is the
            // minimal-rank member of its class
            let class = members.len() as u32;
            let mut queue = VecDeque::from([start]);
            class_of[start] = class;
            from_root[start] = Some(group.identity());
            let mut list = vec![start as u32];
            while let Some(r) = queue.pop_front() {
                let x = &elements[r];
                let c = from_root[r].clone().expect("visited");
                for g in gens {
                    let y = x.conjugate_by(g);
                    let ry = chain.rank(&y).expect("conjugate lies in group") as usize;
                    if class_of[ry] == UNSEEN {
                        class_of[ry] = class;
                        from_root[ry] = Some(c.then(g));
                        list.push(ry as u32);
                        queue.push_back(ry);
                    }
                }
            }
            roots.push(start as u32);
            members.push(list);
        }

        ConjugacyClasses {
            representatives: roots.iter().map(|&r| elements[r as usize].clone()).collect(),
            representative_ranks: roots,
            class_sizes: members.iter().map(|m| m.len() as u64).collect(),
            class_of,
            conjugators: from_root.into_iter().map(|c| c.expect("visited")).collect(),
        }
    }

    /// `k(G)`.
    pub fn count(&self) -> usize {
        self.representatives.len()
    }

    pub fn class_of_rank(&self, rank: u64) -> usize {
        self.class_of[rank as usize] as usize
    }

    /// `c` with `representative^c` equal to the element of the given rank.
    pub fn conjugator(&self, rank: u64) -> &Permutation {
        &self.conjugators[rank as usize]
    }
}

/// Convenience wrapper enumerating the group first.
pub fn conjugacy_classes(group: &PermutationGroup) -> Result<ConjugacyClasses> {
    let elements = group.elements()?;
    Ok(ConjugacyClasses::compute(group, &elements))
}
