use std::collections::HashMap;

use super::group::{PermutationGroup, DEFAULT_ENUMERATION_LIMIT};
use super::perm::Permutation;
use crate::error::{Error, Result};

/// `G → G/N` realised as the action of `G` on the right cosets `Nx`.
///
/// Coset `Nx` is identified by the lexicographically least image vector among
/// its members. Cosets are numbered in discovery order of a breadth-first
/// search from `N` under the generators of `G`.
#[derive(Clone, Debug)]
pub struct QuotientMap {
    domain: PermutationGroup,
    kernel: PermutationGroup,
    image: PermutationGroup,
    kernel_elements: Vec<Permutation>,
    cosets: HashMap<Vec<u16>, usize>,
    coset_reps: Vec<Permutation>,
}

impl QuotientMap {
    pub fn domain(&self) -> &PermutationGroup {
        &self.domain
    }

    pub fn kernel(&self) -> &PermutationGroup {
        &self.kernel
    }

    pub fn image(&self) -> &PermutationGroup {
        &self.image
    }

    pub fn index(&self) -> usize {
        self.coset_reps.len()
    }

    fn coset_key(&self, x: &Permutation) -> Vec<u16> {
        coset_key(&self.kernel_elements, x)
    }

    /// Number of the coset `Nx`.
    pub fn coset_of(&self, x: &Permutation) -> usize {
        self.cosets[&self.coset_key(x)]
    }

    /// Image of `x`: the permutation `Nc ↦ Ncx` of the cosets.
    pub fn map(&self, x: &Permutation) -> Result<Permutation> {
        if !self.domain.contains(x)? {
            return Err(Error::NotAMember);
        }
        Ok(self.map_unchecked(x))
    }

    pub(crate) fn map_unchecked(&self, x: &Permutation) -> Permutation {
        let images: Vec<u16> = self
            .coset_reps
            .iter()
            .map(|c| self.coset_of(&c.then(x)) as u16)
            .collect();
        Permutation::from_images_unchecked(images)
    }
}

fn coset_key(kernel: &[Permutation], x: &Permutation) -> Vec<u16> {
    kernel
        .iter()
        .map(|n| n.then(x).images().to_vec())
        .min()
        .expect("kernel contains the identity")
}

/// Builds `G/N`. `N` must be a normal subgroup of `G`; normality is checked
/// on generators.
pub fn quotient(group: &PermutationGroup, kernel: &PermutationGroup) -> Result<QuotientMap> {
    if kernel.degree() != group.degree() {
        return Err(Error::DegreeMismatch {
            expected: group.degree(),
            found: kernel.degree(),
        });
    }
    if !kernel.is_subgroup_of(group) {
        return Err(Error::NotAMember);
    }
    if !kernel.is_normal_in(group) {
        return Err(Error::NotNormal);
    }
    let index = group.order() / kernel.order();
    if index > DEFAULT_ENUMERATION_LIMIT as u128 {
        return Err(Error::BudgetExceeded {
            what: "enumeration",
            limit: DEFAULT_ENUMERATION_LIMIT,
        });
    }
    let kernel_elements = kernel.elements()?;

    let id = group.identity();
    let mut cosets = HashMap::new();
    let mut coset_reps = vec![id.clone()];
    cosets.insert(coset_key(&kernel_elements, &id), 0usize);
    let mut head = 0;
    while head < coset_reps.len() {
        let c = coset_reps[head].clone();
        for g in group.generators() {
            let y = c.then(g);
            let key = coset_key(&kernel_elements, &y);
            if let std::collections::hash_map::Entry::Vacant(e) = cosets.entry(key) {
                e.insert(coset_reps.len());
                coset_reps.push(y);
            }
        }
        head += 1;
    }
    debug_assert_eq!(coset_reps.len() as u128, index);

    let mut map = QuotientMap {
        domain: group.clone(),
        kernel: kernel.clone(),
        image: PermutationGroup::trivial(coset_reps.len()),
        kernel_elements,
        cosets,
        coset_reps,
    };
    let gens: Vec<Permutation> = group
        .generators()
        .iter()
        .map(|g| map.map_unchecked(g))
        .collect();
    map.image = PermutationGroup::new(map.coset_reps.len(), gens)?;
    Ok(map)
}
