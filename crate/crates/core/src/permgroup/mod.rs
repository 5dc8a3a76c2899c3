//! Finite permutation groups: elements, stabilizer chains, derived series,
//! conjugacy classes, quotients and direct products.

mod chain;
mod classes;
mod genfile;
mod group;
mod perm;
mod quotient;

pub use chain::StabChain;
pub use classes::{conjugacy_classes, ConjugacyClasses};
pub use genfile::{format_generator_file, parse_generator_file};
pub use group::{
    direct_product, generated_subgroup, DirectProduct, PermutationGroup,
    DEFAULT_ENUMERATION_LIMIT,
};
pub use perm::{parse_cycle_list, Permutation, MAX_DEGREE};
pub use quotient::{quotient, QuotientMap};
