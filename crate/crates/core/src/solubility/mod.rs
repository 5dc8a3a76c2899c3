//! Solubilizers, the soluble radical, vertex degrees, degree patterns and
//! exact solubility and commutativity degrees.

mod arith;
mod context;
mod prob;

pub use arith::{divisors, euler_phi, factorize, is_prime};
pub use context::{
    edge_count_formula, soluble_radical, two_generator_soluble, ClassSolubility, DegreeData,
    Limits, SolubilityContext, DEFAULT_PAIR_BUDGET,
};
pub use prob::ExactProbability;
