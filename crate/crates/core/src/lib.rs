//! Solubility graphs of finite insoluble permutation groups.
//!
//! The crate is organised bottom-up:
//!
//! - [`permgroup`]: permutations, stabilizer chains, derived series,
//!   conjugacy classes, quotients and direct products;
//! - [`catalog`]: a small group-spec language and the standard corpus;
//! - [`solubility`]: solubilizers, the soluble radical, vertex degrees and
//!   exact solubility degrees;
//! - [`graph`]: the graph itself, its metrics and canonical certificates;
//! - [`verifier`]: one checker per claim run over a catalog.

pub mod catalog;
pub mod error;
pub mod graph;
pub mod permgroup;
pub mod solubility;
pub mod verifier;

pub use error::{Error, Result};

/// Toolkit version recorded in reports and cache keys.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
