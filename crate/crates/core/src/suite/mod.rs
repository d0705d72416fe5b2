//! The acceptance battery, its fixtures and its independent oracles.

pub mod criteria;
pub mod fixtures;
pub mod oracles;

pub use criteria::{run, run_all, CriterionResult, CRITERIA};
