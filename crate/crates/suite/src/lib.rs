//! Holds the `acceptance` test target; the criteria live in `cylkit::suite`.

pub use cylkit::suite::{run, run_all, CriterionResult, CRITERIA};
