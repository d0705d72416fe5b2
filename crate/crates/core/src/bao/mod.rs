//! Cylindric and polyadic atom structures with their complex algebras.

pub mod element;
pub mod equation;
pub mod frame;
pub mod json;
pub mod scword;
pub mod structure;
pub mod term;
pub mod witness;

pub use element::Element;
pub use equation::{ca_axioms, check_equation, failing_axioms, pea_axioms, Axiom, CheckMode, Comparison, EquationReport};
pub use frame::{check_ca_frame, FrameCondition, FrameReport};
pub use scword::{sc_word_to_map, PartialMap, ScToken, ScWord};
pub use structure::{CaAtomStructure, StructureId, MAX_ATOMS, MAX_DIM};
pub use term::{eval_term, Term};
