//! Finite relation-algebra atom structures.

pub mod axioms;
pub mod structure;

pub use axioms::{check_ra_axioms, ra_check_cost, RaCheck, RaReport};
pub use structure::{cyclic_group_ra, peircean_images, peircean_orbit, RaAtomStructure, RaElement, MAX_RA_ATOMS};
