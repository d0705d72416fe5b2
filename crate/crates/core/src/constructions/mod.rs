//! Generators for the finite structures.

pub mod hh;
pub mod hyper;
pub mod matrices;
pub mod monk;
pub mod ramsey;
pub mod set_algebra;
pub mod split;

pub use hh::{bin_forb, hh_ra, BinForb, PsiBound};
pub use matrices::{basic_matrices, BasicMatrices};
pub use monk::{johnson_extend, monk_atoms, MonkAtom, MonkStructure};
pub use ramsey::{kappa, psi};
pub use set_algebra::{full_set_algebra, three_cube};
pub use hyper::{ca_over_hyperbasis, enumerate_hypernetworks, hyperbasis_embedding, is_hyperbasis, HyperNetwork, HyperbasisReport};
pub use split::{merge_ca_copies, split_ca_atom, split_ra_atom, CaSplit, CopyRule, RaSplit, SplitPolicy};
