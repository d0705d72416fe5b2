//! Finite cylindric, polyadic and relation algebra atom structures.
//!
//! Structures are finite frames; their complex algebras are handled through
//! [`bao::Element`] values (sets of atoms). On top of that sit generators for
//! the standard finite constructions, reduct transforms, atom splitting and a
//! solver for truncated atomic network games.

pub mod atomset;
pub mod bao;
pub mod constructions;
pub mod error;
pub mod games;
pub mod neat;
pub mod ra;
pub mod relation;
pub mod suite;

pub use atomset::AtomSet;
pub use error::{Error, Result};
pub use relation::Relation;
