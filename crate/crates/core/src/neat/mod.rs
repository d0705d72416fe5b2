//! Dimension-changing transforms of atom structures: neat reducts, reducts
//! along injections, relativizations, relation-algebra reducts, and the
//! matrix restriction isomorphisms.

pub mod iso;
pub mod nr;
pub mod ra_reduct;
pub mod rd;
pub mod report;
pub mod rl;

pub use iso::{restriction_iso, rl_x_witness, RelativizationWitness};
pub use nr::{nr, NrResult, QuotientFrame};
pub use ra_reduct::{ra_reduct, RaReduct};
pub use rd::rd_rho;
pub use report::{CertificateLevel, TransformReport, EXHAUSTIVE_CLASSES};
pub use rl::{rl_x, CommutationProbe, Relativized};
