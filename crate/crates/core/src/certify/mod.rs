//! Freeness and non-freeness certificates.
//!
//! Every criterion returns a [`Verdict`] carrying a proof tree. The top-level
//! [`certify`] tries the criteria in the fixed [`DISPATCH_ORDER`].

mod adddel;
mod engine;
mod flag;
mod heavy;
mod nonfree;
mod verdict;

pub use adddel::{
    addition_deletion_step, normalize_multiplicity_shift, shift_verdict, FreeStatement, TripleMember,
};
pub use engine::{
    certify, certify_locally_heavy, oracle_verdict, rank2_base, reverify, Attempt, Certificate,
    CertifyOptions, Step, DISPATCH_ORDER, SCHEMA_VERSION,
};
pub use flag::{certify_flag, find_locally_heavy_flags, Flag, FlagLevel};
pub use heavy::{is_generic_hyperplane, is_heavy, is_locally_heavy, locally_heavy_hyperplanes};
pub use nonfree::{nonfree_generic, nonfree_two_locally_heavy};
pub use verdict::{ProofNode, Rule, Verdict, VerdictKind};
