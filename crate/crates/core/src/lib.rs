//! Exact character theory for finite permutation groups.
//!
//! The crate computes ordinary character tables with exact cyclotomic
//! values, the subgroup-theoretic invariants that interact with character
//! degrees (derived and central series, Fitting subgroups, Sylow theory,
//! normal-subgroup lattices), relative character-degree sets with respect
//! to normal subgroups, and a suite of executable checks that evaluate
//! structural statements about those degree sets over a corpus of concrete
//! groups. All arithmetic is exact: no floating point anywhere.

pub mod arith;
pub mod chartab;
pub mod classes;
pub mod corpus;
pub mod cyclotomic;
pub mod dixon;
pub mod error;
pub mod group;
pub mod groupfile;
pub mod guards;
pub mod modp;
pub mod perm;
pub mod reldeg;
pub mod report;
pub mod structure;
pub mod subgroup;
pub mod verify;

pub use chartab::{Character, CharacterTable, ClassFunction};
pub use classes::ClassData;
pub use cyclotomic::Cyc;
pub use error::{Error, Result};
pub use group::{coset_action, ElemId, Epimorphism, PermGroup};
pub use guards::Guards;
pub use perm::Permutation;
pub use reldeg::{RelativeDegreeData, SectionRecord};
pub use subgroup::SubgroupHandle;
pub use verify::{SuiteReport, TheoremId, TheoremOutcome};
