//! Finite permutation group engine.
//!
//! Everything here is exact and deterministic: groups are given by permutation
//! generators on a finite point set, subgroups carry verified membership, and
//! the higher layers (normal lattices, chief series, centralizer chains, group
//! classes and their local definitions) are all computed by explicit closure
//! algorithms with no randomization.  Capacity guards keep accidental blow-ups
//! from hanging a run; bounds can be raised via `FORMLAB_CAPACITY`.

pub mod arith;
pub mod caps;
pub mod catalog;
pub mod centralizers;
pub mod error;
pub mod formations;
pub mod group;
pub mod iso;
pub mod perm;
pub mod quotient;
pub mod satellites;
pub mod semidirect;
pub mod structure;
pub mod subgroup;

pub use caps::Caps;
pub use catalog::SimpleType;
pub use error::{GroupError, Result};
pub use group::PermGroup;
pub use perm::Perm;
pub use quotient::Epimorphism;
pub use structure::{ChiefFactor, ChiefSeries, NormalLattice};
pub use subgroup::Subgroup;
