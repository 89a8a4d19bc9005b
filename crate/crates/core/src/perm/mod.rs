//! Permutations, permutation groups and the subgroup constructions built on them.

pub mod chain;
pub mod classes;
pub mod group;
pub mod io;
pub mod permutation;
pub mod subgroups;

pub use classes::{conjugacy_classes, ConjugacyClasses, DEFAULT_THRESHOLD};
pub use group::Group;
pub use permutation::{ElementKey, Permutation};
pub use subgroups::{core, o_2prime, sylow_2, CosetAction};
