//! Exact character theory of finite groups and their normal subgroups.
//!
//! Groups are stored as Cayley tables, character values live in cyclotomic
//! fields, and every table-side criterion comes with an element-level
//! check that it is compared against.

pub mod error;
pub mod group;
pub mod subgroup;
pub mod oracle;
pub mod corpus;
pub mod cyclotomic;
pub mod io;
pub mod chartab;
pub mod clifford;
pub mod analysis;
pub mod theorems;
pub mod verify;

pub use error::{CliffordError, CycloError, GroupError, TableError, TheoremError};
pub use group::{conjugacy_classes, power_class_map, ClassPartition, Elem, FiniteGroup, Permutation};
pub use chartab::{character_table, quotient_table, CharacterTable};
pub use cyclotomic::Cyclotomic;
pub use subgroup::{GSeries, HypercentralLength, Subgroup};
pub use analysis::GroupAnalysis;
pub use theorems::{Status, Verdict};
