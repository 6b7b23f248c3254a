//! Finite groups as permutation groups.

mod lattice;
mod perm;
mod permgroup;
mod spec;
mod structure;

pub use lattice::{ConjugacyClass, SubgroupLattice};
pub use perm::Perm;
pub use permgroup::{PermGroup, Subgroup, DEFAULT_ORDER_CAP};
pub use spec::{GroupSpec, MAX_DEGREE};
pub use structure::{
    enumerate_subgroups, is_r_group, normal_subgroups, o_lower, o_upper, quotient, quotient_map,
    sylow_subgroup, CosetAction, QuotientMap,
};
