//! Finite permutation groups small enough to enumerate outright.
//!
//! Groups are stored with their full element list in canonical order, so
//! subgroups are plain bitsets over element indices. There are no stabilizer
//! chains; everything is breadth-first closure under the configured caps.

mod automorphism;
mod expr;
mod perm;
mod permgroup;
mod subgroups;

use thiserror::Error;

pub use automorphism::{conjugation_automorphisms, graph_subgroup, Automorphism};
pub use expr::{parse_group_expr, Atom, GroupExpr};
pub use perm::Permutation;
pub use permgroup::{
    alternating, cyclic, direct_product, generate_elements, symmetric, DirectProduct, PermGroup,
};
pub use subgroups::{
    all_subgroups, complements_in_group, is_normal, overgroups, subgroup_closure,
    subgroup_lattice, Subgroup, SubgroupEngine, SubgroupLattice,
};

pub const DEFAULT_MAX_ORDER: usize = 20_000;
pub const DEFAULT_MAX_LATTICE_ORDER: usize = 2_048;
pub const DEFAULT_MAX_SUBGROUPS: usize = 50_000;

/// Resource limits for element generation and subgroup enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest group whose elements may be generated.
    pub max_order: usize,
    /// Largest group whose full subgroup lattice may be enumerated.
    pub max_lattice_order: usize,
    /// Largest number of subgroups an enumeration may produce.
    pub max_subgroups: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_order: DEFAULT_MAX_ORDER,
            max_lattice_order: DEFAULT_MAX_LATTICE_ORDER,
            max_subgroups: DEFAULT_MAX_SUBGROUPS,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("not a permutation: {0:?}")]
    NotAPermutation(Vec<usize>),
    #[error("generators act on {found} points, expected {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("group order exceeds cap of {cap}")]
    OrderCapExceeded { cap: usize },
    #[error("subgroup enumeration exceeds cap: {what} > {cap}")]
    EnumerationCapExceeded { what: &'static str, cap: usize },
    #[error("element map is not an automorphism: {0}")]
    NotAnAutomorphism(String),
    #[error("automorphism table for degree {0} is not supported")]
    UnsupportedDegree(usize),
    #[error("subgroup does not belong to this group")]
    ForeignSubgroup,
    #[error("direct factors differ; expected a square T x T")]
    FactorMismatch,
    #[error("cannot parse group expression: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, GroupError>;
