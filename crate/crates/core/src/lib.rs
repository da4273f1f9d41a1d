//! Permutation groups, coset graphs and the checks used to classify
//! edge-primitive arc-transitive graphs.

pub mod blocks;
pub mod catalog;
pub mod coset;
pub mod error;
pub mod graph;
pub mod group;
pub mod iso;
pub mod lattice;
pub mod normal;
pub mod perm;
pub mod props;
pub mod reduction;
pub mod report;
pub mod subgroups;

pub use blocks::{BlockSystem, Primitivity};
pub use catalog::Catalog;
pub use coset::{CosetAction, CosetCanonicalizer};
pub use error::{Error, Result};
pub use graph::{build_from_lattice, build_graph, CosetGraph, Graph};
pub use group::{BsgsOptions, PermGroup};
pub use iso::{isomorphic, isomorphism};
pub use lattice::{find_lattices, verify_lattice, Lattice};
pub use perm::{PermError, Permutation};
pub use report::{CheckRecord, VerificationReport};

/// Size limits for the expensive operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest coset index for coset actions and graph builds.
    pub coset_index_cap: u64,
    /// Largest group order for subgroup enumeration.
    pub subgroup_order_cap: u64,
    /// Largest number of elements scanned when intersecting subgroups.
    pub intersection_scan_cap: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            coset_index_cap: 2_000_000,
            subgroup_order_cap: 10_000,
            intersection_scan_cap: 1_000_000,
        }
    }
}
