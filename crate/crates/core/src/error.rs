use num_bigint::BigUint;
use thiserror::Error;

use crate::perm::PermError;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("{what} is not contained in {parent}")]
    NotSubgroup { what: String, parent: String },
    #[error("coset index {index} exceeds the cap {cap}")]
    IndexCap { index: BigUint, cap: u64 },
    #[error("group order {order} exceeds the cap {cap}; use verify mode with shipped lattice data")]
    OrderCap { order: BigUint, cap: u64 },
    #[error("intersection scan exceeded the cap of {cap} elements")]
    ScanCap { cap: u64 },
    #[error("group is not transitive")]
    Intransitive,
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("catalog: {0}")]
    Catalog(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Json {
        path: String,
        #[source]
        source: serde_json::Error,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
