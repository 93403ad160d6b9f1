//! Code analysis: collision number, mutual information between sites, AMKL
//! and Hamming statistics.

mod amkl;
mod collision;
mod hamming;
mod mi;

use serde::Serialize;
use thiserror::Error;

pub use amkl::{
    amkl_coefficient, amkl_with, max_agreements, reduced_kl, AmklMethod, AmklReport, ExtendedKL,
};
pub use collision::{
    collision_number, collision_number_on, pair_scan_collision, CollisionMode, CollisionReport,
    DEFAULT_COLLISION_CAP,
};
pub use hamming::{hamming_pairs, hamming_stats, HammingStats};
pub use mi::{
    mutual_information, mutual_information_all, mutual_information_columns, MiPair,
    DEFAULT_MI_CAP,
};

#[derive(Debug, Error)]
pub enum MetricsError {
    #[error("{what} over {n} classes exceeds the cap of {cap}")]
    CapExceeded { what: &'static str, n: u64, cap: u64 },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("site {site} out of range for {n_sites} sites")]
    BadSite { site: usize, n_sites: usize },
    #[error("bad weights: {0}")]
    BadWeights(String),
    #[error("bad arguments: {0}")]
    BadArguments(String),
}

/// Everything `catcode metrics` can emit, serialized as one JSON document.
#[derive(Debug, Clone, Default, Serialize)]
pub struct MetricsReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub collision: Option<CollisionReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub mi_pairs: Vec<MiPair>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub amkl: Option<AmklReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hamming: Option<HammingStats>,
}

/// Bit-packed rows, `words` u64 per row.
pub(crate) struct Packed {
    pub words: usize,
    pub data: Vec<u64>,
}

impl Packed {
    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.words..(i + 1) * self.words]
    }
}

fn check_cap(what: &'static str, n: u64, cap: u64) -> Result<(), MetricsError> {
    if n > cap {
        return Err(MetricsError::CapExceeded { what, n, cap });
    }
    Ok(())
}
