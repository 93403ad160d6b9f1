//! Category codes for large categorical variables.
//!
//! IDs in `[0, N)` are mapped to tuples of small residues (one per *site*),
//! which can be emitted as r-hot vectors for feature encoding or decoded back
//! from per-site classifier outputs for label encoding.
//!
//! * [`arith`] and [`gauss`]: number theory over `Z` and `Z[i]`.
//! * [`codes`]: the code families, r-hot emission and codebook files.
//! * [`metrics`]: collision number, mutual information, AMKL, Hamming statistics.
//! * [`inference`]: soft decoding and a seeded noisy-learner simulator.

pub mod arith;
pub mod codes;
pub mod gauss;
pub mod inference;
pub mod metrics;
pub mod seed;

pub use codes::{theoretical_min_collision, CodeError, Codebook, RHotVector, Scheme, SiteTuple};
pub use gauss::GaussInt;
pub use seed::SeedSplitter;
