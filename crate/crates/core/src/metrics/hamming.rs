use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::MetricsError;
use crate::codes::Codebook;
use crate::seed::SeedSplitter;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HammingStats {
    pub min: u64,
    pub mean: f64,
    pub max: u64,
    pub samples: u64,
    pub seed: u64,
}

/// Seeded pairs of distinct IDs; the same `(samples, seed)` always gives the same pairs.
pub fn hamming_pairs(n_classes: u64, samples: u64, seed: u64) -> Vec<(u64, u64)> {
    let mut rng = SeedSplitter::new(seed).stream("hamming-pairs");
    (0..samples)
        .map(|_| {
            let x = rng.random_range(0..n_classes);
            let mut y = rng.random_range(0..n_classes - 1);
            if y >= x {
                y += 1;
            }
            (x, y)
        })
        .collect()
}

/// Min, mean and max Hamming distance between r-hot codewords of sampled ID pairs.
pub fn hamming_stats(cb: &Codebook, samples: u64, seed: u64) -> Result<HammingStats, MetricsError> {
    if samples < 2 {
        return Err(MetricsError::BadArguments(
            "at least two samples are required".into(),
        ));
    }
    let pairs = hamming_pairs(cb.n_classes(), samples, seed);
    let dists: Vec<u64> = pairs
        .par_iter()
        .map(|&(x, y)| {
            let a = cb.to_rhot(x).expect("sampled in range");
            let b = cb.to_rhot(y).expect("sampled in range");
            a.hamming(&b) as u64
        })
        .collect();
    let total: u64 = dists.iter().sum();
    Ok(HammingStats {
        min: *dists.iter().min().unwrap(),
        mean: total as f64 / samples as f64,
        max: *dists.iter().max().unwrap(),
        samples,
        seed,
    })
}
