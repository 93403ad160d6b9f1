//! Average minimal KL divergence between reduced r-hot distributions.
//!
//! Dividing an r-hot codeword by its weight gives a distribution uniform on
//! its support. `KL(P_i || P_j)` is infinite unless `supp P_i ⊆ supp P_j`;
//! the infinite part is tracked by its coefficient `|supp_i \ supp_j| / w`.
//! For a code whose codewords share at most `τ_i` bits with any other, the
//! minimum over `j` is `1 - τ_i / w`.

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use super::collision::{
    combinations, projection_groups, subset_collision_level, subset_levels_feasible,
};
use super::{check_cap, MetricsError, Packed, DEFAULT_COLLISION_CAP};
use crate::codes::{Codebook, RHotVector};

/// Divergence split into a multiple of `log ∞` and a finite remainder.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExtendedKL {
    #[serde(serialize_with = "ratio_string")]
    pub infinite_coefficient: Ratio<u64>,
    /// Nats.
    pub finite_part: f64,
}

fn ratio_string<S: Serializer>(r: &Ratio<u64>, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

fn ratio_opt_string<S: Serializer>(r: &Option<Ratio<u64>>, s: S) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&r.to_string()),
        None => s.serialize_none(),
    }
}

/// KL divergence of the reduced distributions of two equal-weight codewords.
///
/// Both are uniform on their supports, so wherever the supports overlap the
/// log-ratio is zero and only the missed mass contributes.
pub fn reduced_kl(a: &RHotVector, b: &RHotVector) -> Result<ExtendedKL, MetricsError> {
    if a.total_bits != b.total_bits || a.weight() != b.weight() || a.weight() == 0 {
        return Err(MetricsError::ShapeMismatch(format!(
            "vectors of {}/{} bits with weights {}/{}",
            a.total_bits,
            b.total_bits,
            a.weight(),
            b.weight()
        )));
    }
    let w = a.weight() as u64;
    let missed = w - a.common(b) as u64;
    Ok(ExtendedKL {
        infinite_coefficient: Ratio::new(missed, w),
        finite_part: 0.0,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AmklMethod {
    /// Shortcut when it applies, otherwise brute force.
    Auto,
    /// Per-ID maximal agreement from grouped site projections.
    Shortcut,
    /// All pairs of packed r-hot vectors.
    BruteForce,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AmklReport {
    /// Exact coefficient of `log ∞`; present for uniform weights.
    #[serde(serialize_with = "ratio_opt_string")]
    pub coefficient: Option<Ratio<u64>>,
    pub value: f64,
    /// Set bits per codeword.
    pub weight: u64,
    /// Smallest and largest per-ID maximal overlap τ.
    pub tau_min: u64,
    pub tau_max: u64,
    /// IDs whose support coincides with another ID's (τ = weight, min-KL 0).
    pub duplicate_supports: u64,
    pub method: AmklMethod,
}

pub fn amkl_coefficient(cb: &Codebook, weights: Option<&[f64]>) -> Result<AmklReport, MetricsError> {
    amkl_with(cb, weights, AmklMethod::Auto, DEFAULT_COLLISION_CAP)
}

/// AMKL with an explicit method; `cap` bounds the class count of the pair scan.
pub fn amkl_with(
    cb: &Codebook,
    weights: Option<&[f64]>,
    method: AmklMethod,
    cap: u64,
) -> Result<AmklReport, MetricsError> {
    let n = cb.n_classes();
    if let Some(w) = weights {
        check_weights(w, n)?;
    }
    let r = cb.n_sites() as u64;
    let w = cb.codeword_weight();
    let (missed, used): (Vec<u64>, AmklMethod) = match method {
        AmklMethod::BruteForce => (brute_force_missed(cb, cap)?, AmklMethod::BruteForce),
        AmklMethod::Shortcut | AmklMethod::Auto => match max_agreements(cb) {
            Some(a) => (
                // with or without complement, the missed bits are r - agreements
                a.iter().map(|&t| r - t as u64).collect(),
                AmklMethod::Shortcut,
            ),
            None if method == AmklMethod::Auto => {
                (brute_force_missed(cb, cap)?, AmklMethod::BruteForce)
            }
            None => {
                return Err(MetricsError::BadArguments(
                    "the projection shortcut does not apply to this code".into(),
                ))
            }
        },
    };
    let tau = |m: u64| w - m;
    let tau_min = missed.iter().map(|&m| tau(m)).min().unwrap_or(0);
    let tau_max = missed.iter().map(|&m| tau(m)).max().unwrap_or(0);
    let duplicate_supports = missed.iter().filter(|&&m| m == 0).count() as u64;
    let (coefficient, value) = match weights {
        None => {
            let total: u64 = missed.iter().sum();
            let ratio = Ratio::new(total, w * n);
            (Some(ratio), *ratio.numer() as f64 / *ratio.denom() as f64)
        }
        Some(p) => {
            let v = p
                .iter()
                .zip(&missed)
                .map(|(&pi, &m)| pi * m as f64 / w as f64)
                .sum();
            (None, v)
        }
    };
    Ok(AmklReport {
        coefficient,
        value,
        weight: w,
        tau_min,
        tau_max,
        duplicate_supports,
        method: used,
    })
}

fn check_weights(w: &[f64], n: u64) -> Result<(), MetricsError> {
    if w.len() as u64 != n {
        return Err(MetricsError::BadWeights(format!(
            "{} weights for {n} classes",
            w.len()
        )));
    }
    if w.iter().any(|&p| !(p >= 0.0 && p.is_finite())) {
        return Err(MetricsError::BadWeights("weights must be non-negative".into()));
    }
    let sum: f64 = w.iter().sum();
    if (sum - 1.0).abs() > 1e-9 {
        return Err(MetricsError::BadWeights(format!("weights sum to {sum}")));
    }
    Ok(())
}

/// For each ID, the largest number of sites on which it agrees with some other ID.
///
/// Works level by level from the collision number down: an ID that shares
/// its projection onto some `t`-subset with another ID has maximal agreement
/// at least `t`. Returns `None` for binary codes and others where the number
/// of subsets makes this slower than the pair scan.
pub fn max_agreements(cb: &Codebook) -> Option<Vec<u32>> {
    let sizes = cb.site_sizes();
    if sizes.iter().all(|&s| s == 2) {
        return None;
    }
    let n = usize::try_from(cb.n_classes()).ok()?;
    if !subset_levels_feasible(n, sizes, 1) {
        return None;
    }
    let table = cb.site_table();
    let top = subset_collision_level(&table, sizes)? as usize;
    if !subset_levels_feasible(n, sizes, top) {
        return None;
    }
    let mut agree = vec![0u32; n];
    let mut resolved = vec![false; n];
    for t in (1..=top).rev() {
        let hits: Vec<Vec<u32>> = combinations(sizes.len(), t)
            .par_iter()
            .map(|subset| {
                let keys = projection_groups(&table, sizes, subset);
                let mut ids = Vec::new();
                let mut start = 0;
                while start < keys.len() {
                    let mut end = start + 1;
                    while end < keys.len() && keys[end].0 == keys[start].0 {
                        end += 1;
                    }
                    if end - start >= 2 {
                        ids.extend(keys[start..end].iter().map(|k| k.1));
                    }
                    start = end;
                }
                ids
            })
            .collect();
        for x in hits.into_iter().flatten() {
            if !resolved[x as usize] {
                resolved[x as usize] = true;
                agree[x as usize] = t as u32;
            }
        }
        if resolved.iter().all(|&d| d) {
            break;
        }
    }
    Some(agree)
}

fn pack_rhot(cb: &Codebook) -> Packed {
    let words = (cb.total_bits() as usize).div_ceil(64);
    let n = cb.n_classes() as usize;
    let mut data = vec![0u64; n * words];
    data.par_chunks_mut(words).enumerate().for_each(|(x, row)| {
        let v = cb.to_rhot(x as u64).expect("x < N");
        for b in v.set_bits {
            row[b as usize / 64] |= 1 << (b % 64);
        }
    });
    Packed { words, data }
}

/// `min_{j != i} |supp_i \ supp_j|` for every ID, straight from the r-hot vectors.
fn brute_force_missed(cb: &Codebook, cap: u64) -> Result<Vec<u64>, MetricsError> {
    check_cap("brute-force AMKL", cb.n_classes(), cap)?;
    let packed = pack_rhot(cb);
    let n = cb.n_classes() as usize;
    Ok((0..n)
        .into_par_iter()
        .map(|i| {
            let a = packed.row(i);
            (0..n)
                .filter(|&j| j != i)
                .map(|j| {
                    a.iter()
                        .zip(packed.row(j))
                        .map(|(x, y)| (x & !y).count_ones() as u64)
                        .sum::<u64>()
                })
                .min()
                .unwrap_or(0)
        })
        .collect())
}
