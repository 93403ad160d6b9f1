use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{check_cap, MetricsError, Packed};
use crate::codes::{theoretical_min_collision, Codebook, SiteTable};
use crate::seed::SeedSplitter;

/// Largest class count accepted by the exact collision scan.
pub const DEFAULT_COLLISION_CAP: u64 = 30_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase", tag = "kind")]
pub enum CollisionMode {
    /// Exact maximum over all pairs, refused above `cap` classes.
    Exhaustive { cap: u64 },
    /// Maximum over seeded random pairs; only a lower bound on C(f).
    Sampled { samples: u64, seed: u64 },
}

impl Default for CollisionMode {
    fn default() -> Self {
        CollisionMode::Exhaustive {
            cap: DEFAULT_COLLISION_CAP,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CollisionReport {
    pub max_collisions: u32,
    /// `None` when the sites cannot separate all classes.
    pub theoretical_bound: Option<u32>,
    pub witness_pair: Option<(u64, u64)>,
    pub mode: CollisionMode,
    pub n_classes: u64,
}

impl CollisionReport {
    /// Exact scan that meets the lower bound.
    pub fn is_minimal(&self) -> bool {
        matches!(self.mode, CollisionMode::Exhaustive { .. })
            && self.theoretical_bound == Some(self.max_collisions)
    }
}

/// Best pair so far: most agreements, then the lexicographically smallest pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Best {
    agree: u32,
    pair: Option<(u32, u32)>,
}

impl Best {
    const NONE: Best = Best {
        agree: 0,
        pair: None,
    };

    fn better(self, other: Best) -> Best {
        match (self.pair, other.pair) {
            (None, _) => other,
            (_, None) => self,
            (Some(a), Some(b)) => {
                if other.agree > self.agree || (other.agree == self.agree && b < a) {
                    other
                } else {
                    self
                }
            }
        }
    }
}

pub fn collision_number(cb: &Codebook, mode: CollisionMode) -> Result<CollisionReport, MetricsError> {
    let ids: Vec<u64> = match mode {
        CollisionMode::Exhaustive { cap } => {
            check_cap("exhaustive collision scan", cb.n_classes(), cap)?;
            (0..cb.n_classes()).collect()
        }
        CollisionMode::Sampled { .. } => Vec::new(),
    };
    match mode {
        CollisionMode::Exhaustive { .. } => Ok(exhaustive(cb, &ids, mode)),
        CollisionMode::Sampled { samples, seed } => Ok(sampled(cb, samples, seed, mode)),
    }
}

/// Exact collision number of the code restricted to `ids` (duplicates are an error).
pub fn collision_number_on(
    cb: &Codebook,
    ids: &[u64],
    cap: u64,
) -> Result<CollisionReport, MetricsError> {
    check_cap("exhaustive collision scan", ids.len() as u64, cap)?;
    if ids.len() < 2 {
        return Err(MetricsError::BadArguments("need at least two IDs".into()));
    }
    let mut seen = std::collections::HashSet::new();
    for &x in ids {
        if x >= cb.n_classes() || !seen.insert(x) {
            return Err(MetricsError::BadArguments(format!(
                "ID {x} repeated or out of range"
            )));
        }
    }
    Ok(exhaustive(cb, ids, CollisionMode::Exhaustive { cap }))
}

fn rows_for(cb: &Codebook, ids: &[u64]) -> SiteTable {
    if ids.len() as u64 == cb.n_classes() && ids.iter().enumerate().all(|(i, &x)| i as u64 == x) {
        cb.site_table()
    } else {
        SiteTable::from_ids(cb, ids)
    }
}

fn exhaustive(cb: &Codebook, ids: &[u64], mode: CollisionMode) -> CollisionReport {
    let table = rows_for(cb, ids);
    let best = if cb.site_sizes().iter().all(|&s| s == 2) {
        binary_pair_scan(&table)
    } else {
        subset_scan(&table, cb.site_sizes()).unwrap_or_else(|| generic_pair_scan(&table))
    };
    report(cb, ids, best, mode)
}

fn report(cb: &Codebook, ids: &[u64], best: Best, mode: CollisionMode) -> CollisionReport {
    let n = if ids.is_empty() {
        cb.n_classes()
    } else {
        ids.len() as u64
    };
    let map = |i: u32| {
        if ids.is_empty() {
            i as u64
        } else {
            ids[i as usize]
        }
    };
    CollisionReport {
        max_collisions: best.agree,
        theoretical_bound: theoretical_min_collision(n, cb.site_sizes()).ok(),
        witness_pair: best.pair.map(|(a, b)| {
            let (x, y) = (map(a), map(b));
            (x.min(y), x.max(y))
        }),
        mode,
        n_classes: n,
    }
}

/// Plain O(N^2 r) scan over all pairs; kept public as an independent oracle.
pub fn pair_scan_collision(cb: &Codebook, cap: u64) -> Result<CollisionReport, MetricsError> {
    check_cap("pair scan", cb.n_classes(), cap)?;
    let table = cb.site_table();
    let ids: Vec<u64> = (0..cb.n_classes()).collect();
    Ok(report(
        cb,
        &ids,
        generic_pair_scan(&table),
        CollisionMode::Exhaustive { cap },
    ))
}

fn generic_pair_scan(table: &SiteTable) -> Best {
    let n = table.len();
    (0..n)
        .into_par_iter()
        .map(|x| {
            let rx = table.row(x);
            let mut best = Best::NONE;
            for y in x + 1..n {
                let agree = rx.iter().zip(table.row(y)).filter(|(a, b)| a == b).count() as u32;
                if best.pair.is_none() || agree > best.agree {
                    best = Best {
                        agree,
                        pair: Some((x as u32, y as u32)),
                    };
                }
            }
            best
        })
        .reduce(|| Best::NONE, Best::better)
}

fn pack_sites(table: &SiteTable) -> Packed {
    let r = table.n_sites();
    let words = r.div_ceil(64);
    let mut data = vec![0u64; table.len() * words];
    for x in 0..table.len() {
        for (i, &v) in table.row(x).iter().enumerate() {
            if v != 0 {
                data[x * words + i / 64] |= 1 << (i % 64);
            }
        }
    }
    Packed { words, data }
}

fn binary_pair_scan(table: &SiteTable) -> Best {
    let r = table.n_sites() as u32;
    let packed = pack_sites(table);
    let n = table.len();
    (0..n)
        .into_par_iter()
        .map(|x| {
            let px = packed.row(x);
            let mut best = Best::NONE;
            for y in x + 1..n {
                let diff: u32 = px
                    .iter()
                    .zip(packed.row(y))
                    .map(|(a, b)| (a ^ b).count_ones())
                    .sum();
                let agree = r - diff;
                if best.pair.is_none() || agree > best.agree {
                    best = Best {
                        agree,
                        pair: Some((x as u32, y as u32)),
                    };
                }
            }
            best
        })
        .reduce(|| Best::NONE, Best::better)
}

fn binomial(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, i| acc.saturating_mul((n - i) as u128) / (i as u128 + 1))
}

/// All `t`-subsets of `0..r` in lexicographic order.
pub(crate) fn combinations(r: usize, t: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..t).collect();
    if t > r {
        return out;
    }
    loop {
        out.push(cur.clone());
        let mut i = t;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < r - t + i {
                break;
            }
        }
        cur[i] += 1;
        for j in i + 1..t {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Mixed-radix key of row `x` projected to `subset`.
fn subset_key(table: &SiteTable, sizes: &[u32], subset: &[usize], x: usize) -> u128 {
    let row = table.row(x);
    subset
        .iter()
        .fold(0u128, |k, &i| k * sizes[i] as u128 + row[i] as u128)
}

/// Ids (row indices) sorted so that equal projections are adjacent.
pub(crate) fn projection_groups(
    table: &SiteTable,
    sizes: &[u32],
    subset: &[usize],
) -> Vec<(u128, u32)> {
    let mut keys: Vec<(u128, u32)> = (0..table.len())
        .map(|x| (subset_key(table, sizes, subset, x), x as u32))
        .collect();
    keys.sort_unstable();
    keys
}

/// Whether every projection key fits in a u128.
pub(crate) fn keys_fit(sizes: &[u32], t: usize) -> bool {
    let mut s: Vec<u32> = sizes.to_vec();
    s.sort_unstable_by(|a, b| b.cmp(a));
    s.iter()
        .take(t)
        .try_fold(1u128, |acc, &v| acc.checked_mul(v as u128))
        .is_some()
}

/// Smallest colliding pair in the projection to `subset`, if any.
fn first_collision(table: &SiteTable, sizes: &[u32], subset: &[usize]) -> Option<(u32, u32)> {
    let keys = projection_groups(table, sizes, subset);
    let mut best: Option<(u32, u32)> = None;
    let mut start = 0;
    while start < keys.len() {
        let mut end = start + 1;
        while end < keys.len() && keys[end].0 == keys[start].0 {
            end += 1;
        }
        if end - start >= 2 {
            // sorted by (key, id): the first two ids of a group are its smallest pair
            let pair = (keys[start].1, keys[start + 1].1);
            best = Some(best.map_or(pair, |b| b.min(pair)));
        }
        start = end;
    }
    best
}

/// C(f) as the largest `t` such that some `t`-subset of sites is not injective.
///
/// Agreement on a set of sites implies agreement on each subset, so the scan
/// can stop at the first level with no collisions. Returns `None` when the
/// number of subsets makes the plain pair scan cheaper.
fn subset_scan(table: &SiteTable, sizes: &[u32]) -> Option<Best> {
    let r = sizes.len();
    let n = table.len() as u128;
    let mut best = Best::NONE;
    for t in 1..=r {
        if binomial(r, t) > n / 2 + 64 || !keys_fit(sizes, t) {
            return None;
        }
        let found = combinations(r, t)
            .par_iter()
            .filter_map(|s| first_collision(table, sizes, s))
            .min();
        match found {
            Some(pair) => {
                best = Best {
                    agree: t as u32,
                    pair: Some(pair),
                }
            }
            None => break,
        }
    }
    if best.pair.is_none() && n >= 2 {
        // no site ever agrees: any pair is a witness with zero agreements
        best.pair = Some((0, 1));
    }
    Some(best)
}

/// Exact C(f) by the subset method, or `None` when that method is too costly.
pub(crate) fn subset_collision_level(table: &SiteTable, sizes: &[u32]) -> Option<u32> {
    subset_scan(table, sizes).map(|b| b.agree)
}

/// Whether the projection scans at levels `1..=t` are cheaper than the pair scan.
pub(crate) fn subset_levels_feasible(n: usize, sizes: &[u32], t: usize) -> bool {
    (1..=t).all(|l| binomial(sizes.len(), l) <= n as u128 / 2 + 64 && keys_fit(sizes, l))
}

fn sampled(cb: &Codebook, samples: u64, seed: u64, mode: CollisionMode) -> CollisionReport {
    let n = cb.n_classes();
    let r = cb.n_sites();
    const CHUNK: u64 = 1 << 16;
    let chunks = samples.div_ceil(CHUNK);
    let split = SeedSplitter::new(seed);
    let best = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = split.indexed("collision-pairs", c);
            let mut a = vec![0u32; r];
            let mut b = vec![0u32; r];
            let mut best = Best::NONE;
            let todo = CHUNK.min(samples - c * CHUNK);
            for _ in 0..todo {
                let x = rng.random_range(0..n);
                let mut y = rng.random_range(0..n - 1);
                if y >= x {
                    y += 1;
                }
                cb.encode_into(x, &mut a);
                cb.encode_into(y, &mut b);
                let agree = a.iter().zip(&b).filter(|(u, v)| u == v).count() as u32;
                let pair = (x.min(y) as u32, x.max(y) as u32);
                best = best.better(Best {
                    agree,
                    pair: Some(pair),
                });
            }
            best
        })
        .reduce(|| Best::NONE, Best::better);
    report(cb, &[], best, mode)
}
