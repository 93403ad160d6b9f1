use std::collections::HashMap;

use serde::Serialize;

use super::{check_cap, MetricsError};
use crate::codes::Codebook;

/// Largest class count for which mutual information is computed exactly.
pub const DEFAULT_MI_CAP: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MiPair {
    pub i: usize,
    pub j: usize,
    /// Nats.
    pub mi: f64,
}

/// Exact `I(Y_i; Y_j)` in nats for `x` uniform on `[0, N)`.
pub fn mutual_information(
    cb: &Codebook,
    i: usize,
    j: usize,
    cap: u64,
) -> Result<f64, MetricsError> {
    let r = cb.n_sites();
    for site in [i, j] {
        if site >= r {
            return Err(MetricsError::BadSite { site, n_sites: r });
        }
    }
    if i == j {
        return Err(MetricsError::BadArguments(
            "mutual information needs two distinct sites".into(),
        ));
    }
    check_cap("exact mutual information", cb.n_classes(), cap)?;
    let n = cb.n_classes();
    let sizes = cb.site_sizes();
    let (ni, nj) = (sizes[i] as usize, sizes[j] as usize);
    let mut buf = vec![0u32; r];
    let pairs = (0..n).map(|x| {
        cb.encode_into(x, &mut buf);
        (buf[i], buf[j])
    });
    Ok(joint_mi(pairs, ni, nj, n))
}

/// Exact mutual information of two aligned value columns under a uniform index.
pub fn mutual_information_columns(a: &[u32], b: &[u32]) -> Result<f64, MetricsError> {
    if a.len() != b.len() || a.is_empty() {
        return Err(MetricsError::ShapeMismatch(format!(
            "columns of length {} and {}",
            a.len(),
            b.len()
        )));
    }
    let na = *a.iter().max().unwrap() as usize + 1;
    let nb = *b.iter().max().unwrap() as usize + 1;
    Ok(joint_mi(
        a.iter().copied().zip(b.iter().copied()),
        na,
        nb,
        a.len() as u64,
    ))
}

/// `sum c_ab/N ln(c_ab N / (c_a c_b))` from integer counts.
fn joint_mi(pairs: impl Iterator<Item = (u32, u32)>, na: usize, nb: usize, n: u64) -> f64 {
    let mut ca = vec![0u64; na];
    let mut cb = vec![0u64; nb];
    let dense = (na as u128 * nb as u128) <= 1 << 26;
    let mut joint_dense = if dense { vec![0u64; na * nb] } else { Vec::new() };
    let mut joint_sparse: HashMap<(u32, u32), u64> = HashMap::new();
    for (a, b) in pairs {
        ca[a as usize] += 1;
        cb[b as usize] += 1;
        if dense {
            joint_dense[a as usize * nb + b as usize] += 1;
        } else {
            *joint_sparse.entry((a, b)).or_default() += 1;
        }
    }
    let nf = n as f64;
    let term = |a: usize, b: usize, c: u64| -> f64 {
        let ratio = (c as f64 * nf) / (ca[a] as f64 * cb[b] as f64);
        c as f64 / nf * ratio.ln()
    };
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    let mut add = |t: f64| {
        // Kahan summation: terms of both signs nearly cancel for good codes
        let y = t - comp;
        let s = sum + y;
        comp = (s - sum) - y;
        sum = s;
    };
    if dense {
        for (idx, &c) in joint_dense.iter().enumerate() {
            if c > 0 {
                add(term(idx / nb, idx % nb, c));
            }
        }
    } else {
        let mut entries: Vec<_> = joint_sparse.into_iter().collect();
        entries.sort_unstable();
        for ((a, b), c) in entries {
            add(term(a as usize, b as usize, c));
        }
    }
    sum.max(0.0)
}

/// Mutual information for every site pair `i < j`.
pub fn mutual_information_all(cb: &Codebook, cap: u64) -> Result<Vec<MiPair>, MetricsError> {
    let r = cb.n_sites();
    let mut out = Vec::new();
    for i in 0..r {
        for j in i + 1..r {
            out.push(MiPair {
                i,
                j,
                mi: mutual_information(cb, i, j, cap)?,
            });
        }
    }
    Ok(out)
}
