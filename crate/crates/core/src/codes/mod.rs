//! Category codes: maps from `[0, N)` into a product of small residue sets.
//!
//! A [`Codebook`] is built once and then queried. Its site functions are
//! pure, so encoding is safe from any number of threads.

mod file;
pub mod presets;
mod rhot;

use std::collections::HashSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{
    self, is_prime, p_adic_digits, poly_eval_mod_p, validate_pairwise_coprime, ArithError,
    PrimeSearchWindow, MAX_CLASSES,
};
use crate::gauss::{
    are_pairwise_coprime, select_gauss_moduli, DiscEmbedding, GaussError, GaussInt, GaussModulus,
};
use crate::seed::SeedSplitter;

pub use file::{CodebookFile, FORMAT_VERSION};
pub use rhot::RHotVector;

/// Largest Reed-Muller order parameter `m` accepted (2^m coordinates).
pub const MAX_RM_ORDER: u32 = 24;

#[derive(Debug, Error)]
pub enum CodeError {
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("moduli are not pairwise coprime")]
    NotCoprime,
    #[error("moduli too small: {0}")]
    ModulusTooSmall(String),
    #[error("id {id} out of range for {n_classes} classes")]
    OutOfRange { id: u64, n_classes: u64 },
    #[error("product of all site sizes is below {n_classes}; no injective code exists")]
    Unreachable { n_classes: u64 },
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Gauss(#[from] GaussError),
    #[error("invalid codebook file: {0}")]
    Format(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    Polynomial,
    Remainder,
    Gauss,
    Coo,
    Rmp,
    Ecoc,
}

impl Scheme {
    pub fn name(self) -> &'static str {
        match self {
            Scheme::Polynomial => "polynomial",
            Scheme::Remainder => "remainder",
            Scheme::Gauss => "gauss",
            Scheme::Coo => "coo",
            Scheme::Rmp => "rmp",
            Scheme::Ecoc => "ecoc",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialParams {
    pub p: u64,
    pub k: u32,
    pub eval_points: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RemainderParams {
    pub k: u32,
    pub moduli: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaussParams {
    pub k: u32,
    pub moduli: Vec<GaussInt>,
    /// Squared radius of the disc the IDs are embedded in.
    pub radius_sq: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CooParams {
    pub total_bits: u64,
    /// IDs from most to least frequent; `None` means ID order.
    pub frequency_order: Option<Vec<u64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RmpParams {
    pub m: u32,
    pub seed: u64,
    /// Surviving coordinates of RM(m, 1), ascending.
    pub kept: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EcocParams {
    pub bits: u32,
    /// Explicit codeword per ID for the random variant; `None` is the binary expansion.
    pub codewords: Option<Vec<u64>>,
    pub seed: Option<u64>,
}

/// Scheme parameters, one variant per code family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CodeParams {
    Polynomial(PolynomialParams),
    Remainder(RemainderParams),
    Gauss(GaussParams),
    Coo(CooParams),
    Rmp(RmpParams),
    Ecoc(EcocParams),
}

impl CodeParams {
    pub fn scheme(&self) -> Scheme {
        match self {
            CodeParams::Polynomial(_) => Scheme::Polynomial,
            CodeParams::Remainder(_) => Scheme::Remainder,
            CodeParams::Gauss(_) => Scheme::Gauss,
            CodeParams::Coo(_) => Scheme::Coo,
            CodeParams::Rmp(_) => Scheme::Rmp,
            CodeParams::Ecoc(_) => Scheme::Ecoc,
        }
    }
}

#[derive(Debug, Clone)]
enum Evaluator {
    Polynomial,
    Remainder,
    Gauss {
        disc: DiscEmbedding,
        moduli: Vec<GaussModulus>,
    },
    Coo {
        rank: Option<Vec<u64>>,
    },
    Rmp,
    Ecoc,
}

/// The image `(f_1(x), ..., f_r(x))` of one ID.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SiteTuple(pub Vec<u32>);

impl SiteTuple {
    pub fn values(&self) -> &[u32] {
        &self.0
    }
}

/// An immutable category code over `n_classes` IDs.
#[derive(Debug, Clone)]
pub struct Codebook {
    n_classes: u64,
    site_sizes: Vec<u32>,
    params: CodeParams,
    anti: bool,
    eval: Evaluator,
}

fn bad(msg: impl Into<String>) -> CodeError {
    CodeError::BadParameters(msg.into())
}

fn check_classes(n_classes: u64) -> Result<(), CodeError> {
    if !(2..=MAX_CLASSES).contains(&n_classes) {
        return Err(bad(format!("class count {n_classes} outside [2, 2^40]")));
    }
    Ok(())
}

fn to_site_size(v: u64) -> Result<u32, CodeError> {
    u32::try_from(v).map_err(|_| bad(format!("site size {v} exceeds 32 bits")))
}

/// Product of the `k` smallest values, saturating.
fn product_of_smallest(values: &[u64], k: usize) -> u128 {
    let mut sorted = values.to_vec();
    sorted.sort_unstable();
    sorted
        .iter()
        .take(k)
        .fold(1u128, |acc, &v| acc.saturating_mul(v as u128))
}

impl Codebook {
    /// Reed-Solomon style code: digits of `x` in base `p` evaluated as a polynomial at `eval_points`.
    pub fn polynomial(
        n_classes: u64,
        k: u32,
        p: u64,
        eval_points: Vec<u64>,
    ) -> Result<Self, CodeError> {
        check_classes(n_classes)?;
        if k == 0 {
            return Err(bad("k must be at least 1"));
        }
        if !is_prime(p) {
            return Err(bad(format!("{p} is not prime")));
        }
        let r = eval_points.len();
        if r == 0 {
            return Err(bad("at least one evaluation point is required"));
        }
        if r as u64 > p {
            return Err(bad(format!("{r} sites exceed the field size {p}")));
        }
        if arith::saturating_pow(p, k) < n_classes as u128 {
            return Err(bad(format!("{p}^{k} is smaller than {n_classes}")));
        }
        let mut seen = HashSet::new();
        for &t in &eval_points {
            if t >= p || !seen.insert(t) {
                return Err(bad(format!(
                    "evaluation points must be distinct and below {p}"
                )));
            }
        }
        let size = to_site_size(p)?;
        Ok(Self {
            n_classes,
            site_sizes: vec![size; r],
            params: CodeParams::Polynomial(PolynomialParams { p, k, eval_points }),
            anti: false,
            eval: Evaluator::Polynomial,
        })
    }

    /// Polynomial code with the smallest admissible prime and points `0..r`.
    pub fn polynomial_auto(
        n_classes: u64,
        k: u32,
        r: usize,
        epsilon: f64,
    ) -> Result<Self, CodeError> {
        let mut window = PrimeSearchWindow::new(n_classes, k, epsilon)?;
        window.lower = window.lower.max(r as u64);
        if window.lower > window.upper {
            return Err(bad(format!("no prime at least {r} in the search window")));
        }
        let p = arith::select_primes(&window, 1)?[0];
        Self::polynomial(n_classes, k, p, (0..r as u64).collect())
    }

    /// CRT code `x -> (x mod m_1, ..., x mod m_r)`.
    pub fn remainder(n_classes: u64, k: u32, moduli: Vec<u64>) -> Result<Self, CodeError> {
        check_classes(n_classes)?;
        if moduli.is_empty() {
            return Err(bad("at least one modulus is required"));
        }
        if k == 0 || k as usize > moduli.len() {
            return Err(bad(format!("k = {k} with {} moduli", moduli.len())));
        }
        if moduli.iter().any(|&m| m < 2) {
            return Err(bad("moduli must be at least 2"));
        }
        if !validate_pairwise_coprime(&moduli) {
            return Err(CodeError::NotCoprime);
        }
        let prod = product_of_smallest(&moduli, k as usize);
        if prod < n_classes as u128 {
            return Err(CodeError::ModulusTooSmall(format!(
                "product of the {k} smallest moduli is {prod} < {n_classes}"
            )));
        }
        let site_sizes = moduli
            .iter()
            .map(|&m| to_site_size(m))
            .collect::<Result<_, _>>()?;
        Ok(Self {
            n_classes,
            site_sizes,
            params: CodeParams::Remainder(RemainderParams { k, moduli }),
            anti: false,
            eval: Evaluator::Remainder,
        })
    }

    /// Remainder code over the `r` smallest primes of the search window.
    pub fn remainder_auto(
        n_classes: u64,
        k: u32,
        r: usize,
        epsilon: f64,
    ) -> Result<Self, CodeError> {
        let window = PrimeSearchWindow::new(n_classes, k, epsilon)?;
        let moduli = arith::select_primes(&window, r)?;
        Self::remainder(n_classes, k, moduli)
    }

    /// IDs placed on the disc lattice, then reduced modulo Gaussian integers.
    pub fn gauss(n_classes: u64, k: u32, moduli: Vec<GaussInt>) -> Result<Self, CodeError> {
        check_classes(n_classes)?;
        if moduli.is_empty() {
            return Err(bad("at least one modulus is required"));
        }
        if k == 0 || k as usize > moduli.len() {
            return Err(bad(format!("k = {k} with {} moduli", moduli.len())));
        }
        if usize::try_from(n_classes).is_err() || n_classes > 1 << 32 {
            return Err(bad("gauss codes are limited to 2^32 classes"));
        }
        if !are_pairwise_coprime(&moduli) {
            return Err(CodeError::NotCoprime);
        }
        let tables = moduli
            .iter()
            .map(|&p| GaussModulus::new(p))
            .collect::<Result<Vec<_>, _>>()?;
        let disc = DiscEmbedding::new(n_classes);
        let norms: Vec<u64> = moduli.iter().map(|p| p.norm()).collect();
        let prod = product_of_smallest(&norms, k as usize);
        // prod |p_i| > 2t  <=>  prod Nm(p_i) > 4 t^2
        let diameter_sq = 4 * disc.radius_sq() as u128;
        if prod <= diameter_sq {
            return Err(CodeError::ModulusTooSmall(format!(
                "product of the {k} smallest norms is {prod}, needs to exceed {diameter_sq}"
            )));
        }
        let site_sizes = norms
            .iter()
            .map(|&m| to_site_size(m))
            .collect::<Result<_, _>>()?;
        let radius_sq = disc.radius_sq();
        Ok(Self {
            n_classes,
            site_sizes,
            params: CodeParams::Gauss(GaussParams {
                k,
                moduli,
                radius_sq,
            }),
            anti: false,
            eval: Evaluator::Gauss {
                disc,
                moduli: tables,
            },
        })
    }

    pub fn gauss_auto(n_classes: u64, k: u32, r: usize, epsilon: f64) -> Result<Self, CodeError> {
        check_classes(n_classes)?;
        let moduli = select_gauss_moduli(n_classes, k, epsilon, r)?;
        Self::gauss(n_classes, k, moduli)
    }

    /// Cut-off one-hot: the `n - 1` most frequent IDs get their own bit, the rest share the last.
    pub fn coo(
        n_classes: u64,
        total_bits: u64,
        frequency_order: Option<Vec<u64>>,
    ) -> Result<Self, CodeError> {
        check_classes(n_classes)?;
        if total_bits < 2 || total_bits > n_classes {
            return Err(bad(format!(
                "cut-off width {total_bits} outside [2, {n_classes}]"
            )));
        }
        let rank = match &frequency_order {
            None => None,
            Some(order) => {
                if order.len() as u64 != n_classes {
                    return Err(bad("frequency order must list every ID exactly once"));
                }
                let mut rank = vec![u64::MAX; order.len()];
                for (r, &id) in order.iter().enumerate() {
                    if id >= n_classes || rank[id as usize] != u64::MAX {
                        return Err(bad("frequency order must list every ID exactly once"));
                    }
                    rank[id as usize] = r as u64;
                }
                Some(rank)
            }
        };
        Ok(Self {
            n_classes,
            site_sizes: vec![to_site_size(total_bits)?],
            params: CodeParams::Coo(CooParams {
                total_bits,
                frequency_order,
            }),
            anti: false,
            eval: Evaluator::Coo { rank },
        })
    }

    /// First-order Reed-Muller code RM(m, 1) punctured to `kept_bits` random coordinates.
    pub fn rmp(n_classes: u64, m: u32, kept_bits: u64, seed: u64) -> Result<Self, CodeError> {
        if m == 0 || m > MAX_RM_ORDER {
            return Err(bad(format!("RM order m = {m} outside [1, {MAX_RM_ORDER}]")));
        }
        let length = 1u64 << m;
        if kept_bits == 0 || kept_bits > length {
            return Err(bad(format!("kept bits {kept_bits} outside [1, {length}]")));
        }
        let mut rng = SeedSplitter::new(seed).stream("rmp-puncture");
        let removed: HashSet<usize> =
            rand::seq::index::sample(&mut rng, length as usize, (length - kept_bits) as usize)
                .into_iter()
                .collect();
        let kept = (0..length as u32)
            .filter(|c| !removed.contains(&(*c as usize)))
            .collect();
        Self::rmp_with_kept(n_classes, m, seed, kept)
    }

    /// RM(m, 1) restricted to an explicit coordinate list.
    pub fn rmp_with_kept(
        n_classes: u64,
        m: u32,
        seed: u64,
        kept: Vec<u32>,
    ) -> Result<Self, CodeError> {
        check_classes(n_classes)?;
        if m == 0 || m > MAX_RM_ORDER {
            return Err(bad(format!("RM order m = {m} outside [1, {MAX_RM_ORDER}]")));
        }
        if (n_classes as u128) > 1u128 << (m + 1) {
            return Err(bad(format!(
                "RM({m},1) has {} codewords, fewer than {n_classes}",
                1u64 << (m + 1)
            )));
        }
        if kept.is_empty() || !kept.windows(2).all(|w| w[0] < w[1]) {
            return Err(bad("kept coordinates must be nonempty and strictly ascending"));
        }
        if *kept.last().unwrap() as u64 >= 1 << m {
            return Err(bad("kept coordinate beyond the code length"));
        }
        Ok(Self {
            n_classes,
            site_sizes: vec![2; kept.len()],
            params: CodeParams::Rmp(RmpParams { m, seed, kept }),
            anti: false,
            eval: Evaluator::Rmp,
        })
    }

    /// Dense binary ECOC: bit `i` of the class index, least significant first.
    pub fn ecoc(n_classes: u64, bits: u32) -> Result<Self, CodeError> {
        Self::ecoc_from(n_classes, bits, None, None)
    }

    /// ECOC with distinct codewords drawn uniformly at random from `{0,1}^bits`.
    pub fn ecoc_random(n_classes: u64, bits: u32, seed: u64) -> Result<Self, CodeError> {
        check_classes(n_classes)?;
        if bits == 0 || bits > 40 || (n_classes as u128) > 1u128 << bits {
            return Err(bad(format!("{bits} bits cannot separate {n_classes} classes")));
        }
        let mut rng = SeedSplitter::new(seed).stream("ecoc-codewords");
        let words = rand::seq::index::sample(&mut rng, 1usize << bits, n_classes as usize)
            .into_iter()
            .map(|w| w as u64)
            .collect();
        Self::ecoc_from(n_classes, bits, Some(words), Some(seed))
    }

    fn ecoc_from(
        n_classes: u64,
        bits: u32,
        codewords: Option<Vec<u64>>,
        seed: Option<u64>,
    ) -> Result<Self, CodeError> {
        check_classes(n_classes)?;
        if bits == 0 || bits > 64 || (n_classes as u128) > 1u128 << bits {
            return Err(bad(format!("{bits} bits cannot separate {n_classes} classes")));
        }
        if let Some(words) = &codewords {
            if words.len() as u64 != n_classes {
                return Err(bad("one codeword per class is required"));
            }
            let mut seen = HashSet::new();
            for &w in words {
                if (bits < 64 && w >> bits != 0) || !seen.insert(w) {
                    return Err(bad("codewords must be distinct and fit in the bit count"));
                }
            }
        }
        Ok(Self {
            n_classes,
            site_sizes: vec![2; bits as usize],
            params: CodeParams::Ecoc(EcocParams {
                bits,
                codewords,
                seed,
            }),
            anti: false,
            eval: Evaluator::Ecoc,
        })
    }

    /// Marks the codebook so that [`Codebook::to_rhot`] returns bitwise complements.
    pub fn with_anti(mut self, anti: bool) -> Self {
        self.anti = anti;
        self
    }

    pub fn scheme(&self) -> Scheme {
        self.params.scheme()
    }

    pub fn n_classes(&self) -> u64 {
        self.n_classes
    }

    pub fn site_sizes(&self) -> &[u32] {
        &self.site_sizes
    }

    pub fn n_sites(&self) -> usize {
        self.site_sizes.len()
    }

    pub fn params(&self) -> &CodeParams {
        &self.params
    }

    pub fn anti(&self) -> bool {
        self.anti
    }

    /// Total width of the r-hot representation.
    pub fn total_bits(&self) -> u64 {
        self.site_sizes.iter().map(|&s| s as u64).sum()
    }

    pub fn block_offsets(&self) -> Vec<u64> {
        self.site_sizes
            .iter()
            .scan(0u64, |acc, &s| {
                let off = *acc;
                *acc += s as u64;
                Some(off)
            })
            .collect()
    }

    /// Set bits per r-hot codeword: `r`, or `total_bits - r` for the anti-code.
    pub fn codeword_weight(&self) -> u64 {
        if self.anti {
            self.total_bits() - self.n_sites() as u64
        } else {
            self.n_sites() as u64
        }
    }

    /// The disc point assigned to `x` (Gauss codes only).
    pub fn disc_point(&self, x: u64) -> Option<GaussInt> {
        match &self.eval {
            Evaluator::Gauss { disc, .. } if x < self.n_classes => Some(disc.point(x)),
            _ => None,
        }
    }

    pub fn check_id(&self, x: u64) -> Result<(), CodeError> {
        if x >= self.n_classes {
            return Err(CodeError::OutOfRange {
                id: x,
                n_classes: self.n_classes,
            });
        }
        Ok(())
    }

    pub fn encode(&self, x: u64) -> Result<SiteTuple, CodeError> {
        self.check_id(x)?;
        let mut out = vec![0u32; self.n_sites()];
        self.encode_into(x, &mut out);
        Ok(SiteTuple(out))
    }

    /// Writes the site values of `x` into `out`; `x` must already be in range.
    pub fn encode_into(&self, x: u64, out: &mut [u32]) {
        debug_assert!(x < self.n_classes);
        debug_assert_eq!(out.len(), self.n_sites());
        match (&self.params, &self.eval) {
            (CodeParams::Polynomial(pp), _) => {
                let digits = p_adic_digits(x, pp.p, pp.k).expect("x < N <= p^k");
                for (slot, &t) in out.iter_mut().zip(&pp.eval_points) {
                    *slot = poly_eval_mod_p(&digits, t) as u32;
                }
            }
            (CodeParams::Remainder(rp), _) => {
                for (slot, &m) in out.iter_mut().zip(&rp.moduli) {
                    *slot = (x % m) as u32;
                }
            }
            (CodeParams::Gauss(_), Evaluator::Gauss { disc, moduli }) => {
                let z = disc.point(x);
                for (slot, m) in out.iter_mut().zip(moduli) {
                    *slot = m.residue_index(z) as u32;
                }
            }
            (CodeParams::Coo(cp), Evaluator::Coo { rank }) => {
                let r = rank.as_ref().map_or(x, |rk| rk[x as usize]);
                out[0] = r.min(cp.total_bits - 1) as u32;
            }
            (CodeParams::Rmp(rp), _) => {
                // codeword index x packs (a_0, ..., a_m) with a_0 least significant
                let a0 = (x & 1) as u32;
                let linear = x >> 1;
                for (slot, &point) in out.iter_mut().zip(&rp.kept) {
                    *slot = a0 ^ ((linear & point as u64).count_ones() & 1);
                }
            }
            (CodeParams::Ecoc(ep), _) => {
                let word = ep.codewords.as_ref().map_or(x, |w| w[x as usize]);
                for (i, slot) in out.iter_mut().enumerate() {
                    *slot = ((word >> i) & 1) as u32;
                }
            }
            _ => unreachable!("evaluator matches params by construction"),
        }
    }

    /// The r-hot (or anti) binary representation of `x`.
    pub fn to_rhot(&self, x: u64) -> Result<RHotVector, CodeError> {
        let sites = self.encode(x)?;
        Ok(RHotVector::from_sites(
            &self.site_sizes,
            sites.values(),
            self.anti,
        ))
    }

    /// All site values, row-major `N x r`, computed in parallel.
    pub fn site_table(&self) -> SiteTable {
        let r = self.n_sites();
        let n = usize::try_from(self.n_classes).expect("class count fits in memory");
        let mut values = vec![0u32; n * r];
        values
            .par_chunks_mut(r)
            .enumerate()
            .for_each(|(x, row)| self.encode_into(x as u64, row));
        SiteTable { r, values }
    }

    /// Largest number of agreeing sites between two IDs that the construction guarantees.
    ///
    /// Remainder and polynomial codes meet the lower bound exactly. For Gauss
    /// codes the guarantee comes from the disc diameter instead and can be
    /// weaker. Other schemes carry no structural guarantee.
    pub fn certified_collision_bound(&self) -> Option<u32> {
        match &self.params {
            CodeParams::Remainder(_) | CodeParams::Polynomial(_) => {
                theoretical_min_collision(self.n_classes, &self.site_sizes).ok()
            }
            CodeParams::Gauss(gp) => {
                let mut norms: Vec<u128> = gp.moduli.iter().map(|p| p.norm() as u128).collect();
                norms.sort_unstable();
                let diameter_sq = 4 * gp.radius_sq as u128;
                let mut prod = 1u128;
                for (i, n) in norms.iter().enumerate() {
                    prod = prod.saturating_mul(*n);
                    if prod > diameter_sq {
                        return Some(i as u32);
                    }
                }
                None
            }
            _ => None,
        }
    }
}

/// Precomputed site values for every ID.
#[derive(Debug, Clone)]
pub struct SiteTable {
    r: usize,
    values: Vec<u32>,
}

impl SiteTable {
    /// Rows for the listed IDs only, in the given order; IDs must be in range.
    pub fn from_ids(cb: &Codebook, ids: &[u64]) -> Self {
        let r = cb.n_sites();
        let mut values = vec![0u32; ids.len() * r];
        values
            .par_chunks_mut(r)
            .zip(ids.par_iter())
            .for_each(|(row, &x)| cb.encode_into(x, row));
        SiteTable { r, values }
    }

    pub fn n_sites(&self) -> usize {
        self.r
    }

    pub fn len(&self) -> usize {
        self.values.len() / self.r.max(1)
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn row(&self, x: usize) -> &[u32] {
        &self.values[x * self.r..(x + 1) * self.r]
    }

    pub fn column(&self, site: usize) -> impl Iterator<Item = u32> + '_ {
        self.values.iter().skip(site).step_by(self.r).copied()
    }
}

/// Lower bound on the collision number: `min{i : N <= N_1 ... N_i} - 1` over ascending sizes.
pub fn theoretical_min_collision(n_classes: u64, site_sizes: &[u32]) -> Result<u32, CodeError> {
    if site_sizes.is_empty() {
        return Err(bad("site sizes must be nonempty"));
    }
    let mut sorted = site_sizes.to_vec();
    sorted.sort_unstable();
    let mut prod = 1u128;
    for (i, &s) in sorted.iter().enumerate() {
        prod = prod.saturating_mul(s as u128);
        if prod >= n_classes as u128 {
            return Ok(i as u32);
        }
    }
    Err(CodeError::Unreachable { n_classes })
}

#[cfg(test)]
mod tests;
