//! Soft decoding of per-site distributions and a seeded stand-in for trained base learners.
//!
//! Each site of a code is predicted by its own classifier. The decoder picks
//! the label maximizing `sum_i ln P_i(f_i(x))`, which is the same as minimizing
//! `sum_i KL(delta_{f_i(x)} || P_i)`.

use rand::Rng;
use rand_distr::{Distribution, Gamma};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::codes::{Codebook, SiteTable};
use crate::seed::SeedSplitter;

pub const DEFAULT_FLOOR: f64 = 1e-12;
const SUM_TOLERANCE: f64 = 1e-9;
/// Two-sided 95% normal quantile.
const Z95: f64 = 1.959_963_984_540_054;

#[derive(Debug, Error)]
pub enum InferenceError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("invalid distribution: {0}")]
    BadDistribution(String),
    #[error("id {id} out of range for {n_classes} classes")]
    OutOfRange { id: u64, n_classes: u64 },
    #[error("invalid noise model: {0}")]
    BadNoise(String),
    #[error("bad arguments: {0}")]
    BadArguments(String),
}

/// One base learner's output over the values of its site.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct SiteDistribution {
    probs: Vec<f64>,
}

impl SiteDistribution {
    pub fn new(probs: Vec<f64>) -> Result<Self, InferenceError> {
        if probs.is_empty() {
            return Err(InferenceError::BadDistribution("empty".into()));
        }
        if probs.iter().any(|&p| !(p >= 0.0 && p.is_finite())) {
            return Err(InferenceError::BadDistribution(
                "probabilities must be finite and non-negative".into(),
            ));
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > SUM_TOLERANCE {
            return Err(InferenceError::BadDistribution(format!("sums to {sum}")));
        }
        Ok(Self { probs })
    }

    pub fn delta(size: usize, value: usize) -> Self {
        let mut probs = vec![0.0; size];
        probs[value] = 1.0;
        Self { probs }
    }

    pub fn uniform(size: usize) -> Self {
        Self {
            probs: vec![1.0 / size as f64; size],
        }
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }
}

impl TryFrom<Vec<f64>> for SiteDistribution {
    type Error = InferenceError;

    fn try_from(v: Vec<f64>) -> Result<Self, Self::Error> {
        Self::new(v)
    }
}

impl From<SiteDistribution> for Vec<f64> {
    fn from(d: SiteDistribution) -> Self {
        d.probs
    }
}

/// Outputs of all base learners for one input, aligned with the codebook's sites.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnsembleOutput {
    pub dists: Vec<SiteDistribution>,
}

impl EnsembleOutput {
    /// Point masses at the true site values of `x`.
    pub fn delta(cb: &Codebook, x: u64) -> Result<Self, InferenceError> {
        let sites = encode(cb, x)?;
        Ok(Self {
            dists: sites
                .iter()
                .zip(cb.site_sizes())
                .map(|(&v, &n)| SiteDistribution::delta(n as usize, v as usize))
                .collect(),
        })
    }
}

fn encode(cb: &Codebook, x: u64) -> Result<Vec<u32>, InferenceError> {
    cb.encode(x)
        .map(|s| s.0)
        .map_err(|_| InferenceError::OutOfRange {
            id: x,
            n_classes: cb.n_classes(),
        })
}

/// Exhaustive maximum-likelihood decoder over all labels of a codebook.
#[derive(Debug, Clone)]
pub struct Decoder<'a> {
    cb: &'a Codebook,
    table: SiteTable,
    floor: f64,
}

impl<'a> Decoder<'a> {
    pub fn new(cb: &'a Codebook) -> Self {
        Self::with_floor(cb, DEFAULT_FLOOR)
    }

    /// `floor` replaces probabilities below it before taking logs.
    pub fn with_floor(cb: &'a Codebook, floor: f64) -> Self {
        Self {
            cb,
            table: cb.site_table(),
            floor,
        }
    }

    pub fn codebook(&self) -> &Codebook {
        self.cb
    }

    fn check_shape(&self, out: &EnsembleOutput) -> Result<(), InferenceError> {
        let sizes = self.cb.site_sizes();
        if out.dists.len() != sizes.len() {
            return Err(InferenceError::ShapeMismatch(format!(
                "{} distributions for {} sites",
                out.dists.len(),
                sizes.len()
            )));
        }
        for (i, (d, &n)) in out.dists.iter().zip(sizes).enumerate() {
            if d.len() != n as usize {
                return Err(InferenceError::ShapeMismatch(format!(
                    "site {i} has {} values, expected {n}",
                    d.len()
                )));
            }
        }
        Ok(())
    }

    fn log_tables(&self, out: &EnsembleOutput) -> Vec<Vec<f64>> {
        out.dists
            .iter()
            .map(|d| d.probs.iter().map(|&p| p.max(self.floor).ln()).collect())
            .collect()
    }

    /// Smallest label with the highest score.
    pub fn decode(&self, out: &EnsembleOutput) -> Result<u64, InferenceError> {
        self.check_shape(out)?;
        let logs = self.log_tables(out);
        let mut best = (f64::NEG_INFINITY, 0u64);
        for x in 0..self.table.len() {
            let score: f64 = self
                .table
                .row(x)
                .iter()
                .zip(&logs)
                .map(|(&v, l)| l[v as usize])
                .sum();
            if score > best.0 {
                best = (score, x as u64);
            }
        }
        Ok(best.1)
    }

    /// `sum_i ln P_i(f_i(x))` with the floor applied.
    pub fn score(&self, out: &EnsembleOutput, x: u64) -> Result<f64, InferenceError> {
        self.check_shape(out)?;
        if x >= self.cb.n_classes() {
            return Err(InferenceError::OutOfRange {
                id: x,
                n_classes: self.cb.n_classes(),
            });
        }
        Ok(self
            .table
            .row(x as usize)
            .iter()
            .zip(&out.dists)
            .map(|(&v, d)| d.probs[v as usize].max(self.floor).ln())
            .sum())
    }

    /// The decoder score of `x` read as `-sum_i KL(delta_{f_i(x)} || P_i)`.
    pub fn decode_kl_view(&self, out: &EnsembleOutput, x: u64) -> Result<f64, InferenceError> {
        let score = self.score(out, x)?;
        let row = self.table.row(x as usize);
        let kl: f64 = row
            .iter()
            .zip(&out.dists)
            .map(|(&v, d)| {
                // only the point-mass coordinate contributes: 1 * ln(1 / P(v))
                d.probs
                    .iter()
                    .enumerate()
                    .filter(|&(u, _)| u == v as usize)
                    .map(|(_, &p)| -(p.max(self.floor)).ln())
                    .sum::<f64>()
            })
            .sum();
        debug_assert!((score + kl).abs() <= 1e-9 * (1.0 + score.abs()));
        Ok(-kl)
    }
}

/// How simulated base learners err.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind")]
pub enum NoiseModel {
    /// Exact point masses.
    Delta,
    /// Each site's prediction is right with probability `1 - eta`, otherwise a
    /// uniformly chosen wrong value; the output puts `1 - eta` on the
    /// prediction and spreads `eta` evenly over the other values.
    Symmetric { eta: f64 },
    /// A draw from a Dirichlet with concentration `alpha` everywhere and
    /// `alpha + 1` at the true value, so small `alpha` concentrates near it.
    Dirichlet { alpha: f64 },
}

impl NoiseModel {
    pub fn validate(&self) -> Result<(), InferenceError> {
        match *self {
            NoiseModel::Delta => Ok(()),
            NoiseModel::Symmetric { eta } if (0.0..=1.0).contains(&eta) => Ok(()),
            NoiseModel::Symmetric { eta } => Err(InferenceError::BadNoise(format!(
                "eta {eta} outside [0, 1]"
            ))),
            NoiseModel::Dirichlet { alpha } if alpha > 0.0 && alpha.is_finite() => Ok(()),
            NoiseModel::Dirichlet { alpha } => Err(InferenceError::BadNoise(format!(
                "alpha {alpha} must be positive"
            ))),
        }
    }
}

/// Simulated outputs of all base learners for the input labelled `y`.
pub fn simulate_base_learners<R: Rng + ?Sized>(
    cb: &Codebook,
    y: u64,
    noise: NoiseModel,
    rng: &mut R,
) -> Result<EnsembleOutput, InferenceError> {
    noise.validate()?;
    let sites = encode(cb, y)?;
    let dists = sites
        .iter()
        .zip(cb.site_sizes())
        .map(|(&v, &n)| site_output(v as usize, n as usize, noise, rng))
        .collect();
    Ok(EnsembleOutput { dists })
}

fn site_output<R: Rng + ?Sized>(
    truth: usize,
    n: usize,
    noise: NoiseModel,
    rng: &mut R,
) -> SiteDistribution {
    match noise {
        NoiseModel::Delta => SiteDistribution::delta(n, truth),
        NoiseModel::Symmetric { eta } => {
            let predicted = if eta > 0.0 && rng.random_bool(eta) {
                let other = rng.random_range(0..n - 1);
                if other >= truth {
                    other + 1
                } else {
                    other
                }
            } else {
                truth
            };
            let mut probs = vec![eta / (n - 1) as f64; n];
            probs[predicted] = 1.0 - eta;
            SiteDistribution { probs }
        }
        NoiseModel::Dirichlet { alpha } => {
            let base = Gamma::new(alpha, 1.0).expect("alpha validated");
            let peak = Gamma::new(alpha + 1.0, 1.0).expect("alpha validated");
            let mut probs: Vec<f64> = (0..n)
                .map(|v| {
                    if v == truth {
                        peak.sample(rng)
                    } else {
                        base.sample(rng)
                    }
                })
                .collect();
            let sum: f64 = probs.iter().sum();
            if sum > 0.0 && sum.is_finite() {
                probs.iter_mut().for_each(|p| *p /= sum);
                SiteDistribution { probs }
            } else {
                // every gamma draw underflowed
                SiteDistribution::delta(n, truth)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrialReport {
    pub accuracy: f64,
    /// Wilson score interval.
    pub ci95: [f64; 2],
    pub trials: u64,
    pub correct: u64,
    pub seed: u64,
}

/// Wilson 95% interval for `k` successes in `n` trials.
pub fn wilson_interval(k: u64, n: u64) -> [f64; 2] {
    let n_f = n as f64;
    let p = k as f64 / n_f;
    let z2 = Z95 * Z95;
    let denom = 1.0 + z2 / n_f;
    let center = (p + z2 / (2.0 * n_f)) / denom;
    let half = Z95 * (p * (1.0 - p) / n_f + z2 / (4.0 * n_f * n_f)).sqrt() / denom;
    [(center - half).max(0.0), (center + half).min(1.0)]
}

/// Top-1 accuracy of the decoder on `trials` uniformly drawn labels.
///
/// Trial `t` draws from its own stream, so the result does not depend on
/// the number of worker threads.
pub fn run_trials(
    cb: &Codebook,
    noise: NoiseModel,
    trials: u64,
    seed: u64,
) -> Result<TrialReport, InferenceError> {
    if trials == 0 {
        return Err(InferenceError::BadArguments(
            "at least one trial is required".into(),
        ));
    }
    noise.validate()?;
    let decoder = Decoder::new(cb);
    let split = SeedSplitter::new(seed);
    let n = cb.n_classes();
    let correct = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = split.indexed("trials", t);
            let y = rng.random_range(0..n);
            let out = simulate_base_learners(cb, y, noise, &mut rng).expect("label in range");
            u64::from(decoder.decode(&out).expect("shapes match") == y)
        })
        .sum::<u64>();
    Ok(TrialReport {
        accuracy: correct as f64 / trials as f64,
        ci95: wilson_interval(correct, trials),
        trials,
        correct,
        seed,
    })
}
