//! Gaussian integers `a + b i` and the residue systems used by the Gauss code.
//!
//! Division rounds both coordinates of `z / m` to the nearest integer, with
//! exact halves rounded toward negative infinity. That makes the remainder
//! of a division a canonical representative of its residue class, which is
//! what [`GaussModulus`] indexes.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Coordinates are kept within this magnitude so norms fit in `u64`.
pub const COORD_LIMIT: i64 = 1 << 31;

/// Largest modulus norm for which a residue table is materialized.
pub const MAX_MODULUS_NORM: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GaussError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is zero or a unit and cannot serve as a modulus")]
    NotAModulus(GaussInt),
    #[error("modulus {0} has a norm too large to tabulate")]
    ModulusTooLarge(GaussInt),
    #[error("cannot parse Gaussian integer from {0:?}")]
    Parse(String),
    #[error("only {found} pairwise coprime moduli with norm in [{lower}, {upper}], {requested} requested")]
    InsufficientModuli {
        lower: u64,
        upper: u64,
        found: usize,
        requested: usize,
    },
    #[error("invalid modulus search parameters: {0}")]
    BadParameters(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GaussInt {
    pub re: i64,
    pub im: i64,
}

impl GaussInt {
    pub const ZERO: GaussInt = GaussInt { re: 0, im: 0 };
    pub const ONE: GaussInt = GaussInt { re: 1, im: 0 };
    pub const I: GaussInt = GaussInt { re: 0, im: 1 };

    pub const fn new(re: i64, im: i64) -> Self {
        Self { re, im }
    }

    pub fn norm(self) -> u64 {
        (self.re as i128 * self.re as i128 + self.im as i128 * self.im as i128) as u64
    }

    pub fn conj(self) -> Self {
        Self::new(self.re, -self.im)
    }

    pub fn is_zero(self) -> bool {
        self.re == 0 && self.im == 0
    }

    pub fn is_unit(self) -> bool {
        self.norm() == 1
    }

    /// The associate `u * self` (u a unit) lying in the first quadrant, `re > 0, im >= 0`.
    pub fn first_quadrant_associate(self) -> Self {
        let mut z = self;
        if z.is_zero() {
            return z;
        }
        while !(z.re > 0 && z.im >= 0) {
            // multiply by -i
            z = Self::new(z.im, -z.re);
        }
        z
    }

    /// Whether `self` is a multiple of `m`.
    pub fn is_divisible_by(self, m: GaussInt) -> bool {
        if m.is_zero() {
            return self.is_zero();
        }
        let n = m.norm() as i128;
        let (a, b) = scaled_quotient(self, m);
        a % n == 0 && b % n == 0
    }

    fn within_limits(self) -> bool {
        self.re.abs() <= COORD_LIMIT && self.im.abs() <= COORD_LIMIT
    }
}

/// Numerator coordinates of `z / m`, i.e. `z * conj(m)`.
fn scaled_quotient(z: GaussInt, m: GaussInt) -> (i128, i128) {
    let (zr, zi) = (z.re as i128, z.im as i128);
    let (mr, mi) = (m.re as i128, m.im as i128);
    (zr * mr + zi * mi, zi * mr - zr * mi)
}

/// Nearest integer to `a / n` for `n > 0`, halves rounded down.
fn round_half_down(a: i128, n: i128) -> i128 {
    // ceil((2a - n) / 2n)
    let num = 2 * a - n;
    let den = 2 * n;
    -Integer::div_floor(&-num, &den)
}

impl Add for GaussInt {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.re + o.re, self.im + o.im)
    }
}

impl Sub for GaussInt {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.re - o.re, self.im - o.im)
    }
}

impl Mul for GaussInt {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self::new(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )
    }
}

impl Neg for GaussInt {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.im)
    }
}

impl From<i64> for GaussInt {
    fn from(re: i64) -> Self {
        Self::new(re, 0)
    }
}

impl fmt::Display for GaussInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im < 0 {
            write!(f, "{}-{}i", self.re, -(self.im as i128))
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl FromStr for GaussInt {
    type Err = GaussError;

    /// Accepts `a+bi`, `a-bi`, `a+i`, `a-i` and plain integers.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || GaussError::Parse(s.to_string());
        let t = s.trim();
        if t.is_empty() {
            return Err(err());
        }
        let Some(body) = t.strip_suffix('i') else {
            let re = t.parse::<i64>().map_err(|_| err())?;
            return Ok(Self::new(re, 0));
        };
        // The sign of the imaginary part is the last '+' or '-' not at position 0.
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(i, _)| i)
            .last()
            .ok_or_else(err)?;
        let (re_part, im_part) = body.split_at(split);
        let re = re_part.parse::<i64>().map_err(|_| err())?;
        let im = match im_part {
            "+" => 1,
            "-" => -1,
            other => other.parse::<i64>().map_err(|_| err())?,
        };
        let z = Self::new(re, im);
        if !z.within_limits() {
            return Err(err());
        }
        Ok(z)
    }
}

impl Serialize for GaussInt {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GaussInt {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Euclidean division `z = q m + r` with `Nm(r) <= Nm(m) / 2`.
pub fn gauss_divmod(z: GaussInt, m: GaussInt) -> Result<(GaussInt, GaussInt), GaussError> {
    if m.is_zero() {
        return Err(GaussError::DivisionByZero);
    }
    let n = m.norm() as i128;
    let (a, b) = scaled_quotient(z, m);
    let q = GaussInt::new(round_half_down(a, n) as i64, round_half_down(b, n) as i64);
    let r = z - q * m;
    Ok((q, r))
}

/// Greatest common divisor, normalized to its first-quadrant associate.
///
/// `gauss_gcd(0, 0)` is zero.
pub fn gauss_gcd(a: GaussInt, b: GaussInt) -> GaussInt {
    let (mut x, mut y) = (a, b);
    while !y.is_zero() {
        let (_, r) = gauss_divmod(x, y).expect("nonzero divisor");
        x = y;
        y = r;
    }
    x.first_quadrant_associate()
}

pub fn are_pairwise_coprime(moduli: &[GaussInt]) -> bool {
    moduli.iter().enumerate().all(|(i, &a)| {
        moduli[i + 1..]
            .iter()
            .all(|&b| gauss_gcd(a, b).is_unit())
    })
}

/// A nonzero non-unit Gaussian integer with a tabulated complete residue system.
#[derive(Debug, Clone)]
pub struct GaussModulus {
    value: GaussInt,
    residues: Vec<GaussInt>,
    index_of: HashMap<GaussInt, usize>,
}

impl GaussModulus {
    pub fn new(p: GaussInt) -> Result<Self, GaussError> {
        if p.is_zero() || p.is_unit() {
            return Err(GaussError::NotAModulus(p));
        }
        if p.norm() > MAX_MODULUS_NORM {
            return Err(GaussError::ModulusTooLarge(p));
        }
        // Bounding box of the fundamental parallelogram 0, p, ip, p + ip.
        let ip = GaussInt::I * p;
        let corners = [GaussInt::ZERO, p, ip, p + ip];
        let (re_lo, re_hi) = min_max(corners.iter().map(|c| c.re));
        let (im_lo, im_hi) = min_max(corners.iter().map(|c| c.im));
        let mut set = BTreeSet::new();
        for re in re_lo..=re_hi {
            for im in im_lo..=im_hi {
                let (_, r) = gauss_divmod(GaussInt::new(re, im), p)?;
                set.insert(r);
            }
        }
        let residues: Vec<GaussInt> = set.into_iter().collect();
        assert_eq!(
            residues.len() as u64,
            p.norm(),
            "residue system of {p} has the wrong size"
        );
        let index_of = residues.iter().enumerate().map(|(i, &r)| (r, i)).collect();
        Ok(Self {
            value: p,
            residues,
            index_of,
        })
    }

    pub fn value(&self) -> GaussInt {
        self.value
    }

    pub fn norm(&self) -> u64 {
        self.value.norm()
    }

    /// Canonical representatives sorted by `(re, im)`.
    pub fn residues(&self) -> &[GaussInt] {
        &self.residues
    }

    pub fn reduce(&self, z: GaussInt) -> GaussInt {
        gauss_divmod(z, self.value).expect("modulus is nonzero").1
    }

    pub fn residue_index(&self, z: GaussInt) -> usize {
        self.index_of[&self.reduce(z)]
    }
}

fn min_max(it: impl Iterator<Item = i64>) -> (i64, i64) {
    it.fold((i64::MAX, i64::MIN), |(lo, hi), v| (lo.min(v), hi.max(v)))
}

/// Total order on lattice points: norm, then counterclockwise angle from the positive real axis.
pub fn disc_order(a: &GaussInt, b: &GaussInt) -> Ordering {
    a.norm().cmp(&b.norm()).then_with(|| angle_order(a, b))
}

fn angle_order(a: &GaussInt, b: &GaussInt) -> Ordering {
    let half = |z: &GaussInt| u8::from(!(z.im > 0 || (z.im == 0 && z.re >= 0)));
    half(a).cmp(&half(b)).then_with(|| {
        let cross = a.re as i128 * b.im as i128 - a.im as i128 * b.re as i128;
        0.cmp(&cross)
    })
}

/// The first `N` lattice points of the smallest closed disc around 0 holding at least `N` of them.
#[derive(Debug, Clone)]
pub struct DiscEmbedding {
    n_classes: u64,
    radius_sq: u64,
    points: Vec<GaussInt>,
}

impl DiscEmbedding {
    pub fn new(n_classes: u64) -> Self {
        assert!(n_classes >= 1, "disc embedding needs at least one class");
        let mut bound = ((n_classes as f64 / std::f64::consts::PI).ceil() as u64).max(1) + 8;
        loop {
            let mut pts = lattice_points_within(bound);
            if pts.len() as u64 >= n_classes {
                pts.sort_unstable_by(disc_order);
                pts.truncate(n_classes as usize);
                let radius_sq = pts.last().map_or(0, |z| z.norm());
                return Self {
                    n_classes,
                    radius_sq,
                    points: pts,
                };
            }
            bound = bound * 5 / 4 + 8;
        }
    }

    pub fn n_classes(&self) -> u64 {
        self.n_classes
    }

    /// Squared radius `t^2` of the minimal disc.
    pub fn radius_sq(&self) -> u64 {
        self.radius_sq
    }

    pub fn points(&self) -> &[GaussInt] {
        &self.points
    }

    pub fn point(&self, x: u64) -> GaussInt {
        self.points[x as usize]
    }
}

/// All Gaussian integers with norm at most `max_norm`.
pub fn lattice_points_within(max_norm: u64) -> Vec<GaussInt> {
    let r = (max_norm as f64).sqrt() as i64 + 1;
    let mut out = Vec::new();
    for re in -r..=r {
        for im in -r..=r {
            let z = GaussInt::new(re, im);
            if z.norm() <= max_norm {
                out.push(z);
            }
        }
    }
    out
}

/// Number of lattice points with norm at most `max_norm`.
pub fn lattice_count(max_norm: u64) -> u64 {
    let r = (max_norm as f64).sqrt() as i64 + 1;
    (-r..=r)
        .map(|re| {
            let rest = max_norm as i128 - (re as i128) * (re as i128);
            if rest < 0 {
                0
            } else {
                let h = isqrt(rest as u64);
                2 * h + 1
            }
        })
        .sum()
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Norm interval `[lower, upper]` matching `|p| in [(2t)^(1/k), (2t)^(1/(k - eps)))`.
pub fn gauss_norm_window(radius_sq: u64, k: u32, epsilon: f64) -> Result<(u64, u64), GaussError> {
    if k == 0 || !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(GaussError::BadParameters(format!(
            "k = {k}, epsilon = {epsilon}"
        )));
    }
    // |p|^2 ranges over [(4 t^2)^(1/k), (4 t^2)^(1/(k - eps))).
    let diameter_sq = 4 * radius_sq;
    let lower = crate::arith::ceil_root(diameter_sq.max(2), k).max(2);
    let limit = (diameter_sq as f64).powf(1.0 / (k as f64 - epsilon));
    let mut upper = limit.ceil() as u64;
    while upper > 0 && (upper as f64) >= limit {
        upper -= 1;
    }
    Ok((lower, upper))
}

/// Greedy search for `count` pairwise coprime first-quadrant moduli in the norm window.
pub fn select_gauss_moduli(
    n_classes: u64,
    k: u32,
    epsilon: f64,
    count: usize,
) -> Result<Vec<GaussInt>, GaussError> {
    let disc = DiscEmbedding::new(n_classes);
    let (lower, upper) = gauss_norm_window(disc.radius_sq(), k, epsilon)?;
    let mut kept: Vec<GaussInt> = Vec::with_capacity(count);
    'norms: for norm in lower..=upper {
        // first quadrant, re > 0 and im >= 0, angle ascending means re descending
        for re in (1..=isqrt(norm) as i64).rev() {
            let rest = norm - (re * re) as u64;
            let im = isqrt(rest);
            if im * im != rest {
                continue;
            }
            let cand = GaussInt::new(re, im as i64);
            if cand.is_unit() {
                continue;
            }
            if kept.iter().all(|&m| gauss_gcd(m, cand).is_unit()) {
                kept.push(cand);
                if kept.len() == count {
                    break 'norms;
                }
            }
        }
    }
    if kept.len() < count {
        return Err(GaussError::InsufficientModuli {
            lower,
            upper,
            found: kept.len(),
            requested: count,
        });
    }
    Ok(kept)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn g(re: i64, im: i64) -> GaussInt {
        GaussInt::new(re, im)
    }

    #[test]
    fn norms() {
        assert_eq!(g(10, 9).norm(), 181);
        assert_eq!(GaussInt::ZERO.norm(), 0);
        assert_eq!(g(8, 5).norm(), 89);
        assert_eq!(g(13, 2).norm(), 173);
        assert_eq!(g(12, 7).norm(), 193);
    }

    #[test]
    fn divmod_examples() {
        assert_eq!(gauss_divmod(g(5, 0), g(1, 2)).unwrap(), (g(1, -2), g(0, 0)));
        let z = g(-17, 42);
        assert_eq!(gauss_divmod(z, GaussInt::ONE).unwrap(), (z, GaussInt::ZERO));
        // (3 + 4i) / 2 = 1.5 + 2i; the half rounds down to 1
        let (q, r) = gauss_divmod(g(3, 4), g(2, 0)).unwrap();
        assert_eq!((q, r), (g(1, 2), g(1, 0)));
        assert!(r.norm() <= 2);
        assert_eq!(
            gauss_divmod(g(1, 1), GaussInt::ZERO),
            Err(GaussError::DivisionByZero)
        );
    }

    #[test]
    fn rounding_halves_go_down() {
        assert_eq!(round_half_down(3, 2), 1);
        assert_eq!(round_half_down(-3, 2), -2);
        assert_eq!(round_half_down(8, 5), 2);
        assert_eq!(round_half_down(7, 5), 1);
        assert_eq!(round_half_down(-7, 5), -1);
        assert_eq!(round_half_down(0, 5), 0);
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gauss_gcd(g(1, 2), g(1, -2)), GaussInt::ONE);
        assert_eq!(gauss_gcd(g(-3, -5), GaussInt::ZERO), g(3, 5));
        assert_eq!(gauss_gcd(g(10, 9), g(13, 2)), GaussInt::ONE);
        assert_eq!(gauss_gcd(g(0, 7), GaussInt::ZERO), g(7, 0));
        // (2 + i)(3 + 2i) and (2 + i)(1 + i)^2 share only 2 + i
        let a = g(2, 1) * g(3, 2);
        let b = g(2, 1) * g(1, 1) * g(1, 1);
        assert_eq!(gauss_gcd(a, b).norm(), 5);
    }

    #[test]
    fn associate_normalization() {
        for z in [g(3, 4), g(-4, 3), g(-3, -4), g(4, -3)] {
            assert_eq!(z.first_quadrant_associate(), g(3, 4));
        }
        assert_eq!(g(0, -5).first_quadrant_associate(), g(5, 0));
    }

    #[test]
    fn preset_moduli_are_coprime() {
        let cjk = [g(10, 9), g(10, -9), g(13, 2), g(13, -2), g(12, 7), g(12, -7)];
        assert!(are_pairwise_coprime(&cjk));
        let movielens = [g(8, 5), g(8, -5), g(9, 4), g(9, -4), g(10, 1), g(10, 3)];
        assert!(are_pairwise_coprime(&movielens));
        let norms: Vec<u64> = movielens.iter().map(|z| z.norm()).collect();
        assert_eq!(norms, vec![89, 89, 97, 97, 101, 109]);
        assert!(!are_pairwise_coprime(&[g(2, 1), g(-1, 2)]));
    }

    #[test]
    fn display_and_parse() {
        assert_eq!(g(10, 9).to_string(), "10+9i");
        assert_eq!(g(10, -9).to_string(), "10-9i");
        assert_eq!(g(-3, 0).to_string(), "-3+0i");
        assert_eq!("10+9i".parse::<GaussInt>().unwrap(), g(10, 9));
        assert_eq!("10-9i".parse::<GaussInt>().unwrap(), g(10, -9));
        assert_eq!("-12-7i".parse::<GaussInt>().unwrap(), g(-12, -7));
        assert_eq!("10+i".parse::<GaussInt>().unwrap(), g(10, 1));
        assert_eq!("7".parse::<GaussInt>().unwrap(), g(7, 0));
        for bad in ["", "i", "10+9j", "abc", "1+2+3i", "+i"] {
            assert!(bad.parse::<GaussInt>().is_err(), "{bad}");
        }
    }

    #[test]
    fn small_residue_systems() {
        let m = GaussModulus::new(g(1, 1)).unwrap();
        assert_eq!(m.residues().len(), 2);
        assert_eq!(m.residue_index(GaussInt::ZERO), m.residue_index(g(1, 1)));
        assert_ne!(m.residue_index(GaussInt::ZERO), m.residue_index(GaussInt::ONE));
        assert_eq!(GaussModulus::new(g(2, 0)).unwrap().residues().len(), 4);
        assert_eq!(GaussModulus::new(g(13, 2)).unwrap().residues().len(), 173);
        let m = GaussModulus::new(g(1, 2)).unwrap();
        assert_eq!(m.residue_index(g(5, 0)), m.residue_index(GaussInt::ZERO));
        assert!(matches!(
            GaussModulus::new(GaussInt::I),
            Err(GaussError::NotAModulus(_))
        ));
        assert!(GaussModulus::new(GaussInt::ZERO).is_err());
    }

    #[test]
    fn residue_counts_match_norm_up_to_500() {
        for re in -23i64..=23 {
            for im in -23i64..=23 {
                let p = g(re, im);
                let n = p.norm();
                if !(2..=500).contains(&n) {
                    continue;
                }
                let m = GaussModulus::new(p).unwrap();
                assert_eq!(m.residues().len() as u64, n);
                for r in m.residues() {
                    assert!(2 * r.norm() <= n, "residue {r} of {p}");
                }
            }
        }
    }

    #[test]
    fn residue_index_detects_divisibility() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for p in [g(10, 9), g(3, 0), g(1, 1), g(8, -5), g(0, 7)] {
            let m = GaussModulus::new(p).unwrap();
            for _ in 0..2000 {
                let z1 = g(rng.random_range(-300..300), rng.random_range(-300..300));
                let z2 = if rng.random_bool(0.3) {
                    z1 + p * g(rng.random_range(-9..9), rng.random_range(-9..9))
                } else {
                    g(rng.random_range(-300..300), rng.random_range(-300..300))
                };
                // brute-force divisibility: (z1 - z2) / p has integer coordinates
                let d = z1 - z2;
                let n = p.norm() as i128;
                let (a, b) = scaled_quotient(d, p);
                let divides = a % n == 0 && b % n == 0;
                assert_eq!(m.residue_index(z1) == m.residue_index(z2), divides);
            }
        }
    }

    #[test]
    fn disc_examples() {
        let d = DiscEmbedding::new(1);
        assert_eq!(d.points(), &[GaussInt::ZERO]);
        assert_eq!(d.radius_sq(), 0);
        let d = DiscEmbedding::new(5);
        assert_eq!(d.radius_sq(), 1);
        assert_eq!(
            d.points(),
            &[GaussInt::ZERO, g(1, 0), g(0, 1), g(-1, 0), g(0, -1)]
        );
        let d = DiscEmbedding::new(9);
        assert_eq!(d.radius_sq(), 2);
        assert_eq!(&d.points()[5..], &[g(1, 1), g(-1, 1), g(-1, -1), g(1, -1)]);
    }

    #[test]
    fn disc_for_cjk_classes() {
        let d = DiscEmbedding::new(21901);
        let s = d.radius_sq();
        assert!(lattice_count(s) >= 21901);
        assert!(lattice_count(s - 1) < 21901);
        // 82^2 is too small to hold 21901 points
        assert!(lattice_count(82 * 82) < 21901);
        assert!(s > 83 * 83);
    }

    #[test]
    fn disc_invariants_exhaustive() {
        let big = DiscEmbedding::new(100_000);
        let mut seen = std::collections::HashSet::new();
        for w in big.points().windows(2) {
            assert_eq!(disc_order(&w[0], &w[1]), Ordering::Less);
        }
        for &p in big.points() {
            assert!(seen.insert(p));
        }
        // each prefix of length n is the embedding for n classes
        for n in 1..=100_000u64 {
            let s = big.points()[n as usize - 1].norm();
            assert!(lattice_count(s) >= n);
            assert!(s == 0 || lattice_count(s - 1) < n);
        }
        for n in [1u64, 2, 5, 6, 13, 100, 1234, 99_999] {
            let d = DiscEmbedding::new(n);
            assert_eq!(d.points(), &big.points()[..n as usize]);
            assert_eq!(d.radius_sq(), big.points()[n as usize - 1].norm());
        }
    }

    #[test]
    fn lattice_count_matches_enumeration() {
        for s in 0..400 {
            assert_eq!(lattice_count(s), lattice_points_within(s).len() as u64);
        }
    }

    #[test]
    fn moduli_search() {
        let picked = select_gauss_moduli(21901, 2, 0.5, 6).unwrap();
        assert_eq!(picked.len(), 6);
        assert!(are_pairwise_coprime(&picked));
        let disc = DiscEmbedding::new(21901);
        for p in &picked {
            assert!(p.re > 0 && p.im >= 0);
            assert!(p.norm() * p.norm() >= 4 * disc.radius_sq());
        }
        let one = select_gauss_moduli(21901, 2, 0.5, 1).unwrap();
        assert_eq!(one.len(), 1);
        assert!(!one[0].is_unit());
        assert!(matches!(
            select_gauss_moduli(50, 2, 0.01, 40),
            Err(GaussError::InsufficientModuli { .. })
        ));
    }

    fn small() -> impl Strategy<Value = GaussInt> {
        (-2000i64..2000, -2000i64..2000).prop_map(|(a, b)| GaussInt::new(a, b))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(2000))]

        #[test]
        fn divmod_identity(z in small(), m in small()) {
            prop_assume!(!m.is_zero());
            let (q, r) = gauss_divmod(z, m).unwrap();
            prop_assert_eq!(q * m + r, z);
            prop_assert!(2 * r.norm() <= m.norm());
        }

        #[test]
        fn gcd_divides_and_is_greatest(a in small(), b in small(), c in small()) {
            prop_assume!(!(a.is_zero() && b.is_zero()));
            let d = gauss_gcd(a, b);
            prop_assert!(a.is_divisible_by(d));
            prop_assert!(b.is_divisible_by(d));
            prop_assert!(d.re > 0 && d.im >= 0);
            // any common divisor c of a*c and b*c divides gcd(a*c, b*c)
            prop_assume!(!c.is_zero());
            let dc = gauss_gcd(a * c, b * c);
            prop_assert!(dc.is_divisible_by(c));
            prop_assert_eq!(dc.norm(), d.norm() * c.norm());
        }

        #[test]
        fn residue_index_is_congruence_invariant(z in small(), k in small()) {
            let m = GaussModulus::new(GaussInt::new(13, 2)).unwrap();
            prop_assert_eq!(m.residue_index(z), m.residue_index(z + k * m.value()));
        }
    }

    #[test]
    fn divmod_randomized_bulk() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100_000 {
            let z = g(rng.random_range(-1_000_000..1_000_000), rng.random_range(-1_000_000..1_000_000));
            let m = g(rng.random_range(-5000..5000), rng.random_range(-5000..5000));
            if m.is_zero() {
                continue;
            }
            let (q, r) = gauss_divmod(z, m).unwrap();
            assert_eq!(q * m + r, z);
            assert!(2 * r.norm() <= m.norm());
        }
    }
}
