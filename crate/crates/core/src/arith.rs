//! Exact integer and prime-field arithmetic used to build category codes.
//!
//! Everything here works on `u64` inputs with `u128` intermediates. Class
//! counts are capped at [`MAX_CLASSES`] so every product of two residues
//! fits comfortably.

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest supported number of classes (2^40).
pub const MAX_CLASSES: u64 = 1 << 40;

/// Default slack exponent used when searching for prime moduli.
pub const DEFAULT_EPSILON: f64 = 0.5;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ArithError {
    #[error("value {value} is out of range (must be below {bound})")]
    OutOfRange { value: u64, bound: u128 },
    #[error("only {found} primes in [{lower}, {upper}], {requested} requested")]
    InsufficientPrimes {
        lower: u64,
        upper: u64,
        found: usize,
        requested: usize,
    },
    #[error("invalid prime search window: {0}")]
    BadWindow(String),
}

const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin test.
///
/// The first twelve primes as witnesses are sufficient for every 64-bit input.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// `base^exp` in `u128`, saturating at `u128::MAX`.
pub(crate) fn saturating_pow(base: u64, exp: u32) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
    }
    acc
}

/// Smallest integer `r` with `r^k >= n`.
pub fn ceil_root(n: u64, k: u32) -> u64 {
    assert!(k >= 1, "root degree must be positive");
    if n <= 1 {
        return n;
    }
    let mut r = (n as f64).powf(1.0 / k as f64).round() as u64;
    while r > 1 && saturating_pow(r - 1, k) >= n as u128 {
        r -= 1;
    }
    while saturating_pow(r, k) < n as u128 {
        r += 1;
    }
    r
}

/// Closed interval `[ceil(N^(1/k)), floor(N^(1/(k - epsilon)))]` searched for moduli.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PrimeSearchWindow {
    pub n_classes: u64,
    pub k: u32,
    pub epsilon: f64,
    pub lower: u64,
    pub upper: u64,
}

impl PrimeSearchWindow {
    pub fn new(n_classes: u64, k: u32, epsilon: f64) -> Result<Self, ArithError> {
        if !(2..=MAX_CLASSES).contains(&n_classes) {
            return Err(ArithError::BadWindow(format!(
                "class count {n_classes} outside [2, 2^40]"
            )));
        }
        if k == 0 {
            return Err(ArithError::BadWindow("k must be at least 1".into()));
        }
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(ArithError::BadWindow(format!(
                "epsilon {epsilon} outside (0, 1)"
            )));
        }
        let lower = ceil_root(n_classes, k).max(2);
        let exponent = 1.0 / (k as f64 - epsilon);
        let mut upper = (n_classes as f64).powf(exponent).floor() as u64;
        // Float correction against the exact definition u^(k - eps) <= N.
        let fits = |u: u64| (u as f64).powf(k as f64 - epsilon) <= n_classes as f64;
        while fits(upper + 1) {
            upper += 1;
        }
        while upper > 0 && !fits(upper) {
            upper -= 1;
        }
        Self::from_parts(n_classes, k, epsilon, lower, upper)
    }

    /// A window with explicit bounds.
    pub fn with_bounds(lower: u64, upper: u64) -> Result<Self, ArithError> {
        Self::from_parts(0, 1, DEFAULT_EPSILON, lower, upper)
    }

    fn from_parts(
        n_classes: u64,
        k: u32,
        epsilon: f64,
        lower: u64,
        upper: u64,
    ) -> Result<Self, ArithError> {
        if lower < 2 || upper < lower {
            return Err(ArithError::BadWindow(format!(
                "bounds [{lower}, {upper}] are empty or below 2"
            )));
        }
        Ok(Self {
            n_classes,
            k,
            epsilon,
            lower,
            upper,
        })
    }
}

/// The `count` smallest primes inside `window`, ascending.
pub fn select_primes(window: &PrimeSearchWindow, count: usize) -> Result<Vec<u64>, ArithError> {
    let mut primes = Vec::with_capacity(count);
    let mut candidate = window.lower;
    while primes.len() < count && candidate <= window.upper {
        if is_prime(candidate) {
            primes.push(candidate);
        }
        candidate += 1;
    }
    if primes.len() < count {
        return Err(ArithError::InsufficientPrimes {
            lower: window.lower,
            upper: window.upper,
            found: primes.len(),
            requested: count,
        });
    }
    Ok(primes)
}

pub fn validate_pairwise_coprime(moduli: &[u64]) -> bool {
    moduli
        .iter()
        .enumerate()
        .all(|(i, a)| moduli[i + 1..].iter().all(|b| a.gcd(b) == 1))
}

/// Base-`p` digits of an integer, least significant first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PAdicDigits {
    pub p: u64,
    pub digits: Vec<u64>,
}

impl PAdicDigits {
    pub fn recompose(&self) -> u128 {
        self.digits
            .iter()
            .rev()
            .fold(0u128, |acc, &d| acc * self.p as u128 + d as u128)
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }
}

pub fn p_adic_digits(x: u64, p: u64, k: u32) -> Result<PAdicDigits, ArithError> {
    let bound = saturating_pow(p, k);
    if x as u128 >= bound {
        return Err(ArithError::OutOfRange { value: x, bound });
    }
    let mut rest = x;
    let digits = (0..k)
        .map(|_| {
            let d = rest % p;
            rest /= p;
            d
        })
        .collect();
    Ok(PAdicDigits { p, digits })
}

/// Evaluates the digit polynomial `sum_j digits[j] * point^j` over F_p.
pub fn poly_eval_mod_p(digits: &PAdicDigits, point: u64) -> u64 {
    let p = digits.p;
    let t = point % p;
    digits
        .digits
        .iter()
        .rev()
        .fold(0u64, |acc, &d| ((acc as u128 * t as u128 + d as u128) % p as u128) as u64)
}
