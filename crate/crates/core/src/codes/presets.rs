//! Named codebooks with fixed parameter lists.
//!
//! `cjk-*` presets cover 21901 classes (the CJK block rounded up to the
//! range the moduli were chosen for); `ml-user-*` and `ml-item-*` cover the
//! 6040 user IDs and 3952 movie IDs of MovieLens-1M.

use super::{CodeError, Codebook};
use crate::gauss::GaussInt;

pub const CJK_CLASSES: u64 = 21901;
pub const ML_USERS: u64 = 6040;
pub const ML_ITEMS: u64 = 3952;

pub const CJK_PRIMES: [u64; 6] = [173, 191, 157, 181, 193, 199];
pub const CJK_GAUSS: [(i64, i64); 6] = [(10, 9), (10, -9), (13, 2), (13, -2), (12, 7), (12, -7)];
pub const ML_GAUSS: [(i64, i64); 6] = [(8, 5), (8, -5), (9, 4), (9, -4), (10, 1), (10, 3)];
pub const ML_USER_REM2: [u64; 2] = [289, 293];
pub const ML_ITEM_REM2: [u64; 2] = [235, 239];
pub const ML_USER_REM3: [u64; 3] = [193, 194, 195];
pub const ML_ITEM_REM3: [u64; 3] = [157, 158, 159];
pub const ML_USER_REM6: [u64; 6] = [83, 89, 97, 101, 103, 109];
pub const ML_ITEM_REM6: [u64; 6] = [67, 71, 73, 79, 83, 101];
pub const ML_USER_REM15: [u64; 15] = [
    19, 23, 25, 27, 29, 31, 32, 37, 41, 43, 47, 49, 53, 59, 67,
];
pub const ML_ITEM_REM14: [u64; 14] = [17, 19, 23, 25, 27, 29, 31, 32, 37, 41, 43, 47, 49, 53];

#[derive(Debug, Clone, Copy)]
pub struct PresetInfo {
    pub name: &'static str,
    pub description: &'static str,
    pub n_classes: u64,
}

pub const PRESETS: &[PresetInfo] = &[
    p("cjk-polynomial-2", "polynomial, p=181, k=2, points 0..1", CJK_CLASSES),
    p("cjk-polynomial-6", "polynomial, p=181, k=2, points 0..5", CJK_CLASSES),
    p("cjk-remainder-2", "remainder {173,191}", CJK_CLASSES),
    p("cjk-remainder-6", "remainder {173,191,157,181,193,199}", CJK_CLASSES),
    p("cjk-gauss-2", "gauss {10+9i,10-9i}", CJK_CLASSES),
    p("cjk-gauss-6", "gauss {10±9i,13±2i,12±7i}", CJK_CLASSES),
    p("cjk-ecoc-15", "binary expansion, 15 bits", CJK_CLASSES),
    p("ml-user-coo", "cut-off one-hot, 582 bits", ML_USERS),
    p("ml-user-rmp", "RM(12,1) punctured to 582 bits", ML_USERS),
    p("ml-user-rem2", "remainder {289,293}", ML_USERS),
    p("ml-user-rem3", "remainder {193,194,195}", ML_USERS),
    p("ml-user-poly97", "polynomial over F_97, 6 sites", ML_USERS),
    p("ml-user-rem6", "remainder {83,89,97,101,103,109}", ML_USERS),
    p("ml-user-gauss6", "gauss {8±5i,9±4i,10+i,10+3i}", ML_USERS),
    p("ml-user-rem15", "remainder, 15 moduli 19..67, 582 bits", ML_USERS),
    p("ml-item-coo", "cut-off one-hot, 474 bits", ML_ITEMS),
    p("ml-item-rmp", "RM(11,1) punctured to 474 bits", ML_ITEMS),
    p("ml-item-rem2", "remainder {235,239}", ML_ITEMS),
    p("ml-item-rem3", "remainder {157,158,159}", ML_ITEMS),
    p("ml-item-poly73", "polynomial over F_73, 6 sites", ML_ITEMS),
    p("ml-item-rem6", "remainder {67,71,73,79,83,101}", ML_ITEMS),
    p("ml-item-rem14", "remainder, 14 moduli 17..53, 473 bits", ML_ITEMS),
];

const fn p(name: &'static str, description: &'static str, n_classes: u64) -> PresetInfo {
    PresetInfo {
        name,
        description,
        n_classes,
    }
}

fn gauss_list(pairs: &[(i64, i64)]) -> Vec<GaussInt> {
    pairs.iter().map(|&(a, b)| GaussInt::new(a, b)).collect()
}

/// Builds a preset. `n_override` replaces the class count (e.g. 20901 for the
/// exact CJK block); `seed` only affects the RMP puncture.
pub fn build_preset(name: &str, seed: u64, n_override: Option<u64>) -> Result<Codebook, CodeError> {
    let info = PRESETS
        .iter()
        .find(|i| i.name == name)
        .ok_or_else(|| CodeError::BadParameters(format!("unknown preset '{name}'")))?;
    let n = n_override.unwrap_or(info.n_classes);
    match name {
        "cjk-polynomial-2" => Codebook::polynomial(n, 2, 181, (0..2).collect()),
        "cjk-polynomial-6" => Codebook::polynomial(n, 2, 181, (0..6).collect()),
        "cjk-remainder-2" => Codebook::remainder(n, 2, CJK_PRIMES[..2].to_vec()),
        "cjk-remainder-6" => Codebook::remainder(n, 2, CJK_PRIMES.to_vec()),
        "cjk-gauss-2" => Codebook::gauss(n, 2, gauss_list(&CJK_GAUSS[..2])),
        "cjk-gauss-6" => Codebook::gauss(n, 2, gauss_list(&CJK_GAUSS)),
        "cjk-ecoc-15" => Codebook::ecoc(n, 15),
        "ml-user-coo" => Codebook::coo(n, 582, None),
        "ml-user-rmp" => Codebook::rmp(n, 12, 582, seed),
        "ml-user-rem2" => Codebook::remainder(n, 2, ML_USER_REM2.to_vec()),
        "ml-user-rem3" => Codebook::remainder(n, 2, ML_USER_REM3.to_vec()),
        "ml-user-poly97" => Codebook::polynomial(n, 2, 97, (0..6).collect()),
        "ml-user-rem6" => Codebook::remainder(n, 2, ML_USER_REM6.to_vec()),
        "ml-user-gauss6" => Codebook::gauss(n, 2, gauss_list(&ML_GAUSS)),
        "ml-user-rem15" => Codebook::remainder(n, 3, ML_USER_REM15.to_vec()),
        "ml-item-coo" => Codebook::coo(n, 474, None),
        "ml-item-rmp" => Codebook::rmp(n, 11, 474, seed),
        "ml-item-rem2" => Codebook::remainder(n, 2, ML_ITEM_REM2.to_vec()),
        "ml-item-rem3" => Codebook::remainder(n, 2, ML_ITEM_REM3.to_vec()),
        "ml-item-poly73" => Codebook::polynomial(n, 2, 73, (0..6).collect()),
        "ml-item-rem6" => Codebook::remainder(n, 2, ML_ITEM_REM6.to_vec()),
        "ml-item-rem14" => Codebook::remainder(n, 3, ML_ITEM_REM14.to_vec()),
        _ => unreachable!("every listed preset has a builder"),
    }
}
