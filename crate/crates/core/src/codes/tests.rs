use super::presets::{build_preset, PRESETS};
use super::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};

fn sites(cb: &Codebook, x: u64) -> Vec<u32> {
    cb.encode(x).unwrap().0
}

#[test]
fn polynomial_examples() {
    let cb = Codebook::polynomial(25, 2, 5, vec![1, 2]).unwrap();
    assert_eq!(sites(&cb, 7), vec![3, 4]);
    assert_eq!(sites(&cb, 0), vec![0, 0]);

    let cjk = build_preset("cjk-polynomial-6", 0, None).unwrap();
    assert_eq!(cjk.site_sizes(), &[181; 6]);
    for x in 0..CJK_N {
        let expect: Vec<u32> = (0..6)
            .map(|i| (((x % 181) + (x / 181) * i) % 181) as u32)
            .collect();
        assert_eq!(sites(&cjk, x), expect, "x = {x}");
    }
    assert_eq!(sites(&cjk, 182), vec![1, 2, 3, 4, 5, 6]);
}

const CJK_N: u64 = presets::CJK_CLASSES;

#[test]
fn polynomial_rejects_bad_parameters() {
    assert!(matches!(
        Codebook::polynomial(26, 2, 5, vec![0, 1]),
        Err(CodeError::BadParameters(_))
    ));
    assert!(Codebook::polynomial(25, 2, 5, (0..6).collect()).is_err());
    assert!(Codebook::polynomial(25, 2, 5, vec![1, 1]).is_err());
    assert!(Codebook::polynomial(25, 2, 6, vec![0, 1]).is_err());
}

#[test]
fn polynomial_auto_picks_smallest_window_prime() {
    let cb = Codebook::polynomial_auto(CJK_N, 2, 6, 0.5).unwrap();
    match cb.params() {
        CodeParams::Polynomial(p) => {
            assert_eq!(p.p, 149);
            assert_eq!(p.eval_points, vec![0, 1, 2, 3, 4, 5]);
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn remainder_examples() {
    let cb = build_preset("cjk-remainder-2", 0, None).unwrap();
    assert_eq!(sites(&cb, 200), vec![27, 9]);
    let small = Codebook::remainder(35, 2, vec![5, 7]).unwrap();
    assert_eq!(sites(&small, 34), vec![4, 6]);
    assert_eq!(sites(&small, 0), vec![0, 0]);
    let m4 = build_preset("ml-user-rem6", 0, None).unwrap();
    assert_eq!(m4.site_sizes(), &[83, 89, 97, 101, 103, 109]);
    assert_eq!(m4.total_bits(), 582);
}

#[test]
fn remainder_errors() {
    assert!(matches!(
        Codebook::remainder(100, 2, vec![6, 9]),
        Err(CodeError::NotCoprime)
    ));
    assert!(matches!(
        Codebook::remainder(100, 2, vec![7, 11]),
        Err(CodeError::ModulusTooSmall(_))
    ));
    assert!(matches!(
        Codebook::remainder(100, 1, vec![7, 11, 13]),
        Err(CodeError::ModulusTooSmall(_))
    ));
}

#[test]
fn gauss_examples() {
    let cb = build_preset("cjk-gauss-6", 0, None).unwrap();
    assert_eq!(cb.site_sizes(), &[181, 181, 173, 173, 193, 193]);
    let zero = sites(&cb, 0);
    if let Evaluator::Gauss { moduli, .. } = &cb.eval {
        for (v, m) in zero.iter().zip(moduli) {
            assert_eq!(*v as usize, m.residue_index(GaussInt::ZERO));
        }
        // the ID sitting on p_1 itself reduces to zero at site 1
        let p1 = GaussInt::new(10, 9);
        let disc = DiscEmbedding::new(CJK_N);
        let x = disc.points().iter().position(|&z| z == p1).unwrap() as u64;
        assert_eq!(sites(&cb, x)[0] as usize, moduli[0].residue_index(GaussInt::ZERO));
    } else {
        panic!("gauss evaluator expected");
    }
    let m5 = build_preset("ml-user-gauss6", 0, None).unwrap();
    assert_eq!(m5.total_bits(), 582);
}

#[test]
fn gauss_congruent_points_agree() {
    let cb = build_preset("cjk-gauss-2", 0, None).unwrap();
    let disc = DiscEmbedding::new(CJK_N);
    let index: std::collections::HashMap<GaussInt, u64> = disc
        .points()
        .iter()
        .enumerate()
        .map(|(i, &z)| (z, i as u64))
        .collect();
    let p = GaussInt::new(10, 9);
    let mut checked = 0;
    for (&z, &x) in &index {
        if let Some(&y) = index.get(&(z + p)) {
            assert_eq!(sites(&cb, x)[0], sites(&cb, y)[0]);
            checked += 1;
        }
    }
    assert!(checked > 1000);
}

#[test]
fn gauss_rejects_small_or_shared_moduli() {
    let g = GaussInt::new;
    assert!(matches!(
        Codebook::gauss(1000, 2, vec![g(2, 1), g(2, -1)]),
        Err(CodeError::ModulusTooSmall(_))
    ));
    assert!(matches!(
        Codebook::gauss(100, 1, vec![g(3, 4), g(4, 3), g(1, 2)]),
        Err(CodeError::NotCoprime)
    ));
}

#[test]
fn coo_examples() {
    let cb = Codebook::coo(10, 4, None).unwrap();
    assert_eq!(cb.to_rhot(0).unwrap().bit_string(), "1000");
    assert_eq!(cb.to_rhot(7).unwrap().bit_string(), "0001");
    assert_eq!(cb.to_rhot(3).unwrap().bit_string(), "0001");
    let order: Vec<u64> = (0..10).rev().collect();
    let ranked = Codebook::coo(10, 4, Some(order)).unwrap();
    assert_eq!(ranked.to_rhot(9).unwrap().bit_string(), "1000");
    assert_eq!(ranked.to_rhot(0).unwrap().bit_string(), "0001");
    assert!(Codebook::coo(10, 1, None).is_err());
    assert!(Codebook::coo(10, 11, None).is_err());
    assert!(Codebook::coo(3, 2, Some(vec![0, 0, 1])).is_err());
}

#[test]
fn rmp_examples() {
    let full = Codebook::rmp_with_kept(8, 2, 0, vec![0, 1, 2, 3]).unwrap();
    assert_eq!(sites(&full, 0), vec![0, 0, 0, 0]);
    assert_eq!(sites(&full, 1), vec![1, 1, 1, 1]);
    // a_1 = 1: x_1 is the least significant point bit
    assert_eq!(sites(&full, 2), vec![0, 1, 0, 1]);
    assert_eq!(sites(&full, 4), vec![0, 0, 1, 1]);

    let user = build_preset("ml-user-rmp", 7, None).unwrap();
    assert_eq!(user.n_sites(), 582);
    assert_eq!(user.total_bits(), 1164);
    assert!(Codebook::rmp(9, 2, 4, 0).is_err());
    assert!(Codebook::rmp(8, 2, 5, 0).is_err());
}

#[test]
fn rmp_puncture_is_seeded() {
    let kept = |seed| match Codebook::rmp(64, 6, 20, seed).unwrap().params().clone() {
        CodeParams::Rmp(p) => p.kept,
        _ => unreachable!(),
    };
    assert_eq!(kept(3), kept(3));
    assert_ne!(kept(3), kept(4));
    assert_eq!(kept(3).len(), 20);
}

#[test]
fn rm_distances_exhaustive() {
    for m in 1..=6u32 {
        let len = 1u32 << m;
        let n = 1u64 << (m + 1);
        let cb = Codebook::rmp_with_kept(n, m, 0, (0..len).collect()).unwrap();
        let words: Vec<Vec<u32>> = (0..n).map(|x| sites(&cb, x)).collect();
        for a in 0..words.len() {
            for b in a + 1..words.len() {
                let d = words[a].iter().zip(&words[b]).filter(|(u, v)| u != v).count() as u32;
                assert!(d == len / 2 || d == len, "m={m} d={d}");
            }
        }
    }
}

#[test]
fn ecoc_examples() {
    let cb = Codebook::ecoc(16, 4).unwrap();
    assert_eq!(sites(&cb, 5), vec![1, 0, 1, 0]);
    assert_eq!(sites(&cb, 0), vec![0; 4]);
    let cjk = Codebook::ecoc(20901, 15).unwrap();
    assert_eq!(cjk.n_sites(), 15);
    assert!(Codebook::ecoc(17, 4).is_err());
    let random = Codebook::ecoc_random(100, 10, 1).unwrap();
    assert_eq!(injective_count(&random), 100);
}

#[test]
fn rhot_examples() {
    let cb = Codebook::remainder(6, 2, vec![2, 3]).unwrap();
    let v = cb.to_rhot(4).unwrap();
    assert_eq!(v.set_bits, vec![0, 3]);
    assert_eq!(v.bit_string(), "10010");
    assert_eq!(v.block_offsets, vec![0, 2]);
    let anti = cb.clone().with_anti(true).to_rhot(4).unwrap();
    assert_eq!(anti.set_bits, vec![1, 2, 4]);
    assert_eq!(cb.clone().with_anti(true).codeword_weight(), 3);

    let one_hot = Codebook::coo(9, 9, None).unwrap();
    assert_eq!(one_hot.to_rhot(5).unwrap().set_bits, vec![5]);
    assert!(matches!(
        cb.to_rhot(6),
        Err(CodeError::OutOfRange { id: 6, n_classes: 6 })
    ));
}

#[test]
fn min_collision_bound_examples() {
    assert_eq!(theoretical_min_collision(21901, &[181, 181]).unwrap(), 1);
    assert_eq!(theoretical_min_collision(50, &[50]).unwrap(), 0);
    assert_eq!(theoretical_min_collision(35, &[11, 7, 5]).unwrap(), 1);
    assert!(matches!(
        theoretical_min_collision(36, &[5, 7]),
        Err(CodeError::Unreachable { .. })
    ));
    assert!(theoretical_min_collision(36, &[]).is_err());
}

fn injective_count(cb: &Codebook) -> usize {
    let table = cb.site_table();
    (0..table.len())
        .map(|x| table.row(x).to_vec())
        .collect::<HashSet<_>>()
        .len()
}

#[test]
fn presets_are_injective() {
    for info in PRESETS {
        let cb = build_preset(info.name, 11, None).unwrap();
        let expect = if cb.scheme() == Scheme::Coo {
            cb.total_bits() as usize
        } else {
            cb.n_classes() as usize
        };
        assert_eq!(injective_count(&cb), expect, "{}", info.name);
    }
}

#[test]
fn preset_bit_widths() {
    let width = |name| build_preset(name, 0, None).unwrap().total_bits();
    for name in [
        "ml-user-coo",
        "ml-user-rem2",
        "ml-user-rem3",
        "ml-user-poly97",
        "ml-user-rem6",
        "ml-user-gauss6",
        "ml-user-rem15",
    ] {
        assert_eq!(width(name), 582, "{name}");
    }
    for name in ["ml-item-coo", "ml-item-rem2", "ml-item-rem3", "ml-item-rem6"] {
        assert_eq!(width(name), 474, "{name}");
    }
    assert_eq!(width("ml-item-rem14"), 473);
    assert_eq!(width("ml-item-poly73"), 438);
}

#[test]
fn cjk_presets_accept_exact_block_size() {
    for name in ["cjk-remainder-6", "cjk-gauss-6", "cjk-polynomial-2", "cjk-ecoc-15"] {
        let cb = build_preset(name, 0, Some(20901)).unwrap();
        assert_eq!(cb.n_classes(), 20901);
    }
}

#[test]
fn crt_subsets_are_injective() {
    let moduli = vec![11u64, 13, 17, 19, 23];
    let n = 2000;
    let cb = Codebook::remainder(n, 3, moduli.clone()).unwrap();
    let table = cb.site_table();
    for a in 0..5 {
        for b in a + 1..5 {
            for c in b + 1..5 {
                let seen: HashSet<[u32; 3]> = (0..n as usize)
                    .map(|x| {
                        let r = table.row(x);
                        [r[a], r[b], r[c]]
                    })
                    .collect();
                assert_eq!(seen.len(), n as usize);
            }
        }
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat, p prime
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

/// Recovers the digits of `x` from `k` (point, value) pairs by Lagrange interpolation.
fn lagrange_digits(points: &[(u64, u64)], p: u64) -> Vec<u64> {
    let k = points.len();
    let mut coeffs = vec![0u64; k];
    for (j, &(xj, yj)) in points.iter().enumerate() {
        // basis polynomial prod_{m != j} (X - x_m) / (x_j - x_m)
        let mut basis = vec![1u64];
        let mut denom = 1u64;
        for (m, &(xm, _)) in points.iter().enumerate() {
            if m == j {
                continue;
            }
            let mut next = vec![0u64; basis.len() + 1];
            for (d, &c) in basis.iter().enumerate() {
                next[d + 1] = (next[d + 1] + c) % p;
                next[d] = (next[d] + c * ((p - xm) % p)) % p;
            }
            basis = next;
            denom = denom * ((xj + p - xm) % p) % p;
        }
        let scale = yj * inv_mod(denom, p) % p;
        for (d, c) in basis.iter().enumerate() {
            coeffs[d] = (coeffs[d] + c * scale) % p;
        }
    }
    coeffs
}

#[test]
fn polynomial_interpolation_oracle() {
    let primes = [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
    for &p in &primes {
        for k in 1..=3u32 {
            let n = p.pow(k);
            if !(2..=20_000).contains(&n) {
                continue;
            }
            let r = (k as u64 + 2).min(p) as usize;
            if r < k as usize {
                continue;
            }
            let cb = Codebook::polynomial(n, k, p, (0..r as u64).collect()).unwrap();
            for x in 0..n {
                let s = sites(&cb, x);
                // a random k-subset of the sites
                let idx = rand::seq::index::sample(&mut rng, r, k as usize);
                let pts: Vec<(u64, u64)> = idx.iter().map(|i| (i as u64, s[i] as u64)).collect();
                let digits = lagrange_digits(&pts, p);
                let back = digits.iter().rev().fold(0u64, |acc, &d| acc * p + d);
                assert_eq!(back, x, "p={p} k={k}");
            }
        }
    }
}

#[test]
fn anti_preserves_hamming_distance() {
    let cb = build_preset("ml-user-rem6", 0, None).unwrap();
    let anti = cb.clone().with_anti(true);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
    for _ in 0..2000 {
        let a = rng.random_range(0..cb.n_classes());
        let b = rng.random_range(0..cb.n_classes());
        let d = cb.to_rhot(a).unwrap().hamming(&cb.to_rhot(b).unwrap());
        let da = anti.to_rhot(a).unwrap().hamming(&anti.to_rhot(b).unwrap());
        assert_eq!(d, da);
    }
}

#[test]
fn file_round_trip_all_presets() {
    for info in PRESETS {
        let cb = build_preset(info.name, 3, None).unwrap().with_anti(info.name.ends_with('6'));
        let text = cb.to_json();
        let back = Codebook::from_json(&text).unwrap();
        assert_eq!(back.to_json(), text, "{}", info.name);
        assert_eq!(back.anti(), cb.anti());
        for x in [0, 1, cb.n_classes() / 2, cb.n_classes() - 1] {
            assert_eq!(back.encode(x).unwrap(), cb.encode(x).unwrap());
        }
    }
}

#[test]
fn file_format_fields() {
    let cb = Codebook::gauss(100, 1, vec![GaussInt::new(10, 9)]).unwrap();
    let v: serde_json::Value = serde_json::from_str(&cb.to_json()).unwrap();
    assert_eq!(v["scheme"], "gauss");
    assert_eq!(v["version"], 1);
    assert_eq!(v["anti"], false);
    assert_eq!(v["params"]["moduli"][0], "10+9i");
    let mut bad = v.clone();
    bad["site_sizes"] = serde_json::json!([180]);
    assert!(Codebook::from_json(&bad.to_string()).is_err());
    let mut bad = v;
    bad["version"] = serde_json::json!(2);
    assert!(Codebook::from_json(&bad.to_string()).is_err());
}

#[test]
fn certified_bounds() {
    for name in ["cjk-remainder-2", "cjk-polynomial-6", "cjk-gauss-2", "cjk-gauss-6"] {
        let cb = build_preset(name, 0, None).unwrap();
        assert_eq!(cb.certified_collision_bound(), Some(1), "{name}");
    }
    assert_eq!(
        build_preset("cjk-ecoc-15", 0, None).unwrap().certified_collision_bound(),
        None
    );
}

proptest! {
    #[test]
    fn rhot_has_one_bit_per_block(x in 0u64..6040, anti in any::<bool>()) {
        let cb = Codebook::remainder(6040, 2, vec![83, 89, 97, 101, 103, 109]).unwrap().with_anti(anti);
        let v = cb.to_rhot(x).unwrap();
        prop_assert_eq!(v.weight() as u64, cb.codeword_weight());
        prop_assert_eq!(v.total_bits, 582);
        for (i, &size) in cb.site_sizes().iter().enumerate() {
            let lo = v.block_offsets[i];
            let hi = lo + size as u64;
            let in_block = v.set_bits.iter().filter(|&&b| b >= lo && b < hi).count() as u64;
            prop_assert_eq!(in_block, if anti { size as u64 - 1 } else { 1 });
        }
        prop_assert!(v.set_bits.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn encode_stays_in_range(x in 0u64..21901, which in 0usize..7) {
        let name = ["cjk-polynomial-6", "cjk-remainder-6", "cjk-gauss-6", "cjk-ecoc-15",
                    "cjk-polynomial-2", "cjk-remainder-2", "cjk-gauss-2"][which];
        let cb = build_preset(name, 0, None).unwrap();
        let s = cb.encode(x).unwrap();
        for (v, n) in s.values().iter().zip(cb.site_sizes()) {
            prop_assert!(v < n);
        }
    }

    #[test]
    fn anti_hamming_equal(a in 0u64..3952, b in 0u64..3952) {
        let cb = Codebook::remainder(3952, 2, vec![67, 71, 73, 79, 83, 101]).unwrap();
        let anti = cb.clone().with_anti(true);
        prop_assert_eq!(
            cb.to_rhot(a).unwrap().hamming(&cb.to_rhot(b).unwrap()),
            anti.to_rhot(a).unwrap().hamming(&anti.to_rhot(b).unwrap())
        );
    }
}
