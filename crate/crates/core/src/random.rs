//! Seeded random psosets and trellises for property checks.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

use crate::relation::{validate_psoset, Psoset};
use crate::trellis::Trellis;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn inner_names(k: usize) -> Vec<String> {
    (0..k)
        .map(|i| {
            let c = (b'a' + (i % 26) as u8) as char;
            if i < 26 { c.to_string() } else { format!("{c}{}", i / 26) }
        })
        .collect()
}

/// Adds bottom and top around an inner relation, then shuffles the element order.
fn bound_and_shuffle<R: Rng>(rng: &mut R, inner: &[Vec<bool>]) -> Psoset {
    let k = inner.len();
    let n = k + 2;
    let mut names = vec!["0".to_string()];
    names.extend(inner_names(k));
    names.push("1".to_string());
    let mut rel = vec![vec![false; n]; n];
    for x in 0..n {
        rel[0][x] = true;
        rel[x][n - 1] = true;
    }
    for x in 0..k {
        for y in 0..k {
            rel[x + 1][y + 1] = inner[x][y];
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let shuffled_rel: Vec<Vec<bool>> = perm.iter().map(|&x| perm.iter().map(|&y| rel[x][y]).collect()).collect();
    let shuffled_names: Vec<String> = perm.iter().map(|&x| names[x].clone()).collect();
    validate_psoset(&shuffled_rel, &shuffled_names).expect("bounded pseudo-order")
}

/// A bounded psoset on `inner + 2` elements with an arbitrary pseudo-order on the inner part.
pub fn bounded_psoset<R: Rng>(rng: &mut R, inner: usize) -> Psoset {
    let mut rel = vec![vec![false; inner]; inner];
    for x in 0..inner {
        rel[x][x] = true;
        for y in x + 1..inner {
            match rng.gen_range(0..3) {
                0 => rel[x][y] = true,
                1 => rel[y][x] = true,
                _ => {}
            }
        }
    }
    bound_and_shuffle(rng, &rel)
}

fn transitive_closure(rel: &mut [Vec<bool>]) {
    let k = rel.len();
    for m in 0..k {
        for x in 0..k {
            if rel[x][m] {
                for y in 0..k {
                    if rel[m][y] {
                        rel[x][y] = true;
                    }
                }
            }
        }
    }
}

/// Random inner pseudo-order: a poset (a chain when `chain` is set) with some transitive
/// pairs removed and some arrows closing cycles added.
fn perturbed_order<R: Rng>(rng: &mut R, k: usize, chain: bool) -> Vec<Vec<bool>> {
    let density = rng.gen_range(0.2..0.8);
    let mut rel = vec![vec![false; k]; k];
    for x in 0..k {
        rel[x][x] = true;
        for y in x + 1..k {
            if chain || rng.gen_bool(density) {
                rel[x][y] = true;
            }
        }
    }
    transitive_closure(&mut rel);
    let original = rel.clone();
    let delete = rng.gen_range(0.0..0.6);
    for x in 0..k {
        for z in 0..k {
            let implied = x != z && (0..k).any(|y| y != x && y != z && original[x][y] && original[y][z]);
            if implied && rng.gen_bool(delete) {
                rel[x][z] = false;
            }
        }
    }
    if rng.gen_bool(0.3) {
        for x in 0..k {
            for y in 0..k {
                // An arrow y ⊴ x against the order closes a cycle through a removed pair.
                if x < y && original[x][y] && !rel[x][y] && rng.gen_bool(0.5) {
                    rel[y][x] = true;
                }
            }
        }
    }
    rel
}

/// A random bounded trellis on at most `max_n` elements (at least 2), by rejection sampling.
pub fn bounded_trellis<R: Rng>(rng: &mut R, max_n: usize) -> Trellis {
    assert!(max_n >= 2);
    loop {
        let n = rng.gen_range(2..=max_n);
        let chain = rng.gen_bool(0.3);
        let inner = perturbed_order(rng, n - 2, chain);
        let p = bound_and_shuffle(rng, &inner);
        if let Ok(t) = Trellis::new(p) {
            return t;
        }
    }
}
