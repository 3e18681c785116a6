//! Exhaustive enumeration and seeded sampling of spaces, maps and relations.
//!
//! Grounds of at most [`EXHAUSTIVE_MAX`] points are enumerated completely;
//! larger ones are sampled with a `ChaCha8` stream derived from the run seed.

use std::sync::{Arc, OnceLock};

use convkit_core::classes::all_spaces;
use convkit_core::{FiniteSpace, GroundSet, Relation, Result, Subset};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const EXHAUSTIVE_MAX: usize = 3;

/// All convergences on `n ≤ 4` points, memoized. Counts are 1, 4, 64, 4096.
pub fn spaces(n: usize) -> Arc<Vec<FiniteSpace>> {
    static CACHE: [OnceLock<Arc<Vec<FiniteSpace>>>; 5] =
        [OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new()];
    assert!((1..=4).contains(&n), "exhaustive space lists exist for 1 to 4 points");
    CACHE[n].get_or_init(|| Arc::new(all_spaces(n).expect("small ground"))).clone()
}

pub fn rng_for(seed: u64, salt: u64, index: u64) -> ChaCha8Rng {
    let mixed = seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ index.wrapping_mul(0xd1b5_4a32_d192_ed03);
    ChaCha8Rng::seed_from_u64(mixed)
}

pub fn random_space(rng: &mut ChaCha8Rng, n: usize) -> FiniteSpace {
    let masks: Vec<u32> = (0..n).map(|x| rng.gen_range(0..1u32 << n) | 1 << x).collect();
    FiniteSpace::from_masks(&masks).expect("centered masks")
}

pub fn random_map(rng: &mut ChaCha8Rng, n: usize, m: usize) -> Vec<usize> {
    (0..n).map(|_| rng.gen_range(0..m)).collect()
}

/// A uniformly random surjection, by rejection. Requires `m ≤ n`.
pub fn random_surjection(rng: &mut ChaCha8Rng, n: usize, m: usize) -> Vec<usize> {
    loop {
        let f = random_map(rng, n, m);
        if is_surjective(&f, m) {
            return f;
        }
    }
}

pub fn random_relation(rng: &mut ChaCha8Rng, n: usize, m: usize) -> Relation {
    let rows = (0..n).map(|_| Subset::raw(m, rng.gen_range(0..1u32 << m))).collect();
    Relation::from_rows(m, rows).expect("rows on the codomain")
}

pub fn is_surjective(f: &[usize], m: usize) -> bool {
    let hit = f.iter().fold(0u32, |acc, &y| acc | 1 << y);
    hit == (1u32 << m) - 1
}

/// All `m^n` maps in lexicographic order.
pub fn maps(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(m.pow(n as u32));
    let mut cur = vec![0usize; n];
    loop {
        out.push(cur.clone());
        let mut pos = n;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            cur[pos] += 1;
            if cur[pos] < m {
                break;
            }
            cur[pos] = 0;
        }
    }
}

pub fn surjections(n: usize, m: usize) -> Vec<Vec<usize>> {
    maps(n, m).into_iter().filter(|f| is_surjective(f, m)).collect()
}

/// All `2^(nm)` relations, rows read as the digits of a counter.
pub fn relations(n: usize, m: usize) -> Vec<Relation> {
    let total = 1u64 << (n * m);
    (0..total)
        .map(|code| {
            let rows = (0..n).map(|x| Subset::raw(m, ((code >> (x * m)) & ((1 << m) - 1)) as u32)).collect();
            Relation::from_rows(m, rows).expect("rows on the codomain")
        })
        .collect()
}

/// The spaces of one ground size used by a suite: all of them up to
/// [`EXHAUSTIVE_MAX`] points, `samples` seeded draws beyond.
pub fn space_list(n: usize, seed: u64, salt: u64, samples: usize) -> Vec<FiniteSpace> {
    if n <= EXHAUSTIVE_MAX {
        return spaces(n).to_vec();
    }
    let mut rng = rng_for(seed, salt, n as u64);
    (0..samples).map(|_| random_space(&mut rng, n)).collect()
}

/// Ordered pairs of spaces on `n` and `m` points: all pairs when both grounds
/// are enumerated, seeded pairs otherwise.
pub fn space_pairs(n: usize, m: usize, seed: u64, salt: u64, samples: usize) -> Vec<(FiniteSpace, FiniteSpace)> {
    if n <= EXHAUSTIVE_MAX && m <= EXHAUSTIVE_MAX {
        let (xs, ys) = (spaces(n), spaces(m));
        return xs.iter().flat_map(|x| ys.iter().map(move |y| (x.clone(), y.clone()))).collect();
    }
    let mut rng = rng_for(seed, salt, (n * 16 + m) as u64);
    (0..samples).map(|_| (random_space(&mut rng, n), random_space(&mut rng, m))).collect()
}

/// Ground sizes `(n, m)` with `1 ≤ n, m ≤ max`.
pub fn size_pairs(max: usize) -> Vec<(usize, usize)> {
    (1..=max).flat_map(|n| (1..=max).map(move |m| (n, m))).collect()
}

pub fn ground(n: usize) -> Result<Arc<GroundSet>> {
    Ok(Arc::new(GroundSet::standard(n)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!((1..=4).map(|n| spaces(n).len()).collect::<Vec<_>>(), vec![1, 4, 64, 4096]);
        assert_eq!(maps(3, 2).len(), 8);
        assert_eq!(surjections(3, 2).len(), 6);
        assert_eq!(surjections(3, 3).len(), 6);
        assert_eq!(relations(2, 3).len(), 64);
        assert_eq!(relations(2, 2)[0b1001].row(0).bits(), 0b01);
    }

    #[test]
    fn sampling_is_seeded() {
        let a = space_list(4, 7, 1, 20);
        let b = space_list(4, 7, 1, 20);
        assert_eq!(a, b);
        assert_ne!(a, space_list(4, 8, 1, 20));
        let mut rng = rng_for(1, 2, 3);
        let f = random_surjection(&mut rng, 4, 3);
        assert!(is_surjective(&f, 3));
    }
}
