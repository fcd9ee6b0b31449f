//! Helpers shared by the integration tests.
#![allow(dead_code)]

use num_bigint::BigInt;
use orbimirror::Weights;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Non-decreasing weight vectors with at most `max_len` entries, entries at
/// most `max_w` and sum at most `max_mu`.
pub fn multisets(max_len: usize, max_w: u64, max_mu: u64) -> Vec<Vec<u64>> {
    fn go(cur: &mut Vec<u64>, min: u64, sum: u64, max_len: usize, max_w: u64, max_mu: u64, out: &mut Vec<Vec<u64>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if cur.len() == max_len {
            return;
        }
        for v in min..=max_w {
            if sum + v > max_mu {
                break;
            }
            cur.push(v);
            go(cur, v, sum + v, max_len, max_w, max_mu, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), 1, 0, max_len, max_w, max_mu, &mut out);
    out
}

pub fn weights(v: &[u64]) -> Weights {
    Weights::new(v.to_vec()).expect("valid weights")
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random unsorted weight vector with `sum <= max_mu`.
pub fn random_weights(rng: &mut ChaCha8Rng, max_len: usize, max_w: u64, max_mu: u64) -> Vec<u64> {
    loop {
        let len = rng.gen_range(1..=max_len);
        let v: Vec<u64> = (0..len).map(|_| rng.gen_range(1..=max_w)).collect();
        if v.iter().sum::<u64>() <= max_mu {
            return v;
        }
    }
}

/// Genus-zero plane curve counts through `3d - 1` points, by the
/// associativity recursion on degrees.
pub fn kontsevich(max_degree: usize) -> Vec<BigInt> {
    fn binom(n: i64, k: i64) -> BigInt {
        if k < 0 || k > n {
            return BigInt::from(0);
        }
        (0..k).fold(BigInt::from(1), |acc, i| acc * (n - i) / (i + 1))
    }
    let mut n = vec![BigInt::from(0), BigInt::from(1)];
    for d in 2..=max_degree as i64 {
        let mut total = BigInt::from(0);
        for d1 in 1..d {
            let d2 = d - d1;
            let term = binom(3 * d - 4, 3 * d1 - 2) * d2 - binom(3 * d - 4, 3 * d1 - 1) * d1;
            total += &n[d1 as usize] * &n[d2 as usize] * (d1 * d1 * d2) * term;
        }
        n.push(total);
    }
    n
}
