//! Fixed workloads shared by the benchmarks.

use cyclotoric::{CyclicModule, IntMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const SEED: u64 = 20_240_917;

/// A dense `n × n` matrix with entries in `-bound..=bound`.
pub fn random_matrix(n: usize, bound: i64, salt: u64) -> IntMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ salt);
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|_| (0..n).map(|_| rng.gen_range(-bound..=bound)).collect())
        .collect();
    IntMatrix::from_rows(&rows).expect("square")
}

/// `(1/p)(1, a)` surface quotients for every prime `p ≤ max_p`.
pub fn surface_weights(max_p: u64) -> Vec<(u64, i64)> {
    (2..=max_p)
        .filter(|&p| cyclotoric::is_prime(p))
        .flat_map(|p| (1..p as i64).map(move |a| (p, a)))
        .collect()
}

/// `k` copies of the permutation module `ℤ[C_p]` modulo `n`.
pub fn permutation_module(p: u64, k: usize, n: i64) -> CyclicModule {
    let pi = p as usize;
    let mut perm = IntMatrix::zeros(pi, pi);
    for i in 0..pi {
        perm[((i + 1) % pi, i)] = 1.into();
    }
    let mut action = perm.clone();
    for _ in 1..k {
        action = action.direct_sum(&perm);
    }
    let dim = pi * k;
    let mut rel = IntMatrix::zeros(dim, dim);
    for i in 0..dim {
        rel[(i, i)] = n.into();
    }
    CyclicModule::new(rel, action, p).expect("valid module")
}
