mod common;

use cyclotoric::{fixed_subgroup_rank, tate_h0, tate_h1, CyclicModule, FiniteAbelianGroup, IntMatrix};
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const PRIMES: [u64; 4] = [2, 3, 5, 7];

fn module_of(f: &common::FiniteFixture, rng: &mut impl Rng) -> CyclicModule {
    let pm = common::random_unimodular(f.orders.len(), 6, rng);
    let (rel, act) = common::conjugated_presentation(f, &pm);
    CyclicModule::new(rel, act, f.p).unwrap()
}

fn profile(g: &FiniteAbelianGroup) -> Vec<usize> {
    common::profile_of_invariants(g.invariant_factors())
}

proptest! {
    #![proptest_config(common::config(160))]

    #[test]
    fn herbrand_quotient_is_one_on_finite_modules(salt in any::<u64>(), pi in 0usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(salt);
        let f = common::random_fixture(PRIMES[pi], 512, &mut rng);
        let m = module_of(&f, &mut rng);
        prop_assert!(m.is_finite());
        prop_assert_eq!(tate_h0(&m).order(), tate_h1(&m).order());
    }

    #[test]
    fn tate_groups_are_additive(salt in any::<u64>(), pi in 0usize..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(salt);
        let p = PRIMES[pi];
        let a = module_of(&common::random_fixture(p, 64, &mut rng), &mut rng);
        let b = module_of(&common::random_fixture(p, 64, &mut rng), &mut rng);
        let sum = a.direct_sum(&b).unwrap();
        prop_assert_eq!(tate_h0(&sum), tate_h0(&a).direct_sum(&tate_h0(&b)));
        prop_assert_eq!(tate_h1(&sum), tate_h1(&a).direct_sum(&tate_h1(&b)));
    }

    #[test]
    fn free_modules_with_permutation_blocks(k in 0usize..3, t in 0usize..3, pi in 0usize..3) {
        // ℤ[C_p]^k ⊕ ℤ^t with trivial action on ℤ^t: Ĥ⁰ = (ℤ/p)^t, Ĥ¹ = 0
        let p = PRIMES[pi];
        prop_assume!(k + t > 0);
        let mut blocks = Vec::new();
        for _ in 0..k {
            blocks.push(CyclicModule::regular(p).unwrap());
        }
        for _ in 0..t {
            blocks.push(CyclicModule::free(IntMatrix::identity(1), p).unwrap());
        }
        let m = blocks.iter().skip(1).fold(blocks[0].clone(), |acc, b| acc.direct_sum(b).unwrap());
        prop_assert_eq!(tate_h0(&m), FiniteAbelianGroup::elementary(p, t));
        prop_assert!(tate_h1(&m).is_trivial());
    }
}

/// Every fixture of order at most 512 from a fixed seed, compared with the
/// element-by-element computation.
#[test]
fn brute_force_tate_oracle() {
    let mut rng = common::rng(0x7a7e);
    let mut checked = 0;
    for round in 0..240 {
        let p = PRIMES[round % PRIMES.len()];
        let f = common::random_fixture(p, 512, &mut rng);
        assert!(f.size() <= 512);
        let m = module_of(&f, &mut rng);
        let (h0, h1) = f.tate_profiles();
        assert_eq!(profile(&tate_h0(&m)), h0, "{f:?}");
        assert_eq!(profile(&tate_h1(&m)), h1, "{f:?}");
        let structure: BigInt = m.structure().iter().product();
        assert_eq!(structure, BigInt::from(f.size()));
        checked += 1;
    }
    assert_eq!(checked, 240);
}

#[test]
fn rotation_module() {
    let m = CyclicModule::free(IntMatrix::from_i64(&[&[0, -1], &[1, -1]]), 3).unwrap();
    assert!(tate_h0(&m).is_trivial());
    assert_eq!(tate_h1(&m).invariant_factors(), &[BigInt::from(3)]);
}

fn jordan(k: usize) -> Vec<Vec<i64>> {
    (0..k)
        .map(|i| (0..k).map(|j| i64::from(i == j || j == i + 1)).collect())
        .collect()
}

fn brute_fixed_count(z: &IntMatrix, p: u64) -> u64 {
    let rows = common::to_i64_rows(z);
    common::all_vectors(p, rows.len())
        .into_iter()
        .filter(|v| {
            rows.iter().zip(v).all(|(row, &vi)| {
                let s: i64 = row.iter().zip(v).map(|(a, &b)| a * b as i64).sum();
                (s - vi as i64).rem_euclid(p as i64) == 0
            })
        })
        .count() as u64
}

#[test]
fn fixed_rank_matches_exhaustive_count() {
    let mut rng = common::rng(0xf1de);
    for p in [3u64, 5] {
        for dim in 1..=4usize {
            for _ in 0..40 {
                // Jordan blocks of size ≤ p have order p modulo p
                let mut sizes = Vec::new();
                let mut left = dim;
                while left > 0 {
                    let s = rng.gen_range(1..=left.min(p as usize));
                    sizes.push(s);
                    left -= s;
                }
                let mut z = vec![vec![0i64; dim]; dim];
                let mut off = 0;
                for &s in &sizes {
                    for (i, row) in jordan(s).into_iter().enumerate() {
                        for (j, x) in row.into_iter().enumerate() {
                            z[off + i][off + j] = x;
                        }
                    }
                    off += s;
                }
                let z = IntMatrix::from_rows(&z).unwrap();
                let pm = common::random_unimodular(dim, 6, &mut rng);
                let conj = &(&pm * &z) * &common::unimodular_inverse(&pm);
                let expected = brute_fixed_count(&conj, p);
                match fixed_subgroup_rank(&conj, p) {
                    Ok((b, order)) => {
                        assert_eq!(order, BigInt::from(expected));
                        assert_eq!(p.pow(b as u32), expected);
                    }
                    Err(_) => assert!(sizes.iter().all(|&s| s == 1), "{sizes:?}"),
                }
            }
        }
    }
}

#[test]
fn block_action_fixes_nine_vectors() {
    let block = IntMatrix::from_i64(&[&[0, 1], &[-1, -1]]).kronecker(&IntMatrix::identity(2));
    assert_eq!(brute_fixed_count(&block, 3), 9);
    assert_eq!(fixed_subgroup_rank(&block, 3).unwrap(), (2, BigInt::from(9)));
}
