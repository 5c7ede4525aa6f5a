//! Brute-force oracles shared by the integration tests. None of them call the
//! algorithms they check.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use cyclotoric::IntMatrix;
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use proptest::test_runner::{Config, RngSeed};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const DEFAULT_SEED: u64 = 20_240_917;

pub fn seed() -> u64 {
    std::env::var("CYCLOTORIC_TEST_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

pub fn config(cases: u32) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(seed()),
        failure_persistence: None,
        ..Config::default()
    }
}

pub fn rng(salt: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed() ^ salt)
}

/// A unimodular matrix built from `steps` random elementary operations.
pub fn random_unimodular(n: usize, steps: usize, rng: &mut impl Rng) -> IntMatrix {
    let mut m = IntMatrix::identity(n);
    if n < 2 {
        if rng.gen_bool(0.5) {
            m.negate_row(0);
        }
        return m;
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        match rng.gen_range(0..4) {
            0 => m.swap_rows(i, j),
            1 => m.negate_row(i),
            _ => {
                let k = rng.gen_range(-2i64..=2);
                m.add_row_multiple(i, j, &BigInt::from(k));
            }
        }
    }
    m
}

/// Inverse of a unimodular matrix by adjugate over ℤ, checked.
pub fn unimodular_inverse(m: &IntMatrix) -> IntMatrix {
    let n = m.rows();
    let det = m.det();
    assert!(det == BigInt::from(1) || det == BigInt::from(-1));
    let mut inv = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let minor_rows: Vec<Vec<BigInt>> = (0..n)
                .filter(|&r| r != j)
                .map(|r| (0..n).filter(|&c| c != i).map(|c| m[(r, c)].clone()).collect())
                .collect();
            let minor = if n == 1 {
                BigInt::from(1)
            } else {
                IntMatrix::from_rows(&minor_rows).unwrap().det()
            };
            let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
            inv[(i, j)] = minor * sign * &det;
        }
    }
    assert_eq!(&inv * m, IntMatrix::identity(n));
    inv
}

pub fn to_i64_rows(m: &IntMatrix) -> Vec<Vec<i64>> {
    m.to_rows()
        .iter()
        .map(|r| r.iter().map(|x| x.to_i64().unwrap()).collect())
        .collect()
}

/// A finite `ℤ[ζ]`-module `⊕ ℤ/nᵢ`, given in diagonal coordinates with an
/// integer action matrix that preserves `⊕ nᵢℤ`.
#[derive(Clone, Debug)]
pub struct FiniteFixture {
    pub orders: Vec<i64>,
    pub action: Vec<Vec<i64>>,
    pub p: u64,
}

impl FiniteFixture {
    pub fn size(&self) -> i64 {
        self.orders.iter().product()
    }

    fn apply(&self, m: &[Vec<i64>], x: &[i64]) -> Vec<i64> {
        (0..x.len())
            .map(|i| {
                let s: i64 = (0..x.len()).map(|j| m[i][j] * x[j]).sum();
                s.rem_euclid(self.orders[i])
            })
            .collect()
    }

    pub fn elements(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![]];
        for &n in &self.orders {
            out = out
                .into_iter()
                .flat_map(|v| {
                    (0..n).map(move |x| {
                        let mut w = v.clone();
                        w.push(x);
                        w
                    })
                })
                .collect();
        }
        out
    }

    pub fn zeta(&self, x: &[i64]) -> Vec<i64> {
        self.apply(&self.action, x)
    }

    fn add(&self, x: &[i64], y: &[i64]) -> Vec<i64> {
        x.iter()
            .zip(y)
            .zip(&self.orders)
            .map(|((a, b), n)| (a + b).rem_euclid(*n))
            .collect()
    }

    fn scale(&self, k: i64, x: &[i64]) -> Vec<i64> {
        x.iter()
            .zip(&self.orders)
            .map(|(a, n)| (k * a).rem_euclid(*n))
            .collect()
    }

    pub fn norm(&self, x: &[i64]) -> Vec<i64> {
        let mut acc = vec![0; x.len()];
        let mut y = x.to_vec();
        for _ in 0..self.p {
            acc = self.add(&acc, &y);
            y = self.zeta(&y);
        }
        acc
    }

    fn one_minus_zeta(&self, x: &[i64]) -> Vec<i64> {
        let z = self.zeta(x);
        self.add(x, &self.scale(-1, &z))
    }

    /// For `A/B`, the map `d ↦ |{a ∈ A/B : d·a = 0}|` on `d = 1..=|A/B|`,
    /// which pins down the isomorphism type.
    fn torsion_profile(&self, a: &[Vec<i64>], b: &HashSet<Vec<i64>>) -> Vec<usize> {
        let order = a.len() / b.len();
        (1..=order as i64)
            .map(|d| a.iter().filter(|x| b.contains(&self.scale(d, x))).count() / b.len())
            .collect()
    }

    /// `(profile of Ĥ⁰, profile of Ĥ¹)`.
    pub fn tate_profiles(&self) -> (Vec<usize>, Vec<usize>) {
        let els = self.elements();
        let fixed: Vec<Vec<i64>> = els.iter().filter(|x| self.zeta(x) == **x).cloned().collect();
        let norms: HashSet<Vec<i64>> = els.iter().map(|x| self.norm(x)).collect();
        let zero = vec![0; self.orders.len()];
        let ker_norm: Vec<Vec<i64>> = els.iter().filter(|x| self.norm(x) == zero).cloned().collect();
        let image: HashSet<Vec<i64>> = els.iter().map(|x| self.one_minus_zeta(x)).collect();
        (
            self.torsion_profile(&fixed, &norms),
            self.torsion_profile(&ker_norm, &image),
        )
    }
}

/// The same profile for an abstract `⊕ ℤ/fᵢ`.
pub fn profile_of_invariants(factors: &[BigInt]) -> Vec<usize> {
    let f: Vec<i64> = factors.iter().map(|x| x.to_i64().unwrap()).collect();
    let order: i64 = f.iter().product();
    (1..=order)
        .map(|d| f.iter().map(|&x| num_integer::gcd(d, x)).product::<i64>() as usize)
        .collect()
}

fn block_diagonal(blocks: &[Vec<Vec<i64>>]) -> Vec<Vec<i64>> {
    let n: usize = blocks.iter().map(Vec::len).sum();
    let mut out = vec![vec![0; n]; n];
    let mut off = 0;
    for b in blocks {
        for (i, row) in b.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                out[off + i][off + j] = x;
            }
        }
        off += b.len();
    }
    out
}

/// Random finite module of order at most `max_order`, assembled from
/// multiplication-by-unit blocks, cyclic permutation blocks and the
/// cyclotomic companion block.
pub fn random_fixture(p: u64, max_order: i64, rng: &mut impl Rng) -> FiniteFixture {
    let pi = p as usize;
    let mut orders = Vec::new();
    let mut blocks = Vec::new();
    let mut size = 1i64;
    let budget = rng.gen_range(1..=3);
    for _ in 0..budget {
        let n = rng.gen_range(2..=12i64);
        match rng.gen_range(0..3) {
            0 if size * n <= max_order => {
                let units: Vec<i64> = (1..n)
                    .filter(|&u| num_integer::gcd(u, n) == 1)
                    .filter(|&u| (0..p).fold(1i64, |acc, _| acc * u % n) == 1)
                    .collect();
                let u = units[rng.gen_range(0..units.len())];
                orders.push(n);
                blocks.push(vec![vec![u]]);
                size *= n;
            }
            1 if size * n.pow(p as u32) <= max_order => {
                let mut perm = vec![vec![0; pi]; pi];
                for i in 0..pi {
                    perm[(i + 1) % pi][i] = 1;
                }
                orders.extend(std::iter::repeat_n(n, pi));
                blocks.push(perm);
                size *= n.pow(p as u32);
            }
            2 if size * n.pow(p as u32 - 1) <= max_order => {
                // ζ acting on ℤ[x]/(1 + x + … + x^{p−1}) by multiplication by x
                let d = pi - 1;
                let mut comp = vec![vec![0; d]; d];
                for i in 1..d {
                    comp[i][i - 1] = 1;
                }
                for row in comp.iter_mut() {
                    row[d - 1] = -1;
                }
                orders.extend(std::iter::repeat_n(n, d));
                blocks.push(comp);
                size *= n.pow(p as u32 - 1);
            }
            _ => {}
        }
    }
    if orders.is_empty() {
        orders.push(p as i64);
        blocks.push(vec![vec![1]]);
    }
    FiniteFixture {
        orders,
        action: block_diagonal(&blocks),
        p,
    }
}

/// The fixture's presentation after a change of basis by unimodular `P`:
/// relations `P·D` (columns) and action `P·Z·P⁻¹`.
pub fn conjugated_presentation(f: &FiniteFixture, pm: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let n = f.orders.len();
    let mut d = IntMatrix::zeros(n, n);
    for (i, &o) in f.orders.iter().enumerate() {
        d[(i, i)] = BigInt::from(o);
    }
    let rows: Vec<Vec<BigInt>> = f
        .action
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let z = IntMatrix::from_rows(&rows).unwrap();
    let inv = unimodular_inverse(pm);
    (pm * &d, &(pm * &z) * &inv)
}

/// All vectors of `(ℤ/p)ⁿ`.
pub fn all_vectors(p: u64, n: usize) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..p).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

/// Every subgroup of `(ℤ/p)ⁿ` of order `p^k`, as sorted element sets, found
/// by repeatedly adjoining one generator.
pub fn subgroups_of_order(p: u64, n: usize, k: usize) -> BTreeSet<Vec<Vec<u64>>> {
    let elements = all_vectors(p, n);
    let add = |a: &[u64], b: &[u64]| -> Vec<u64> { a.iter().zip(b).map(|(x, y)| (x + y) % p).collect() };
    let mut layer: BTreeSet<Vec<Vec<u64>>> = BTreeSet::new();
    layer.insert(vec![vec![0; n]]);
    for _ in 0..k {
        let mut next = BTreeSet::new();
        for h in &layer {
            let members: HashSet<&Vec<u64>> = h.iter().collect();
            let mut covered: HashSet<Vec<u64>> = HashSet::new();
            for g in &elements {
                if members.contains(g) || covered.contains(g) {
                    continue;
                }
                let mut bigger: BTreeSet<Vec<u64>> = BTreeSet::new();
                let mut multiple = vec![0; n];
                for _ in 0..p {
                    for x in h {
                        bigger.insert(add(x, &multiple));
                    }
                    multiple = add(&multiple, g);
                }
                covered.extend(bigger.iter().cloned());
                next.insert(bigger.into_iter().collect());
            }
        }
        layer = next;
    }
    layer
}

/// Lattice points of `ℤ² + ℤ·(1/p, a/p)` on the compact boundary of the
/// convex hull of the nonzero points of the positive quadrant, strictly
/// between `e₂` and `e₁`, ordered from the `e₂` side. Points in the interior
/// of an edge are kept. Coordinates are
/// numerators over `p`.
pub fn hull_boundary(p: i64, a: i64) -> Vec<(i64, i64)> {
    let mut pts: Vec<(i64, i64)> = (0..=p)
        .flat_map(|i| (0..=p).map(move |j| (i, j)))
        .filter(|&(i, j)| (j - a * i).rem_euclid(p) == 0 && (i, j) != (0, 0))
        .collect();
    pts.sort();
    // lower hull from (0, p) to (p, 0), sweeping x upward
    let cross = |o: (i64, i64), a: (i64, i64), b: (i64, i64)| {
        (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
    };
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for &q in &pts {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], q) < 0 {
            hull.pop();
        }
        hull.push(q);
    }
    let start = hull.iter().position(|&q| q == (0, p)).unwrap();
    let end = hull.iter().position(|&q| q == (p, 0)).unwrap();
    hull[start + 1..end].to_vec()
}
