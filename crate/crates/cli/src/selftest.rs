//! Embedded acceptance suites. Output depends only on the seed and the golden
//! files, never on timing.

use std::collections::BTreeSet;
use std::path::Path;

use cyclotoric::{
    brauer_quotient, dual_graph, exceptional_independence, fixed_subgroup_rank, hirzebruch_jung, json,
    resolution_pipeline, tate_h0, tate_h1, torsion_audit, BrauerQuotient, CyclicModule, DiagonalCubic, IntMatrix,
    LatticeVector, Rational, WeierstrassCurve,
};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

pub const RESOLVE_GOLDEN: &str = "resolve_p3_w1-2.json";
pub const DUALGRAPH_GOLDEN: &str = "dualgraph_p3_w1-2.json";

const HERBRAND_MODULES: usize = 120;

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: Option<String>,
}

#[derive(Clone, Debug)]
pub struct SuiteResult {
    pub name: &'static str,
    pub checks: Vec<Check>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub seed: u64,
    pub suites: Vec<SuiteResult>,
}

impl Report {
    pub fn failed(&self) -> usize {
        self.suites.iter().flat_map(|s| &s.checks).filter(|c| !c.passed).count()
    }

    pub fn to_json(&self) -> Value {
        let suites: Vec<Value> = self
            .suites
            .iter()
            .map(|s| {
                let checks: Vec<Value> = s
                    .checks
                    .iter()
                    .map(|c| {
                        let mut o = json!({ "name": c.name, "passed": c.passed });
                        if let Some(d) = &c.detail {
                            o["detail"] = json!(d);
                        }
                        o
                    })
                    .collect();
                json!({ "name": s.name, "passed": s.passed(), "checks": checks })
            })
            .collect();
        let total: usize = self.suites.iter().map(|s| s.checks.len()).sum();
        json!({
            "seed": self.seed,
            "suites": suites,
            "summary": {
                "suites": self.suites.len(),
                "checks": total,
                "passed": total - self.failed(),
                "failed": self.failed(),
            },
        })
    }
}

struct Ctx<'a> {
    seed: u64,
    golden_dir: &'a Path,
    checks: Vec<Check>,
}

impl Ctx<'_> {
    fn check(&mut self, name: impl Into<String>, passed: bool, detail: Option<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail: if passed { None } else { detail },
        });
    }

    fn expect<T: PartialEq + std::fmt::Debug>(&mut self, name: impl Into<String>, got: T, want: T) {
        let ok = got == want;
        self.check(name, ok, Some(format!("got {got:?}, expected {want:?}")));
    }

    /// Records an error from the library as a failed check.
    fn attempt<T, E: std::fmt::Display>(&mut self, name: &str, r: Result<T, E>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.check(name, false, Some(e.to_string()));
                None
            }
        }
    }

    fn golden(&mut self, file: &str, actual: &Value) {
        let path = self.golden_dir.join(file);
        let name = format!("golden {file}");
        let stored = std::fs::read_to_string(&path)
            .map_err(|e| format!("{}: {e}", path.display()))
            .and_then(|t| serde_json::from_str::<Value>(&t).map_err(|e| format!("{}: {e}", path.display())));
        match stored {
            Ok(v) => {
                let ok = &v == actual;
                self.check(name, ok, Some("stored output differs from the computed one".into()));
            }
            Err(e) => self.check(name, false, Some(e)),
        }
    }
}

type SuiteFn = fn(&mut Ctx);

pub const SUITES: [&str; 8] = [
    "example-exE",
    "dualgraph-exE",
    "smoothness",
    "tate",
    "herbrand",
    "audit",
    "oracle",
    "brauer",
];

fn suite_fn(name: &str) -> Option<SuiteFn> {
    Some(match name {
        "example-exE" => example_exe,
        "dualgraph-exE" => dualgraph_exe,
        "smoothness" => smoothness,
        "tate" => tate,
        "herbrand" => herbrand,
        "audit" => audit,
        "oracle" => oracle,
        "brauer" => brauer,
        _ => return None,
    })
}

/// Runs the named suites (all of them when `only` is `None`) in the fixed
/// order of [`SUITES`].
pub fn run(only: Option<&[String]>, seed: u64, golden_dir: &Path) -> Result<Report, String> {
    if let Some(names) = only {
        if let Some(bad) = names.iter().find(|n| suite_fn(n).is_none()) {
            return Err(format!("unknown suite {bad:?}; known suites: {}", SUITES.join(", ")));
        }
        if names.is_empty() {
            return Err("no suite selected".into());
        }
    }
    let mut suites = Vec::new();
    for name in SUITES {
        if only.is_some_and(|names| !names.iter().any(|n| n == name)) {
            continue;
        }
        let mut ctx = Ctx {
            seed,
            golden_dir,
            checks: Vec::new(),
        };
        suite_fn(name).expect("listed suite")(&mut ctx);
        suites.push(SuiteResult {
            name,
            checks: ctx.checks,
        });
    }
    Ok(Report { seed, suites })
}

fn fracs(v: &[(i64, i64)]) -> LatticeVector {
    LatticeVector::from_fracs(v)
}

fn example_exe(ctx: &mut Ctx) {
    let Some(r) = ctx.attempt("pipeline 1/3(1,2)", resolution_pipeline(3, &[1, 2])) else {
        return;
    };
    let pick = |f: &cyclotoric::Fan, idx: &[usize]| -> BTreeSet<LatticeVector> {
        idx.iter().map(|&i| f.rays()[i].clone()).collect()
    };
    ctx.expect(
        "quotient exceptional rays",
        pick(&r.quotient_fan, &r.exceptional_rays_quotient),
        [fracs(&[(1, 3), (2, 3)]), fracs(&[(2, 3), (1, 3)])].into(),
    );
    ctx.expect(
        "lifted exceptional rays",
        pick(&r.lifted_fan, &r.exceptional_rays_quotient),
        [LatticeVector::from_ints(&[1, 2]), LatticeVector::from_ints(&[2, 1])].into(),
    );
    ctx.expect(
        "cover rays",
        r.final_cover_fan.rays().iter().cloned().collect::<BTreeSet<_>>(),
        [[1, 0], [2, 1], [1, 1], [1, 2], [0, 1]]
            .iter()
            .map(|v| LatticeVector::from_ints(v))
            .collect(),
    );
    ctx.check("quotient fan smooth", r.quotient_fan.is_smooth(), None);
    ctx.check("cover fan smooth", r.final_cover_fan.is_smooth(), None);
    for (label, fan, idx) in [
        ("quotient", &r.quotient_fan, &r.exceptional_rays_quotient),
        ("cover", &r.final_cover_fan, &r.exceptional_rays_cover),
    ] {
        if let Some((ok, cert)) = ctx.attempt(label, exceptional_independence(fan, idx)) {
            ctx.check(format!("{label} exceptional classes independent"), ok, Some(format!("{cert:?}")));
        }
    }
    ctx.golden(RESOLVE_GOLDEN, &json::resolution_report(&r));
}

fn dualgraph_exe(ctx: &mut Ctx) {
    let Some(r) = ctx.attempt("pipeline 1/3(1,2)", resolution_pipeline(3, &[1, 2])) else {
        return;
    };
    let Some(g) = ctx.attempt("dual graph", dual_graph(&r.quotient_fan, &r.exceptional_rays_quotient)) else {
        return;
    };
    ctx.expect(
        "two vertices, one edge, connected",
        (g.vertices.len(), g.edges.len(), g.components),
        (2, 1, 1),
    );
    ctx.check("is a path", g.is_path(), None);
    ctx.golden(DUALGRAPH_GOLDEN, &json::dual_graph(&g));
}

fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n).filter(|&p| cyclotoric::is_prime(p)).collect()
}

fn smoothness(ctx: &mut Ctx) {
    let mut failures = Vec::new();
    let mut count = 0;
    for p in primes_up_to(31) {
        for a in 1..p {
            count += 1;
            let tag = format!("1/{p}(1,{a})");
            let r = match resolution_pipeline(p, &[1, a as i64]) {
                Ok(r) => r,
                Err(e) => {
                    failures.push(format!("{tag}: {e}"));
                    continue;
                }
            };
            let hj: BTreeSet<LatticeVector> = hirzebruch_jung(p, a).unwrap_or_default().into_iter().collect();
            let exc: BTreeSet<LatticeVector> = r
                .exceptional_rays_quotient
                .iter()
                .map(|&i| r.quotient_fan.rays()[i].clone())
                .collect();
            let independent = |f, idx| matches!(exceptional_independence(f, idx), Ok((true, _)));
            if !r.quotient_fan.is_smooth() || !r.final_cover_fan.is_smooth() {
                failures.push(format!("{tag}: not smooth"));
            } else if hj != exc {
                failures.push(format!("{tag}: exceptional rays differ from the continued fraction"));
            } else if !independent(&r.quotient_fan, &r.exceptional_rays_quotient)
                || !independent(&r.final_cover_fan, &r.exceptional_rays_cover)
            {
                failures.push(format!("{tag}: exceptional classes dependent"));
            }
        }
    }
    ctx.check(
        format!("{count} surface quotients with p ≤ 31"),
        failures.is_empty(),
        Some(failures.join("; ")),
    );
    for p in [2u64, 3, 5] {
        let w = [1, 1, (p as i64 - 1).max(1)];
        let tag = format!("1/{p}{w:?}");
        if let Some(r) = ctx.attempt(&tag, resolution_pipeline(p, &w)) {
            ctx.check(
                format!("{tag} smooth"),
                r.quotient_fan.is_smooth() && r.final_cover_fan.is_smooth(),
                None,
            );
        }
    }
}

fn tate(ctx: &mut Ctx) {
    let rotation = CyclicModule::free(IntMatrix::from_i64(&[&[0, -1], &[1, -1]]), 3);
    if let Some(m) = ctx.attempt("rotation module", rotation) {
        ctx.expect("rotation Ĥ⁰", tate_h0(&m).order(), BigInt::from(1));
        ctx.expect("rotation Ĥ¹", tate_h1(&m).invariant_factors().to_vec(), vec![BigInt::from(3)]);
    }
    for p in [2u64, 3, 5, 7] {
        if let Some(m) = ctx.attempt("regular module", CyclicModule::regular(p)) {
            ctx.check(
                format!("ℤ[C_{p}] is cohomologically trivial"),
                tate_h0(&m).is_trivial() && tate_h1(&m).is_trivial(),
                None,
            );
        }
        if let Some(m) = ctx.attempt("trivial module", CyclicModule::free(IntMatrix::identity(1), p)) {
            ctx.expect(
                format!("trivial ℤ with p = {p}"),
                (tate_h0(&m).order(), tate_h1(&m).order()),
                (BigInt::from(p), BigInt::from(1)),
            );
        }
    }
    ctx.check("divisible module has trivial Ĥ¹", cyclotoric::divisible_module_h1().is_trivial(), None);
}

/// A unimodular `P` and its inverse, from random elementary operations.
fn random_unimodular_pair(n: usize, rng: &mut ChaCha8Rng) -> (IntMatrix, IntMatrix) {
    let mut pm = IntMatrix::identity(n);
    let mut inv = IntMatrix::identity(n);
    if n < 2 {
        return (pm, inv);
    }
    for _ in 0..6 {
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        match rng.gen_range(0..3) {
            0 => {
                pm.swap_rows(i, j);
                inv.swap_cols(i, j);
            }
            1 => {
                pm.negate_row(i);
                inv.negate_col(i);
            }
            _ => {
                let k = rng.gen_range(-2i64..=2);
                pm.add_row_multiple(i, j, &BigInt::from(k));
                inv.add_col_multiple(j, i, &BigInt::from(-k));
            }
        }
    }
    (pm, inv)
}

/// A random finite module: diagonal relations `⊕ nᵢℤ` with a block action
/// (unit scalars, cyclic permutations, cyclotomic companions), in a random
/// basis.
fn random_finite_module(p: u64, rng: &mut ChaCha8Rng) -> cyclotoric::Result<CyclicModule> {
    let pi = p as usize;
    let mut orders: Vec<i64> = Vec::new();
    let mut action = IntMatrix::zeros(0, 0);
    for _ in 0..rng.gen_range(1..=3) {
        let n = rng.gen_range(2..=9i64);
        let block = match rng.gen_range(0..3) {
            0 => {
                let units: Vec<i64> = (1..n)
                    .filter(|&u| num_integer::gcd(u, n) == 1 && (0..p).fold(1i64, |acc, _| acc * u % n) == 1)
                    .collect();
                orders.push(n);
                IntMatrix::from_i64(&[&[units[rng.gen_range(0..units.len())]]])
            }
            1 => {
                let mut perm = IntMatrix::zeros(pi, pi);
                for i in 0..pi {
                    perm[((i + 1) % pi, i)] = BigInt::from(1);
                }
                orders.extend(std::iter::repeat_n(n, pi));
                perm
            }
            _ => {
                let d = pi - 1;
                let mut comp = IntMatrix::zeros(d, d);
                for i in 1..d {
                    comp[(i, i - 1)] = BigInt::from(1);
                }
                for i in 0..d {
                    comp[(i, d - 1)] = BigInt::from(-1);
                }
                orders.extend(std::iter::repeat_n(n, d));
                comp
            }
        };
        action = action.direct_sum(&block);
    }
    let n = orders.len();
    if n == 0 {
        return CyclicModule::new(IntMatrix::from_i64(&[&[p as i64]]), IntMatrix::identity(1), p);
    }
    let mut d = IntMatrix::zeros(n, n);
    for (i, &o) in orders.iter().enumerate() {
        d[(i, i)] = BigInt::from(o);
    }
    let (pm, inv) = random_unimodular_pair(n, rng);
    CyclicModule::new(&pm * &d, &(&pm * &action) * &inv, p)
}

fn herbrand(ctx: &mut Ctx) {
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let mut failures = Vec::new();
    for i in 0..HERBRAND_MODULES {
        let p = [2u64, 3, 5, 7][i % 4];
        match random_finite_module(p, &mut rng) {
            Ok(m) => {
                let (h0, h1) = (tate_h0(&m).order(), tate_h1(&m).order());
                if !m.is_finite() || h0 != h1 {
                    failures.push(format!("module {i}: |Ĥ⁰| = {h0}, |Ĥ¹| = {h1}"));
                }
            }
            Err(e) => failures.push(format!("module {i}: {e}")),
        }
    }
    ctx.check(
        format!("|Ĥ⁰| = |Ĥ¹| on {HERBRAND_MODULES} random finite modules"),
        failures.is_empty(),
        Some(failures.join("; ")),
    );
}

fn audit(ctx: &mut Ctx) {
    for (p, b) in [(2u64, 1usize), (2, 3), (3, 2), (5, 2), (7, 1)] {
        let tag = format!("p = {p}, b = {b}");
        let Some(a) = ctx.attempt(&tag, torsion_audit(p, b)) else {
            continue;
        };
        let pb = u128::from(p).pow(b as u32);
        let want = (1, (pb - 1) / u128::from(p - 1), pb - 1);
        ctx.expect(
            format!("{tag} case counts"),
            (a.counts.kernel_t, a.counts.split, a.counts.nonsplit),
            want,
        );
        ctx.check(format!("{tag} certified"), a.all_ramified, None);
    }
}

fn oracle(ctx: &mut Ctx) {
    let block = IntMatrix::from_i64(&[&[0, 1], &[-1, -1]]).kronecker(&IntMatrix::identity(2));
    if let Some(r) = ctx.attempt("fixed rank", fixed_subgroup_rank(&block, 3)) {
        ctx.expect("ζ fixes (ℤ/3)² inside (E × E)[3]", r, (2, BigInt::from(9)));
    }
    let mut curves = vec![(5u64, 0i64, 1i64), (7, 0, 1), (7, 0, 2), (11, 2, 7), (13, 0, 1)];
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed ^ 0x0ac1e);
    while curves.len() < 12 {
        let q = [5u64, 7, 11, 13, 17, 19, 23][rng.gen_range(0..7)];
        let c = (q, rng.gen_range(0..q as i64), rng.gen_range(0..q as i64));
        if WeierstrassCurve::new(c.0, c.1, c.2).is_ok() {
            curves.push(c);
        }
    }
    for (q, a4, a6) in curves {
        let tag = format!("y² = x³ + {a4}x + {a6} over F_{q}");
        let Some(curve) = ctx.attempt(&tag, WeierstrassCurve::new(q, a4, a6)) else {
            continue;
        };
        if let Some(r) = ctx.attempt(&tag, cyclotoric::compare_with_prediction(&curve)) {
            ctx.check(
                format!("{tag} consistent"),
                r.consistent && r.within_hasse,
                Some(format!("{r:?}")),
            );
        }
    }
}

fn brauer(ctx: &mut Ctx) {
    let r = |n: i64| Rational::from_integer(BigInt::from(n));
    for ((a, b, c), want) in [
        ((1, 1, 2), BrauerQuotient::ZMod2),
        ((1, 1, 16), BrauerQuotient::ZMod2),
        ((1, 1, 1), BrauerQuotient::Trivial),
        ((1, 2, 3), BrauerQuotient::Trivial),
        ((-2, 1, 1), BrauerQuotient::ZMod2),
    ] {
        let tag = format!("{a}x³ + {b}y³ + {c}z³");
        if let Some(x) = ctx.attempt(&tag, DiagonalCubic::new(r(a), r(b), r(c))) {
            if let Some(q) = ctx.attempt(&tag, brauer_quotient(&x)) {
                ctx.expect(tag, q, want);
            }
        }
    }
    if let Ok(x) = DiagonalCubic::new(r(1), r(1), r(2)) {
        ctx.expect(
            "jacobian of x³ + y³ + 2z³",
            cyclotoric::associated_jacobian(&x).to_string(),
            "y^2 = x^3 - 576".to_string(),
        );
    }
}
