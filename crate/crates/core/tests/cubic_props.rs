mod common;

use cyclotoric::cubic::is_rational_cube_with_bound;
use cyclotoric::factor::DEFAULT_FACTOR_BOUND;
use cyclotoric::{associated_jacobian, brauer_quotient, is_rational_cube, BrauerQuotient, DiagonalCubic, Rational};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

/// Integer cube root by bisection, independent of factorization.
fn icbrt(n: &BigInt) -> Option<BigInt> {
    let m = n.abs();
    let (mut lo, mut hi) = (BigInt::zero(), BigInt::from(1) << (m.bits() / 3 + 2));
    while lo < hi {
        let mid: BigInt = (&lo + &hi + 1) >> 1;
        if &mid * &mid * &mid <= m {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    (&lo * &lo * &lo == m).then(|| if n.is_negative() { -lo } else { lo })
}

fn oracle_is_cube(r: &Rational) -> bool {
    icbrt(r.numer()).is_some() && icbrt(r.denom()).is_some()
}

fn rational(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn nonzero() -> impl Strategy<Value = Rational> {
    (-60i64..=60, 1i64..=60)
        .prop_filter("nonzero", |(n, _)| *n != 0)
        .prop_map(|(n, d)| rational(n, d))
}

proptest! {
    #![proptest_config(common::config(1000))]

    #[test]
    fn cubes_of_rationals_are_cubes(n in 1i64..1_000_000, d in 1i64..1_000_000, neg in any::<bool>()) {
        let s = rational(if neg { -n } else { n }, d);
        prop_assert!(is_rational_cube(&(&s * &s * &s)).unwrap());
    }

    #[test]
    fn agrees_with_cube_root_oracle(n in -5000i64..5000, d in 1i64..5000) {
        prop_assume!(n != 0);
        let r = rational(n, d);
        prop_assert_eq!(is_rational_cube(&r).unwrap(), oracle_is_cube(&r));
    }

    #[test]
    fn cubes_are_closed_under_products(a in nonzero(), b in nonzero()) {
        let (x, y) = (&a * &a * &a, &b * &b * &b);
        let r = &x * &y;
        prop_assert!(is_rational_cube(&r).unwrap());
        // a non-cube times a cube stays a non-cube
        let z = &a * BigInt::from(2);
        prop_assert_eq!(is_rational_cube(&(&z * &y)).unwrap(), is_rational_cube(&z).unwrap());
    }

    #[test]
    fn brauer_quotient_symmetries(a in nonzero(), b in nonzero(), c in nonzero(), l in nonzero()) {
        let base = brauer_quotient(&DiagonalCubic::new(a.clone(), b.clone(), c.clone()).unwrap()).unwrap();
        for (x, y, z) in [(&b, &a, &c), (&c, &b, &a), (&a, &c, &b), (&b, &c, &a), (&c, &a, &b)] {
            let q = brauer_quotient(&DiagonalCubic::new(x.clone(), y.clone(), z.clone()).unwrap()).unwrap();
            prop_assert_eq!(q, base);
        }
        let scaled = DiagonalCubic::new(&a * &l, &b * &l, &c * &l).unwrap();
        prop_assert_eq!(brauer_quotient(&scaled).unwrap(), base);
        let four_abc = &a * &b * &c * BigInt::from(4);
        prop_assert_eq!(base == BrauerQuotient::ZMod2, oracle_is_cube(&four_abc));
    }

    #[test]
    fn jacobian_depends_on_square_of_product(a in nonzero(), b in nonzero(), c in nonzero()) {
        let x = DiagonalCubic::new(a.clone(), b.clone(), c.clone()).unwrap();
        let y = DiagonalCubic::new(-a.clone(), b.clone(), c.clone()).unwrap();
        let j = associated_jacobian(&x);
        prop_assert_eq!(&j, &associated_jacobian(&y));
        let abc = &a * &b * &c;
        prop_assert_eq!(j.a6, -(&abc * &abc) * BigInt::from(144));
        prop_assert!(j.a4.is_zero());
    }
}

#[test]
fn examples() {
    let q = |a, b, c| brauer_quotient(&DiagonalCubic::new(a, b, c).unwrap()).unwrap();
    assert_eq!(q(rational(1, 1), rational(1, 1), rational(2, 1)), BrauerQuotient::ZMod2);
    assert_eq!(q(rational(1, 1), rational(1, 1), rational(1, 1)), BrauerQuotient::Trivial);
    assert_eq!(q(rational(2, 1), rational(9, 1), rational(3, 2)), BrauerQuotient::Trivial);
    let j = associated_jacobian(&DiagonalCubic::new(rational(1, 1), rational(1, 1), rational(1, 1)).unwrap());
    assert_eq!(j.to_string(), "y^2 = x^3 - 144");
}

#[test]
fn large_inputs() {
    // (10^6 + 3)^3 · (10^6 + 33)^3 / (2^3 · 1000000007^3)
    let s = Rational::new(BigInt::from(1_000_003u64) * 1_000_033u64, BigInt::from(2u64 * 1_000_000_007));
    let r = &s * &s * &s;
    assert!(is_rational_cube_with_bound(&r, DEFAULT_FACTOR_BOUND).unwrap());
    let r2 = &r * BigInt::from(1_000_003u64);
    assert!(!is_rational_cube_with_bound(&r2, DEFAULT_FACTOR_BOUND).unwrap());
    // a product of three 40-bit primes defeats a one-step cap
    let hard = Rational::from_integer(BigInt::from(1_099_511_627_791u64) * 1_099_511_627_689u64 * 1_099_511_627_803u64);
    assert!(is_rational_cube_with_bound(&hard, 1).is_err());
}
