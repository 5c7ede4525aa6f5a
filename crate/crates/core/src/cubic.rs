//! Diagonal plane cubics `ax³ + by³ + cz³ = 0` over ℚ.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::arith::{format_rational, Rational};
use crate::error::{Error, Result};
use crate::factor::{factor_bound, factorize};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiagonalCubic {
    a: Rational,
    b: Rational,
    c: Rational,
}

impl DiagonalCubic {
    pub fn new(a: Rational, b: Rational, c: Rational) -> Result<Self> {
        if a.is_zero() || b.is_zero() || c.is_zero() {
            return Err(Error::ZeroValue);
        }
        Ok(DiagonalCubic { a, b, c })
    }

    pub fn coefficients(&self) -> [&Rational; 3] {
        [&self.a, &self.b, &self.c]
    }

    pub fn product(&self) -> Rational {
        &self.a * &self.b * &self.c
    }

    /// `4abc`, whose cube class decides the Brauer quotient.
    pub fn four_abc(&self) -> Rational {
        self.product() * BigInt::from(4)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BrauerQuotient {
    ZMod2,
    Trivial,
}

impl BrauerQuotient {
    pub fn as_str(self) -> &'static str {
        match self {
            BrauerQuotient::ZMod2 => "Z/2",
            BrauerQuotient::Trivial => "0",
        }
    }
}

fn integer_is_cube(n: &BigInt, bound: u64) -> Result<bool> {
    Ok(factorize(n, bound)?.values().all(|e| e % 3 == 0))
}

/// Whether `r = s³` for some rational `s`, using `bound` rho iterations.
pub fn is_rational_cube_with_bound(r: &Rational, bound: u64) -> Result<bool> {
    if r.is_zero() {
        return Err(Error::ZeroValue);
    }
    Ok(integer_is_cube(r.numer(), bound)? && integer_is_cube(r.denom(), bound)?)
}

/// [`is_rational_cube_with_bound`] with the bound from the environment.
pub fn is_rational_cube(r: &Rational) -> Result<bool> {
    is_rational_cube_with_bound(r, factor_bound())
}

pub fn brauer_quotient(x: &DiagonalCubic) -> Result<BrauerQuotient> {
    Ok(if is_rational_cube(&x.four_abc())? {
        BrauerQuotient::ZMod2
    } else {
        BrauerQuotient::Trivial
    })
}

/// `y² = x³ + a4·x + a6` over ℚ.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalWeierstrass {
    pub a4: Rational,
    pub a6: Rational,
}

fn push_term(out: &mut String, coeff: &Rational, monomial: &str) {
    if coeff.is_zero() {
        return;
    }
    out.push_str(if coeff.is_negative() { " - " } else { " + " });
    let mag = format_rational(&coeff.abs());
    match (mag.as_str(), monomial) {
        ("1", "") => out.push('1'),
        ("1", m) => out.push_str(m),
        (c, "") => out.push_str(c),
        (c, m) => {
            out.push_str(c);
            out.push('*');
            out.push_str(m);
        }
    }
}

impl fmt::Display for RationalWeierstrass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::from("y^2 = x^3");
        push_term(&mut s, &self.a4, "x");
        push_term(&mut s, &self.a6, "");
        f.write_str(&s)
    }
}

/// The Jacobian `y² = x³ − 144(abc)²`.
pub fn associated_jacobian(x: &DiagonalCubic) -> RationalWeierstrass {
    let abc = x.product();
    RationalWeierstrass {
        a4: Rational::zero(),
        a6: -(&abc * &abc) * BigInt::from(144),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_int};

    fn cubic(a: Rational, b: Rational, c: Rational) -> DiagonalCubic {
        DiagonalCubic::new(a, b, c).unwrap()
    }

    #[test]
    fn cubes() {
        assert!(is_rational_cube(&rat_int(8)).unwrap());
        assert!(is_rational_cube(&rat(-27, 8)).unwrap());
        assert!(!is_rational_cube(&rat_int(4)).unwrap());
        assert!(!is_rational_cube(&rat(1, 4)).unwrap());
        assert!(is_rational_cube(&rat_int(1)).unwrap());
        assert_eq!(is_rational_cube(&rat_int(0)), Err(Error::ZeroValue));
    }

    #[test]
    fn brauer_examples() {
        let q = brauer_quotient(&cubic(rat_int(1), rat_int(1), rat_int(2))).unwrap();
        assert_eq!(q, BrauerQuotient::ZMod2);
        let q = brauer_quotient(&cubic(rat_int(1), rat_int(1), rat_int(1))).unwrap();
        assert_eq!(q, BrauerQuotient::Trivial);
        let x = cubic(rat_int(2), rat_int(9), rat(3, 2));
        assert_eq!(x.four_abc(), rat_int(108));
        assert_eq!(brauer_quotient(&x).unwrap(), BrauerQuotient::Trivial);
        assert!(DiagonalCubic::new(rat_int(0), rat_int(1), rat_int(1)).is_err());
    }

    #[test]
    fn jacobians() {
        let j = associated_jacobian(&cubic(rat_int(1), rat_int(1), rat_int(1)));
        assert_eq!(j.to_string(), "y^2 = x^3 - 144");
        let j = associated_jacobian(&cubic(rat_int(1), rat_int(1), rat_int(2)));
        assert_eq!(j.to_string(), "y^2 = x^3 - 576");
        let j = associated_jacobian(&cubic(rat_int(1), rat_int(-1), rat_int(1)));
        assert_eq!(j.a6, rat_int(-144));
        let j = associated_jacobian(&cubic(rat(1, 5), rat_int(1), rat_int(1)));
        assert_eq!(j.to_string(), "y^2 = x^3 - 144/25");
        let e = RationalWeierstrass { a4: rat_int(-1), a6: rat_int(1) };
        assert_eq!(e.to_string(), "y^2 = x^3 - x + 1");
    }
}
