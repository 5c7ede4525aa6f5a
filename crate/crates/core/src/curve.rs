//! Short Weierstrass curves over small prime fields, enumerated exhaustively,
//! and the order-3 automorphism `(P, Q) ↦ (Q, −P−Q)` of `E × E`.

use num_bigint::BigInt;

use crate::arith::{is_prime, mod_inverse, pow_mod};
use crate::cohomology::fixed_subgroup_rank;
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

pub const MAX_FIELD_SIZE: u64 = 1 << 16;

/// `y² = x³ + a4·x + a6` over `F_q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct WeierstrassCurve {
    q: u64,
    a4: u64,
    a6: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CurvePoint {
    Infinity,
    Affine { x: u64, y: u64 },
}

/// A point `(P, Q)` of `E × E`.
pub type SurfacePoint = (CurvePoint, CurvePoint);

impl WeierstrassCurve {
    pub fn new(q: u64, a4: i64, a6: i64) -> Result<Self> {
        if !is_prime(q) || q >= MAX_FIELD_SIZE {
            return Err(Error::InvalidCurve(format!(
                "q must be a prime below 2^16 (got {q})"
            )));
        }
        if q <= 3 {
            return Err(Error::InvalidCurve("short Weierstrass form needs q > 3".into()));
        }
        let red = |v: i64| v.rem_euclid(q as i64) as u64;
        let curve = WeierstrassCurve {
            q,
            a4: red(a4),
            a6: red(a6),
        };
        let disc = (4 * pow_mod(curve.a4, 3, q) + 27 * pow_mod(curve.a6, 2, q)) % q;
        if disc == 0 {
            return Err(Error::InvalidCurve("curve is singular".into()));
        }
        Ok(curve)
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn a4(&self) -> u64 {
        self.a4
    }

    pub fn a6(&self) -> u64 {
        self.a6
    }

    fn rhs(&self, x: u64) -> u64 {
        let q = self.q;
        (pow_mod(x, 3, q) + self.a4 * x % q + self.a6) % q
    }

    pub fn contains(&self, p: &CurvePoint) -> bool {
        match *p {
            CurvePoint::Infinity => true,
            CurvePoint::Affine { x, y } => x < self.q && y < self.q && y * y % self.q == self.rhs(x),
        }
    }

    pub fn point(&self, x: u64, y: u64) -> Result<CurvePoint> {
        let p = CurvePoint::Affine { x, y };
        if self.contains(&p) {
            Ok(p)
        } else {
            Err(Error::PointNotOnCurve)
        }
    }

    /// Every point of `E(F_q)`, infinity first, then affine points sorted.
    pub fn enumerate_points(&self) -> Vec<CurvePoint> {
        let q = self.q;
        let mut roots: Vec<Vec<u64>> = vec![Vec::new(); q as usize];
        for y in 0..q {
            roots[(y * y % q) as usize].push(y);
        }
        let mut points = vec![CurvePoint::Infinity];
        for x in 0..q {
            for &y in &roots[self.rhs(x) as usize] {
                points.push(CurvePoint::Affine { x, y });
            }
        }
        points
    }

    pub fn neg(&self, p: &CurvePoint) -> CurvePoint {
        match *p {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine { x, y } => CurvePoint::Affine {
                x,
                y: (self.q - y) % self.q,
            },
        }
    }

    /// Chord-and-tangent addition.
    pub fn add(&self, a: &CurvePoint, b: &CurvePoint) -> CurvePoint {
        let q = self.q;
        let (x1, y1, x2, y2) = match (*a, *b) {
            (CurvePoint::Infinity, _) => return *b,
            (_, CurvePoint::Infinity) => return *a,
            (CurvePoint::Affine { x: x1, y: y1 }, CurvePoint::Affine { x: x2, y: y2 }) => {
                (x1, y1, x2, y2)
            }
        };
        let inv = |v: u64| mod_inverse(v as i128, q as i128).expect("nonzero in a prime field") as u64;
        let slope = if x1 == x2 {
            if (y1 + y2) % q == 0 {
                return CurvePoint::Infinity;
            }
            (3 * x1 % q * x1 % q + self.a4) % q * inv(2 * y1 % q) % q
        } else {
            (y2 + q - y1) % q * inv((x2 + q - x1) % q) % q
        };
        let x3 = (slope * slope % q + 2 * q - x1 - x2) % q;
        let y3 = (slope * ((x1 + q - x3) % q) % q + q - y1) % q;
        CurvePoint::Affine { x: x3, y: y3 }
    }

    pub fn mul(&self, k: u64, p: &CurvePoint) -> CurvePoint {
        let mut acc = CurvePoint::Infinity;
        let mut base = *p;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            base = self.add(&base, &base);
            k >>= 1;
        }
        acc
    }

    /// `ζ(P, Q) = (Q, −P − Q)`.
    pub fn zeta_apply(&self, s: &SurfacePoint) -> SurfacePoint {
        let (p, q) = s;
        (*q, self.neg(&self.add(p, q)))
    }

    /// Componentwise addition on `E × E`.
    pub fn surface_add(&self, a: &SurfacePoint, b: &SurfacePoint) -> SurfacePoint {
        (self.add(&a.0, &b.0), self.add(&a.1, &b.1))
    }

    /// `E(F_q)[3]`.
    pub fn three_torsion(&self) -> Vec<CurvePoint> {
        self.enumerate_points()
            .into_iter()
            .filter(|t| self.mul(3, t) == CurvePoint::Infinity)
            .collect()
    }

    /// Rational fixed points of `ζ`: exactly the pairs `(t, t)` with `3t = 0`.
    pub fn fixed_points_of_zeta(&self) -> Vec<SurfacePoint> {
        self.three_torsion().into_iter().map(|t| (t, t)).collect()
    }

    /// Fixed points of `ζ` found by testing every pair; quadratic in `|E|`.
    pub fn fixed_points_by_scan(&self) -> Vec<SurfacePoint> {
        let points = self.enumerate_points();
        let mut out = Vec::new();
        for p in &points {
            for q in &points {
                let s = (*p, *q);
                if self.zeta_apply(&s) == s {
                    out.push(s);
                }
            }
        }
        out
    }
}

/// The Hasse interval `[q + 1 − 2√q, q + 1 + 2√q]` contains `n`.
pub fn within_hasse_bound(q: u64, n: u64) -> bool {
    // |n − (q + 1)| ≤ 2√q  ⇔  (n − q − 1)² ≤ 4q
    let d = n as i128 - q as i128 - 1;
    d * d <= 4 * q as i128
}

/// The action of `(x, y) ↦ (y, −x−y)` on `(E × E)[3] ≅ (ℤ/3)² ⊕ (ℤ/3)²`.
pub fn zeta_on_three_torsion() -> IntMatrix {
    IntMatrix::from_i64(&[&[0, 1], &[-1, -1]]).kronecker(&IntMatrix::identity(2))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConsistencyReport {
    pub q: u64,
    pub order: u64,
    pub within_hasse: bool,
    pub three_torsion: u64,
    /// `|fixed points of ζ over F_q|`.
    pub rational_fixed: u64,
    /// `3ᵇ`, with `b` the fixed rank of `ζ` on `(E × E)[3]` over `F̄_q`.
    pub geometric_prediction: u64,
    /// Number of `ζ`-orbits on `E(F_q)²`, by Burnside.
    pub orbits: u64,
    /// Orbits of size three.
    pub free_orbits: u64,
    /// Whether the pair scan was run (`|E| ≤ 50`) and agreed.
    pub scan_agrees: Option<bool>,
    pub consistent: bool,
}

/// Compares the rational fixed-point count with the geometric prediction.
pub fn compare_with_prediction(curve: &WeierstrassCurve) -> Result<ConsistencyReport> {
    let (b, size) = fixed_subgroup_rank(&zeta_on_three_torsion(), 3)?;
    debug_assert_eq!(size, BigInt::from(9));
    let geometric = 3u64.pow(b as u32);
    let order = curve.enumerate_points().len() as u64;
    let fixed = curve.fixed_points_of_zeta();
    let rational = fixed.len() as u64;
    let scan_agrees = (order <= 50).then(|| curve.fixed_points_by_scan() == fixed);
    let pairs = order * order;
    let consistent = [1, 3, 9].contains(&rational)
        && geometric % rational == 0
        && scan_agrees != Some(false);
    Ok(ConsistencyReport {
        q: curve.q(),
        order,
        within_hasse: within_hasse_bound(curve.q(), order),
        three_torsion: rational,
        rational_fixed: rational,
        geometric_prediction: geometric,
        orbits: (pairs + 2 * rational) / 3,
        free_orbits: (pairs - rational) / 3,
        scan_agrees,
        consistent,
    })
}
