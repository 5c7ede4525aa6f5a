//! Toric resolution of cyclic quotient singularities `1/p(a₁,…,aₙ)`.
//!
//! The quotient `𝔸ⁿ/μₚ` is the toric variety of the positive orthant over the
//! overlattice `N = ℤⁿ + ℤ·(a₁/p,…,aₙ/p)`. A smooth subdivision over `N` is
//! lifted to `ℤⁿ` by re-primitivizing every ray; the lifted fan is in general
//! singular again and gets subdivided a second time.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{require_prime, Rational};
use crate::error::{Error, Result};
use crate::fan::{Cone, Fan};
use crate::lattice::{primitive_in_lattice, Lattice, LatticeVector};
use crate::normal_form::smith_normal_form;

/// `ℤⁿ + ℤ·(a/p)`, weights taken modulo `p`.
pub fn quotient_lattice(p: u64, weights: &[i64]) -> Result<Lattice> {
    require_prime(p)?;
    let n = weights.len();
    if n == 0 {
        return Err(Error::InvalidArgument("at least one weight is required".into()));
    }
    let pi = p as i64;
    let mut generators: Vec<LatticeVector> = (0..n)
        .map(|i| {
            let mut e = vec![0i64; n];
            e[i] = 1;
            LatticeVector::from_ints(&e)
        })
        .collect();
    let twisted: Vec<(i64, i64)> = weights.iter().map(|&a| (a.rem_euclid(pi), pi)).collect();
    generators.push(LatticeVector::from_fracs(&twisted));
    Lattice::from_generators(n, &generators)
}

/// True iff the primitive ray generators extend to a basis of the lattice.
pub fn is_smooth_cone(cone: &Cone) -> bool {
    cone.multiplicity().is_one()
}

/// Negative-regular continued fraction `num/den = b₁ − 1/(b₂ − …)`.
pub fn hirzebruch_jung_fraction(num: u64, den: u64) -> Vec<u64> {
    let (mut num, mut den) = (num, den);
    let mut out = Vec::new();
    while den != 0 {
        let b = num.div_ceil(den);
        out.push(b);
        (num, den) = (den, b * den - num);
    }
    out
}

/// Interior rays of the minimal resolution of `cone⟨e₁, e₂⟩` over
/// `ℤ² + ℤ·(1/p, a/p)`, ordered starting from the ray adjacent to `e₂`.
///
/// With `p/a = [b₁,…,b_r]`, the chain is `u₀ = e₂`, `u₁ = (1/p, a/p)`,
/// `uᵢ₊₁ = bᵢ·uᵢ − uᵢ₋₁`, ending with `u_{r+1} = e₁`.
pub fn hirzebruch_jung(p: u64, a: u64) -> Result<Vec<LatticeVector>> {
    require_prime(p)?;
    if a == 0 || a >= p {
        return Err(Error::InvalidArgument(format!("need 1 <= a < p, got a = {a}")));
    }
    if a.gcd(&p) != 1 {
        return Err(Error::NotCoprime(a.to_string(), p.to_string()));
    }
    let fraction = hirzebruch_jung_fraction(p, a);
    let (pi, ai) = (p as i64, a as i64);
    let mut prev = vec![Rational::zero(), Rational::one()];
    let mut cur = vec![Rational::new(1.into(), pi.into()), Rational::new(ai.into(), pi.into())];
    let mut chain = Vec::with_capacity(fraction.len());
    for &b in &fraction {
        chain.push(LatticeVector(cur.clone()));
        let b = Rational::from_integer(BigInt::from(b));
        let next: Vec<Rational> = cur.iter().zip(&prev).map(|(c, q)| c * &b - q).collect();
        prev = std::mem::replace(&mut cur, next);
    }
    debug_assert_eq!(LatticeVector(cur), LatticeVector::from_ints(&[1, 0]));
    Ok(chain)
}

/// The points of `(lattice ∩ span) / (ray sublattice)`, as ray-basis
/// coordinates in `[0, 1)`. The zero point is included.
fn fundamental_parallelepiped(cone: &Cone) -> Vec<Vec<Rational>> {
    let smith = smith_normal_form(&cone.ray_coordinates());
    let k = cone.dim();
    let frac = |x: Rational| {
        let f = x.floor();
        x - f
    };
    let generators: Vec<Vec<Rational>> = (0..k)
        .filter(|&i| !smith.s[(i, i)].is_one())
        .map(|i| {
            let s = &smith.s[(i, i)];
            (0..k)
                .map(|r| frac(Rational::new(smith.v[(r, i)].clone(), s.clone())))
                .collect()
        })
        .collect();

    let mut seen: BTreeSet<Vec<Rational>> = BTreeSet::new();
    let zero = vec![Rational::zero(); k];
    seen.insert(zero.clone());
    let mut frontier = vec![zero];
    while let Some(point) = frontier.pop() {
        for g in &generators {
            let next: Vec<Rational> = point.iter().zip(g).map(|(a, b)| frac(a + b)).collect();
            if seen.insert(next.clone()) {
                frontier.push(next);
            }
        }
    }
    seen.into_iter().collect()
}

/// The lattice point of the half-open fundamental parallelepiped with the
/// smallest coordinate sum in the ray basis; ties go to the lexicographically
/// smallest ambient coordinates. Returns the point and its ray-basis
/// coordinates.
fn subdivision_point(cone: &Cone) -> Option<(LatticeVector, Vec<Rational>)> {
    fundamental_parallelepiped(cone)
        .into_iter()
        .filter(|l| l.iter().any(|x| !x.is_zero()))
        .map(|l| {
            let mut v = vec![Rational::zero(); cone.lattice().dim()];
            for (coef, ray) in l.iter().zip(cone.rays()) {
                for (vi, ri) in v.iter_mut().zip(ray.coords()) {
                    *vi += coef * ri;
                }
            }
            let sum: Rational = l.iter().sum();
            (sum, LatticeVector(v), l)
        })
        .min_by(|a, b| (&a.0, &a.1).cmp(&(&b.0, &b.1)))
        .map(|(_, v, l)| (v, l))
}

/// Star subdivision of `fan` at the new ray `ray`, which lies in the relative
/// interior of the face spanned by `face`. Every maximal cone containing the
/// face is replaced; multiplicities must strictly drop.
fn star_subdivide(
    fan: &mut Fan,
    face: &[usize],
    ray: LatticeVector,
    cache: &mut HashMap<Vec<usize>, BigInt>,
) {
    let new = fan.push_ray(ray);
    let mut cones = Vec::new();
    for (k, cone) in fan.max_cones().to_vec().into_iter().enumerate() {
        if !face.iter().all(|i| cone.contains(i)) {
            cones.push(cone);
            continue;
        }
        let old = cache
            .remove(&cone)
            .unwrap_or_else(|| fan.cone(k).multiplicity());
        for drop in face {
            let mut c: Vec<usize> = cone.iter().copied().filter(|i| i != drop).collect();
            c.push(new);
            let child = Cone::new(
                fan.lattice().clone(),
                c.iter().map(|&i| fan.rays()[i].clone()).collect(),
            )
            .expect("star subdivision keeps cones simplicial");
            let m = child.multiplicity();
            assert!(m < old, "multiplicity did not drop while subdividing {cone:?}");
            c.sort_unstable();
            cache.insert(c.clone(), m);
            cones.push(c);
        }
    }
    fan.replace_cones(cones);
}

/// Subdivides until every maximal cone is smooth.
///
/// Each step takes the singular maximal cone of largest multiplicity (ties:
/// smallest index set) and star-subdivides the fan at the point chosen by
/// [`subdivision_point`].
pub fn resolve_fan(fan: &Fan) -> Fan {
    let mut fan = fan.clone();
    let mut cache: HashMap<Vec<usize>, BigInt> = HashMap::new();
    loop {
        let mut target: Option<(BigInt, usize)> = None;
        for (k, idx) in fan.max_cones().iter().enumerate() {
            let m = cache
                .entry(idx.clone())
                .or_insert_with(|| fan.cone(k).multiplicity())
                .clone();
            if m.is_one() {
                continue;
            }
            if target.as_ref().is_none_or(|(best, _)| m > *best) {
                target = Some((m, k));
            }
        }
        let Some((_, k)) = target else {
            return fan;
        };
        let cone = fan.cone(k);
        let (point, coords) = subdivision_point(&cone).expect("singular cone has interior points");
        let face: Vec<usize> = fan.max_cones()[k]
            .iter()
            .zip(&coords)
            .filter(|(_, c)| !c.is_zero())
            .map(|(&i, _)| i)
            .collect();
        star_subdivide(&mut fan, &face, point, &mut cache);
    }
}

/// A smooth fan refining `cone` with the same support.
pub fn resolve_cone(cone: &Cone) -> Fan {
    resolve_fan(&Fan::from_cone(cone))
}

/// Re-primitivizes every ray of `fan` in `cover ⊆ N`, keeping the cone
/// index structure unchanged.
pub fn lift_fan(fan: &Fan, cover: &Lattice) -> Result<Fan> {
    if !fan.lattice().contains_lattice(cover) {
        return Err(Error::NotContained(format!(
            "{cover:?} is not inside {:?}",
            fan.lattice()
        )));
    }
    let rays = fan
        .rays()
        .iter()
        .map(|r| primitive_in_lattice(r, cover))
        .collect::<Result<Vec<_>>>()?;
    Ok(Fan::from_parts(cover.clone(), rays, fan.max_cones().to_vec()))
}

#[derive(Clone, Debug)]
pub struct ResolutionReport {
    pub p: u64,
    pub weights: Vec<i64>,
    pub quotient_lattice: Lattice,
    /// The positive orthant as a cone over the quotient lattice.
    pub original_cone: Cone,
    pub quotient_fan: Fan,
    pub exceptional_rays_quotient: Vec<usize>,
    pub lifted_fan: Fan,
    pub final_cover_fan: Fan,
    pub exceptional_rays_cover: Vec<usize>,
}

fn exceptional(fan: &Fan, boundary: &[LatticeVector]) -> Vec<usize> {
    (0..fan.rays().len())
        .filter(|&i| !boundary.contains(&fan.rays()[i]))
        .collect()
}

/// Quotient lattice, resolution over it, lift to `ℤⁿ`, and resolution of the
/// lift. Exceptional rays are the rays that are not generators of the
/// original orthant.
pub fn resolution_pipeline(p: u64, weights: &[i64]) -> Result<ResolutionReport> {
    let n = weights.len();
    let lattice = quotient_lattice(p, weights)?;
    let original_cone = Cone::positive_orthant(lattice.clone())?;
    let quotient_fan = resolve_cone(&original_cone);
    let cover = Lattice::standard(n);
    let lifted_fan = lift_fan(&quotient_fan, &cover)?;
    let final_cover_fan = resolve_fan(&lifted_fan);

    let exceptional_rays_quotient = exceptional(&quotient_fan, original_cone.rays());
    let cover_orthant = Cone::positive_orthant(cover)?;
    let exceptional_rays_cover = exceptional(&final_cover_fan, cover_orthant.rays());

    Ok(ResolutionReport {
        p,
        weights: weights.to_vec(),
        quotient_lattice: lattice,
        original_cone,
        quotient_fan,
        exceptional_rays_quotient,
        lifted_fan,
        final_cover_fan,
        exceptional_rays_cover,
    })
}
