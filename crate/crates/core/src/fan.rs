//! Simplicial cones and fans over a rational lattice.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::lattice::{primitive_in_lattice, Lattice, LatticeVector};
use crate::matrix::IntMatrix;
use crate::normal_form::smith_normal_form;

/// A simplicial cone given by primitive ray generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone {
    lattice: Lattice,
    rays: Vec<LatticeVector>,
}

impl Cone {
    /// Checks that every ray is primitive in `lattice` and that the rays are
    /// linearly independent.
    pub fn new(lattice: Lattice, rays: Vec<LatticeVector>) -> Result<Self> {
        for r in &rays {
            if r.dim() != lattice.dim() {
                return Err(Error::DimensionMismatch {
                    expected: lattice.dim(),
                    got: r.dim(),
                });
            }
            if primitive_in_lattice(r, &lattice)? != *r {
                return Err(Error::InvalidFan(format!("ray {r:?} is not primitive")));
            }
        }
        let cone = Cone { lattice, rays };
        if cone.ray_coordinates().rank() != cone.rays.len() {
            return Err(Error::InvalidFan("cone rays are not linearly independent".into()));
        }
        Ok(cone)
    }

    /// The cone spanned by the primitive generators along the coordinate axes.
    pub fn positive_orthant(lattice: Lattice) -> Result<Self> {
        let n = lattice.dim();
        let rays = (0..n)
            .map(|i| {
                let mut e = vec![0i64; n];
                e[i] = 1;
                primitive_in_lattice(&LatticeVector::from_ints(&e), &lattice)
            })
            .collect::<Result<Vec<_>>>()?;
        Cone::new(lattice, rays)
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    pub fn dim(&self) -> usize {
        self.rays.len()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.rays.len() == self.lattice.dim()
    }

    /// Lattice coordinates of the rays, one column per ray.
    pub fn ray_coordinates(&self) -> IntMatrix {
        ray_coordinate_matrix(&self.lattice, &self.rays)
    }

    /// Index of the sublattice spanned by the rays inside its saturation.
    pub fn multiplicity(&self) -> BigInt {
        let coords = self.ray_coordinates();
        if coords.is_square() {
            return coords.det().abs();
        }
        smith_normal_form(&coords).invariant_factors().iter().product()
    }

    /// Coordinates of `v` in the ray basis, for full-dimensional cones.
    pub fn barycentric(&self, v: &LatticeVector) -> Result<Vec<Rational>> {
        let cols: Vec<Vec<Rational>> = self.rays.iter().map(|r| r.0.clone()).collect();
        solve_rational(&cols, &v.0).ok_or(Error::Singular)
    }
}

pub(crate) fn ray_coordinate_matrix(lattice: &Lattice, rays: &[LatticeVector]) -> IntMatrix {
    let cols: Vec<Vec<BigInt>> = rays
        .iter()
        .map(|r| {
            lattice
                .coordinates(&r.0)
                .expect("dimension checked")
                .expect("ray lies in the lattice")
        })
        .collect();
    IntMatrix::from_columns(lattice.dim(), &cols).expect("consistent column lengths")
}

/// Solves `Σ xⱼ · columns[j] = target` for a square nonsingular system.
pub(crate) fn solve_rational(columns: &[Vec<Rational>], target: &[Rational]) -> Option<Vec<Rational>> {
    let n = target.len();
    if columns.len() != n || columns.iter().any(|c| c.len() != n) {
        return None;
    }
    // augmented rows [A | b]
    let mut m: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut row: Vec<Rational> = columns.iter().map(|c| c[i].clone()).collect();
            row.push(target[i].clone());
            row
        })
        .collect();
    for c in 0..n {
        let pr = (c..n).find(|&i| !m[i][c].is_zero())?;
        m.swap(c, pr);
        let inv = m[c][c].recip();
        for x in m[c].iter_mut() {
            *x *= &inv;
        }
        for i in 0..n {
            if i == c || m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone();
            for j in c..=n {
                let v = &m[c][j] * &f;
                m[i][j] -= v;
            }
        }
    }
    Some(m.into_iter().map(|row| row[n].clone()).collect())
}

fn det_rational(rows: &[Vec<Rational>]) -> Rational {
    let n = rows.len();
    let mut m = rows.to_vec();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(pr) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Rational::zero();
        };
        if pr != c {
            m.swap(c, pr);
            det = -det;
        }
        det *= &m[c][c];
        for i in c + 1..n {
            let f = &m[i][c] / &m[c][c];
            for j in c..n {
                let v = &m[c][j] * &f;
                m[i][j] -= v;
            }
        }
    }
    det
}

/// Rays plus maximal cones as sorted index sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    lattice: Lattice,
    rays: Vec<LatticeVector>,
    max_cones: Vec<Vec<usize>>,
}

impl Fan {
    /// Validates the structural invariants: rays primitive and pairwise
    /// distinct, every ray used, every cone simplicial. Cone index sets are
    /// sorted and the cone list is sorted.
    pub fn new(lattice: Lattice, rays: Vec<LatticeVector>, max_cones: Vec<Vec<usize>>) -> Result<Self> {
        let mut used = vec![false; rays.len()];
        let mut cones = Vec::with_capacity(max_cones.len());
        for cone in max_cones {
            let mut cone = cone;
            cone.sort_unstable();
            if cone.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidFan(format!("cone {cone:?} repeats a ray")));
            }
            for &i in &cone {
                if i >= rays.len() {
                    return Err(Error::IndexOutOfRange(i));
                }
                used[i] = true;
            }
            cones.push(cone);
        }
        cones.sort();
        cones.dedup();
        if let Some(i) = used.iter().position(|u| !u) {
            return Err(Error::InvalidFan(format!("ray {i} lies in no maximal cone")));
        }
        for (i, r) in rays.iter().enumerate() {
            if rays[..i].contains(r) {
                return Err(Error::InvalidFan(format!("ray {r:?} is listed twice")));
            }
        }
        let fan = Fan {
            lattice,
            rays,
            max_cones: cones,
        };
        for idx in &fan.max_cones {
            Cone::new(fan.lattice.clone(), fan.cone_rays(idx))?;
        }
        Ok(fan)
    }

    pub fn from_cone(cone: &Cone) -> Self {
        Fan {
            lattice: cone.lattice.clone(),
            rays: cone.rays.clone(),
            max_cones: vec![(0..cone.rays.len()).collect()],
        }
    }

    /// Skips validation; callers guarantee the invariants.
    pub(crate) fn from_parts(lattice: Lattice, rays: Vec<LatticeVector>, mut max_cones: Vec<Vec<usize>>) -> Self {
        max_cones.iter_mut().for_each(|c| c.sort_unstable());
        max_cones.sort();
        Fan {
            lattice,
            rays,
            max_cones,
        }
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    pub fn max_cones(&self) -> &[Vec<usize>] {
        &self.max_cones
    }

    pub fn dim(&self) -> usize {
        self.lattice.dim()
    }

    fn cone_rays(&self, idx: &[usize]) -> Vec<LatticeVector> {
        idx.iter().map(|&i| self.rays[i].clone()).collect()
    }

    pub fn cone(&self, k: usize) -> Cone {
        Cone {
            lattice: self.lattice.clone(),
            rays: self.cone_rays(&self.max_cones[k]),
        }
    }

    pub fn cones(&self) -> impl Iterator<Item = Cone> + '_ {
        (0..self.max_cones.len()).map(|k| self.cone(k))
    }

    pub fn is_smooth(&self) -> bool {
        self.cones().all(|c| crate::resolution::is_smooth_cone(&c))
    }

    pub(crate) fn push_ray(&mut self, ray: LatticeVector) -> usize {
        self.rays.push(ray);
        self.rays.len() - 1
    }

    pub(crate) fn replace_cones(&mut self, cones: Vec<Vec<usize>>) {
        let mut cones = cones;
        cones.iter_mut().for_each(|c| c.sort_unstable());
        cones.sort();
        self.max_cones = cones;
    }

    /// Checks that this fan is a subdivision of the full-dimensional `cone`:
    /// every ray lies in the cone; every codimension-one face lies in exactly
    /// two maximal cones if it is interior and one if it is on the boundary;
    /// the normalized volumes of the maximal cones sum to that of `cone`.
    pub fn check_subdivides(&self, cone: &Cone) -> std::result::Result<(), String> {
        let n = self.dim();
        if !cone.is_full_dimensional() {
            return Err("support check needs a full-dimensional cone".into());
        }
        let mut bary = Vec::with_capacity(self.rays.len());
        for r in &self.rays {
            let l = cone.barycentric(r).map_err(|e| e.to_string())?;
            if l.iter().any(Signed::is_negative) {
                return Err(format!("ray {r:?} lies outside the cone"));
            }
            bary.push(l);
        }

        let mut ridges: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for c in &self.max_cones {
            if c.len() != n {
                return Err(format!("maximal cone {c:?} is not full-dimensional"));
            }
            for skip in 0..n {
                let ridge: Vec<usize> = c.iter().enumerate().filter(|&(k, _)| k != skip).map(|(_, &i)| i).collect();
                *ridges.entry(ridge).or_default() += 1;
            }
        }
        for (ridge, count) in &ridges {
            let on_boundary = (0..n).any(|axis| ridge.iter().all(|&i| bary[i][axis].is_zero()));
            let expected = if on_boundary { 1 } else { 2 };
            if *count != expected {
                return Err(format!(
                    "face {ridge:?} lies in {count} maximal cones, expected {expected}"
                ));
            }
        }

        let mut total = Rational::zero();
        for c in &self.max_cones {
            let rows: Vec<Vec<Rational>> = c
                .iter()
                .map(|&i| {
                    let s: Rational = bary[i].iter().sum();
                    bary[i].iter().map(|x| x / &s).collect()
                })
                .collect();
            total += det_rational(&rows).abs();
        }
        if !total.is_one() {
            return Err(format!("normalized volumes sum to {total}, expected 1"));
        }
        Ok(())
    }
}
