//! Full-rank rational lattices in canonical Hermite form, primitive vectors,
//! lattice indices, and kernels modulo a prime.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{format_rational, gcd_all, lcm_of_denominators, require_prime, Rational};
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::normal_form::hermite_normal_form;

/// A point of `ℚⁿ`, usually a ray generator living in some [`Lattice`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector(pub Vec<Rational>);

impl LatticeVector {
    pub fn from_ints(v: &[i64]) -> Self {
        LatticeVector(v.iter().map(|&x| Rational::from_integer(x.into())).collect())
    }

    pub fn from_fracs(v: &[(i64, i64)]) -> Self {
        LatticeVector(
            v.iter()
                .map(|&(n, d)| Rational::new(n.into(), d.into()))
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        LatticeVector(self.0.iter().map(|x| x * k).collect())
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(format_rational).collect()
    }
}

impl fmt::Debug for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join(", "))
    }
}

/// `(1/den) · (integer combinations of the columns of basis)`.
///
/// The basis is kept in column Hermite normal form and `den` is minimal, so
/// two equal lattices are structurally equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Lattice {
    den: BigInt,
    basis: IntMatrix,
}

impl Lattice {
    pub fn standard(n: usize) -> Self {
        Lattice {
            den: BigInt::one(),
            basis: IntMatrix::identity(n),
        }
    }

    /// The lattice generated by the given rational vectors; they must span `ℚⁿ`.
    pub fn from_generators(dim: usize, generators: &[LatticeVector]) -> Result<Self> {
        for g in generators {
            if g.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: g.dim(),
                });
            }
        }
        let den = lcm_of_denominators(generators.iter().flat_map(|g| g.0.iter()));
        let cols: Vec<Vec<BigInt>> = generators
            .iter()
            .map(|g| g.0.iter().map(|x| (x * &den).to_integer()).collect())
            .collect();
        Self::from_integer_basis(den, &IntMatrix::from_columns(dim, &cols)?)
    }

    /// The lattice spanned by the columns of `generators / den`.
    pub fn from_integer_basis(den: BigInt, generators: &IntMatrix) -> Result<Self> {
        if !den.is_positive() {
            return Err(Error::InvalidArgument("denominator must be positive".into()));
        }
        let dim = generators.rows();
        let hnf = hermite_normal_form(generators);
        if hnf.rank() < dim {
            return Err(Error::Singular);
        }
        let basis = hnf.basis();
        let g = gcd_all(basis.entries().iter().chain(std::iter::once(&den)));
        let basis = if g.is_one() {
            basis
        } else {
            let entries = basis.entries().iter().map(|e| e / &g).collect();
            IntMatrix::from_entries(dim, dim, entries)?
        };
        Ok(Lattice { den: den / g, basis })
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    /// Columns are `den` times the basis vectors.
    pub fn integer_basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<LatticeVector> {
        (0..self.dim())
            .map(|j| {
                LatticeVector(
                    self.basis
                        .column(j)
                        .into_iter()
                        .map(|e| Rational::new(e, self.den.clone()))
                        .collect(),
                )
            })
            .collect()
    }

    /// `|det|` of the basis, as a rational.
    pub fn covolume(&self) -> Rational {
        let n = self.dim() as u32;
        Rational::new(self.basis.det().abs(), self.den.pow(n))
    }

    /// Coordinates of `v` with respect to the basis (rational in general).
    pub fn rational_coordinates(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        let n = self.dim();
        if v.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: v.len(),
            });
        }
        let den = Rational::from_integer(self.den.clone());
        let mut x: Vec<Rational> = Vec::with_capacity(n);
        for i in 0..n {
            let mut acc = &v[i] * &den;
            for (j, xj) in x.iter().enumerate() {
                acc -= xj * Rational::from_integer(self.basis[(i, j)].clone());
            }
            x.push(acc / Rational::from_integer(self.basis[(i, i)].clone()));
        }
        Ok(x)
    }

    /// Integer coordinates of `v`, or `None` if `v` is not in the lattice.
    pub fn coordinates(&self, v: &[Rational]) -> Result<Option<Vec<BigInt>>> {
        let x = self.rational_coordinates(v)?;
        Ok(x.iter()
            .all(Rational::is_integer)
            .then(|| x.into_iter().map(|c| c.to_integer()).collect()))
    }

    pub fn contains(&self, v: &LatticeVector) -> bool {
        matches!(self.coordinates(&v.0), Ok(Some(_)))
    }

    pub fn point(&self, coords: &[BigInt]) -> LatticeVector {
        let col = self.basis.mul_vec(coords);
        LatticeVector(
            col.into_iter()
                .map(|e| Rational::new(e, self.den.clone()))
                .collect(),
        )
    }

    pub fn contains_lattice(&self, sub: &Lattice) -> bool {
        sub.dim() == self.dim() && sub.basis_vectors().iter().all(|b| self.contains(b))
    }
}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Lattice(1/{} · {})", self.den, self.basis)
    }
}

/// The shortest positive multiple of `v` lying in `lattice`: the primitive
/// generator of the ray through `v`. The direction of `v` is kept.
pub fn primitive_in_lattice(v: &LatticeVector, lattice: &Lattice) -> Result<LatticeVector> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let x = lattice.rational_coordinates(&v.0)?;
    let common = lcm_of_denominators(x.iter());
    let ints: Vec<BigInt> = x.iter().map(|c| (c * &common).to_integer()).collect();
    let g = gcd_all(ints.iter());
    let prim: Vec<BigInt> = ints.iter().map(|c| c / &g).collect();
    Ok(lattice.point(&prim))
}

/// `[sup : sub]` for lattices `sub ⊆ sup`.
pub fn lattice_index(sub: &Lattice, sup: &Lattice) -> Result<BigInt> {
    if sub.dim() != sup.dim() {
        return Err(Error::DimensionMismatch {
            expected: sup.dim(),
            got: sub.dim(),
        });
    }
    if !sup.contains_lattice(sub) {
        return Err(Error::NotContained(format!("{sub:?} is not inside {sup:?}")));
    }
    let ratio = sub.covolume() / sup.covolume();
    debug_assert!(ratio.is_integer());
    Ok(ratio.to_integer())
}

/// An integer sublattice of `ℤᵏ` of any rank, held in column Hermite form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerSpan {
    basis: IntMatrix,
    pivot_rows: Vec<usize>,
}

impl IntegerSpan {
    /// The span of the columns of `generators`.
    pub fn new(generators: &IntMatrix) -> Self {
        let hnf = hermite_normal_form(generators);
        IntegerSpan {
            basis: hnf.basis(),
            pivot_rows: hnf.pivot_rows,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivot_rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    /// Coordinates of `v` in the canonical basis, or `None` if `v` is outside.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(v.len(), self.ambient_dim());
        let mut residual = v.to_vec();
        let mut coords = Vec::with_capacity(self.rank());
        for (t, &row) in self.pivot_rows.iter().enumerate() {
            let (q, r) = residual[row].div_rem(&self.basis[(row, t)]);
            if !r.is_zero() {
                return None;
            }
            for (i, res) in residual.iter_mut().enumerate() {
                *res -= &q * &self.basis[(i, t)];
            }
            coords.push(q);
        }
        residual.iter().all(Zero::is_zero).then_some(coords)
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coordinates(v).is_some()
    }
}

fn to_residues(a: &IntMatrix, p: u64) -> Vec<Vec<u64>> {
    let modulus = BigInt::from(p);
    a.to_rows()
        .into_iter()
        .map(|row| {
            row.iter()
                .map(|e| e.mod_floor(&modulus).to_u64().expect("residue fits"))
                .collect()
        })
        .collect()
}

fn inv_mod(a: u64, p: u64) -> u64 {
    crate::arith::pow_mod(a, p - 2, p)
}

/// Reduced row echelon form over `ℤ/p`; returns the matrix and its pivot columns.
pub(crate) fn rref_mod_p(a: &IntMatrix, p: u64) -> (Vec<Vec<u64>>, Vec<usize>) {
    let mut m = to_residues(a, p);
    let (rows, cols) = (a.rows(), a.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, pr);
        let inv = inv_mod(m[r][c], p);
        for x in m[r].iter_mut() {
            *x = (*x as u128 * inv as u128 % p as u128) as u64;
        }
        for i in 0..rows {
            if i == r || m[i][c] == 0 {
                continue;
            }
            let f = m[i][c];
            for j in 0..cols {
                let sub = (f as u128 * m[r][j] as u128 % p as u128) as u64;
                m[i][j] = (m[i][j] + p - sub) % p;
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    (m, pivots)
}

pub fn rank_mod_p(a: &IntMatrix, p: u64) -> Result<usize> {
    require_prime(p)?;
    Ok(rref_mod_p(a, p).1.len())
}

/// Basis of `{x ∈ (ℤ/p)ⁿ : a·x ≡ 0}`: one vector per free column, with a one
/// in that column and zeros in the other free columns.
pub fn kernel_mod_p(a: &IntMatrix, p: u64) -> Result<Vec<Vec<u64>>> {
    require_prime(p)?;
    let (m, pivots) = rref_mod_p(a, p);
    let n = a.cols();
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    Ok(free
        .iter()
        .map(|&f| {
            let mut x = vec![0u64; n];
            x[f] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                x[pc] = (p - m[r][f]) % p;
            }
            x
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn n3() -> Lattice {
        Lattice::from_generators(
            2,
            &[
                LatticeVector::from_ints(&[1, 0]),
                LatticeVector::from_ints(&[0, 1]),
                LatticeVector::from_fracs(&[(1, 3), (2, 3)]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn canonical_form_is_structural() {
        let a = n3();
        let b = Lattice::from_generators(
            2,
            &[
                LatticeVector::from_fracs(&[(2, 3), (1, 3)]),
                LatticeVector::from_ints(&[1, 0]),
            ],
        )
        .unwrap();
        assert_eq!(a, b);
        assert_eq!(a.denominator(), &BigInt::from(3));
        assert_eq!(a.covolume(), rat(1, 3));
        assert_eq!(
            Lattice::from_generators(2, &[LatticeVector::from_fracs(&[(2, 2), (0, 1)]), LatticeVector::from_ints(&[0, 1])]).unwrap(),
            Lattice::standard(2)
        );
    }

    #[test]
    fn rank_deficient_generators_rejected() {
        let err = Lattice::from_generators(2, &[LatticeVector::from_ints(&[1, 1])]);
        assert_eq!(err, Err(Error::Singular));
    }

    #[test]
    fn primitive_vectors() {
        let z2 = Lattice::standard(2);
        assert_eq!(
            primitive_in_lattice(&LatticeVector::from_ints(&[2, 4]), &z2).unwrap(),
            LatticeVector::from_ints(&[1, 2])
        );
        assert_eq!(
            primitive_in_lattice(&LatticeVector::from_ints(&[3, 3]), &z2).unwrap(),
            LatticeVector::from_ints(&[1, 1])
        );
        assert_eq!(
            primitive_in_lattice(&LatticeVector::from_ints(&[1, 2]), &n3()).unwrap(),
            LatticeVector::from_fracs(&[(1, 3), (2, 3)])
        );
        assert_eq!(
            primitive_in_lattice(&LatticeVector::from_ints(&[-2, 0]), &z2).unwrap(),
            LatticeVector::from_ints(&[-1, 0])
        );
        assert_eq!(
            primitive_in_lattice(&LatticeVector::from_ints(&[0, 0]), &z2),
            Err(Error::ZeroVector)
        );
    }

    #[test]
    fn indices() {
        let z2 = Lattice::standard(2);
        assert_eq!(lattice_index(&z2, &n3()).unwrap(), BigInt::from(3));
        assert_eq!(lattice_index(&n3(), &n3()).unwrap(), BigInt::from(1));
        let sub = Lattice::from_generators(
            2,
            &[LatticeVector::from_ints(&[2, 0]), LatticeVector::from_ints(&[0, 3])],
        )
        .unwrap();
        assert_eq!(lattice_index(&sub, &z2).unwrap(), BigInt::from(6));
        assert!(matches!(lattice_index(&n3(), &z2), Err(Error::NotContained(_))));
    }

    #[test]
    fn kernels_mod_p() {
        let a = IntMatrix::from_i64(&[&[1, 2], &[1, 2]]);
        assert_eq!(kernel_mod_p(&a, 3).unwrap(), vec![vec![1, 1]]);
        assert!(kernel_mod_p(&IntMatrix::identity(3), 7).unwrap().is_empty());
        assert_eq!(kernel_mod_p(&IntMatrix::zeros(2, 2), 5).unwrap().len(), 2);
        assert_eq!(kernel_mod_p(&a, 4), Err(Error::NotPrime(4)));
    }

    #[test]
    fn integer_span_membership() {
        let span = IntegerSpan::new(&IntMatrix::from_i64(&[&[2, 0], &[2, 0], &[0, 0]]));
        assert_eq!(span.rank(), 1);
        let v = |x: &[i64]| x.iter().map(|&e| BigInt::from(e)).collect::<Vec<_>>();
        assert!(span.contains(&v(&[4, 4, 0])));
        assert!(!span.contains(&v(&[1, 1, 0])));
        assert!(!span.contains(&v(&[2, 2, 1])));
    }
}
