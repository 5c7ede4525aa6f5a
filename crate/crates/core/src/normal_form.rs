//! Smith and Hermite normal forms over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::matrix::IntMatrix;

/// `s = u · a · v` with `u`, `v` unimodular and `s` diagonal, each
/// diagonal entry dividing the next.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// The diagonal of `s`, zeros included.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows().min(self.s.cols()))
            .map(|i| self.s[(i, i)].clone())
            .collect()
    }

    /// Nonzero diagonal entries.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.diagonal().into_iter().filter(|d| !d.is_zero()).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }

    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.invariant_factors()
            .into_iter()
            .filter(|d| !d.is_one())
            .collect()
    }
}

fn smallest_nonzero(s: &IntMatrix, from: usize) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for i in from..s.rows() {
        for j in from..s.cols() {
            let e = &s[(i, j)];
            if e.is_zero() {
                continue;
            }
            let a = e.abs();
            // strict comparison keeps the lowest (row, col) on ties
            if best.as_ref().is_none_or(|(_, b)| a < *b) {
                best = Some(((i, j), a));
            }
        }
    }
    best.map(|(pos, _)| pos)
}

/// Smith normal form. Pivots on the entry of smallest absolute value, ties
/// broken by lowest `(row, col)`, so `u` and `v` are deterministic.
pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let (m, n) = (a.rows(), a.cols());
    let mut s = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);

    for t in 0..m.min(n) {
        loop {
            let Some((pi, pj)) = smallest_nonzero(&s, t) else {
                return SmithForm { u, s, v };
            };
            s.swap_rows(t, pi);
            u.swap_rows(t, pi);
            s.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let pivot = s[(t, t)].clone();
            let mut dirty = false;
            for i in t + 1..m {
                if s[(i, t)].is_zero() {
                    continue;
                }
                let q = -s[(i, t)].div_floor(&pivot);
                s.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                dirty |= !s[(i, t)].is_zero();
            }
            for j in t + 1..n {
                if s[(t, j)].is_zero() {
                    continue;
                }
                let q = -s[(t, j)].div_floor(&pivot);
                s.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                dirty |= !s[(t, j)].is_zero();
            }
            if dirty {
                continue;
            }

            let offender = (t + 1..m)
                .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !s[(i, j)].is_multiple_of(&pivot));
            match offender {
                Some((i, _)) => {
                    let one = BigInt::one();
                    s.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if s[(t, t)].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithForm { u, s, v }
}

/// Column Hermite normal form `h = a · u`, `u` unimodular.
///
/// Pivots sit in strictly increasing rows, are positive, and every entry to
/// the left of a pivot in its row lies in `0..pivot`. Zero columns are moved
/// to the right. The result depends only on the column span of `a`.
#[derive(Clone, Debug)]
pub struct HermiteForm {
    pub h: IntMatrix,
    pub u: IntMatrix,
    /// `pivot_rows[j]` is the pivot row of column `j`; its length is the rank.
    pub pivot_rows: Vec<usize>,
}

impl HermiteForm {
    pub fn rank(&self) -> usize {
        self.pivot_rows.len()
    }

    /// The nonzero columns of `h`: a canonical basis of the column span.
    pub fn basis(&self) -> IntMatrix {
        let r = self.rank();
        let cols: Vec<Vec<BigInt>> = (0..r).map(|j| self.h.column(j)).collect();
        IntMatrix::from_columns(self.h.rows(), &cols).expect("consistent column lengths")
    }

    /// Columns of `u` spanning the integer kernel of `a`.
    pub fn kernel(&self) -> IntMatrix {
        let cols: Vec<Vec<BigInt>> = (self.rank()..self.u.cols())
            .map(|j| self.u.column(j))
            .collect();
        IntMatrix::from_columns(self.u.rows(), &cols).expect("consistent column lengths")
    }
}

pub fn hermite_normal_form(a: &IntMatrix) -> HermiteForm {
    let (m, n) = (a.rows(), a.cols());
    let mut h = a.clone();
    let mut u = IntMatrix::identity(n);
    let mut pivot_rows = Vec::new();
    let mut c = 0;

    for i in 0..m {
        if c == n {
            break;
        }
        for j in c + 1..n {
            if h[(i, j)].is_zero() {
                continue;
            }
            if h[(i, c)].is_zero() {
                h.swap_cols(c, j);
                u.swap_cols(c, j);
                continue;
            }
            let (x, y) = (h[(i, c)].clone(), h[(i, j)].clone());
            let e = x.extended_gcd(&y);
            let (bx, by) = (-(&y / &e.gcd), &x / &e.gcd);
            let coeffs = [&e.x, &e.y, &bx, &by];
            h.combine_cols(c, j, coeffs);
            u.combine_cols(c, j, coeffs);
        }
        if h[(i, c)].is_zero() {
            continue;
        }
        if h[(i, c)].is_negative() {
            h.negate_col(c);
            u.negate_col(c);
        }
        let pivot = h[(i, c)].clone();
        for j in 0..c {
            let q = -h[(i, j)].div_floor(&pivot);
            h.add_col_multiple(j, c, &q);
            u.add_col_multiple(j, c, &q);
        }
        pivot_rows.push(i);
        c += 1;
    }
    HermiteForm { h, u, pivot_rows }
}

/// A basis (as columns) of the integer kernel `{x : a·x = 0}`.
pub fn integer_kernel(a: &IntMatrix) -> IntMatrix {
    hermite_normal_form(a).kernel()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn check_smith(a: &IntMatrix) -> SmithForm {
        let f = smith_normal_form(a);
        assert!(f.u.is_unimodular(), "u not unimodular for {a}");
        assert!(f.v.is_unimodular(), "v not unimodular for {a}");
        assert_eq!(&(&f.u * a) * &f.v, f.s);
        for i in 0..f.s.rows() {
            for j in 0..f.s.cols() {
                if i != j {
                    assert!(f.s[(i, j)].is_zero());
                }
            }
        }
        let d = f.diagonal();
        for w in d.windows(2) {
            assert!(!w[0].is_negative());
            if w[0].is_zero() {
                assert!(w[1].is_zero());
            } else {
                assert!(w[1].is_multiple_of(&w[0]));
            }
        }
        f
    }

    #[test]
    fn smith_two_by_two() {
        // gcd of entries is 1 and |det| is 3, so the factors are 1 and 3
        let f = check_smith(&IntMatrix::from_i64(&[&[1, -1], &[1, 2]]));
        assert_eq!(f.diagonal(), big(&[1, 3]));
    }

    #[test]
    fn smith_identity_and_zero() {
        let f = check_smith(&IntMatrix::identity(3));
        assert_eq!(f.s, IntMatrix::identity(3));
        assert_eq!(f.u, IntMatrix::identity(3));
        assert_eq!(f.v, IntMatrix::identity(3));

        let f = check_smith(&IntMatrix::zeros(2, 2));
        assert!(f.s.is_zero());
        assert_eq!(f.rank(), 0);
    }

    #[test]
    fn smith_rectangular_and_divisibility_fixup() {
        let f = check_smith(&IntMatrix::from_i64(&[&[2, 0], &[0, 3]]));
        assert_eq!(f.diagonal(), big(&[1, 6]));
        let f = check_smith(&IntMatrix::from_i64(&[&[4, 6, 8], &[6, 9, 12]]));
        assert_eq!(f.invariant_factors(), big(&[1]));
        let f = check_smith(&IntMatrix::from_i64(&[&[1, 0, -1], &[0, 1, -1]]));
        assert_eq!(f.diagonal(), big(&[1, 1]));
        let f = check_smith(&IntMatrix::from_i64(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]));
        assert_eq!(f.diagonal(), big(&[2, 6, 12]));
    }

    #[test]
    fn hermite_matches_worked_example() {
        let a = IntMatrix::from_i64(&[&[2, 1], &[0, 1]]);
        let f = hermite_normal_form(&a);
        assert_eq!(f.h, IntMatrix::from_i64(&[&[1, 0], &[1, 2]]));
        assert_eq!(&a * &f.u, f.h);
        assert!(f.u.is_unimodular());
    }

    #[test]
    fn hermite_identity_and_permutation_invariance() {
        assert_eq!(hermite_normal_form(&IntMatrix::identity(2)).h, IntMatrix::identity(2));
        let a = IntMatrix::from_i64(&[&[3, 0], &[0, 1]]);
        let swapped = IntMatrix::from_i64(&[&[0, 3], &[1, 0]]);
        assert_eq!(hermite_normal_form(&a).h, hermite_normal_form(&swapped).h);
    }

    /// Every 2×2 unimodular matrix with entries in -3..=3, applied on the
    /// right, must give the same canonical form as the input.
    #[test]
    fn hermite_exhaustive_unimodular_column_ops() {
        let a = IntMatrix::from_i64(&[&[2, 1], &[0, 1]]);
        let expected = hermite_normal_form(&a).h;
        let mut seen = 0;
        for w in -3..=3i64 {
            for x in -3..=3i64 {
                for y in -3..=3i64 {
                    for z in -3..=3i64 {
                        if (w * z - x * y).abs() != 1 {
                            continue;
                        }
                        let t = IntMatrix::from_i64(&[&[w, x], &[y, z]]);
                        assert_eq!(hermite_normal_form(&(&a * &t)).h, expected);
                        seen += 1;
                    }
                }
            }
        }
        assert!(seen > 50);
    }

    #[test]
    fn hermite_rank_deficient() {
        let a = IntMatrix::from_i64(&[&[2, 4, 6], &[1, 2, 3]]);
        let f = hermite_normal_form(&a);
        assert_eq!(f.rank(), 1);
        assert_eq!(f.basis(), IntMatrix::from_i64(&[&[2], &[1]]));
        let k = f.kernel();
        assert_eq!(k.cols(), 2);
        assert!((&a * &k).is_zero());
    }

    #[test]
    fn kernel_of_full_rank_is_empty() {
        let k = integer_kernel(&IntMatrix::from_i64(&[&[1, 2], &[3, 4]]));
        assert_eq!(k.cols(), 0);
    }
}
