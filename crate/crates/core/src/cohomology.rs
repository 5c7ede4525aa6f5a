//! Tate cohomology of a cyclic group of prime order acting on a finitely
//! generated abelian group.
//!
//! A module is always presented as `ℤᵏ / L`, where `L` is the column span of
//! the relation matrix (a free summand simply has no relations). The
//! generator `ζ` acts through an integer matrix `Z` on `ℤᵏ` preserving `L`.
//!
//! For the cyclic group `⟨ζ⟩` of order `p`, with `Norm = 1 + ζ + … + ζ^{p−1}`:
//!
//! * `Ĥ⁰ = M^ζ / Norm(M)`
//! * `Ĥ¹ = ker(Norm) / (1 − ζ)M`
//!
//! and by periodicity `Ĥ^{2i} = Ĥ⁰`, `Ĥ^{2i+1} = Ĥ¹`.
//!
//! Divisible modules such as the points of an abelian variety over an
//! algebraically closed field have no finite presentation; for them
//! `Ĥ¹ = M/(1−ζ)M = 0` because `1 − ζ` is surjective when it has finite
//! kernel. See [`divisible_module_h1`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::require_prime;
use crate::error::{Error, Result};
use crate::lattice::{kernel_mod_p, IntegerSpan};
use crate::matrix::IntMatrix;
use crate::normal_form::{integer_kernel, smith_normal_form};

/// A finite abelian group `ℤ/d₁ × ℤ/d₂ × …` with `1 < d₁ | d₂ | …`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteAbelianGroup {
    invariant_factors: Vec<BigInt>,
}

impl FiniteAbelianGroup {
    pub fn trivial() -> Self {
        FiniteAbelianGroup {
            invariant_factors: Vec::new(),
        }
    }

    /// Normalizes any list of cyclic orders into invariant-factor form.
    pub fn from_cyclic_orders(orders: &[BigInt]) -> Result<Self> {
        if orders.iter().any(Zero::is_zero) {
            return Err(Error::InvalidArgument("cyclic factors must be finite".into()));
        }
        let n = orders.len();
        let mut diag = IntMatrix::zeros(n, n);
        for (i, d) in orders.iter().enumerate() {
            diag[(i, i)] = d.clone();
        }
        Ok(FiniteAbelianGroup {
            invariant_factors: smith_normal_form(&diag).torsion(),
        })
    }

    pub fn elementary(p: u64, rank: usize) -> Self {
        FiniteAbelianGroup {
            invariant_factors: vec![BigInt::from(p); rank],
        }
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let all: Vec<BigInt> = self
            .invariant_factors
            .iter()
            .chain(&other.invariant_factors)
            .cloned()
            .collect();
        Self::from_cyclic_orders(&all).expect("factors are nonzero")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicModule {
    relations: IntMatrix,
    action: IntMatrix,
    p: u64,
}

impl CyclicModule {
    /// `relations` is `k × m` (one relation per column), `action` is `k × k`.
    pub fn new(relations: IntMatrix, action: IntMatrix, p: u64) -> Result<Self> {
        require_prime(p)?;
        let k = action.rows();
        if !action.is_square() {
            return Err(Error::InvalidModule("action matrix must be square".into()));
        }
        if relations.rows() != k {
            return Err(Error::DimensionMismatch {
                expected: k,
                got: relations.rows(),
            });
        }
        let span = IntegerSpan::new(&relations);
        let moved = &action * &relations;
        if !moved.columns().iter().all(|c| span.contains(c)) {
            return Err(Error::InvalidModule(
                "action does not preserve the relation subgroup".into(),
            ));
        }
        let defect = action.pow(p).sub(&IntMatrix::identity(k));
        if !defect.columns().iter().all(|c| span.contains(c)) {
            return Err(Error::NotOrderP(p));
        }
        Ok(CyclicModule {
            relations,
            action,
            p,
        })
    }

    /// `ℤᵏ` with the given action and no relations.
    pub fn free(action: IntMatrix, p: u64) -> Result<Self> {
        let k = action.rows();
        Self::new(IntMatrix::zeros(k, 0), action, p)
    }

    /// The regular representation `ℤ[ℤ/p]`, `ζ` a cyclic shift.
    pub fn regular(p: u64) -> Result<Self> {
        let n = p as usize;
        let mut shift = IntMatrix::zeros(n, n);
        for i in 0..n {
            shift[((i + 1) % n, i)] = BigInt::one();
        }
        Self::free(shift, p)
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn action(&self) -> &IntMatrix {
        &self.action
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn generators(&self) -> usize {
        self.action.rows()
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.p != other.p {
            return Err(Error::InvalidModule("direct summands act with different p".into()));
        }
        Self::new(
            self.relations.direct_sum(&other.relations),
            self.action.direct_sum(&other.action),
            self.p,
        )
    }

    /// The underlying abelian group as invariant factors, zeros for free summands.
    pub fn structure(&self) -> Vec<BigInt> {
        let k = self.generators();
        let smith = smith_normal_form(&self.relations);
        let mut out: Vec<BigInt> = smith.invariant_factors().into_iter().filter(|d| !d.is_one()).collect();
        out.extend(std::iter::repeat_n(BigInt::zero(), k - smith.rank()));
        out
    }

    pub fn is_finite(&self) -> bool {
        smith_normal_form(&self.relations).rank() == self.generators()
    }

    pub fn one_minus_zeta(&self) -> IntMatrix {
        IntMatrix::identity(self.generators()).sub(&self.action)
    }

    pub fn norm(&self) -> IntMatrix {
        let k = self.generators();
        let mut acc = IntMatrix::zeros(k, k);
        let mut power = IntMatrix::identity(k);
        for _ in 0..self.p {
            acc = acc.add(&power);
            power = &power * &self.action;
        }
        acc
    }

    /// `{x ∈ ℤᵏ : f·x ∈ L}`, the preimage of `ker(f)` on the module.
    fn kernel_preimage(&self, f: &IntMatrix) -> IntegerSpan {
        let k = self.generators();
        let mut neg_rel = self.relations.clone();
        for j in 0..neg_rel.cols() {
            neg_rel.negate_col(j);
        }
        let stacked = f.hstack(&neg_rel);
        let kernel = integer_kernel(&stacked);
        let cols: Vec<Vec<BigInt>> = kernel.columns().into_iter().map(|c| c[..k].to_vec()).collect();
        IntegerSpan::new(&IntMatrix::from_columns(k, &cols).expect("consistent lengths"))
    }

    /// `ker(f) / g(M)` for endomorphisms with `g(M) ⊆ ker(f)`.
    fn subquotient(&self, f: &IntMatrix, g: &IntMatrix) -> FiniteAbelianGroup {
        let kernel = self.kernel_preimage(f);
        let denominators = g.hstack(&self.relations);
        let coords: Vec<Vec<BigInt>> = denominators
            .columns()
            .iter()
            .map(|c| kernel.coordinates(c).expect("image lies inside the kernel"))
            .collect();
        let r = kernel.rank();
        let c = IntMatrix::from_columns(r, &coords).expect("consistent lengths");
        let smith = smith_normal_form(&c);
        assert_eq!(
            smith.rank(),
            r,
            "Tate cohomology of a finite-order action must be finite"
        );
        FiniteAbelianGroup {
            invariant_factors: smith.torsion(),
        }
    }
}

/// `Ĥ⁰ = M^ζ / Norm(M)`.
pub fn tate_h0(module: &CyclicModule) -> FiniteAbelianGroup {
    module.subquotient(&module.one_minus_zeta(), &module.norm())
}

/// `Ĥ¹ = ker(Norm) / (1 − ζ)M`.
pub fn tate_h1(module: &CyclicModule) -> FiniteAbelianGroup {
    module.subquotient(&module.norm(), &module.one_minus_zeta())
}

/// `Ĥⁱ` for any integer degree, by two-periodicity.
pub fn tate_cohomology(module: &CyclicModule, degree: i64) -> FiniteAbelianGroup {
    if degree.is_even() {
        tate_h0(module)
    } else {
        tate_h1(module)
    }
}

/// `Ĥ¹` of a divisible module on which `1 − ζ` has finite kernel. It is not
/// computed: `1 − ζ` is then surjective, so the quotient vanishes.
pub fn divisible_module_h1() -> FiniteAbelianGroup {
    FiniteAbelianGroup::trivial()
}

/// `b = dim ker(1 − Z)` over `ℤ/p` and `|T| = pᵇ` for an order-`p` action
/// `Z` on `(ℤ/p)ⁿ`.
pub fn fixed_subgroup_rank(action: &IntMatrix, p: u64) -> Result<(usize, BigInt)> {
    require_prime(p)?;
    if !action.is_square() {
        return Err(Error::InvalidModule("action matrix must be square".into()));
    }
    let n = action.rows();
    let modulus = BigInt::from(p);
    let id = IntMatrix::identity(n);
    if action.pow(p).reduce_mod(&modulus) != id {
        return Err(Error::NotOrderP(p));
    }
    if action.reduce_mod(&modulus) == id {
        return Err(Error::NotOrderP(p));
    }
    let b = kernel_mod_p(&id.sub(action), p)?.len();
    Ok((b, modulus.pow(b as u32)))
}

/// `(ℤ/p)^{b+1}`: an extension of a group of order `pᵇ` by `ℤ/p`, both
/// elementary abelian here.
pub fn pic_torsion_order(p: u64, b: usize) -> Result<FiniteAbelianGroup> {
    require_prime(p)?;
    Ok(FiniteAbelianGroup::elementary(p, b + 1))
}
