//! Index-`p` subgroups of `T × ℤ/p ≅ (ℤ/p)ᵇ × ℤ/p` and the ramification of
//! the corresponding degree-`p` coverings.
//!
//! Every index-`p` subgroup is the kernel of a nonzero functional
//! `(x, y) ↦ φ(x) + c·y`, unique up to a nonzero scalar. The three cases:
//!
//! * `φ = 0`: the subgroup is `T` itself; the covering is ramified over all
//!   of `T`.
//! * `φ ≠ 0, c = 0`: the subgroup surjects onto `ℤ/p` with a splitting;
//!   ramified over `T ∖ ker φ`.
//! * `φ ≠ 0, c ≠ 0`: non-split; ramified over `ker φ`.

use num_bigint::BigInt;

use crate::arith::{mod_inverse, require_prime};
use crate::cohomology::{pic_torsion_order, FiniteAbelianGroup};
use crate::error::{Error, Result};

/// Explicit ramification element lists are produced up to this size of `T`.
pub const EXPLICIT_LIST_LIMIT: u128 = 729;

/// Largest group `(ℤ/p)^{b+1}` the enumerator accepts.
pub const ENUMERATION_LIMIT: u128 = 10_000_000;

/// A nonzero functional `(φ, c)` normalized so that the first nonzero entry
/// of `(φ | c)` is one.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubgroupFunctional {
    pub phi: Vec<u64>,
    pub c: u64,
}

impl SubgroupFunctional {
    /// Normalizes an arbitrary nonzero functional.
    pub fn new(phi: Vec<u64>, c: u64, p: u64) -> Result<Self> {
        require_prime(p)?;
        let mut f = SubgroupFunctional {
            phi: phi.into_iter().map(|x| x % p).collect(),
            c: c % p,
        };
        let lead = f
            .phi
            .iter()
            .copied()
            .chain(std::iter::once(f.c))
            .find(|&x| x != 0)
            .ok_or_else(|| Error::InvalidFunctional("functional is zero".into()))?;
        let inv = mod_inverse(lead as i128, p as i128).expect("p is prime") as u64;
        f.phi.iter_mut().for_each(|x| *x = *x * inv % p);
        f.c = f.c * inv % p;
        Ok(f)
    }

    pub fn is_normalized(&self) -> bool {
        self.phi
            .iter()
            .copied()
            .chain(std::iter::once(self.c))
            .find(|&x| x != 0)
            == Some(1)
    }

    pub fn phi_is_zero(&self) -> bool {
        self.phi.iter().all(|&x| x == 0)
    }

    pub fn phi_at(&self, t: &[u64], p: u64) -> u64 {
        self.phi.iter().zip(t).map(|(a, b)| a * b % p).sum::<u64>() % p
    }

    /// Whether `(t, y)` lies in the kernel.
    pub fn annihilates(&self, t: &[u64], y: u64, p: u64) -> bool {
        (self.phi_at(t, p) + self.c * y) % p == 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GoursatTag {
    KernelT,
    Split,
    NonSplit,
}

impl GoursatTag {
    pub fn as_str(self) -> &'static str {
        match self {
            GoursatTag::KernelT => "kernel_T",
            GoursatTag::Split => "split",
            GoursatTag::NonSplit => "nonsplit",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RamificationLocus {
    AllOfT,
    ComplementOfKernel,
    KernelOfPhi,
}

impl RamificationLocus {
    pub fn as_str(self) -> &'static str {
        match self {
            RamificationLocus::AllOfT => "all_of_T",
            RamificationLocus::ComplementOfKernel => "complement_of_ker_phi",
            RamificationLocus::KernelOfPhi => "ker_phi",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoursatCase {
    pub tag: GoursatTag,
    pub locus: RamificationLocus,
    pub cardinality: u128,
    /// Elements of the locus, when `|T|` is at most [`EXPLICIT_LIST_LIMIT`].
    pub elements: Option<Vec<Vec<u64>>>,
    /// For the non-split case, the lexicographically smallest `a ∈ T` with
    /// `φ(a) ≠ 0`.
    pub witness: Option<Vec<u64>>,
}

fn checked_pow(p: u64, e: usize) -> Result<u128> {
    (p as u128)
        .checked_pow(e as u32)
        .filter(|&v| v <= ENUMERATION_LIMIT)
        .ok_or_else(|| Error::EnumerationTooLarge(format!("{p}^{e}")))
}

/// All vectors of `(ℤ/p)ᵈ` in lexicographic order.
pub(crate) fn all_vectors(p: u64, d: usize) -> impl Iterator<Item = Vec<u64>> {
    let total = (p as u128).pow(d as u32);
    (0..total).map(move |mut idx| {
        let mut v = vec![0u64; d];
        for slot in v.iter_mut().rev() {
            *slot = (idx % p as u128) as u64;
            idx /= p as u128;
        }
        v
    })
}

/// The `(p^{b+1} − 1)/(p − 1)` normalized functionals, in lexicographic order
/// of `(φ | c)`.
pub fn enumerate_index_p(p: u64, b: usize) -> Result<Vec<SubgroupFunctional>> {
    require_prime(p)?;
    checked_pow(p, b + 1)?;
    Ok(all_vectors(p, b + 1)
        .filter_map(|v| {
            let f = SubgroupFunctional {
                phi: v[..b].to_vec(),
                c: v[b],
            };
            f.is_normalized().then_some(f)
        })
        .collect())
}

/// Which Goursat case the kernel of `f` falls in, and where its covering
/// ramifies. Scalar multiples of `f` classify identically.
pub fn classify(f: &SubgroupFunctional, p: u64, b: usize) -> Result<GoursatCase> {
    require_prime(p)?;
    if f.phi.len() != b {
        return Err(Error::InvalidFunctional(format!(
            "φ has {} entries but T has rank {b}",
            f.phi.len()
        )));
    }
    let f = SubgroupFunctional::new(f.phi.clone(), f.c, p)?;
    let size_t = checked_pow(p, b)?;
    let (tag, locus, cardinality) = if f.phi_is_zero() {
        (GoursatTag::KernelT, RamificationLocus::AllOfT, size_t)
    } else if f.c == 0 {
        (
            GoursatTag::Split,
            RamificationLocus::ComplementOfKernel,
            size_t - size_t / p as u128,
        )
    } else {
        (GoursatTag::NonSplit, RamificationLocus::KernelOfPhi, size_t / p as u128)
    };

    let in_locus = |t: &[u64]| match locus {
        RamificationLocus::AllOfT => true,
        RamificationLocus::ComplementOfKernel => f.phi_at(t, p) != 0,
        RamificationLocus::KernelOfPhi => f.phi_at(t, p) == 0,
    };
    let elements = (size_t <= EXPLICIT_LIST_LIMIT).then(|| {
        let els: Vec<Vec<u64>> = all_vectors(p, b).filter(|t| in_locus(t)).collect();
        debug_assert_eq!(els.len() as u128, cardinality);
        els
    });
    let witness = (tag == GoursatTag::NonSplit)
        .then(|| all_vectors(p, b).find(|t| f.phi_at(t, p) != 0))
        .flatten();
    Ok(GoursatCase {
        tag,
        locus,
        cardinality,
        elements,
        witness,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CaseCounts {
    pub kernel_t: u128,
    pub split: u128,
    pub nonsplit: u128,
}

impl CaseCounts {
    pub fn total(&self) -> u128 {
        self.kernel_t + self.split + self.nonsplit
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AuditVerdict {
    TorsionFreeCertified,
    NotCertified,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditReport {
    pub p: u64,
    pub b: usize,
    pub torsion_group: FiniteAbelianGroup,
    pub torsion_order: BigInt,
    pub subgroups: Vec<(SubgroupFunctional, GoursatCase)>,
    pub counts: CaseCounts,
    pub all_ramified: bool,
    pub verdict: AuditVerdict,
}

/// Classifies every index-`p` subgroup of `T × ℤ/p` and certifies that each
/// corresponding covering is ramified somewhere.
pub fn torsion_audit(p: u64, b: usize) -> Result<AuditReport> {
    let torsion_group = pic_torsion_order(p, b)?;
    let mut counts = CaseCounts::default();
    let mut subgroups = Vec::new();
    for f in enumerate_index_p(p, b)? {
        let case = classify(&f, p, b)?;
        match case.tag {
            GoursatTag::KernelT => counts.kernel_t += 1,
            GoursatTag::Split => counts.split += 1,
            GoursatTag::NonSplit => counts.nonsplit += 1,
        }
        subgroups.push((f, case));
    }
    let all_ramified = subgroups.iter().all(|(_, c)| c.cardinality >= 1);
    Ok(AuditReport {
        p,
        b,
        torsion_order: torsion_group.order(),
        torsion_group,
        subgroups,
        counts,
        all_ramified,
        verdict: if all_ramified {
            AuditVerdict::TorsionFreeCertified
        } else {
            AuditVerdict::NotCertified
        },
    })
}
