//! Divisor class groups of toric charts and the combinatorics of their
//! exceptional divisors.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::One;

use crate::arith::mod_inverse;
use crate::error::{Error, Result};
use crate::fan::{ray_coordinate_matrix, Fan};
use crate::matrix::IntMatrix;
use crate::normal_form::smith_normal_form;

/// `Cl = ℤ^rays / image(M)`, where row `i` of the relation matrix pairs the
/// `i`-th dual basis vector with every ray.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassGroupPresentation {
    pub n_rays: usize,
    pub relation_matrix: IntMatrix,
    pub invariant_factors: Vec<BigInt>,
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

/// The dual basis is the one dual to the lattice's canonical Hermite basis,
/// so the pairing `⟨mᵢ, v⟩` is the `i`-th lattice coordinate of `v`.
pub fn class_group(fan: &Fan) -> Result<ClassGroupPresentation> {
    let relation_matrix = ray_coordinate_matrix(fan.lattice(), fan.rays());
    let smith = smith_normal_form(&relation_matrix);
    let rank = smith.rank();
    if rank < fan.dim() {
        return Err(Error::RaysDoNotSpan { rank, dim: fan.dim() });
    }
    Ok(ClassGroupPresentation {
        n_rays: fan.rays().len(),
        invariant_factors: smith.invariant_factors(),
        free_rank: fan.rays().len() - rank,
        torsion: smith.torsion(),
        relation_matrix,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndependenceCertificate {
    pub relation_rank: usize,
    /// Rank after appending the exceptional unit vectors as extra rows.
    pub augmented_rank: usize,
    pub augmented_invariant_factors: Vec<BigInt>,
    /// Rank of the subgroup of `Cl` generated by the exceptional classes.
    pub exceptional_rank: usize,
}

/// Whether the classes of the given rays generate a free subgroup of `Cl` of
/// full rank. They do iff appending their unit vectors to the relation rows
/// raises the rank by exactly the number of rays.
///
/// The unit rows clear their columns, so the augmented matrix is equivalent
/// to `I ⊕ M'` with `M'` the relation matrix minus the exceptional columns.
pub fn exceptional_independence(
    fan: &Fan,
    exceptional: &[usize],
) -> Result<(bool, IndependenceCertificate)> {
    let cl = class_group(fan)?;
    let n = cl.n_rays;
    if let Some(&i) = exceptional.iter().find(|&&i| i >= n) {
        return Err(Error::IndexOutOfRange(i));
    }
    let distinct: BTreeSet<usize> = exceptional.iter().copied().collect();
    let rest: Vec<Vec<BigInt>> = cl
        .relation_matrix
        .columns()
        .into_iter()
        .enumerate()
        .filter(|(j, _)| !distinct.contains(j))
        .map(|(_, c)| c)
        .collect();
    let reduced = IntMatrix::from_columns(cl.relation_matrix.rows(), &rest)?;
    let smith = smith_normal_form(&reduced);
    let mut augmented_invariant_factors = vec![BigInt::one(); distinct.len()];
    augmented_invariant_factors.extend(smith.invariant_factors());

    let relation_rank = cl.invariant_factors.len();
    let augmented_rank = augmented_invariant_factors.len();
    let exceptional_rank = augmented_rank - relation_rank;
    Ok((
        distinct.len() == exceptional.len() && exceptional_rank == exceptional.len(),
        IndependenceCertificate {
            relation_rank,
            augmented_rank,
            augmented_invariant_factors,
            exceptional_rank,
        },
    ))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualGraph {
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
    pub components: usize,
}

impl DualGraph {
    /// True iff the graph is a simple path through all vertices.
    pub fn is_path(&self) -> bool {
        let v = self.vertices.len();
        if v == 0 {
            return true;
        }
        let mut degree: BTreeMap<usize, usize> = BTreeMap::new();
        for &(a, b) in &self.edges {
            *degree.entry(a).or_default() += 1;
            *degree.entry(b).or_default() += 1;
        }
        self.components == 1 && self.edges.len() == v - 1 && degree.values().all(|&d| d <= 2)
    }
}

/// Vertices are the exceptional rays; two are joined when they lie in a
/// common maximal cone.
pub fn dual_graph(fan: &Fan, exceptional: &[usize]) -> Result<DualGraph> {
    let mut vertices: Vec<usize> = exceptional.to_vec();
    vertices.sort_unstable();
    vertices.dedup();
    if let Some(&i) = vertices.iter().find(|&&i| i >= fan.rays().len()) {
        return Err(Error::IndexOutOfRange(i));
    }
    let mut edges = BTreeSet::new();
    for cone in fan.max_cones() {
        let members: Vec<usize> = cone.iter().copied().filter(|i| vertices.contains(i)).collect();
        for (k, &a) in members.iter().enumerate() {
            for &b in &members[k + 1..] {
                edges.insert((a.min(b), a.max(b)));
            }
        }
    }
    let edges: Vec<(usize, usize)> = edges.into_iter().collect();

    let mut parent: BTreeMap<usize, usize> = vertices.iter().map(|&v| (v, v)).collect();
    fn find(parent: &mut BTreeMap<usize, usize>, x: usize) -> usize {
        let p = parent[&x];
        if p == x {
            return x;
        }
        let root = find(parent, p);
        parent.insert(x, root);
        root
    }
    for &(a, b) in &edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent.insert(ra, rb);
        }
    }
    let components = vertices
        .iter()
        .map(|&v| find(&mut parent, v))
        .collect::<BTreeSet<_>>()
        .len();
    Ok(DualGraph {
        vertices,
        edges,
        components,
    })
}

/// Whether the orbit closure of `ray` is complete.
///
/// The star of the ray consists of the maximal cones containing it, with the
/// ray removed. It is complete iff it is nonempty, ridge-connected, and every
/// codimension-one face lies in exactly two of its cones.
pub fn star_is_complete(fan: &Fan, ray: usize) -> Result<bool> {
    if ray >= fan.rays().len() {
        return Err(Error::IndexOutOfRange(ray));
    }
    let star: Vec<Vec<usize>> = fan
        .max_cones()
        .iter()
        .filter(|c| c.contains(&ray) && c.len() == fan.dim())
        .map(|c| c.iter().copied().filter(|&i| i != ray).collect())
        .collect();
    if star.is_empty() {
        return Ok(false);
    }
    if fan.dim() == 1 {
        return Ok(true);
    }

    let mut ridges: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for (k, cone) in star.iter().enumerate() {
        for skip in 0..cone.len() {
            let ridge: Vec<usize> = cone
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != skip)
                .map(|(_, &i)| i)
                .collect();
            ridges.entry(ridge).or_default().push(k);
        }
    }
    if ridges.values().any(|owners| owners.len() != 2) {
        return Ok(false);
    }

    let mut reached = vec![false; star.len()];
    let mut stack = vec![0];
    reached[0] = true;
    while let Some(k) = stack.pop() {
        for owners in ridges.values().filter(|o| o.contains(&k)) {
            for &other in owners {
                if !reached[other] {
                    reached[other] = true;
                    stack.push(other);
                }
            }
        }
    }
    Ok(reached.iter().all(|&r| r))
}

/// `m` in `1..n` with `t·m ≡ 1 (mod n)`.
pub fn retraction_multiplier(t: u64, n: u64) -> Result<u64> {
    if n < 2 {
        return Err(Error::InvalidArgument("modulus must be at least 2".into()));
    }
    mod_inverse(t as i128, n as i128)
        .map(|m| m as u64)
        .ok_or_else(|| Error::NotCoprime(t.to_string(), n.to_string()))
}
