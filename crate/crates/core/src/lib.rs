//! Exact computations around cyclic quotient singularities `1/p(a₁,…,aₙ)`:
//! toric resolution, exceptional divisors, Tate cohomology of `ℤ/p`-modules,
//! index-`p` subgroup audits, a finite-field fixed-point oracle and the
//! diagonal cubic Brauer quotient.

pub mod arith;
pub mod cohomology;
pub mod cubic;
pub mod curve;
pub mod divisor;
pub mod error;
pub mod factor;
pub mod fan;
pub mod json;
pub mod lattice;
pub mod matrix;
pub mod normal_form;
pub mod resolution;
pub mod subgroups;

pub use arith::{format_rational, is_prime, parse_rational, Rational};
pub use cohomology::{
    divisible_module_h1, fixed_subgroup_rank, pic_torsion_order, tate_cohomology, tate_h0, tate_h1,
    CyclicModule, FiniteAbelianGroup,
};
pub use cubic::{
    associated_jacobian, brauer_quotient, is_rational_cube, BrauerQuotient, DiagonalCubic,
    RationalWeierstrass,
};
pub use curve::{
    compare_with_prediction, within_hasse_bound, ConsistencyReport, CurvePoint, SurfacePoint, WeierstrassCurve,
};
pub use divisor::{
    class_group, dual_graph, exceptional_independence, retraction_multiplier, star_is_complete,
    ClassGroupPresentation, DualGraph, IndependenceCertificate,
};
pub use error::{Error, Result};
pub use fan::{Cone, Fan};
pub use lattice::{lattice_index, primitive_in_lattice, IntegerSpan, Lattice, LatticeVector};
pub use matrix::IntMatrix;
pub use normal_form::{hermite_normal_form, smith_normal_form, HermiteForm, SmithForm};
pub use resolution::{
    hirzebruch_jung, is_smooth_cone, lift_fan, quotient_lattice, resolution_pipeline, resolve_cone,
    resolve_fan, ResolutionReport,
};
pub use subgroups::{
    classify, enumerate_index_p, torsion_audit, AuditReport, AuditVerdict, GoursatCase, GoursatTag,
    SubgroupFunctional,
};
