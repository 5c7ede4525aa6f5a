//! JSON encodings. Rationals are `"num/den"` strings (plain `"n"` for
//! integers); integers are JSON numbers when they fit in `i64` and decimal
//! strings otherwise. Object keys are emitted in sorted order.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::arith::{format_rational, parse_rational, Rational};
use crate::cohomology::{tate_h0, tate_h1, CyclicModule, FiniteAbelianGroup};
use crate::cubic::{associated_jacobian, is_rational_cube, BrauerQuotient, DiagonalCubic};
use crate::curve::{ConsistencyReport, CurvePoint, WeierstrassCurve};
use crate::divisor::{ClassGroupPresentation, DualGraph, IndependenceCertificate};
use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::lattice::{Lattice, LatticeVector};
use crate::matrix::IntMatrix;
use crate::resolution::ResolutionReport;
use crate::subgroups::{AuditReport, AuditVerdict};

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

pub fn bigint(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => json!(v),
        None => json!(n.to_string()),
    }
}

pub fn bigints(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(bigint).collect())
}

pub fn rational(r: &Rational) -> Value {
    json!(format_rational(r))
}

pub fn vector(v: &LatticeVector) -> Value {
    json!(v.to_strings())
}

pub fn vectors<'a>(vs: impl IntoIterator<Item = &'a LatticeVector>) -> Value {
    Value::Array(vs.into_iter().map(vector).collect())
}

/// Rows of the matrix.
pub fn matrix(m: &IntMatrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| bigints(r)).collect())
}

pub fn group(g: &FiniteAbelianGroup) -> Value {
    bigints(g.invariant_factors())
}

pub fn lattice(l: &Lattice) -> Value {
    let basis: Vec<Value> = l.integer_basis().columns().iter().map(|c| bigints(c)).collect();
    json!({
        "dim": l.dim(),
        "den": bigint(l.denominator()),
        "basis": basis,
    })
}

pub fn fan(f: &Fan) -> Value {
    json!({
        "lattice": lattice(f.lattice()),
        "rays": vectors(f.rays()),
        "max_cones": f.max_cones(),
    })
}

pub fn resolution_report(r: &ResolutionReport) -> Value {
    let pick = |f: &Fan, idx: &[usize]| vectors(idx.iter().map(|&i| &f.rays()[i]));
    json!({
        "p": r.p,
        "weights": r.weights,
        "quotient_lattice": lattice(&r.quotient_lattice),
        "original_rays": vectors(r.original_cone.rays()),
        "quotient_fan": fan(&r.quotient_fan),
        "exceptional_indices_quotient": r.exceptional_rays_quotient,
        "exceptional_rays_quotient": pick(&r.quotient_fan, &r.exceptional_rays_quotient),
        "lifted_fan": fan(&r.lifted_fan),
        "lifted_exceptional_rays": pick(&r.lifted_fan, &r.exceptional_rays_quotient),
        "final_cover_fan": fan(&r.final_cover_fan),
        "exceptional_indices_cover": r.exceptional_rays_cover,
        "exceptional_rays_cover": pick(&r.final_cover_fan, &r.exceptional_rays_cover),
        "quotient_smooth": r.quotient_fan.is_smooth(),
        "cover_smooth": r.final_cover_fan.is_smooth(),
    })
}

pub fn class_group(c: &ClassGroupPresentation) -> Value {
    json!({
        "n_rays": c.n_rays,
        "relation_matrix": matrix(&c.relation_matrix),
        "invariant_factors": bigints(&c.invariant_factors),
        "free_rank": c.free_rank,
        "torsion": bigints(&c.torsion),
    })
}

pub fn independence(independent: bool, c: &IndependenceCertificate) -> Value {
    json!({
        "independent": independent,
        "relation_rank": c.relation_rank,
        "augmented_rank": c.augmented_rank,
        "augmented_invariant_factors": bigints(&c.augmented_invariant_factors),
        "exceptional_rank": c.exceptional_rank,
    })
}

pub fn dual_graph(g: &DualGraph) -> Value {
    let edges: Vec<[usize; 2]> = g.edges.iter().map(|&(a, b)| [a, b]).collect();
    json!({
        "vertices": g.vertices,
        "edges": edges,
        "components": g.components,
        "is_path": g.is_path(),
    })
}

/// `{"relations": [...], "action": [...], "p": p}`; each entry of
/// `relations` is one relation vector.
pub fn module(m: &CyclicModule) -> Value {
    let rels: Vec<Value> = m.relations().columns().iter().map(|c| bigints(c)).collect();
    json!({
        "relations": rels,
        "action": matrix(m.action()),
        "p": m.p(),
    })
}

pub fn tate(m: &CyclicModule) -> Value {
    let h0 = tate_h0(m);
    let h1 = tate_h1(m);
    json!({
        "p": m.p(),
        "module_structure": bigints(&m.structure()),
        "h0": group(&h0),
        "h1": group(&h1),
        "h0_order": bigint(&h0.order()),
        "h1_order": bigint(&h1.order()),
    })
}

pub fn audit(a: &AuditReport) -> Value {
    let subgroups: Vec<Value> = a
        .subgroups
        .iter()
        .map(|(f, case)| {
            let mut o = Map::new();
            o.insert("phi".into(), json!(f.phi));
            o.insert("c".into(), json!(f.c));
            o.insert("tag".into(), json!(case.tag.as_str()));
            o.insert("locus".into(), json!(case.locus.as_str()));
            o.insert("cardinality".into(), json!(case.cardinality as u64));
            if let Some(els) = &case.elements {
                o.insert("elements".into(), json!(els));
            }
            if let Some(w) = &case.witness {
                o.insert("witness".into(), json!(w));
            }
            Value::Object(o)
        })
        .collect();
    json!({
        "p": a.p,
        "b": a.b,
        "torsion_order": bigint(&a.torsion_order),
        "torsion_invariants": group(&a.torsion_group),
        "cases": {
            "kernel_T": a.counts.kernel_t as u64,
            "split": a.counts.split as u64,
            "nonsplit": a.counts.nonsplit as u64,
        },
        "total_subgroups": a.counts.total() as u64,
        "all_ramified": a.all_ramified,
        "certified": a.verdict == AuditVerdict::TorsionFreeCertified,
        "subgroups": subgroups,
    })
}

pub fn curve_point(p: &CurvePoint) -> Value {
    match *p {
        CurvePoint::Infinity => json!("O"),
        CurvePoint::Affine { x, y } => json!([x, y]),
    }
}

pub fn oracle(curve: &WeierstrassCurve, r: &ConsistencyReport) -> Value {
    let fixed: Vec<Value> = curve
        .fixed_points_of_zeta()
        .iter()
        .map(|(p, q)| json!([curve_point(p), curve_point(q)]))
        .collect();
    json!({
        "q": curve.q(),
        "a4": curve.a4(),
        "a6": curve.a6(),
        "order": r.order,
        "within_hasse": r.within_hasse,
        "three_torsion": r.three_torsion,
        "fixed_points": fixed,
        "rational_fixed": r.rational_fixed,
        "geometric_prediction": r.geometric_prediction,
        "orbits": r.orbits,
        "free_orbits": r.free_orbits,
        "scan_agrees": r.scan_agrees,
        "consistent": r.consistent,
    })
}

pub fn brauer(x: &DiagonalCubic) -> Result<Value> {
    let four_abc = x.four_abc();
    let is_cube = is_rational_cube(&four_abc)?;
    let q = if is_cube {
        BrauerQuotient::ZMod2
    } else {
        BrauerQuotient::Trivial
    };
    let j = associated_jacobian(x);
    let [a, b, c] = x.coefficients();
    Ok(json!({
        "a": rational(a),
        "b": rational(b),
        "c": rational(c),
        "four_abc": rational(&four_abc),
        "is_cube": is_cube,
        "brauer_quotient": q.as_str(),
        "jacobian": j.to_string(),
        "jacobian_a4": rational(&j.a4),
        "jacobian_a6": rational(&j.a6),
    }))
}

pub fn parse_bigint(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| bad(format!("{n} is not an integer"))),
        Value::String(s) => s
            .trim()
            .parse()
            .map_err(|_| bad(format!("{s:?} is not an integer"))),
        other => Err(bad(format!("expected an integer, got {other}"))),
    }
}

pub fn parse_rational_value(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        _ => parse_bigint(v).map(Rational::from_integer),
    }
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| bad(format!("{what} must be an array")))
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| bad(format!("missing field {key:?}")))
}

fn parse_usize(v: &Value, what: &str) -> Result<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| bad(format!("{what} must be a nonnegative integer")))
}

fn parse_int_rows(v: &Value, what: &str) -> Result<Vec<Vec<BigInt>>> {
    array(v, what)?
        .iter()
        .map(|row| array(row, what)?.iter().map(parse_bigint).collect())
        .collect()
}

/// A matrix given as an array of rows.
pub fn parse_matrix(v: &Value) -> Result<IntMatrix> {
    let rows = parse_int_rows(v, "matrix")?;
    if rows.is_empty() {
        return Err(bad("matrix must have at least one row"));
    }
    IntMatrix::from_rows(&rows)
}

pub fn parse_lattice(v: &Value) -> Result<Lattice> {
    let dim = parse_usize(field(v, "dim")?, "dim")?;
    let den = parse_bigint(field(v, "den")?)?;
    let cols = parse_int_rows(field(v, "basis")?, "basis")?;
    if cols.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: cols.len(),
        });
    }
    Lattice::from_integer_basis(den, &IntMatrix::from_columns(dim, &cols)?)
}

pub fn parse_fan(v: &Value) -> Result<Fan> {
    let lattice = parse_lattice(field(v, "lattice")?)?;
    let rays = array(field(v, "rays")?, "rays")?
        .iter()
        .map(|r| {
            let coords = array(r, "ray")?
                .iter()
                .map(parse_rational_value)
                .collect::<Result<Vec<_>>>()?;
            if coords.len() != lattice.dim() {
                return Err(Error::DimensionMismatch {
                    expected: lattice.dim(),
                    got: coords.len(),
                });
            }
            Ok(LatticeVector(coords))
        })
        .collect::<Result<Vec<_>>>()?;
    let cones = array(field(v, "max_cones")?, "max_cones")?
        .iter()
        .map(|c| array(c, "cone")?.iter().map(|i| parse_usize(i, "ray index")).collect())
        .collect::<Result<Vec<Vec<usize>>>>()?;
    Fan::new(lattice, rays, cones)
}

pub fn parse_module(v: &Value) -> Result<CyclicModule> {
    let action = parse_matrix(field(v, "action")?)?;
    let p = field(v, "p")?
        .as_u64()
        .ok_or_else(|| bad("p must be a positive integer"))?;
    let rels = match v.get("relations") {
        None | Some(Value::Null) => Vec::new(),
        Some(r) => parse_int_rows(r, "relations")?,
    };
    let relations = IntMatrix::from_columns(action.rows(), &rels)?;
    CyclicModule::new(relations, action, p)
}

/// Pretty-printed with a trailing newline.
pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat_int;
    use crate::resolution::resolution_pipeline;

    #[test]
    fn big_integers_become_strings() {
        assert_eq!(bigint(&BigInt::from(-5)), json!(-5));
        let big = BigInt::from(u64::MAX) * 3;
        assert_eq!(bigint(&big), json!(big.to_string()));
        assert_eq!(parse_bigint(&bigint(&big)).unwrap(), big);
    }

    #[test]
    fn fan_round_trip() {
        let r = resolution_pipeline(3, &[1, 2]).unwrap();
        for f in [&r.quotient_fan, &r.lifted_fan, &r.final_cover_fan] {
            let v = fan(f);
            assert_eq!(&parse_fan(&v).unwrap(), f);
        }
        let v = resolution_report(&r);
        assert_eq!(v["exceptional_rays_quotient"], json!([["1/3", "2/3"], ["2/3", "1/3"]]));
        assert_eq!(v["quotient_lattice"]["den"], json!(3));
    }

    #[test]
    fn module_round_trip() {
        let m = CyclicModule::new(
            IntMatrix::from_i64(&[&[3, 0], &[0, 3]]),
            IntMatrix::from_i64(&[&[0, -1], &[1, -1]]),
            3,
        )
        .unwrap();
        let v = module(&m);
        assert_eq!(parse_module(&v).unwrap(), m);
        let t = tate(&m);
        assert_eq!(t["h0_order"], t["h1_order"]);
    }

    #[test]
    fn malformed_inputs() {
        assert!(parse_fan(&json!({"rays": []})).is_err());
        assert!(parse_module(&json!({"action": [[1]], "p": 4})).is_err());
        assert!(parse_matrix(&json!([[1, "x"]])).is_err());
        assert!(parse_rational_value(&json!(1.5)).is_err());
        assert_eq!(parse_rational_value(&json!("-6/4")).unwrap(), Rational::new((-3).into(), 2.into()));
        assert_eq!(parse_rational_value(&json!(7)).unwrap(), rat_int(7));
    }
}
