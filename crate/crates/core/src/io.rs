//! JSON input files and report serialization.
//!
//! Exact rationals always serialize as `"p/q"` (or `"p"`) strings; float-path
//! values serialize as JSON numbers.

use serde_json::{json, Map, Value as Json};

use crate::error::{Error, Result};
use crate::faces::{Face, FaceCensus};
use crate::isometry::{AdjointTransfer, IsometryReport, ScalarIdentityReport};
use crate::levelvec::{
    DirectionalVerdict, LevelCertificate, LevelNumberReport, PreservationReport,
};
use crate::linalg::{Matrix, Vector};
use crate::oracle::{LineMinimum, SampleCheckReport};
use crate::orthogonality::OrthogonalityVerdict;
use crate::rational::{format_rational, parse_rational, Rational, Value};
use crate::space::{BallFamily, Exponent, LpSpace, Operator, Space};
use crate::support::SupportSet;

fn field<'a>(obj: &'a Json, key: &str) -> Result<&'a Json> {
    obj.get(key)
        .ok_or_else(|| Error::Parse(format!("missing field {key:?}")))
}

fn json_rational(v: &Json) -> Result<Rational> {
    match v {
        Json::String(s) => parse_rational(s),
        Json::Number(n) => parse_rational(&n.to_string()),
        other => Err(Error::Parse(format!("expected a rational, found {other}"))),
    }
}

fn json_usize(v: &Json, key: &str) -> Result<usize> {
    v.as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| Error::Parse(format!("{key:?} must be a nonnegative integer")))
}

pub fn parse_vector_json(v: &Json) -> Result<Vector> {
    let items = v
        .as_array()
        .ok_or_else(|| Error::Parse(format!("expected an array of rationals, found {v}")))?;
    Ok(Vector::new(
        items.iter().map(json_rational).collect::<Result<_>>()?,
    ))
}

/// Parses a space file; `tolerance` applies to ℓp spaces on the float path.
pub fn parse_space(v: &Json, tolerance: f64) -> Result<Space> {
    let kind = field(v, "kind")?
        .as_str()
        .ok_or_else(|| Error::Parse("\"kind\" must be a string".into()))?;
    let dim = json_usize(field(v, "dim")?, "dim")?;
    match kind {
        "lp" => {
            let p = match field(v, "p")? {
                Json::String(s) if matches!(s.trim(), "inf" | "infinity" | "∞") => {
                    Exponent::Infinity
                }
                other => Exponent::Finite(json_rational(other)?),
            };
            match Space::lp(dim, p)? {
                Space::Lp(s) => Ok(Space::Lp(s.with_tolerance(tolerance))),
                s => Ok(s),
            }
        }
        "polyhedral" => {
            let vertices = field(v, "ball_vertices")?
                .as_array()
                .ok_or_else(|| Error::Parse("\"ball_vertices\" must be an array".into()))?
                .iter()
                .map(parse_vector_json)
                .collect::<Result<Vec<_>>>()?;
            for vertex in &vertices {
                crate::error::check_dim(dim, vertex.dim())?;
            }
            Space::polyhedral(vertices)
        }
        other => Err(Error::Parse(format!("unknown space kind {other:?}"))),
    }
}

pub fn space_to_json(space: &Space) -> Json {
    match space {
        Space::Polyhedral(ball) => match ball.family() {
            BallFamily::CrossPolytope => json!({"kind": "lp", "p": "1", "dim": ball.dim()}),
            BallFamily::Cube => json!({"kind": "lp", "p": "inf", "dim": ball.dim()}),
            BallFamily::General => json!({
                "kind": "polyhedral",
                "dim": ball.dim(),
                "ball_vertices": ball.vertices().iter().map(Vector::to_strings).collect::<Vec<_>>(),
            }),
        },
        Space::Lp(s) => lp_to_json(s),
    }
}

fn lp_to_json(s: &LpSpace) -> Json {
    json!({"kind": "lp", "p": format_rational(s.p()), "dim": s.dim()})
}

/// Parses an operator file `{"matrix": [[...]]}` acting on `space`; an
/// optional `"codomain"` space object makes it a map into another space.
pub fn parse_operator(v: &Json, space: &Space, tolerance: f64) -> Result<Operator> {
    let rows = field(v, "matrix")?
        .as_array()
        .ok_or_else(|| Error::Parse("\"matrix\" must be an array of rows".into()))?
        .iter()
        .map(|r| parse_vector_json(r).map(Vector::into_coords))
        .collect::<Result<Vec<_>>>()?;
    let matrix = Matrix::from_rows(rows)?;
    let codomain = match v.get("codomain") {
        Some(c) => parse_space(c, tolerance)?,
        None => space.clone(),
    };
    Operator::new(matrix, space.clone(), codomain)
}

pub fn operator_to_json(t: &Operator) -> Json {
    let mut obj = Map::new();
    obj.insert("matrix".into(), json!(t.matrix().to_strings()));
    if t.domain() != t.codomain() {
        obj.insert("codomain".into(), space_to_json(t.codomain()));
    }
    Json::Object(obj)
}

/// Candidate lists: a bare array of vectors or `{"candidates": [...]}`.
pub fn parse_candidates(v: &Json) -> Result<Vec<Vector>> {
    let list = match v {
        Json::Object(_) => field(v, "candidates")?,
        other => other,
    };
    list.as_array()
        .ok_or_else(|| Error::Parse("candidates must be an array of vectors".into()))?
        .iter()
        .map(parse_vector_json)
        .collect()
}

pub fn vector_json(v: &Vector) -> Json {
    json!(v.to_strings())
}

pub fn rational_json(r: &Rational) -> Json {
    Json::String(format_rational(r))
}

pub fn value_json(v: &Value) -> Json {
    serde_json::to_value(v).expect("values serialize")
}

fn opt<T>(v: Option<T>, f: impl FnOnce(T) -> Json) -> Json {
    v.map(f).unwrap_or(Json::Null)
}

pub fn orthogonality_json(v: &OrthogonalityVerdict) -> Json {
    let mut obj = Map::new();
    obj.insert("orthogonal".into(), json!(v.orthogonal));
    obj.insert("witness".into(), opt(v.witness.as_ref(), |f| f.to_json()));
    obj.insert("method".into(), json!(v.method.as_str()));
    if let Some(m) = v.margin {
        obj.insert("margin".into(), json!(m));
    }
    Json::Object(obj)
}

pub fn support_json(set: &SupportSet) -> Json {
    json!({
        "x": vector_json(set.base_point()),
        "smooth": set.is_smooth(),
        "vertices": set.functionals().iter().map(|f| f.to_json()).collect::<Vec<_>>(),
    })
}

pub fn census_json(c: &FaceCensus) -> Json {
    json!({"counts": c.counts, "total": c.total})
}

pub fn face_json(face: &Face, space: &Space) -> Json {
    let ball = space.polytope().expect("faces live on polyhedral balls");
    json!({
        "dim": face.dim,
        "vertices": face.vertex_points(ball).into_iter().map(vector_json).collect::<Vec<_>>(),
        "supporting_functionals": face.supporting_functionals(ball).into_iter().map(vector_json).collect::<Vec<_>>(),
    })
}

pub fn certificate_json(c: &LevelCertificate) -> Json {
    json!({
        "level_vector": true,
        "x": vector_json(&c.x),
        "level_number": value_json(&c.level_number),
        "f": opt(c.witness.as_ref(), |w| w.f.to_json()),
        "g": opt(c.witness.as_ref(), |w| w.g.to_json()),
    })
}

pub fn level_test_json(c: Option<&LevelCertificate>) -> Json {
    match c {
        Some(c) => certificate_json(c),
        None => json!({"level_vector": false}),
    }
}

pub fn directional_json(v: &DirectionalVerdict) -> Json {
    json!({"holds": v.holds, "g": opt(v.g.as_ref(), |g| g.to_json())})
}

pub fn preservation_json(r: &PreservationReport) -> Json {
    json!({
        "x": vector_json(&r.x),
        "holds": r.holds,
        "failing_functional": opt(r.failing_functional.as_ref(), |f| f.to_json()),
        "counterexample": opt(r.counterexample.as_ref(), |c| json!({
            "y": vector_json(&c.y),
            "margin": value_json(&c.margin),
        })),
    })
}

pub fn level_numbers_json(r: &LevelNumberReport) -> Json {
    json!({
        "values": r.values.iter().map(rational_json).collect::<Vec<_>>(),
        "per_face": r.per_face.iter().map(|f| json!({
            "dim": f.face.dim,
            "vertices": f.vertices.iter().map(vector_json).collect::<Vec<_>>(),
            "level_numbers": f.level_numbers.iter().map(rational_json).collect::<Vec<_>>(),
            "tested": f.tested.iter().map(|p| json!({
                "point": vector_json(&p.point),
                "level_number": opt(p.level_number.as_ref(), rational_json),
            })).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "bound": opt(r.bound.as_ref(), rational_json),
        "under_approximation": r.under_approximation,
        "samples_per_face": r.samples_per_face,
    })
}

pub fn isometry_json(r: &IsometryReport) -> Json {
    json!({
        "verdict": r.verdict.as_str(),
        "scale": opt(r.scale.as_ref(), value_json),
        "witness": opt(r.witness.as_ref(), |(x, y)| json!({"x": vector_json(x), "y": vector_json(y)})),
        "checked_points": r.checked_points.iter().map(vector_json).collect::<Vec<_>>(),
    })
}

pub fn scalar_identity_json(r: &ScalarIdentityReport) -> Json {
    json!({
        "verdict": if r.certified.is_some() { "scalar_identity" } else { "not_certified" },
        "lambda": opt(r.certified.as_ref(), rational_json),
        "conditions": {
            "i": r.conditions[0],
            "ii": r.conditions[1],
            "iii": r.conditions[2],
            "iv": r.conditions[3],
        },
        "failed": r.failed(),
        "linearly_independent": r.linearly_independent,
        "eigenvalues": r.eigenvalues.iter().map(|e| opt(e.as_ref(), rational_json)).collect::<Vec<_>>(),
    })
}

pub fn adjoint_transfer_json(r: &AdjointTransfer) -> Json {
    json!({
        "x": vector_json(&r.x),
        "psi": r.psi.to_json(),
        "level_number": value_json(&r.level_number),
        "adjoint_level_number": value_json(&r.adjoint_level_number),
        "adjoint_certificate": certificate_json(&r.adjoint_certificate),
        "dual_directional": r.dual_directional,
    })
}

pub fn line_minimum_json(m: &LineMinimum) -> Json {
    json!({"lambda": value_json(&m.lambda), "value": value_json(&m.value)})
}

pub fn sample_check_json(r: &SampleCheckReport) -> Json {
    json!({
        "x": vector_json(&r.x),
        "samples": r.samples,
        "violation_count": r.violations.len(),
        "violations": r.violations.iter().map(vector_json).collect::<Vec<_>>(),
    })
}
