//! JSON encodings of matrices, regions and reports.
//!
//! Scalars are `[re, im]` pairs of fraction strings (`"3"`, `"-7/2"`).
//! Every top-level document carries `"schema": "spectral-chain/1"`.

use serde::{Deserialize, Serialize, Serializer};
use serde_json::{json, Value};

use crate::chain::{DrazinData, PointClassification};
use crate::error::{Error, Result};
use crate::linalg::ExactMatrix;
use crate::region::{Hole, HullReport, PlaneSet, Primitive, RegionDifference, SpectralRegion};
use crate::scalar::{format_rational, parse_rational, ExactScalar};

pub const SCHEMA: &str = "spectral-chain/1";

pub fn ser_scalar<S: Serializer>(z: &ExactScalar, s: S) -> std::result::Result<S::Ok, S::Error> {
    z.to_pair().serialize(s)
}

#[derive(Debug, Serialize, Deserialize)]
struct MatrixJson {
    rows: usize,
    cols: usize,
    entries: Vec<[String; 2]>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
struct PrimitiveJson {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    center: Option<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    radius: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    a: Option<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    b: Option<[String; 2]>,
}

#[derive(Debug, Serialize, Deserialize)]
struct RegionJson {
    primitives: Vec<PrimitiveJson>,
}

fn scalar_from(pair: &[String; 2]) -> Result<ExactScalar> {
    ExactScalar::from_pair(&pair[0], &pair[1])
}

pub fn scalar_value(z: &ExactScalar) -> Value {
    json!(z.to_pair())
}

pub fn matrix_from_value(v: Value) -> Result<ExactMatrix> {
    let raw: MatrixJson = serde_json::from_value(v)?;
    let entries = raw.entries.iter().map(scalar_from).collect::<Result<Vec<_>>>()?;
    ExactMatrix::new(raw.rows, raw.cols, entries)
}

pub fn matrix_from_json(text: &str) -> Result<ExactMatrix> {
    matrix_from_value(serde_json::from_str(text)?)
}

pub fn matrix_value(m: &ExactMatrix) -> Value {
    json!({
        "rows": m.rows(),
        "cols": m.cols(),
        "entries": m.entries().iter().map(ExactScalar::to_pair).collect::<Vec<_>>(),
    })
}

fn primitive_from(p: &PrimitiveJson) -> Result<Primitive> {
    let need = |field: &Option<[String; 2]>, name: &str| {
        field.as_ref().ok_or_else(|| Error::Parse(format!("{} primitive needs \"{name}\"", p.kind))).and_then(scalar_from)
    };
    let radius = || {
        p.radius
            .as_deref()
            .ok_or_else(|| Error::Parse(format!("{} primitive needs \"radius\"", p.kind)))
            .and_then(parse_rational)
    };
    match p.kind.as_str() {
        "point" => Ok(Primitive::Point(need(&p.center, "center")?)),
        "segment" => Primitive::segment(need(&p.a, "a")?, need(&p.b, "b")?),
        "circle" => Primitive::circle(need(&p.center, "center")?, radius()?),
        "disk" => Primitive::disk(need(&p.center, "center")?, radius()?),
        other => Err(Error::Parse(format!("unknown primitive kind {other:?}"))),
    }
}

fn primitive_json(p: &Primitive) -> PrimitiveJson {
    let kind = p.kind_name().to_string();
    match p {
        Primitive::Point(z) => PrimitiveJson { kind, center: Some(z.to_pair()), ..Default::default() },
        Primitive::Segment(a, b) => {
            PrimitiveJson { kind, a: Some(a.to_pair()), b: Some(b.to_pair()), ..Default::default() }
        }
        Primitive::Circle { center, radius } | Primitive::Disk { center, radius } => PrimitiveJson {
            kind,
            center: Some(center.to_pair()),
            radius: Some(format_rational(radius)),
            ..Default::default()
        },
    }
}

pub fn region_from_value(v: Value) -> Result<SpectralRegion> {
    let raw: RegionJson = serde_json::from_value(v)?;
    let ps = raw.primitives.iter().map(primitive_from).collect::<Result<Vec<_>>>()?;
    SpectralRegion::canonicalize(ps)
}

pub fn region_from_json(text: &str) -> Result<SpectralRegion> {
    region_from_value(serde_json::from_str(text)?)
}

pub fn region_value(r: &SpectralRegion) -> Value {
    let ps: Vec<PrimitiveJson> = r.primitives().iter().map(primitive_json).collect();
    json!({ "primitives": ps })
}

pub fn open_disc_value(center: &ExactScalar, radius: &num_rational::BigRational) -> Value {
    json!({ "kind": "disk", "center": center.to_pair(), "radius": format_rational(radius), "open": true })
}

pub fn plane_set_value(s: &PlaneSet) -> Value {
    json!({
        "closed": region_value(&s.closed),
        "open": s.open.iter().map(|o| open_disc_value(&o.center, &o.radius)).collect::<Vec<_>>(),
        "is_closed": s.is_closed(),
        "is_empty": s.is_empty(),
    })
}

pub fn hole_value(h: &Hole) -> Value {
    json!({
        "envelope": open_disc_value(&h.center, &h.radius),
        "open": h.is_open(),
        "excluded": region_value(&h.excluded),
    })
}

pub fn hull_value(rep: &HullReport) -> Value {
    json!({
        "hull": region_value(&rep.hull),
        "holes": rep.holes.iter().map(hole_value).collect::<Vec<_>>(),
        "component_count": rep.component_count,
    })
}

pub fn difference_value(d: &RegionDifference) -> Value {
    match d {
        RegionDifference::Exact(s) => {
            let mut v = plane_set_value(s);
            v["symbolic"] = json!(false);
            v
        }
        RegionDifference::Symbolic { minuend, subtrahend } => json!({
            "symbolic": true,
            "minuend": region_value(minuend),
            "subtrahend": region_value(subtrahend),
            "is_closed": false,
            "is_empty": false,
        }),
    }
}

pub fn drazin_value(d: &DrazinData) -> Value {
    json!({
        "index": d.index,
        "inverse": matrix_value(&d.inverse),
        "core_part": matrix_value(&d.core_part),
        "nilpotent_part": matrix_value(&d.nilpotent_part),
    })
}

pub fn classification_value(c: &PointClassification) -> Value {
    json!({
        "lambda": c.lambda.to_pair(),
        "in_spectrum": c.in_spectrum,
        "pole_order": c.pole_order,
        "algebraic_multiplicity": c.algebraic_multiplicity,
        "chain": serde_json::to_value(&c.chain).expect("chain report serializes"),
    })
}

/// Attach the schema tag to an object.
pub fn with_schema(mut v: Value) -> Value {
    if let Value::Object(map) = &mut v {
        map.insert("schema".into(), json!(SCHEMA));
    }
    v
}

/// Stable pretty-printed rendering with a trailing newline.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}
