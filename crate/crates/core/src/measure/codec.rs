//! JSON documents for measures.
//!
//! ```json
//! {"space": "torus", "dim": 2, "field": [2],
//!  "components": [
//!    {"kind": "atom", "point": [{"1": "1/2"}, {}]},
//!    {"kind": "box", "basis": [[{"1": "1"}, {}]], "offset": [{}, {"1": "1/4"}]},
//!    {"kind": "atom_group", "generators": [[{"sqrt2": "1"}, {}]], "ring": "Z"}]}
//! ```
//!
//! Box and group components accept an explicit `representatives` list of
//! `{weight, anchor, generators}`; without it the single representative is
//! the offset (or shift) with the listed generators and weight.

use num_rational::BigRational;
use num_traits::One;
use serde_json::{json, Map, Value};

use super::{Component, Kind, Raw, RawKind, Rep, Space, SymbolicMeasure};
use crate::error::{Error, Result};
use crate::linalg::groups::Ring;
use crate::linalg::{is_zero_vector, vector_from_json, vector_to_json, zero_vector, FieldVector, Subspace};
use crate::scalar::{parse_rational, Field, FieldScalar, FieldSpec};

pub fn measure_to_json(m: &SymbolicMeasure) -> Value {
    let mut doc = Map::new();
    doc.insert("space".into(), json!(m.space().label()));
    doc.insert("dim".into(), json!(m.dim()));
    doc.insert("field".into(), json!(m.field().roots()));
    if m.periodized() {
        doc.insert("periodized".into(), json!(true));
    }
    doc.insert(
        "components".into(),
        Value::Array(m.components().iter().map(component_to_json).collect()),
    );
    Value::Object(doc)
}

fn vectors_to_json(vs: &[FieldVector]) -> Value {
    Value::Array(vs.iter().map(|v| vector_to_json(v)).collect())
}

fn rep_to_json(r: &Rep) -> Value {
    let mut o = Map::new();
    o.insert("weight".into(), json!(r.weight.to_string()));
    o.insert("anchor".into(), vector_to_json(&r.anchor));
    if !r.segments.is_empty() {
        o.insert("generators".into(), vectors_to_json(&r.segments));
    }
    Value::Object(o)
}

fn component_to_json(c: &Component) -> Value {
    let mut o = Map::new();
    o.insert("kind".into(), json!(c.kind().label()));
    let (default_anchor, default_segments) = match c.kind() {
        Kind::Atom { point } => {
            o.insert("point".into(), vector_to_json(point));
            (point.clone(), Vec::new())
        }
        Kind::Box { carrier } => {
            o.insert("basis".into(), vectors_to_json(carrier.subspace().basis()));
            o.insert("offset".into(), vector_to_json(carrier.offset()));
            (carrier.offset().clone(), carrier.subspace().basis().to_vec())
        }
        Kind::AtomGroup {
            generators,
            ring,
            shift,
        } => {
            o.insert("generators".into(), vectors_to_json(generators));
            o.insert("ring".into(), json!(ring.label()));
            if !is_zero_vector(shift) {
                o.insert("shift".into(), vector_to_json(shift));
            }
            (shift.clone(), Vec::new())
        }
    };
    match c.reps() {
        [r] if r.anchor == default_anchor && r.segments == default_segments => {
            if !r.weight.is_one() {
                o.insert("weight".into(), json!(r.weight.to_string()));
            }
        }
        reps => {
            o.insert(
                "representatives".into(),
                Value::Array(reps.iter().map(rep_to_json).collect()),
            );
        }
    }
    Value::Object(o)
}

fn field_of(doc: &Map<String, Value>) -> Result<Field> {
    match doc.get("field") {
        Some(Value::Array(roots)) => {
            let roots = roots
                .iter()
                .map(|r| {
                    r.as_u64()
                        .ok_or_else(|| Error::Parse(format!("field root must be an integer, got {r}")))
                })
                .collect::<Result<Vec<_>>>()?;
            FieldSpec::new(&roots)
        }
        Some(other) => Err(Error::Parse(format!("field must be a list of roots, got {other}"))),
        None => {
            let mut radicands = Vec::new();
            collect_radicands(doc.get("components").unwrap_or(&Value::Null), &mut radicands);
            FieldSpec::covering(&radicands)
        }
    }
}

/// Radicands of every scalar label map below `v`.
pub fn collect_radicands(v: &Value, out: &mut Vec<u64>) {
    match v {
        Value::Array(items) => items.iter().for_each(|x| collect_radicands(x, out)),
        Value::Object(map) => {
            out.extend(FieldScalar::json_radicands(v));
            map.values().for_each(|x| collect_radicands(x, out));
        }
        _ => {}
    }
}

pub fn measure_from_json(value: &Value) -> Result<SymbolicMeasure> {
    let doc = value
        .as_object()
        .ok_or_else(|| Error::Parse("measure document must be an object".into()))?;
    let dim = doc
        .get("dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Parse("missing integer field \"dim\"".into()))? as usize;
    let space = match doc.get("space").and_then(Value::as_str) {
        Some("euclidean") => Space::Euclid(dim),
        Some("torus") => Space::Torus(dim),
        other => {
            return Err(Error::Parse(format!(
                "space must be \"euclidean\" or \"torus\", got {other:?}"
            )))
        }
    };
    let periodized = doc
        .get("periodized")
        .map(|v| v.as_bool().ok_or_else(|| Error::Parse("periodized must be a boolean".into())))
        .transpose()?
        .unwrap_or(false);
    let field = field_of(doc)?;
    let comps = doc
        .get("components")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("missing array field \"components\"".into()))?;
    let mut raws = Vec::new();
    for c in comps {
        raws.extend(component_from_json(&field, dim, c)?);
    }
    SymbolicMeasure::new(space, &field, periodized, raws)
}

fn vectors_from_json(field: &Field, dim: usize, v: &Value) -> Result<Vec<FieldVector>> {
    v.as_array()
        .ok_or_else(|| Error::Parse(format!("expected a list of vectors, got {v}")))?
        .iter()
        .map(|x| vector_from_json(field, x, dim))
        .collect()
}

fn weight_from_json(v: Option<&Value>) -> Result<BigRational> {
    match v {
        None => Ok(BigRational::one()),
        Some(Value::String(s)) => parse_rational(s),
        Some(Value::Number(n)) => parse_rational(&n.to_string()),
        Some(other) => Err(Error::Parse(format!("weight must be a fraction string, got {other}"))),
    }
}

fn reps_from_json(
    field: &Field,
    dim: usize,
    o: &Map<String, Value>,
    anchor_key: &str,
    segments_key: Option<&str>,
) -> Result<Vec<Rep>> {
    if let Some(list) = o.get("representatives") {
        let list = list
            .as_array()
            .ok_or_else(|| Error::Parse("representatives must be a list".into()))?;
        return list
            .iter()
            .map(|r| {
                let r = r
                    .as_object()
                    .ok_or_else(|| Error::Parse("representative must be an object".into()))?;
                Ok(Rep {
                    weight: weight_from_json(r.get("weight"))?,
                    anchor: match r.get("anchor") {
                        Some(a) => vector_from_json(field, a, dim)?,
                        None => zero_vector(field, dim),
                    },
                    segments: match r.get("generators") {
                        Some(g) => vectors_from_json(field, dim, g)?,
                        None => Vec::new(),
                    },
                })
            })
            .collect();
    }
    Ok(vec![Rep {
        weight: weight_from_json(o.get("weight"))?,
        anchor: match o.get(anchor_key) {
            Some(a) => vector_from_json(field, a, dim)?,
            None => zero_vector(field, dim),
        },
        segments: match segments_key.and_then(|k| o.get(k)) {
            Some(g) => vectors_from_json(field, dim, g)?,
            None => Vec::new(),
        },
    }])
}

fn component_from_json(field: &Field, dim: usize, c: &Value) -> Result<Vec<Raw>> {
    let o = c
        .as_object()
        .ok_or_else(|| Error::Parse(format!("component must be an object, got {c}")))?;
    let kind = o.get("kind").and_then(Value::as_str).unwrap_or("");
    match kind {
        "atom" => {
            if !o.contains_key("point") && !o.contains_key("representatives") {
                return Err(Error::Parse("atom needs a \"point\"".into()));
            }
            let reps = reps_from_json(field, dim, o, "point", None)?;
            Ok(reps.into_iter().map(|rep| Raw { kind: RawKind::Atom, rep }).collect())
        }
        "box" => {
            let basis = match o.get("basis") {
                Some(b) => Some(Subspace::new(field, dim, vectors_from_json(field, dim, b)?)?),
                None => None,
            };
            let seg_key = if o.contains_key("generators") { "generators" } else { "basis" };
            let reps = reps_from_json(field, dim, o, "offset", Some(seg_key))?;
            for r in &reps {
                if r.segments.is_empty() {
                    return Err(Error::InvalidInput("box needs a basis or generators".into()));
                }
                let span = Subspace::new(field, dim, r.segments.clone())?;
                if let Some(b) = &basis {
                    if &span != b {
                        return Err(Error::InvalidInput(
                            "box generators do not span the declared basis".into(),
                        ));
                    }
                }
            }
            Ok(reps.into_iter().map(|rep| Raw { kind: RawKind::Box, rep }).collect())
        }
        "atom_group" => {
            let gens = vectors_from_json(
                field,
                dim,
                o.get("generators")
                    .ok_or_else(|| Error::Parse("atom_group needs \"generators\"".into()))?,
            )?;
            if gens.is_empty() || gens.iter().any(|g| is_zero_vector(g)) {
                return Err(Error::InvalidInput("atom_group generators must be nonzero".into()));
            }
            let ring = match o.get("ring").and_then(Value::as_str) {
                Some("Z") => Ring::Z,
                Some("Q") => Ring::Q,
                other => return Err(Error::Parse(format!("ring must be \"Z\" or \"Q\", got {other:?}"))),
            };
            let reps = reps_from_json(field, dim, o, "shift", None)?;
            Ok(reps
                .into_iter()
                .map(|rep| Raw {
                    kind: RawKind::Group {
                        generators: gens.clone(),
                        ring,
                    },
                    rep,
                })
                .collect())
        }
        other => Err(Error::Parse(format!("unknown component kind {other:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_canonical() {
        let doc = json!({
            "space": "torus", "dim": 2, "field": [2],
            "components": [
                {"kind": "box", "basis": [["1", "0"]], "offset": ["0", "5/4"]},
                {"kind": "atom", "point": [{"sqrt2": "1"}, "1/3"], "weight": "2"},
                {"kind": "atom_group", "generators": [[{"sqrt2": "1", "1": "-1"}, "0"]], "ring": "Z"},
                {"kind": "box", "generators": [["2", "0"], ["0", "1"]], "offset": ["1/2", "0"]}
            ]
        });
        let m = measure_from_json(&doc).unwrap();
        assert_eq!(m.components().len(), 4);
        let out = measure_to_json(&m);
        let back = measure_from_json(&out).unwrap();
        assert_eq!(back, m);
        assert_eq!(measure_to_json(&back), out);
    }

    #[test]
    fn inconsistent_box_is_rejected() {
        let doc = json!({
            "space": "euclidean", "dim": 2,
            "components": [{"kind": "box", "basis": [["1", "0"]], "generators": [["0", "1"]]}]
        });
        assert!(matches!(measure_from_json(&doc), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn field_is_inferred_from_labels() {
        let doc = json!({
            "space": "euclidean", "dim": 1,
            "components": [{"kind": "atom", "point": [{"sqrt3": "1"}]}]
        });
        let m = measure_from_json(&doc).unwrap();
        assert_eq!(m.field().roots(), &[3]);
    }
}
