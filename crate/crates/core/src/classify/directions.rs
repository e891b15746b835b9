//! Direction files: `[{"basis": [[scalar, …], …]}, …]`, optionally wrapped as
//! `{"field": [roots], "directions": [...]}`. Without a field key the field
//! is the smallest one covering every radicand mentioned.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::Subspace;
use crate::measure::codec::collect_radicands;
use crate::scalar::{Field, FieldSpec};

pub fn directions_from_json(value: &Value) -> Result<(Field, Vec<Subspace>)> {
    let (field, items) = match value {
        Value::Array(items) => (None, items),
        Value::Object(doc) => {
            let items = doc
                .get("directions")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Parse("missing array \"directions\"".into()))?;
            let field = match doc.get("field") {
                None => None,
                Some(Value::Array(roots)) => {
                    let roots = roots
                        .iter()
                        .map(|r| r.as_u64().ok_or_else(|| Error::Parse(format!("bad field root {r}"))))
                        .collect::<Result<Vec<_>>>()?;
                    Some(FieldSpec::new(&roots)?)
                }
                Some(other) => return Err(Error::Parse(format!("field must be a list of roots, got {other}"))),
            };
            (field, items)
        }
        other => return Err(Error::Parse(format!("direction file must be an array, got {other}"))),
    };
    let field = match field {
        Some(f) => f,
        None => {
            let mut radicands = Vec::new();
            collect_radicands(&Value::Array(items.clone()), &mut radicands);
            FieldSpec::covering(&radicands)?
        }
    };
    let mut out = Vec::with_capacity(items.len());
    for item in items {
        let basis = item
            .get("basis")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("direction needs a \"basis\" array".into()))?;
        let ambient = basis
            .first()
            .and_then(Value::as_array)
            .map(Vec::len)
            .ok_or_else(|| Error::Parse("direction basis must be a nonempty list of vectors".into()))?;
        let l = Subspace::from_json(&field, ambient, &Value::Array(basis.clone()))?;
        if l.is_zero() {
            return Err(Error::InvalidInput("direction spans {0}".into()));
        }
        out.push(l);
    }
    Ok((field, out))
}

pub fn directions_to_json(field: &Field, directions: &[Subspace]) -> Value {
    json!({
        "field": field.roots(),
        "directions": directions.iter().map(|l| json!({"basis": l.to_json()})).collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bare_array_infers_the_field() {
        let doc = json!([{"basis": [[1, {"sqrt2": "1"}]]}, {"basis": [["1/2", 0], [0, 1]]}]);
        let (f, ls) = directions_from_json(&doc).unwrap();
        assert_eq!(f.roots(), &[2]);
        assert_eq!(ls[0].dim(), 1);
        assert!(ls[1].is_full());
        let (g, again) = directions_from_json(&directions_to_json(&f, &ls)).unwrap();
        assert_eq!(g.roots(), f.roots());
        assert_eq!(again, ls);
    }

    #[test]
    fn zero_direction_is_rejected() {
        assert!(directions_from_json(&json!([{"basis": [[0, 0]]}])).is_err());
    }
}
