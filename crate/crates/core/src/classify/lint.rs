//! Necessary conditions on reduced spectral measures of ergodic actions.
//!
//! (a) the atoms form a group, so a finite atom set must be closed under
//! addition; (b) the measure class is invariant under translation by an
//! atom; (c) for weak mixing actions the ergodic and weak mixing directions
//! coincide. Violations are reported, never rejected.

use serde_json::{json, Value};

use super::{classify_direction, coset_of};
use crate::error::Result;
use crate::linalg::groups::coset_contains;
use crate::linalg::{add, is_integer_vector, is_zero_vector, reduce_mod_lattice, FieldVector};
use crate::measure::{Kind, SymbolicMeasure};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LintWarning {
    pub code: char,
    pub components: Vec<usize>,
    pub message: String,
}

impl LintWarning {
    pub fn to_json(&self) -> Value {
        json!({
            "code": self.code.to_string(),
            "components": self.components,
            "message": self.message,
        })
    }
}

fn fmt_vec(v: &[crate::scalar::FieldScalar]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

pub fn admissibility_lint(m: &SymbolicMeasure) -> Result<Vec<LintWarning>> {
    let mut out = Vec::new();
    let atoms: Vec<(usize, &FieldVector)> = m
        .components()
        .iter()
        .enumerate()
        .filter_map(|(i, c)| match c.kind() {
            Kind::Atom { point } => Some((i, point)),
            _ => None,
        })
        .collect();
    let normalize = |v: FieldVector| if m.is_modular() { reduce_mod_lattice(&v) } else { v };
    let identity = |v: &FieldVector| {
        if m.is_modular() {
            is_integer_vector(v)
        } else {
            is_zero_vector(v)
        }
    };
    let covered = |v: &FieldVector| {
        identity(v)
            || atoms.iter().any(|(_, p)| *p == v)
            || m.components().iter().any(|c| {
                coset_of(m, c.kind()).is_some_and(|coset| coset_contains(&coset, v))
            })
    };

    // (a)
    for (x, &(i, a)) in atoms.iter().enumerate() {
        for &(j, b) in &atoms[x..] {
            let s = normalize(add(a, b));
            if !covered(&s) {
                out.push(LintWarning {
                    code: 'a',
                    components: vec![i, j],
                    message: format!(
                        "atom set not closed under addition: {} + {} = {} is missing",
                        fmt_vec(a),
                        fmt_vec(b),
                        fmt_vec(&s)
                    ),
                });
            }
        }
    }

    // (b)
    for &(i, a) in &atoms {
        for (j, c) in m.components().iter().enumerate() {
            if matches!(c.kind(), Kind::Atom { .. }) {
                continue;
            }
            let single = m.restrict_components(|k, _| k == j);
            let moved = single.translate(a)?;
            let present = moved
                .components()
                .iter()
                .all(|mc| m.components().iter().any(|o| o.kind() == mc.kind()));
            if !present {
                out.push(LintWarning {
                    code: 'b',
                    components: vec![i, j],
                    message: format!(
                        "translating component {j} by the atom {} leaves the measure class",
                        fmt_vec(a)
                    ),
                });
            }
        }
    }

    // (c)
    if m.components().iter().all(|c| !c.kind().is_atomic()) && m.identity_atom().is_none() {
        for (i, c) in m.components().iter().enumerate() {
            let Kind::Box { carrier } = c.kind() else {
                continue;
            };
            let l = carrier.subspace().orthocomplement();
            if l.is_zero() {
                continue;
            }
            let v = classify_direction(m, &l)?;
            if v.ergodic && !v.weak_mixing {
                out.push(LintWarning {
                    code: 'c',
                    components: vec![i],
                    message: format!(
                        "atom-free measure, yet the direction {:?} is ergodic but not weak mixing",
                        l
                    ),
                });
            }
        }
    }
    Ok(out)
}
