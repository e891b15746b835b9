//! Concise sets generating the non-ergodic and non-weak-mixing directions.

use serde_json::{json, Value};

use super::{coset_of, require_reduced, subspace_in_perp};
use crate::error::Result;
use crate::linalg::groups::{group_meets, AffineCondition, Coset, Ring};
use crate::linalg::{
    add, int_vector, is_integer_vector, is_zero_vector, scale, solve_integer_affine, sub,
    vector_to_json, FieldVector, Subspace,
};
use crate::measure::{Kind, SymbolicMeasure};
use crate::scalar::FieldScalar;

pub const DEFAULT_ENUMERATION_BOUND: i64 = 3;

/// A countable family of directions described by finite data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    /// `{span(K, offset - n)^⊥ : n ∈ Z^d}`.
    Offset { k: Subspace, offset: FieldVector },
    /// `{(x - n)^⊥ : x a nontrivial element of the coset, n ∈ Z^d}`, or
    /// `{x^⊥}` without lattice shifts on `R^d`.
    Group {
        generators: Vec<FieldVector>,
        ring: Ring,
        shift: FieldVector,
        torus: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyEntry {
    pub family: Family,
    /// Members reached by the bounded enumeration, concise among themselves.
    pub members: Vec<Subspace>,
}

/// Finite members plus parametric families; `L` is subordinate when it is
/// contained in a finite member or in some member of a family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConciseSet {
    pub subspaces: Vec<Subspace>,
    pub families: Vec<FamilyEntry>,
}

/// Drops duplicates, `{0}`, and members strictly inside other members.
pub fn concise_hull(mut members: Vec<Subspace>) -> Vec<Subspace> {
    members.retain(|m| !m.is_zero());
    members.sort();
    members.dedup();
    // Distinct members of equal dimension never contain one another.
    let keep: Vec<bool> = members
        .iter()
        .map(|m| {
            !members
                .iter()
                .any(|o| o.dim() > m.dim() && m.is_subspace_of(o))
        })
        .collect();
    members
        .into_iter()
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|(m, _)| m)
        .collect()
}

impl ConciseSet {
    pub fn is_empty(&self) -> bool {
        self.subspaces.is_empty() && self.families.is_empty()
    }

    pub fn subordinates(&self, l: &Subspace) -> bool {
        if self.subspaces.iter().any(|m| l.is_subspace_of(m)) {
            return true;
        }
        self.families.iter().any(|f| family_subordinates(&f.family, l))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "subspaces": self.subspaces.iter().map(Subspace::to_json).collect::<Vec<_>>(),
            "families": self.families.iter().map(|f| {
                let mut o = match &f.family {
                    Family::Offset { k, offset } => json!({
                        "kind": "offset",
                        "subspace": k.to_json(),
                        "offset": vector_to_json(offset),
                    }),
                    Family::Group { generators, ring, shift, torus } => json!({
                        "kind": "group",
                        "generators": generators.iter().map(|g| vector_to_json(g)).collect::<Vec<_>>(),
                        "ring": ring.label(),
                        "shift": vector_to_json(shift),
                        "lattice_shifts": torus,
                    }),
                };
                o["members"] = Value::Array(f.members.iter().map(Subspace::to_json).collect());
                o
            }).collect::<Vec<_>>(),
        })
    }
}

fn family_subordinates(f: &Family, l: &Subspace) -> bool {
    match f {
        Family::Offset { k, offset } => {
            subspace_in_perp(k, l) && solve_integer_affine(l.basis(), offset).is_some()
        }
        Family::Group {
            generators,
            ring,
            shift,
            torus,
        } => {
            let coset = Coset {
                field: l.field(),
                dim: l.ambient(),
                generators,
                ring: *ring,
                shift,
                torus: *torus,
            };
            let zeros: FieldVector = l
                .basis()
                .iter()
                .map(|_| FieldScalar::zero(l.field()))
                .collect();
            group_meets(
                &coset,
                &AffineCondition {
                    a: l.basis(),
                    shift: if *torus { Some(l.basis()) } else { None },
                    b: &zeros,
                },
            )
        }
    }
}

fn lattice_points(d: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|p| {
                (-bound..=bound).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}

fn span_with(k: &Subspace, v: &[FieldScalar]) -> Subspace {
    let mut rows = k.basis().to_vec();
    rows.push(v.to_vec());
    Subspace::new(k.field(), k.ambient(), rows).expect("vectors share the ambient space")
}

fn perp_of_span(k: &Subspace, v: &[FieldScalar]) -> Subspace {
    span_with(k, v).orthocomplement()
}

/// Hull of the complements of the given spans; spans are deduplicated first
/// since many lattice shifts produce the same one.
fn perps_hull(mut spans: Vec<Subspace>) -> Vec<Subspace> {
    spans.sort();
    spans.dedup();
    concise_hull(spans.iter().map(Subspace::orthocomplement).collect())
}

fn enumerate_offset(k: &Subspace, offset: &[FieldScalar], bound: i64) -> Vec<Subspace> {
    perps_hull(
        lattice_points(k.ambient(), bound)
            .into_iter()
            .map(|n| span_with(k, &sub(offset, &int_vector(k.field(), &n))))
            .collect(),
    )
}

/// Upper bound on `elements × lattice shifts` visited when listing group
/// members; the bound shrinks (to 1 at least) until the product fits.
const GROUP_ENUMERATION_BUDGET: usize = 4096;

fn enumerate_group(coset: &Coset<'_>, bound: i64) -> Vec<Subspace> {
    let per_coefficient = |b: i64| match coset.ring {
        Ring::Z => 2 * b as usize + 1,
        Ring::Q => 4 * b as usize + 2,
    };
    let shift_dims = if coset.torus { coset.dim } else { 0 };
    let mut bound = bound;
    while bound > 1
        && per_coefficient(bound).pow(coset.generators.len() as u32)
            * (2 * bound as usize + 1).pow(shift_dims as u32)
            > GROUP_ENUMERATION_BUDGET
    {
        bound -= 1;
    }
    let f = coset.field;
    let zero_k = Subspace::zero(f, coset.dim);
    let coefficients: Vec<FieldScalar> = match coset.ring {
        Ring::Z => (-bound..=bound).map(|c| FieldScalar::from_int(f, c)).collect(),
        Ring::Q => (-bound..=bound)
            .flat_map(|p| [FieldScalar::from_int(f, p), FieldScalar::from_ratio(f, p, 2)])
            .collect(),
    };
    let mut elements: Vec<FieldVector> = vec![coset.shift.to_vec()];
    for g in coset.generators {
        elements = elements
            .iter()
            .flat_map(|x| coefficients.iter().map(move |c| add(x, &scale(g, c))))
            .collect();
        elements.sort();
        elements.dedup();
    }
    let shifts = if coset.torus {
        lattice_points(coset.dim, bound)
    } else {
        vec![vec![0; coset.dim]]
    };
    let mut members = Vec::new();
    for x in elements {
        let trivial = if coset.torus {
            is_integer_vector(&x)
        } else {
            is_zero_vector(&x)
        };
        if trivial {
            continue;
        }
        for n in &shifts {
            let y = sub(&x, &int_vector(f, n));
            if !is_zero_vector(&y) {
                members.push(span_with(&zero_k, &y));
            }
        }
    }
    perps_hull(members)
}

/// Directions `L` with `σ(L^⊥) > 0`, as a concise set.
pub fn nonergodic_concise(m: &SymbolicMeasure, bound: i64) -> Result<ConciseSet> {
    require_reduced(m)?;
    let modular = m.is_modular();
    let mut explicit = Vec::new();
    let mut families = Vec::new();
    for c in m.components() {
        match c.kind() {
            Kind::Atom { point } => {
                let k = Subspace::zero(m.field(), m.dim());
                if modular {
                    families.push(FamilyEntry {
                        members: enumerate_offset(&k, point, bound),
                        family: Family::Offset {
                            k,
                            offset: point.clone(),
                        },
                    });
                } else {
                    explicit.push(perp_of_span(&k, point));
                }
            }
            Kind::Box { carrier } => {
                let k = carrier.subspace();
                let o = carrier.offset();
                if !modular {
                    explicit.push(perp_of_span(k, o));
                } else if crate::linalg::in_torus_subspace(k, o) {
                    explicit.push(k.orthocomplement());
                } else {
                    families.push(FamilyEntry {
                        members: enumerate_offset(k, o, bound),
                        family: Family::Offset {
                            k: k.clone(),
                            offset: o.clone(),
                        },
                    });
                }
            }
            Kind::AtomGroup {
                generators,
                ring,
                shift,
            } => {
                let coset = coset_of(m, c.kind()).expect("group component");
                families.push(FamilyEntry {
                    members: enumerate_group(&coset, bound.min(2)),
                    family: Family::Group {
                        generators: generators.clone(),
                        ring: *ring,
                        shift: shift.clone(),
                        torus: modular,
                    },
                });
            }
        }
    }
    families.sort_by(|a, b| format!("{:?}", a.family).cmp(&format!("{:?}", b.family)));
    families.dedup();
    Ok(ConciseSet {
        subspaces: concise_hull(explicit),
        families,
    })
}

/// Directions `L` with `σ(L^⊥ + ℓ) > 0` for some `ℓ ∈ L`: the hull of the
/// `K_c^⊥`, where atoms contribute the whole space.
pub fn nonwm_concise(m: &SymbolicMeasure) -> Result<ConciseSet> {
    require_reduced(m)?;
    let members = m
        .components()
        .iter()
        .map(|c| match c.kind() {
            Kind::Box { carrier } => carrier.subspace().orthocomplement(),
            _ => Subspace::full(m.field(), m.dim()),
        })
        .collect();
    Ok(ConciseSet {
        subspaces: concise_hull(members),
        families: Vec::new(),
    })
}
