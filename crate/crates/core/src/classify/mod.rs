//! Directional ergodicity, weak mixing and strong mixing read off a symbolic
//! reduced spectral measure.
//!
//! A direction `L` fails ergodicity exactly when the measure charges the wall
//! `L^⊥` (or its image on the torus), and fails weak mixing when it charges
//! some translate `L^⊥ + ℓ`, `ℓ ∈ L`.

pub mod concise;
pub mod directions;
pub mod lint;
pub mod realize;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::linalg::groups::{group_meets, AffineCondition, Coset, Ring};
use crate::linalg::{
    dot, is_integer_vector, is_zero_vector, scale, solve_integer_affine, sub, vector_to_json,
    zero_vector, FieldVector, Subspace,
};
use crate::measure::{Component, Kind, SymbolicMeasure};
use crate::scalar::{same_field, FieldScalar};

pub use concise::{nonergodic_concise, nonwm_concise, ConciseSet, Family, DEFAULT_ENUMERATION_BOUND};
pub use directions::{directions_from_json, directions_to_json};
pub use lint::{admissibility_lint, LintWarning};
pub use realize::{realize, Realization};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Property {
    Ergodic,
    WeakMixing,
    StrongMixing,
}

impl Property {
    pub fn label(self) -> &'static str {
        match self {
            Property::Ergodic => "ergodic",
            Property::WeakMixing => "weak_mixing",
            Property::StrongMixing => "strong_mixing",
        }
    }
}

/// Why a property fails: the component charging a wall (`eigenvalue` is the
/// `ℓ` of the wall `L^⊥ + ℓ`) or, for strong mixing, a vector of
/// `L ∩ K^⊥` along which the transform does not decay.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub component: usize,
    pub property: Property,
    pub eigenvalue: Option<FieldVector>,
    pub direction: Option<FieldVector>,
}

impl Witness {
    pub fn to_json(&self) -> Value {
        let mut o = serde_json::Map::new();
        o.insert("component".into(), json!(self.component));
        o.insert("property".into(), json!(self.property.label()));
        if let Some(e) = &self.eigenvalue {
            o.insert("eigenvalue".into(), vector_to_json(e));
        }
        if let Some(d) = &self.direction {
            o.insert("direction".into(), vector_to_json(d));
        }
        Value::Object(o)
    }
}

/// Eigenvalues `ℓ ∈ L` contributed by one component: `base`, plus the
/// projections of `Z^d` when `periodic`, plus the `ring`-span of
/// `generators` for atom groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenvalueFamily {
    pub component: usize,
    pub base: FieldVector,
    pub periodic: bool,
    pub generators: Vec<FieldVector>,
    pub ring: Option<Ring>,
}

impl EigenvalueFamily {
    pub fn to_json(&self) -> Value {
        let mut o = serde_json::Map::new();
        o.insert("component".into(), json!(self.component));
        o.insert("base".into(), vector_to_json(&self.base));
        o.insert("lattice_translates".into(), json!(self.periodic));
        if let Some(r) = self.ring {
            o.insert("ring".into(), json!(r.label()));
            o.insert(
                "generators".into(),
                Value::Array(self.generators.iter().map(|g| vector_to_json(g)).collect()),
            );
        }
        Value::Object(o)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectionVerdict {
    pub direction: Subspace,
    pub ergodic: bool,
    pub weak_mixing: bool,
    pub strong_mixing: bool,
    pub witnesses: Vec<Witness>,
    pub eigenvalue_families: Vec<EigenvalueFamily>,
}

impl DirectionVerdict {
    pub fn to_json(&self) -> Value {
        json!({
            "direction": self.direction.to_json(),
            "ergodic": self.ergodic,
            "weak_mixing": self.weak_mixing,
            "strong_mixing": self.strong_mixing,
            "witnesses": self.witnesses.iter().map(Witness::to_json).collect::<Vec<_>>(),
            "eigenvalue_families": self.eigenvalue_families.iter().map(EigenvalueFamily::to_json).collect::<Vec<_>>(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WallTest {
    pub positive: bool,
    /// Indices of the components charging the wall.
    pub witnesses: Vec<usize>,
}

fn check_direction(m: &SymbolicMeasure, l: &Subspace) -> Result<()> {
    if l.ambient() != m.dim() {
        return Err(Error::DimensionMismatch {
            expected: m.dim(),
            got: l.ambient(),
        });
    }
    if !same_field(l.field(), m.field()) {
        return Err(Error::FieldMismatch);
    }
    Ok(())
}

fn in_perp(l: &Subspace, v: &[FieldScalar]) -> bool {
    l.basis().iter().all(|b| dot(b, v).is_zero())
}

fn subspace_in_perp(k: &Subspace, l: &Subspace) -> bool {
    k.basis().iter().all(|v| in_perp(l, v))
}

pub(crate) fn coset_of<'a>(m: &'a SymbolicMeasure, kind: &'a Kind) -> Option<Coset<'a>> {
    match kind {
        Kind::AtomGroup {
            generators,
            ring,
            shift,
        } => Some(Coset {
            field: m.field(),
            dim: m.dim(),
            generators,
            ring: *ring,
            shift,
            torus: m.is_modular(),
        }),
        _ => None,
    }
}

/// Does component `c` charge `L^⊥ + ℓ` (or its torus image)?
fn charges_wall(m: &SymbolicMeasure, c: &Component, l: &Subspace, ell: &[FieldScalar]) -> bool {
    let bl = l.basis();
    let b_ell: FieldVector = bl.iter().map(|b| dot(b, ell)).collect();
    if m.periodized() {
        // Every lattice translate of the base family: x + n ∈ L^⊥ + ℓ.
        let neg: Vec<FieldVector> = bl
            .iter()
            .map(|b| scale(b, &FieldScalar::from_int(m.field(), -1)))
            .collect();
        return match c.kind() {
            Kind::Atom { point } => solve_integer_affine(bl, &sub(ell, point)).is_some(),
            Kind::Box { carrier } => {
                subspace_in_perp(carrier.subspace(), l)
                    && solve_integer_affine(bl, &sub(ell, carrier.offset())).is_some()
            }
            Kind::AtomGroup { .. } => {
                let coset = coset_of(m, c.kind()).expect("group component");
                group_meets(
                    &coset,
                    &AffineCondition {
                        a: bl,
                        shift: Some(&neg),
                        b: &b_ell,
                    },
                )
            }
        };
    }
    if m.is_torus() {
        return match c.kind() {
            Kind::Atom { point } => solve_integer_affine(bl, &sub(point, ell)).is_some(),
            Kind::Box { carrier } => {
                subspace_in_perp(carrier.subspace(), l)
                    && solve_integer_affine(bl, &sub(carrier.offset(), ell)).is_some()
            }
            Kind::AtomGroup { .. } => {
                let coset = coset_of(m, c.kind()).expect("group component");
                group_meets(
                    &coset,
                    &AffineCondition {
                        a: bl,
                        shift: Some(bl),
                        b: &b_ell,
                    },
                )
            }
        };
    }
    match c.kind() {
        Kind::Atom { point } => in_perp(l, &sub(point, ell)),
        Kind::Box { carrier } => {
            subspace_in_perp(carrier.subspace(), l) && in_perp(l, &sub(carrier.offset(), ell))
        }
        Kind::AtomGroup { .. } => {
            let coset = coset_of(m, c.kind()).expect("group component");
            group_meets(
                &coset,
                &AffineCondition {
                    a: bl,
                    shift: None,
                    b: &b_ell,
                },
            )
        }
    }
}

/// Decides whether `σ` charges `L^⊥ + ℓ` (Euclid) or `π(L^⊥ + ℓ)` (torus).
pub fn wall_test(m: &SymbolicMeasure, l: &Subspace, ell: &[FieldScalar]) -> Result<WallTest> {
    check_direction(m, l)?;
    if ell.len() != m.dim() || !l.contains(ell) {
        return Err(Error::NotInSubspace("ℓ must lie in the direction L".into()));
    }
    let witnesses: Vec<usize> = m
        .components()
        .iter()
        .enumerate()
        .filter(|(_, c)| charges_wall(m, c, l, ell))
        .map(|(i, _)| i)
        .collect();
    Ok(WallTest {
        positive: !witnesses.is_empty(),
        witnesses,
    })
}

/// A nontrivial element of an atom-group coset.
pub(crate) fn sample_element(coset: &Coset<'_>) -> FieldVector {
    let trivial = |x: &[FieldScalar]| {
        if coset.torus {
            is_integer_vector(x)
        } else {
            is_zero_vector(x)
        }
    };
    let g = &coset.generators[0];
    for n in 1i64.. {
        let c = match coset.ring {
            Ring::Z => FieldScalar::from_int(coset.field, n - 1),
            Ring::Q => FieldScalar::from_ratio(coset.field, 1, n),
        };
        let x = crate::linalg::add(coset.shift, &scale(g, &c));
        if !trivial(&x) {
            return x;
        }
    }
    unreachable!("a nonzero generator yields a nontrivial element")
}

/// Eigenvalue families of `σ` along `L`: every component living on a
/// translate of `L^⊥` contributes the projections onto `L` of its points.
pub fn directional_eigenvalues(m: &SymbolicMeasure, l: &Subspace) -> Result<Vec<EigenvalueFamily>> {
    check_direction(m, l)?;
    let periodic = m.is_modular();
    let mut out = Vec::new();
    for (i, c) in m.components().iter().enumerate() {
        let fam = match c.kind() {
            Kind::Atom { point } => EigenvalueFamily {
                component: i,
                base: l.project(point),
                periodic,
                generators: Vec::new(),
                ring: None,
            },
            Kind::Box { carrier } if subspace_in_perp(carrier.subspace(), l) => EigenvalueFamily {
                component: i,
                base: l.project(carrier.offset()),
                periodic,
                generators: Vec::new(),
                ring: None,
            },
            Kind::Box { .. } => continue,
            Kind::AtomGroup {
                generators,
                ring,
                shift,
            } => EigenvalueFamily {
                component: i,
                base: l.project(shift),
                periodic,
                generators: generators.iter().map(|g| l.project(g)).collect(),
                ring: Some(*ring),
            },
        };
        out.push(fam);
    }
    Ok(out)
}

/// Atoms and atom groups of `σ`.
pub fn eigenvalues(m: &SymbolicMeasure) -> Vec<(usize, Kind)> {
    m.components()
        .iter()
        .enumerate()
        .filter(|(_, c)| c.kind().is_atomic())
        .map(|(i, c)| (i, c.kind().clone()))
        .collect()
}

pub(crate) fn require_reduced(m: &SymbolicMeasure) -> Result<()> {
    if let Some(i) = m.identity_atom() {
        return Err(Error::NotReduced(format!(
            "component {i} is an atom at the identity"
        )));
    }
    Ok(())
}

pub fn classify_direction(m: &SymbolicMeasure, l: &Subspace) -> Result<DirectionVerdict> {
    check_direction(m, l)?;
    require_reduced(m)?;
    if l.is_zero() {
        return Err(Error::InvalidInput("direction must be a nonzero subspace".into()));
    }
    let zero = zero_vector(m.field(), m.dim());
    let mut witnesses = Vec::new();
    let wall = wall_test(m, l, &zero)?;
    for &i in &wall.witnesses {
        witnesses.push(Witness {
            component: i,
            property: Property::Ergodic,
            eigenvalue: Some(zero.clone()),
            direction: None,
        });
    }
    let mut weak_mixing = true;
    let mut strong_mixing = true;
    for (i, c) in m.components().iter().enumerate() {
        match c.kind() {
            Kind::Atom { point } => {
                weak_mixing = false;
                strong_mixing = false;
                witnesses.push(Witness {
                    component: i,
                    property: Property::WeakMixing,
                    eigenvalue: Some(l.project(point)),
                    direction: None,
                });
                witnesses.push(Witness {
                    component: i,
                    property: Property::StrongMixing,
                    eigenvalue: None,
                    direction: None,
                });
            }
            Kind::AtomGroup { .. } => {
                weak_mixing = false;
                strong_mixing = false;
                let x = sample_element(&coset_of(m, c.kind()).expect("group component"));
                witnesses.push(Witness {
                    component: i,
                    property: Property::WeakMixing,
                    eigenvalue: Some(l.project(&x)),
                    direction: None,
                });
                witnesses.push(Witness {
                    component: i,
                    property: Property::StrongMixing,
                    eigenvalue: None,
                    direction: None,
                });
            }
            Kind::Box { carrier } => {
                if subspace_in_perp(carrier.subspace(), l) {
                    weak_mixing = false;
                    witnesses.push(Witness {
                        component: i,
                        property: Property::WeakMixing,
                        eigenvalue: Some(l.project(carrier.offset())),
                        direction: None,
                    });
                }
                let meet = l.intersect(&carrier.subspace().orthocomplement())?;
                if !meet.is_zero() {
                    strong_mixing = false;
                    witnesses.push(Witness {
                        component: i,
                        property: Property::StrongMixing,
                        eigenvalue: None,
                        direction: Some(meet.basis()[0].clone()),
                    });
                }
            }
        }
    }
    if !weak_mixing || !wall.witnesses.is_empty() {
        strong_mixing = false;
    }
    witnesses.sort_by_key(|w| (w.property, w.component));
    Ok(DirectionVerdict {
        direction: l.clone(),
        ergodic: !wall.positive,
        weak_mixing,
        strong_mixing,
        witnesses,
        eigenvalue_families: directional_eigenvalues(m, l)?,
    })
}

/// Verdicts for many directions, in input order.
pub fn classify_many(
    m: &SymbolicMeasure,
    directions: &[Subspace],
    execution: Execution,
) -> Vec<Result<DirectionVerdict>> {
    exec::map(execution, directions, |l| classify_direction(m, l))
}
