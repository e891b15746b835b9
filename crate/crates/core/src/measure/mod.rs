//! Symbolic finite measures on `R^d` or `T^d`, tracked up to equivalence.
//!
//! A measure is a list of components, each an equivalence class (atom, wall
//! carrier or coset of atoms) together with concrete representatives used by
//! the Fourier oracle. Classification reads only the classes.

pub mod codec;

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::groups::{
    canonical_generators, canonical_shift, group_meets, AffineCondition, Coset, Ring,
};
use crate::linalg::lattice::LatticeSubgroup;
use crate::linalg::{
    add, bigint_vector, is_integer_vector, is_zero_vector, reduce_mod_lattice, unit_vector,
    zero_vector, AffineCarrier, FieldVector, Subspace,
};
use crate::scalar::{same_field, Field, FieldScalar};

pub const DEFAULT_CLOSURE_CAP: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Space {
    Euclid(usize),
    Torus(usize),
}

impl Space {
    pub fn dim(self) -> usize {
        match self {
            Space::Euclid(d) | Space::Torus(d) => d,
        }
    }

    pub fn is_torus(self) -> bool {
        matches!(self, Space::Torus(_))
    }

    pub fn label(self) -> &'static str {
        match self {
            Space::Euclid(_) => "euclidean",
            Space::Torus(_) => "torus",
        }
    }
}

/// The equivalence class of a component.
///
/// `AtomGroup` stands for the atoms `shift + G^T c`, `c` ranging over
/// `ring^k`, with the identity excluded.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Kind {
    Atom {
        point: FieldVector,
    },
    Box {
        carrier: AffineCarrier,
    },
    AtomGroup {
        generators: Vec<FieldVector>,
        ring: Ring,
        shift: FieldVector,
    },
}

impl Kind {
    fn rank(&self) -> u8 {
        match self {
            Kind::Atom { .. } => 0,
            Kind::Box { .. } => 1,
            Kind::AtomGroup { .. } => 2,
        }
    }

    /// Carrier dimension; atom groups count as families of points.
    pub fn dimension(&self) -> usize {
        match self {
            Kind::Box { carrier } => carrier.dim(),
            _ => 0,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Kind::Atom { .. } => "atom",
            Kind::Box { .. } => "box",
            Kind::AtomGroup { .. } => "atom_group",
        }
    }

    pub fn is_atomic(&self) -> bool {
        !matches!(self, Kind::Box { .. })
    }
}

impl Ord for Kind {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let head = (self.rank(), self.dimension()).cmp(&(other.rank(), other.dimension()));
        head.then_with(|| match (self, other) {
            (Kind::Atom { point: a }, Kind::Atom { point: b }) => a.cmp(b),
            (Kind::Box { carrier: a }, Kind::Box { carrier: b }) => a.cmp(b),
            (
                Kind::AtomGroup {
                    generators: g1,
                    ring: r1,
                    shift: s1,
                },
                Kind::AtomGroup {
                    generators: g2,
                    ring: r2,
                    shift: s2,
                },
            ) => (r1, g1.len(), g1, s1).cmp(&(r2, g2.len(), g2, s2)),
            _ => std::cmp::Ordering::Equal,
        })
    }
}

impl PartialOrd for Kind {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// A concrete representative: `weight` times the uniform measure on the
/// zonotope `anchor + sum [0, 1] g` (a point mass when there are no
/// segments). For atom groups the anchor is the coset shift.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rep {
    pub weight: BigRational,
    pub anchor: FieldVector,
    pub segments: Vec<FieldVector>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RawKind {
    Atom,
    Box,
    Group { generators: Vec<FieldVector>, ring: Ring },
}

/// An uncanonicalized component: a class shape plus one representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Raw {
    pub kind: RawKind,
    pub rep: Rep,
}

impl Raw {
    pub fn atom(point: FieldVector) -> Self {
        Raw {
            kind: RawKind::Atom,
            rep: Rep {
                weight: BigRational::one(),
                anchor: point,
                segments: Vec::new(),
            },
        }
    }

    pub fn boxed(segments: Vec<FieldVector>, anchor: FieldVector) -> Self {
        Raw {
            kind: RawKind::Box,
            rep: Rep {
                weight: BigRational::one(),
                anchor,
                segments,
            },
        }
    }

    pub fn group(generators: Vec<FieldVector>, ring: Ring, shift: FieldVector) -> Self {
        Raw {
            kind: RawKind::Group { generators, ring },
            rep: Rep {
                weight: BigRational::one(),
                anchor: shift,
                segments: Vec::new(),
            },
        }
    }

    pub fn with_weight(mut self, weight: BigRational) -> Self {
        self.rep.weight = weight;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Component {
    kind: Kind,
    reps: Vec<Rep>,
}

impl Component {
    pub fn kind(&self) -> &Kind {
        &self.kind
    }

    pub fn reps(&self) -> &[Rep] {
        &self.reps
    }

    pub fn dimension(&self) -> usize {
        self.kind.dimension()
    }

    pub fn mass(&self) -> BigRational {
        self.reps.iter().map(|r| r.weight.clone()).sum()
    }

    pub fn raws(&self) -> impl Iterator<Item = Raw> + '_ {
        let kind = match &self.kind {
            Kind::Atom { .. } => RawKind::Atom,
            Kind::Box { .. } => RawKind::Box,
            Kind::AtomGroup {
                generators, ring, ..
            } => RawKind::Group {
                generators: generators.clone(),
                ring: *ring,
            },
        };
        self.reps.iter().map(move |r| Raw {
            kind: kind.clone(),
            rep: r.clone(),
        })
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct SymbolicMeasure {
    space: Space,
    field: Field,
    periodized: bool,
    components: Vec<Component>,
}

impl SymbolicMeasure {
    pub fn new(space: Space, field: &Field, periodized: bool, raws: Vec<Raw>) -> Result<Self> {
        if space.dim() == 0 {
            return Err(Error::InvalidInput("dimension must be >= 1".into()));
        }
        if periodized && space.is_torus() {
            return Err(Error::InvalidInput(
                "the periodized flag applies only to euclidean measures".into(),
            ));
        }
        let canon = Canonicalizer {
            field,
            dim: space.dim(),
            modular: space.is_torus() || periodized,
        };
        let mut classes: BTreeMap<Kind, BTreeMap<(FieldVector, Vec<FieldVector>), BigRational>> =
            BTreeMap::new();
        for raw in raws {
            let (kind, rep) = canon.canonical(raw)?;
            *classes
                .entry(kind)
                .or_default()
                .entry((rep.anchor, rep.segments))
                .or_insert_with(BigRational::zero) += rep.weight;
        }
        let components = classes
            .into_iter()
            .map(|(kind, reps)| Component {
                kind,
                reps: reps
                    .into_iter()
                    .map(|((anchor, segments), weight)| Rep {
                        weight,
                        anchor,
                        segments,
                    })
                    .collect(),
            })
            .collect();
        Ok(SymbolicMeasure {
            space,
            field: field.clone(),
            periodized,
            components,
        })
    }

    pub fn empty(space: Space, field: &Field) -> Self {
        SymbolicMeasure {
            space,
            field: field.clone(),
            periodized: false,
            components: Vec::new(),
        }
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn is_torus(&self) -> bool {
        self.space.is_torus()
    }

    pub fn periodized(&self) -> bool {
        self.periodized
    }

    /// Points and offsets are classes modulo `Z^d`.
    pub fn is_modular(&self) -> bool {
        self.is_torus() || self.periodized
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn raws(&self) -> Vec<Raw> {
        self.components.iter().flat_map(Component::raws).collect()
    }

    pub fn total_mass(&self) -> BigRational {
        self.components.iter().map(Component::mass).sum()
    }

    /// Index of an atom at the identity, if any.
    pub fn identity_atom(&self) -> Option<usize> {
        self.components.iter().position(|c| match &c.kind {
            Kind::Atom { point } => {
                if self.is_modular() {
                    is_integer_vector(point)
                } else {
                    is_zero_vector(point)
                }
            }
            _ => false,
        })
    }

    fn rebuild(&self, space: Space, periodized: bool, raws: Vec<Raw>) -> Result<Self> {
        SymbolicMeasure::new(space, &self.field, periodized, raws)
    }

    fn check_compatible(&self, other: &SymbolicMeasure) -> Result<()> {
        if !same_field(&self.field, &other.field) {
            return Err(Error::FieldMismatch);
        }
        if self.space != other.space {
            return Err(Error::SpaceMismatch(format!(
                "{} {} vs {} {}",
                self.space.label(),
                self.dim(),
                other.space.label(),
                other.dim()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &SymbolicMeasure) -> Result<Self> {
        self.check_compatible(other)?;
        if self.periodized != other.periodized && !self.is_zero() && !other.is_zero() {
            return Err(Error::SpaceMismatch(
                "cannot add a periodized family to a plain measure".into(),
            ));
        }
        let mut raws = self.raws();
        raws.extend(other.raws());
        self.rebuild(self.space, self.periodized || other.periodized, raws)
    }

    pub fn translate(&self, v: &[FieldScalar]) -> Result<Self> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: v.len(),
            });
        }
        let raws = self
            .raws()
            .into_iter()
            .map(|mut r| {
                r.rep.anchor = add(&r.rep.anchor, v);
                r
            })
            .collect();
        self.rebuild(self.space, self.periodized, raws)
    }

    pub fn convolve(&self, other: &SymbolicMeasure) -> Result<Self> {
        self.check_compatible(other)?;
        let left = self.raws();
        let right = other.raws();
        let mut raws = Vec::with_capacity(left.len() * right.len());
        for a in &left {
            for b in &right {
                raws.push(convolve_raw(a, b)?);
            }
        }
        self.rebuild(self.space, self.periodized || other.periodized, raws)
    }

    /// Class of `δ_0 + Σ σ^{(n)}`: the closure of the component classes
    /// under pairwise convolution, with `δ_0` adjoined.
    ///
    /// Each class keeps the representative it was first reached with.
    pub fn exp(&self, cap: usize) -> Result<Self> {
        let canon = Canonicalizer {
            field: &self.field,
            dim: self.dim(),
            modular: self.is_modular(),
        };
        let mut found: BTreeMap<Kind, Raw> = BTreeMap::new();
        let mut queue: VecDeque<Raw> = VecDeque::new();
        let identity = Raw::atom(zero_vector(&self.field, self.dim()));
        for raw in std::iter::once(identity).chain(self.components.iter().filter_map(|c| c.raws().next())) {
            let (kind, _) = canon.canonical(raw.clone())?;
            if let std::collections::btree_map::Entry::Vacant(slot) = found.entry(kind) {
                slot.insert(raw.clone());
                queue.push_back(raw);
            }
        }
        let mut done: Vec<Raw> = Vec::new();
        while let Some(x) = queue.pop_front() {
            done.push(x.clone());
            for y in &done {
                let z = convolve_raw(&x, y)?;
                let (kind, _) = canon.canonical(z.clone())?;
                if !found.contains_key(&kind) {
                    if found.len() >= cap {
                        return Err(Error::ClosureBound { cap });
                    }
                    found.insert(kind, z.clone());
                    queue.push_back(z);
                }
            }
        }
        self.rebuild(self.space, self.periodized, found.into_values().collect())
    }

    /// Image under `R^d → T^d`. A periodized family collapses onto its
    /// base components.
    pub fn pushforward_quotient(&self) -> Result<Self> {
        if self.is_torus() {
            return Err(Error::SpaceMismatch("measure already lives on the torus".into()));
        }
        self.rebuild(Space::Torus(self.dim()), false, self.raws())
    }

    /// Lift of a torus measure to the periodized family on `R^d`.
    pub fn suspend(&self) -> Result<Self> {
        if !self.is_torus() {
            return Err(Error::SpaceMismatch("suspension needs a torus measure".into()));
        }
        self.rebuild(Space::Euclid(self.dim()), true, self.raws())
    }

    /// Image under restriction of characters to `H`: `a ↦ (a·h_1, …, a·h_e)`
    /// with `h_i` the Hermite basis of `H`. Returns the measure on `T^e` and
    /// the identification matrix.
    pub fn pushforward_subgroup(
        &self,
        h: &LatticeSubgroup,
    ) -> Result<(SymbolicMeasure, crate::linalg::integer::IntMatrix)> {
        if !self.is_torus() {
            return Err(Error::SpaceMismatch("subgroup push-forward needs a torus measure".into()));
        }
        if h.ambient() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: h.ambient(),
            });
        }
        if h.is_trivial() {
            return Err(Error::InvalidInput("subgroup must be nontrivial".into()));
        }
        let f = &self.field;
        let e = h.rank();
        let rows: Vec<FieldVector> = h.generators().iter().map(|g| bigint_vector(f, g)).collect();
        let apply = |v: &FieldVector| -> FieldVector {
            rows.iter().map(|r| crate::linalg::dot(r, v)).collect()
        };
        let ident: Vec<FieldVector> = (0..e).map(|i| unit_vector(f, e, i)).collect();
        let zeros = zero_vector(f, e);
        let mut raws = Vec::new();
        for c in &self.components {
            if let Kind::AtomGroup {
                generators,
                ring,
                shift,
            } = &c.kind
            {
                let coset = Coset {
                    field: f,
                    dim: self.dim(),
                    generators,
                    ring: *ring,
                    shift,
                    torus: true,
                };
                let cond = AffineCondition {
                    a: &rows,
                    shift: Some(&ident),
                    b: &zeros,
                };
                if group_meets(&coset, &cond) {
                    raws.push(Raw::atom(zeros.clone()).with_weight(c.mass()));
                }
            }
            for mut raw in c.raws() {
                raw.rep.anchor = apply(&raw.rep.anchor);
                raw.rep.segments = raw.rep.segments.iter().map(&apply).collect();
                if let RawKind::Group { generators, .. } = &mut raw.kind {
                    *generators = generators.iter().map(&apply).collect();
                }
                raws.push(raw);
            }
        }
        let image = SymbolicMeasure::new(Space::Torus(e), f, false, raws)?;
        Ok((image, h.generators().clone()))
    }

    /// Parts `σ_0, …, σ_d` by carrier dimension.
    pub fn decompose(&self) -> Vec<SymbolicMeasure> {
        (0..=self.dim())
            .map(|e| SymbolicMeasure {
                space: self.space,
                field: self.field.clone(),
                periodized: self.periodized,
                components: self
                    .components
                    .iter()
                    .filter(|c| c.dimension() == e)
                    .cloned()
                    .collect(),
            })
            .collect()
    }

    /// Sum of parts sharing this measure's space.
    pub fn sum_all(parts: &[SymbolicMeasure]) -> Result<SymbolicMeasure> {
        let first = parts
            .first()
            .ok_or_else(|| Error::InvalidInput("no parts to sum".into()))?;
        let mut acc = SymbolicMeasure {
            periodized: first.periodized,
            ..SymbolicMeasure::empty(first.space, &first.field)
        };
        for p in parts {
            acc = acc.add(p)?;
        }
        Ok(acc)
    }

    /// The same measure over a field containing this one.
    pub fn embed(&self, target: &Field) -> Result<Self> {
        let lift = |v: &FieldVector| crate::linalg::embed_vector(v, target);
        let mut raws = Vec::new();
        for mut r in self.raws() {
            r.rep.anchor = lift(&r.rep.anchor)?;
            r.rep.segments = r.rep.segments.iter().map(lift).collect::<Result<_>>()?;
            if let RawKind::Group { generators, .. } = &mut r.kind {
                *generators = generators.iter().map(lift).collect::<Result<_>>()?;
            }
            raws.push(r);
        }
        SymbolicMeasure::new(self.space, target, self.periodized, raws)
    }

    /// A copy keeping only the components selected by `keep`.
    pub fn restrict_components(&self, keep: impl Fn(usize, &Component) -> bool) -> Self {
        SymbolicMeasure {
            components: self
                .components
                .iter()
                .enumerate()
                .filter(|(i, c)| keep(*i, c))
                .map(|(_, c)| c.clone())
                .collect(),
            ..self.clone()
        }
    }
}

impl fmt::Debug for SymbolicMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}({}){} [",
            self.space.label(),
            self.dim(),
            if self.periodized { " periodized" } else { "" }
        )?;
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{:?}", c.kind)?;
        }
        write!(f, "]")
    }
}

fn convolve_raw(a: &Raw, b: &Raw) -> Result<Raw> {
    let rep = Rep {
        weight: &a.rep.weight * &b.rep.weight,
        anchor: add(&a.rep.anchor, &b.rep.anchor),
        segments: a
            .rep
            .segments
            .iter()
            .chain(&b.rep.segments)
            .cloned()
            .collect(),
    };
    let kind = match (&a.kind, &b.kind) {
        (RawKind::Atom, RawKind::Atom) => RawKind::Atom,
        (RawKind::Atom, RawKind::Box) | (RawKind::Box, RawKind::Atom) | (RawKind::Box, RawKind::Box) => {
            RawKind::Box
        }
        (RawKind::Atom, g @ RawKind::Group { .. }) | (g @ RawKind::Group { .. }, RawKind::Atom) => {
            g.clone()
        }
        (
            RawKind::Group {
                generators: g1,
                ring: r1,
            },
            RawKind::Group {
                generators: g2,
                ring: r2,
            },
        ) => {
            if r1 != r2 {
                return Err(Error::Unsupported(
                    "convolution of atom groups over different rings".into(),
                ));
            }
            RawKind::Group {
                generators: g1.iter().chain(g2).cloned().collect(),
                ring: *r1,
            }
        }
        (RawKind::Group { .. }, RawKind::Box) | (RawKind::Box, RawKind::Group { .. }) => {
            return Err(Error::Unsupported(
                "convolution of an atom group with a box component".into(),
            ))
        }
    };
    Ok(Raw { kind, rep })
}

struct Canonicalizer<'a> {
    field: &'a Field,
    dim: usize,
    modular: bool,
}

impl Canonicalizer<'_> {
    fn check(&self, v: &[FieldScalar]) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: v.len(),
            });
        }
        if v.iter().any(|s| !same_field(s.field(), self.field)) {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    fn canonical(&self, raw: Raw) -> Result<(Kind, Rep)> {
        let Raw { kind, mut rep } = raw;
        if !rep.weight.is_positive() {
            return Err(Error::InvalidInput(format!(
                "component weights must be positive, got {}",
                rep.weight
            )));
        }
        self.check(&rep.anchor)?;
        for s in &rep.segments {
            self.check(s)?;
        }
        if self.modular {
            rep.anchor = reduce_mod_lattice(&rep.anchor);
        }
        let kind = match kind {
            RawKind::Atom => Kind::Atom {
                point: rep.anchor.clone(),
            },
            RawKind::Box => {
                let k = Subspace::new(self.field, self.dim, rep.segments.clone())?;
                if k.is_zero() {
                    rep.segments.clear();
                    Kind::Atom {
                        point: rep.anchor.clone(),
                    }
                } else if self.modular {
                    Kind::Box {
                        carrier: AffineCarrier::new_torus(k, &rep.anchor)?,
                    }
                } else {
                    Kind::Box {
                        carrier: AffineCarrier::new(k, &rep.anchor)?,
                    }
                }
            }
            RawKind::Group { generators, ring } => {
                for g in &generators {
                    self.check(g)?;
                }
                let gens =
                    canonical_generators(self.field, self.dim, &generators, ring, self.modular);
                if gens.is_empty() {
                    Kind::Atom {
                        point: rep.anchor.clone(),
                    }
                } else {
                    let shift =
                        canonical_shift(self.field, self.dim, &gens, ring, self.modular, &rep.anchor);
                    Kind::AtomGroup {
                        generators: gens,
                        ring,
                        shift,
                    }
                }
            }
        };
        Ok((kind, rep))
    }
}
