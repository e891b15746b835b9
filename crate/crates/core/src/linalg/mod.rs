//! Exact linear algebra over [`FieldScalar`]: canonical subspaces, affine
//! carriers, integer lattices and integer-affine feasibility.

pub mod elim;
pub mod expand;
pub mod groups;
pub mod integer;
pub mod lattice;

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::scalar::{same_field, Field, FieldScalar};
use elim::{null_space_from_rref, rref, solve_linear};
use expand::{decode_vector, expand_system, expand_vector};
use integer::{hermite_normal_form, solve_integer_system, IntegerSolution};

pub type FieldVector = Vec<FieldScalar>;

pub fn zero_vector(field: &Field, dim: usize) -> FieldVector {
    vec![FieldScalar::zero(field); dim]
}

pub fn unit_vector(field: &Field, dim: usize, i: usize) -> FieldVector {
    let mut v = zero_vector(field, dim);
    v[i] = FieldScalar::one(field);
    v
}

pub fn int_vector(field: &Field, xs: &[i64]) -> FieldVector {
    xs.iter().map(|&x| FieldScalar::from_int(field, x)).collect()
}

pub fn rational_vector(field: &Field, xs: &[(i64, i64)]) -> FieldVector {
    xs.iter()
        .map(|&(n, d)| FieldScalar::from_ratio(field, n, d))
        .collect()
}

pub fn bigint_vector(field: &Field, xs: &[BigInt]) -> FieldVector {
    xs.iter()
        .map(|x| FieldScalar::from_rational(field, BigRational::from_integer(x.clone())))
        .collect()
}

pub fn dot(a: &[FieldScalar], b: &[FieldScalar]) -> FieldScalar {
    let mut acc = FieldScalar::zero(a[0].field());
    for (x, y) in a.iter().zip(b) {
        acc = acc + x * y;
    }
    acc
}

pub fn add(a: &[FieldScalar], b: &[FieldScalar]) -> FieldVector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[FieldScalar], b: &[FieldScalar]) -> FieldVector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[FieldScalar], s: &FieldScalar) -> FieldVector {
    a.iter().map(|x| x * s).collect()
}

pub fn is_zero_vector(v: &[FieldScalar]) -> bool {
    v.iter().all(FieldScalar::is_zero)
}

pub fn is_integer_vector(v: &[FieldScalar]) -> bool {
    v.iter().all(FieldScalar::is_integer)
}

pub fn to_f64_vector(v: &[FieldScalar]) -> Vec<f64> {
    v.iter().map(FieldScalar::to_f64).collect()
}

/// Componentwise canonical reduction modulo `Z^d`.
pub fn reduce_mod_lattice(v: &[FieldScalar]) -> FieldVector {
    v.iter().map(FieldScalar::reduce_mod_one).collect()
}

pub fn embed_vector(v: &[FieldScalar], target: &Field) -> Result<FieldVector> {
    v.iter().map(|x| x.embed(target)).collect()
}

pub fn vector_to_json(v: &[FieldScalar]) -> Value {
    Value::Array(v.iter().map(FieldScalar::to_json).collect())
}

pub fn vector_from_json(field: &Field, value: &Value, dim: usize) -> Result<FieldVector> {
    let arr = value
        .as_array()
        .ok_or_else(|| Error::Parse(format!("expected a vector, got {value}")))?;
    if arr.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: arr.len(),
        });
    }
    arr.iter().map(|s| FieldScalar::from_json(field, s)).collect()
}

fn check_vector(field: &Field, dim: usize, v: &[FieldScalar]) -> Result<()> {
    if v.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: v.len(),
        });
    }
    if v.iter().any(|s| !same_field(s.field(), field)) {
        return Err(Error::FieldMismatch);
    }
    Ok(())
}

/// A linear subspace of `K^d`, stored by its reduced row echelon basis.
#[derive(Clone)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    basis: Vec<FieldVector>,
}

impl Subspace {
    pub fn new(field: &Field, ambient: usize, vectors: Vec<FieldVector>) -> Result<Self> {
        if ambient == 0 {
            return Err(Error::InvalidInput("ambient dimension must be >= 1".into()));
        }
        for v in &vectors {
            check_vector(field, ambient, v)?;
        }
        let mut rows = vectors;
        rref(&mut rows, ambient);
        Ok(Subspace {
            field: field.clone(),
            ambient,
            basis: rows,
        })
    }

    /// Span of integer vectors; panics on ragged input.
    pub fn span_ints(field: &Field, vectors: &[&[i64]]) -> Self {
        let ambient = vectors.first().map_or(0, |v| v.len());
        Self::new(
            field,
            ambient,
            vectors.iter().map(|v| int_vector(field, v)).collect(),
        )
        .expect("well-formed integer vectors")
    }

    pub fn zero(field: &Field, ambient: usize) -> Self {
        Subspace {
            field: field.clone(),
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(field: &Field, ambient: usize) -> Self {
        Subspace {
            field: field.clone(),
            ambient,
            basis: (0..ambient).map(|i| unit_vector(field, ambient, i)).collect(),
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[FieldVector] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient
    }

    fn pivots(&self) -> Vec<usize> {
        self.basis
            .iter()
            .map(|row| row.iter().position(|x| !x.is_zero()).expect("nonzero row"))
            .collect()
    }

    fn check_same(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                got: other.ambient,
            });
        }
        if !same_field(&self.field, &other.field) {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    /// Residual of `v` after eliminating the pivot coordinates; zero iff
    /// `v` lies in the subspace.
    fn residual(&self, v: &[FieldScalar]) -> FieldVector {
        let mut r = v.to_vec();
        for (row, p) in self.basis.iter().zip(self.pivots()) {
            if r[p].is_zero() {
                continue;
            }
            let f = r[p].clone();
            for (x, y) in r.iter_mut().zip(row) {
                *x = &*x - &(&f * y);
            }
        }
        r
    }

    pub fn contains(&self, v: &[FieldScalar]) -> bool {
        v.len() == self.ambient && is_zero_vector(&self.residual(v))
    }

    /// Inclusion `self ⊆ other`.
    pub fn leq(&self, other: &Subspace) -> Result<bool> {
        self.check_same(other)?;
        Ok(self.basis.iter().all(|b| other.contains(b)))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.leq(other).unwrap_or(false)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_same(other)?;
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        Subspace::new(&self.field, self.ambient, rows)
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_same(other)?;
        self.orthocomplement()
            .sum(&other.orthocomplement())
            .map(|s| s.orthocomplement())
    }

    /// `{v : v·b = 0 for every basis vector b}`.
    pub fn orthocomplement(&self) -> Subspace {
        if self.basis.is_empty() {
            return Subspace::full(&self.field, self.ambient);
        }
        let unit = FieldScalar::one(&self.field);
        let null = null_space_from_rref(&self.basis, &self.pivots(), self.ambient, &unit);
        Subspace::new(&self.field, self.ambient, null).expect("null space vectors are well formed")
    }

    /// Orthogonal projection onto the subspace.
    ///
    /// The Gram matrix of the basis is invertible because the dot product is
    /// anisotropic on a real field; this is asserted in debug builds.
    pub fn project(&self, v: &[FieldScalar]) -> FieldVector {
        if self.basis.is_empty() {
            return zero_vector(&self.field, self.ambient);
        }
        let e = self.basis.len();
        let gram: Vec<FieldVector> = (0..e)
            .map(|i| (0..e).map(|j| dot(&self.basis[i], &self.basis[j])).collect())
            .collect();
        let rhs: FieldVector = self.basis.iter().map(|b| dot(b, v)).collect();
        let unit = FieldScalar::one(&self.field);
        let (y, null) =
            solve_linear(&gram, &rhs, e, &unit).expect("Gram matrix of a basis is invertible");
        debug_assert!(null.is_empty(), "degenerate Gram matrix");
        let mut out = zero_vector(&self.field, self.ambient);
        for (b, yi) in self.basis.iter().zip(&y) {
            out = add(&out, &scale(b, yi));
        }
        out
    }

    /// Largest subspace spanned by rational vectors.
    pub fn rational_part(&self) -> Subspace {
        // v rational lies in L iff A v = 0 for A the basis of L^⊥; expand
        // over the field basis to get a rational system.
        let perp = self.orthocomplement();
        let zeros = zero_vector(&self.field, perp.dim());
        let (m, _) = expand_system(&self.field, perp.basis(), &zeros, self.ambient);
        let mut rows = m;
        let pivots = rref(&mut rows, self.ambient);
        let unit = BigRational::one();
        let null = null_space_from_rref(&rows, &pivots, self.ambient, &unit);
        let vectors = null
            .into_iter()
            .map(|x| {
                x.into_iter()
                    .map(|q| FieldScalar::from_rational(&self.field, q))
                    .collect()
            })
            .collect();
        Subspace::new(&self.field, self.ambient, vectors).expect("rational vectors are well formed")
    }

    pub fn rationality(&self) -> Rationality {
        let rank = self.rational_part().dim();
        let kind = if rank == self.dim() {
            RationalityKind::CompletelyRational
        } else if rank == 0 {
            RationalityKind::Irrational
        } else {
            RationalityKind::Intermediate
        };
        Rationality {
            kind,
            rational_rank: rank,
        }
    }

    /// `L ∩ Z^d`, as a saturated lattice.
    pub fn integer_points(&self) -> lattice::LatticeSubgroup {
        let rational = self.rational_part();
        let rows: Vec<Vec<BigInt>> = rational
            .basis()
            .iter()
            .map(|v| {
                let q: Vec<BigRational> = v.iter().map(|s| s.coeff(0).clone()).collect();
                integer::clear_denominators(&q)
            })
            .collect();
        lattice::LatticeSubgroup::new(self.ambient, rows).saturate()
    }

    /// The same subspace over a field containing this one.
    pub fn embed(&self, target: &Field) -> Result<Subspace> {
        let rows = self
            .basis
            .iter()
            .map(|v| embed_vector(v, target))
            .collect::<Result<Vec<_>>>()?;
        Subspace::new(target, self.ambient, rows)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.basis.iter().map(|b| vector_to_json(b)).collect())
    }

    pub fn from_json(field: &Field, ambient: usize, value: &Value) -> Result<Self> {
        let arr = value
            .as_array()
            .ok_or_else(|| Error::Parse(format!("expected a list of basis vectors, got {value}")))?;
        let vectors = arr
            .iter()
            .map(|v| vector_from_json(field, v, ambient))
            .collect::<Result<Vec<_>>>()?;
        Subspace::new(field, ambient, vectors)
    }
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient
            && same_field(&self.field, &other.field)
            && self.basis == other.basis
    }
}

impl Eq for Subspace {}

impl std::hash::Hash for Subspace {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.ambient.hash(state);
        self.basis.hash(state);
    }
}

impl Ord for Subspace {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.ambient, self.basis.len(), &self.basis).cmp(&(
            other.ambient,
            other.basis.len(),
            &other.basis,
        ))
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "span{{")?;
        for (i, b) in self.basis.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "(")?;
            for (j, x) in b.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        write!(f, "}} ⊆ K^{}", self.ambient)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RationalityKind {
    CompletelyRational,
    Irrational,
    Intermediate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct Rationality {
    pub kind: RationalityKind,
    pub rational_rank: usize,
}

/// An affine set `K + offset` with the offset orthogonal to `K`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AffineCarrier {
    subspace: Subspace,
    offset: FieldVector,
}

impl AffineCarrier {
    /// Carrier `K + point` in `R^d`; the offset is the component of `point`
    /// orthogonal to `K`.
    pub fn new(subspace: Subspace, point: &[FieldScalar]) -> Result<Self> {
        check_vector(&subspace.field, subspace.ambient, point)?;
        let offset = sub(point, &subspace.project(point));
        Ok(AffineCarrier { subspace, offset })
    }

    /// Carrier `π(K + point)` on the torus, with the offset reduced to a
    /// canonical representative of its class modulo `K + Z^d`.
    pub fn new_torus(subspace: Subspace, point: &[FieldScalar]) -> Result<Self> {
        check_vector(&subspace.field, subspace.ambient, point)?;
        let offset = canonical_torus_offset(&subspace, point);
        Ok(AffineCarrier { subspace, offset })
    }

    pub fn linear(subspace: Subspace) -> Self {
        let offset = zero_vector(&subspace.field, subspace.ambient);
        AffineCarrier { subspace, offset }
    }

    pub fn subspace(&self) -> &Subspace {
        &self.subspace
    }

    pub fn offset(&self) -> &FieldVector {
        &self.offset
    }

    pub fn dim(&self) -> usize {
        self.subspace.dim()
    }

    pub fn is_linear(&self) -> bool {
        is_zero_vector(&self.offset)
    }

    pub fn contains_point(&self, p: &[FieldScalar]) -> bool {
        self.subspace.contains(&sub(p, &self.offset))
    }
}

impl Ord for AffineCarrier {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.subspace, &self.offset).cmp(&(&other.subspace, &other.offset))
    }
}

impl PartialOrd for AffineCarrier {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for AffineCarrier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} + {:?}", self.subspace, self.offset)
    }
}

/// Canonical representative of `point` modulo `K + Z^d`, lying in `K^⊥`.
///
/// With `P` the projection onto `K^⊥`, the class is `P(point)` modulo the
/// finitely generated group `P(Z^d)`. Expanded over the rationals that group
/// is a lattice, so Hermite reduction of the expanded vector against it is
/// canonical.
pub fn canonical_torus_offset(k: &Subspace, point: &[FieldScalar]) -> FieldVector {
    let field = k.field();
    let d = k.ambient();
    let perp_part = |v: &[FieldScalar]| sub(v, &k.project(v));
    let x = expand_vector(&perp_part(point));
    let gens: Vec<Vec<BigRational>> = (0..d)
        .map(|i| expand_vector(&perp_part(&unit_vector(field, d, i))))
        .collect();
    let n = x.len();
    let denom = gens
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let denom_q = BigRational::from_integer(denom.clone());
    let int_rows: Vec<Vec<BigInt>> = gens
        .iter()
        .map(|g| g.iter().map(|q| (q * &denom_q).to_integer()).collect())
        .collect();
    let hnf = hermite_normal_form(&int_rows, n);
    let mut y: Vec<BigRational> = x.iter().map(|q| q * &denom_q).collect();
    for row in &hnf {
        let p = row.iter().position(|c| !c.is_zero()).expect("nonzero HNF row");
        let h = BigRational::from_integer(row[p].clone());
        let f = (&y[p] / &h).floor();
        if f.is_zero() {
            continue;
        }
        for (yi, ri) in y.iter_mut().zip(row) {
            *yi -= &f * BigRational::from_integer(ri.clone());
        }
    }
    let y: Vec<BigRational> = y.iter().map(|q| q / &denom_q).collect();
    decode_vector(field, &y)
}

/// Integer points `n` with `A (c - n) = 0`, where `A` has field entries.
///
/// Expanding over the field basis turns the condition into a rational
/// system `M n = r`; integer feasibility is then decided through the Smith
/// normal form. Returns a witness and the lattice of all solutions.
pub fn solve_integer_affine(a: &[FieldVector], c: &[FieldScalar]) -> Option<IntegerSolution> {
    let d = c.len();
    if a.is_empty() {
        return Some(IntegerSolution {
            particular: vec![BigInt::zero(); d],
            lattice: integer::identity(d),
        });
    }
    let field = c[0].field();
    let rhs: FieldVector = a.iter().map(|row| dot(row, c)).collect();
    let (m, r) = expand_system(field, a, &rhs, d);
    solve_integer_system(&m, &r, d)
}

/// True when `point ∈ π(subspace)` on the torus, i.e. `point ∈ K + Z^d`.
pub fn in_torus_subspace(k: &Subspace, point: &[FieldScalar]) -> bool {
    solve_integer_affine(k.orthocomplement().basis(), point).is_some()
}
