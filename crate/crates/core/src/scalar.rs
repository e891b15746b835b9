//! Exact arithmetic in real multiquadratic fields `Q(sqrt m_1, ..., sqrt m_k)`.
//!
//! Elements are stored as rational coordinates over the multiplicative basis
//! formed by products of subsets of the adjoined roots. Basis index `j` is a
//! bitmask: bit `i` set means `sqrt m_i` is a factor. Index 0 is the unit.
//!
//! There is deliberately no sign or ordering by value. Downstream algorithms
//! only need arithmetic and exact zero tests.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::Value;

use crate::error::{Error, Result};

/// Shared handle to a field description.
pub type Field = Arc<FieldSpec>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    roots: Vec<u64>,
    /// `products[mask]` is the product of the roots selected by `mask`.
    products: Vec<u64>,
}

impl FieldSpec {
    /// Builds the field `Q(sqrt r : r in roots)`. Roots are sorted; each must be
    /// square-free, at least 2, and coprime to the others.
    pub fn new(roots: &[u64]) -> Result<Field> {
        let mut roots = roots.to_vec();
        roots.sort_unstable();
        for (i, &r) in roots.iter().enumerate() {
            if r < 2 || !is_square_free(r) {
                return Err(Error::InvalidInput(format!(
                    "field root {r} must be a square-free integer >= 2"
                )));
            }
            for &s in &roots[..i] {
                if r.gcd(&s) != 1 {
                    return Err(Error::InvalidInput(format!(
                        "field roots {s} and {r} are not coprime"
                    )));
                }
            }
        }
        if roots.len() > 16 {
            return Err(Error::InvalidInput("too many field roots".into()));
        }
        let mut products = vec![1u64; 1 << roots.len()];
        for mask in 1..products.len() {
            let low = mask.trailing_zeros() as usize;
            products[mask] = products[mask & (mask - 1)]
                .checked_mul(roots[low])
                .ok_or_else(|| Error::InvalidInput("field root product overflows".into()))?;
        }
        Ok(Arc::new(FieldSpec { roots, products }))
    }

    pub fn rationals() -> Field {
        FieldSpec::new(&[]).expect("empty root list is valid")
    }

    /// Smallest admissible field whose basis contains every `sqrt n` label:
    /// the roots are the primes dividing the label radicands.
    pub fn covering(radicands: &[u64]) -> Result<Field> {
        let mut primes = Vec::new();
        for &n in radicands {
            let mut m = n;
            let mut p = 2;
            while p * p <= m {
                if m % p == 0 {
                    primes.push(p);
                    while m % p == 0 {
                        m /= p;
                    }
                }
                p += 1;
            }
            if m > 1 {
                primes.push(m);
            }
        }
        primes.sort_unstable();
        primes.dedup();
        FieldSpec::new(&primes)
    }

    pub fn roots(&self) -> &[u64] {
        &self.roots
    }

    /// Number of basis elements, `2^k`.
    pub fn degree(&self) -> usize {
        self.products.len()
    }

    pub fn basis_radicand(&self, index: usize) -> u64 {
        self.products[index]
    }

    pub fn basis_label(&self, index: usize) -> String {
        if index == 0 {
            "1".to_string()
        } else {
            format!("sqrt{}", self.products[index])
        }
    }

    pub fn basis_index(&self, label: &str) -> Option<usize> {
        if label == "1" {
            return Some(0);
        }
        let n: u64 = label.strip_prefix("sqrt")?.parse().ok()?;
        if n == 1 {
            return Some(0);
        }
        self.products.iter().position(|&p| p == n)
    }
}

fn is_square_free(n: u64) -> bool {
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p * p) {
            return false;
        }
        p += 1;
    }
    true
}

pub fn same_field(a: &Field, b: &Field) -> bool {
    Arc::ptr_eq(a, b) || a.roots == b.roots
}

/// An exact element of a [`FieldSpec`].
#[derive(Clone)]
pub struct FieldScalar {
    field: Field,
    coeffs: Vec<BigRational>,
}

impl FieldScalar {
    pub fn zero(field: &Field) -> Self {
        FieldScalar {
            field: field.clone(),
            coeffs: vec![BigRational::zero(); field.degree()],
        }
    }

    pub fn one(field: &Field) -> Self {
        Self::from_rational(field, BigRational::one())
    }

    pub fn from_rational(field: &Field, q: BigRational) -> Self {
        let mut s = Self::zero(field);
        s.coeffs[0] = q;
        s
    }

    pub fn from_int(field: &Field, n: i64) -> Self {
        Self::from_rational(field, BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(field: &Field, num: i64, den: i64) -> Self {
        Self::from_rational(
            field,
            BigRational::new(BigInt::from(num), BigInt::from(den)),
        )
    }

    /// `sqrt n` for a basis radicand `n` of the field.
    pub fn sqrt(field: &Field, n: u64) -> Result<Self> {
        let index = field
            .basis_index(&format!("sqrt{n}"))
            .ok_or_else(|| Error::InvalidInput(format!("sqrt{n} is not a basis element")))?;
        let mut s = Self::zero(field);
        s.coeffs[index] = BigRational::one();
        Ok(s)
    }

    pub fn from_coeffs(field: &Field, coeffs: Vec<BigRational>) -> Result<Self> {
        if coeffs.len() != field.degree() {
            return Err(Error::InvalidInput(format!(
                "expected {} coordinates, got {}",
                field.degree(),
                coeffs.len()
            )));
        }
        Ok(FieldScalar {
            field: field.clone(),
            coeffs,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, index: usize) -> &BigRational {
        &self.coeffs[index]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn is_integer(&self) -> bool {
        self.is_rational() && self.coeffs[0].is_integer()
    }

    /// Rational value when the element lies in `Q`.
    pub fn to_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    pub fn to_f64(&self) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| {
                let radical = (self.field.products[j] as f64).sqrt();
                c.to_f64().unwrap_or(f64::NAN) * radical
            })
            .sum()
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        FieldScalar {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if same_field(&self.field, &other.field) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.add_unchecked(&-other))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn add_unchecked(&self, other: &Self) -> Self {
        FieldScalar {
            field: self.field.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let n = self.field.degree();
        let mut out = vec![BigRational::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                // sqrt(P_i) sqrt(P_j) = P_{i&j} sqrt(P_{i^j})
                let common = BigInt::from(self.field.products[i & j]);
                out[i ^ j] += a * b * common;
            }
        }
        FieldScalar {
            field: self.field.clone(),
            coeffs: out,
        }
    }

    /// Multiplicative inverse, found by solving `self * x = 1` as a rational
    /// linear system in the coordinates of `x`.
    pub fn invert(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.field.degree();
        if n == 1 {
            return Ok(Self::from_rational(&self.field, self.coeffs[0].recip()));
        }
        // column j of the multiplication matrix is self * basis_j
        let mut m = vec![vec![BigRational::zero(); n + 1]; n];
        for j in 0..n {
            let mut basis = Self::zero(&self.field);
            basis.coeffs[j] = BigRational::one();
            let col = self.mul_unchecked(&basis);
            for (i, c) in col.coeffs.into_iter().enumerate() {
                m[i][j] = c;
            }
        }
        m[0][n] = BigRational::one();
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !m[r][col].is_zero())
                .ok_or(Error::DivisionByZero)?;
            m.swap(col, pivot);
            let inv = m[col][col].recip();
            for x in m[col].iter_mut() {
                *x *= &inv;
            }
            for r in 0..n {
                if r != col && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    for c in col..=n {
                        let delta = &f * &m[col][c];
                        m[r][c] -= delta;
                    }
                }
            }
        }
        let coeffs = m.into_iter().map(|row| row[n].clone()).collect();
        Ok(FieldScalar {
            field: self.field.clone(),
            coeffs,
        })
    }

    /// Divides, failing on a zero divisor or field mismatch.
    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.mul_unchecked(&other.invert()?))
    }

    /// Canonical representative of the class of `self` modulo `Z`.
    ///
    /// The rational coordinate is reduced into `[0, 1)`, which is already a
    /// complete invariant of the class. For irrational values a further
    /// integer shift computed from the floating-point value moves the
    /// representative into `[0, 1)` numerically; it is a deterministic
    /// function of the class, so canonical equality is preserved.
    pub fn reduce_mod_one(&self) -> Self {
        let mut out = self.clone();
        out.coeffs[0] = fract(&out.coeffs[0]);
        if !out.is_rational() {
            let shift = out.to_f64().floor();
            if shift.is_finite() && shift != 0.0 {
                out.coeffs[0] -= BigRational::from_integer(BigInt::from(shift as i64));
            }
        }
        out
    }

    /// The same number in a field containing this one.
    pub fn embed(&self, target: &Field) -> Result<Self> {
        let mut out = Self::zero(target);
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let k = target
                .basis_index(&self.field.basis_label(j))
                .ok_or(Error::FieldMismatch)?;
            out.coeffs[k] = c.clone();
        }
        Ok(out)
    }

    /// Encodes as a map from basis labels to reduced fraction strings.
    /// Zero coordinates are omitted.
    pub fn to_json(&self) -> Value {
        let mut map = serde_json::Map::new();
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                map.insert(self.field.basis_label(j), Value::String(c.to_string()));
            }
        }
        Value::Object(map)
    }

    /// Parses the label map encoding. Bare numbers and strings are accepted
    /// as rational shorthands.
    pub fn from_json(field: &Field, value: &Value) -> Result<Self> {
        let mut out = Self::zero(field);
        match value {
            Value::Object(map) => {
                for (label, v) in map {
                    let index = field.basis_index(label).ok_or_else(|| {
                        Error::Parse(format!("basis label {label:?} not in field {:?}", field.roots))
                    })?;
                    out.coeffs[index] += parse_rational_value(v)?;
                }
            }
            Value::String(_) | Value::Number(_) => out.coeffs[0] = parse_rational_value(value)?,
            other => return Err(Error::Parse(format!("not a scalar: {other}"))),
        }
        Ok(out)
    }

    /// Radicands referenced by a scalar encoding, used to infer a field.
    pub fn json_radicands(value: &Value) -> Vec<u64> {
        match value {
            Value::Object(map) => map
                .keys()
                .filter_map(|k| k.strip_prefix("sqrt").and_then(|n| n.parse().ok()))
                .filter(|&n: &u64| n > 1)
                .collect(),
            _ => Vec::new(),
        }
    }
}

pub(crate) fn fract(q: &BigRational) -> BigRational {
    q - q.floor()
}

pub(crate) fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(num, den))
}

fn parse_rational_value(v: &Value) -> Result<BigRational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) if n.is_i64() => Ok(BigRational::from_integer(BigInt::from(
            n.as_i64().expect("checked"),
        ))),
        other => Err(Error::Parse(format!(
            "scalar coordinates must be fraction strings, got {other}"
        ))),
    }
}

impl PartialEq for FieldScalar {
    fn eq(&self, other: &Self) -> bool {
        same_field(&self.field, &other.field) && self.coeffs == other.coeffs
    }
}

impl Eq for FieldScalar {}

impl std::hash::Hash for FieldScalar {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

/// Structural order on coordinates, used only for canonical sorting.
impl Ord for FieldScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs.cmp(&other.coeffs)
    }
}

impl PartialOrd for FieldScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            if wrote {
                write!(f, " {sign} ")?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            if j == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "√{}", self.field.products[j])?;
            } else {
                write!(f, "{mag}·√{}", self.field.products[j])?;
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

// Operator impls panic on mismatched fields; use the `checked_*` methods when
// the operands come from unvalidated input.
macro_rules! binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl<'a> $trait<&'a FieldScalar> for &'a FieldScalar {
            type Output = FieldScalar;
            fn $method(self, rhs: &'a FieldScalar) -> FieldScalar {
                assert!(same_field(&self.field, &rhs.field), "field mismatch");
                $body(self, rhs)
            }
        }
        impl $trait<FieldScalar> for FieldScalar {
            type Output = FieldScalar;
            fn $method(self, rhs: FieldScalar) -> FieldScalar {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $trait<&'a FieldScalar> for FieldScalar {
            type Output = FieldScalar;
            fn $method(self, rhs: &'a FieldScalar) -> FieldScalar {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(Add, add, |a: &FieldScalar, b: &FieldScalar| a.add_unchecked(b));
binop!(Sub, sub, |a: &FieldScalar, b: &FieldScalar| a.add_unchecked(&-b));
binop!(Mul, mul, |a: &FieldScalar, b: &FieldScalar| a.mul_unchecked(b));

impl Neg for &FieldScalar {
    type Output = FieldScalar;
    fn neg(self) -> FieldScalar {
        FieldScalar {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for FieldScalar {
    type Output = FieldScalar;
    fn neg(self) -> FieldScalar {
        -&self
    }
}

/// Label-keyed view used by reports.
pub fn label_map(s: &FieldScalar) -> BTreeMap<String, String> {
    s.coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(j, c)| (s.field.basis_label(j), c.to_string()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q2() -> Field {
        FieldSpec::new(&[2]).unwrap()
    }

    fn q23() -> Field {
        FieldSpec::new(&[2, 3]).unwrap()
    }

    #[test]
    fn field_validation() {
        assert!(FieldSpec::new(&[4]).is_err());
        assert!(FieldSpec::new(&[6, 3]).is_err());
        assert!(FieldSpec::new(&[1]).is_err());
        let f = FieldSpec::new(&[5, 2]).unwrap();
        assert_eq!(f.roots(), &[2, 5]);
        assert_eq!(f.basis_label(3), "sqrt10");
        assert_eq!(f.basis_index("sqrt10"), Some(3));
    }

    #[test]
    fn add_examples() {
        let f = q2();
        let r2 = FieldScalar::sqrt(&f, 2).unwrap();
        let a = FieldScalar::one(&f) + &r2;
        let b = FieldScalar::from_int(&f, 2) - &r2;
        assert_eq!(a + b, FieldScalar::from_int(&f, 3));
        let x = r2.clone();
        assert_eq!(FieldScalar::zero(&f) + &x, x);
        assert_eq!(
            FieldScalar::from_ratio(&f, 1, 2) + FieldScalar::from_ratio(&f, 1, 3),
            FieldScalar::from_ratio(&f, 5, 6)
        );
    }

    #[test]
    fn mul_examples() {
        let f = q23();
        let r2 = FieldScalar::sqrt(&f, 2).unwrap();
        let r3 = FieldScalar::sqrt(&f, 3).unwrap();
        let r6 = FieldScalar::sqrt(&f, 6).unwrap();
        assert_eq!(&r2 * &r2, FieldScalar::from_int(&f, 2));
        assert_eq!(&r2 * &r3, r6);
        let one = FieldScalar::one(&f);
        assert_eq!((&one + &r2) * (&one - &r2), FieldScalar::from_int(&f, -1));
    }

    #[test]
    fn invert_examples() {
        let f = q2();
        let r2 = FieldScalar::sqrt(&f, 2).unwrap();
        assert_eq!(
            FieldScalar::from_int(&f, 2).invert().unwrap(),
            FieldScalar::from_ratio(&f, 1, 2)
        );
        assert_eq!(r2.invert().unwrap(), r2.scale(&BigRational::new(1.into(), 2.into())));
        let one = FieldScalar::one(&f);
        assert_eq!((&one + &r2).invert().unwrap(), &r2 - &one);
        assert!(matches!(FieldScalar::zero(&f).invert(), Err(Error::DivisionByZero)));
    }

    #[test]
    fn zero_tests() {
        let f = q23();
        let r2 = FieldScalar::sqrt(&f, 2).unwrap();
        let r3 = FieldScalar::sqrt(&f, 3).unwrap();
        let r6 = FieldScalar::sqrt(&f, 6).unwrap();
        assert!((&r2 - &r2).is_zero());
        assert!(!FieldScalar::from_rational(
            &f,
            BigRational::new(1.into(), BigInt::from(10u64.pow(9)))
        )
        .is_zero());
        assert!((&r6 - &(&r2 * &r3)).is_zero());
    }

    #[test]
    fn mismatched_fields_error() {
        let a = FieldScalar::one(&q2());
        let b = FieldScalar::one(&q23());
        assert!(matches!(a.checked_add(&b), Err(Error::FieldMismatch)));
        assert!(matches!(a.checked_mul(&b), Err(Error::FieldMismatch)));
    }

    #[test]
    fn json_round_trip_is_bit_exact() {
        let f = q23();
        let s = FieldScalar::from_ratio(&f, -3, 4) + FieldScalar::sqrt(&f, 6).unwrap().scale(
            &BigRational::new(5.into(), 7.into()),
        );
        let v = s.to_json();
        assert_eq!(v.to_string(), r#"{"1":"-3/4","sqrt6":"5/7"}"#);
        let back = FieldScalar::from_json(&f, &v).unwrap();
        assert_eq!(back, s);
        assert_eq!(back.to_json().to_string(), v.to_string());
        assert_eq!(FieldScalar::zero(&f).to_json().to_string(), "{}");
        assert!(FieldScalar::from_json(&f, &serde_json::json!({"sqrt5": "1"})).is_err());
    }

    #[test]
    fn covering_field_from_labels() {
        let f = FieldSpec::covering(&[6, 5]).unwrap();
        assert_eq!(f.roots(), &[2, 3, 5]);
    }

    #[test]
    fn reduce_mod_one_is_canonical() {
        let f = q2();
        let r2 = FieldScalar::sqrt(&f, 2).unwrap();
        let a = &r2 - &FieldScalar::one(&f);
        let b = &r2 + &FieldScalar::from_int(&f, 4);
        assert_eq!(a.reduce_mod_one(), b.reduce_mod_one());
        let v = a.reduce_mod_one().to_f64();
        assert!((0.0..1.0).contains(&v));
        assert_eq!(
            FieldScalar::from_ratio(&f, -1, 4).reduce_mod_one(),
            FieldScalar::from_ratio(&f, 3, 4)
        );
    }
}
