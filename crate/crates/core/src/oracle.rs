//! Concrete model actions with exact correlation functions and the spectral
//! measures they are expected to produce.
//!
//! Each model documents a finite family of observables. For an observable
//! `f` the correlation `φ_f(n) = (U^n f, f)` is the Fourier transform of a
//! sub-measure of the expected measure, so [`crosscheck`] compares the two
//! on a lattice box. Sign convention: `φ_f(n) = σ̂_f(n) = ∫ e^{-2πi a·n}
//! dσ_f(a)`, so the coordinate exponential `e^{2πi k x}` of a rotation by
//! `α` has its atom at `−kα`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde_json::{json, Value};
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::fourier::{FtConfig, Transform};
use crate::linalg::groups::{coset_contains, Coset, Ring};
use crate::linalg::{int_vector, rational_vector, scale, vector_from_json, vector_to_json, zero_vector, FieldVector};
use crate::measure::{Kind, Raw, Space, SymbolicMeasure};
use crate::scalar::{Field, FieldScalar, FieldSpec};

/// Truncation used by the rotation sum observables.
pub const SUM_TRUNCATION: usize = 3;
/// Exponents of the `Z`-rotation coordinate exponentials.
const ROTATION_EXPONENTS: [i64; 3] = [1, -1, 2];

#[derive(Debug, Clone, PartialEq)]
pub enum BaseModel {
    /// Bernoulli shift; observable: a centered coordinate-0 cylinder.
    Bernoulli,
    /// Circle rotation `x ↦ x + α`.
    Rotation1 { alpha: FieldScalar },
}

#[derive(Debug, Clone, PartialEq)]
pub enum ActionModel {
    /// `Z^d` acting on the circle by `x ↦ x + n·α`.
    Rotation { alphas: FieldVector },
    /// `Z^d` acting coordinatewise on a product of `d` base systems.
    ProductType { factors: Vec<BaseModel> },
    /// `Z^d` acting on `X^M` with factor `i` driven by `S^{n·m_i}`.
    BergelsonWard { base: BaseModel, vectors: Vec<Vec<i64>> },
    /// Level-`J` factor of the `q`-adic odometer in each of `dim`
    /// coordinates.
    OdometerEigen { q: u64, level: u32, dim: usize },
}

#[derive(Debug, Clone, PartialEq)]
enum ObsSpec {
    Exp(i64),
    /// Sum of `e^{2πi k·x}` over a truncated group, `k ≠ 0`.
    GroupSum,
    /// Per-factor observable index (`None` = constant).
    Tensor(Vec<Option<usize>>),
    Character(Vec<i64>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Observable {
    pub name: String,
    spec: ObsSpec,
}

fn base_observables(b: &BaseModel) -> Vec<String> {
    match b {
        BaseModel::Bernoulli => vec!["cyl".into()],
        BaseModel::Rotation1 { .. } => ROTATION_EXPONENTS.iter().map(|k| format!("exp({k})")).collect(),
    }
}

fn base_field(b: &BaseModel) -> Option<Field> {
    match b {
        BaseModel::Bernoulli => None,
        BaseModel::Rotation1 { alpha } => Some(alpha.field().clone()),
    }
}

/// `e^{2πi x}` for an exact field element, reduced modulo 1 first.
fn character(x: &FieldScalar) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * x.reduce_mod_one().to_f64())
}

fn base_correlation(b: &BaseModel, obs: usize, k: i64) -> Complex64 {
    match b {
        BaseModel::Bernoulli => Complex64::new(if k == 0 { 1.0 } else { 0.0 }, 0.0),
        BaseModel::Rotation1 { alpha } => {
            let e = ROTATION_EXPONENTS[obs];
            let q = num_rational::BigRational::from_integer((e * k).into());
            character(&alpha.scale(&q))
        }
    }
}

fn dot_int(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl ActionModel {
    pub fn label(&self) -> &'static str {
        match self {
            ActionModel::Rotation { .. } => "rotation",
            ActionModel::ProductType { .. } => "product_type",
            ActionModel::BergelsonWard { .. } => "bergelson_ward",
            ActionModel::OdometerEigen { .. } => "odometer",
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            ActionModel::Rotation { alphas } => alphas.len(),
            ActionModel::ProductType { factors } => factors.len(),
            ActionModel::BergelsonWard { vectors, .. } => vectors.first().map_or(0, Vec::len),
            ActionModel::OdometerEigen { dim, .. } => *dim,
        }
    }

    pub fn field(&self) -> Field {
        let found = match self {
            ActionModel::Rotation { alphas } => alphas.first().map(|a| a.field().clone()),
            ActionModel::ProductType { factors } => factors.iter().find_map(base_field),
            ActionModel::BergelsonWard { base, .. } => base_field(base),
            ActionModel::OdometerEigen { .. } => None,
        };
        found.unwrap_or_else(FieldSpec::rationals)
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim() == 0 {
            return Err(Error::InvalidInput("model dimension must be >= 1".into()));
        }
        let field = self.field();
        let same = |b: &BaseModel| {
            base_field(b).is_none_or(|f| crate::scalar::same_field(&f, &field))
        };
        match self {
            ActionModel::Rotation { .. } => {}
            ActionModel::ProductType { factors } => {
                if !factors.iter().all(same) {
                    return Err(Error::FieldMismatch);
                }
            }
            ActionModel::BergelsonWard { vectors, .. } => {
                let d = self.dim();
                for (i, m) in vectors.iter().enumerate() {
                    if m.len() != d {
                        return Err(Error::DimensionMismatch {
                            expected: d,
                            got: m.len(),
                        });
                    }
                    if m.iter().all(|&x| x == 0) {
                        return Err(Error::InvalidInput("Bergelson–Ward vectors must be nonzero".into()));
                    }
                    for other in &vectors[..i] {
                        if parallel(m, other) {
                            return Err(Error::InvalidInput(format!(
                                "Bergelson–Ward vectors {m:?} and {other:?} are parallel"
                            )));
                        }
                    }
                }
            }
            ActionModel::OdometerEigen { q, level, .. } => {
                if *q < 2 {
                    return Err(Error::InvalidInput("odometer base must be >= 2".into()));
                }
                if q.checked_pow(*level).is_none_or(|n| n > 1 << 20) {
                    return Err(Error::InvalidInput("odometer level too large".into()));
                }
            }
        }
        Ok(())
    }

    pub fn observables(&self) -> Vec<Observable> {
        let tensor_name = |parts: &[Option<usize>], names: &dyn Fn(usize) -> Vec<String>| {
            parts
                .iter()
                .enumerate()
                .map(|(i, p)| match p {
                    None => "1".to_string(),
                    Some(j) => names(i)[*j].clone(),
                })
                .collect::<Vec<_>>()
                .join("⊗")
        };
        match self {
            ActionModel::Rotation { alphas } => {
                let mut out: Vec<Observable> = ROTATION_EXPONENTS
                    .iter()
                    .map(|&k| Observable {
                        name: format!("exp({k})"),
                        spec: ObsSpec::Exp(k),
                    })
                    .collect();
                if alphas.iter().any(|a| !a.is_rational()) {
                    out.push(Observable {
                        name: format!("sum|k|<={SUM_TRUNCATION}"),
                        spec: ObsSpec::GroupSum,
                    });
                }
                out
            }
            ActionModel::ProductType { factors } => {
                let names = |i: usize| base_observables(&factors[i]);
                let mut out = Vec::new();
                let mut parts: Vec<Option<usize>> = vec![None; factors.len()];
                loop {
                    let mut pos = 0;
                    loop {
                        if pos == parts.len() {
                            break;
                        }
                        let count = names(pos).len();
                        parts[pos] = match parts[pos] {
                            None => Some(0),
                            Some(j) if j + 1 < count => Some(j + 1),
                            Some(_) => None,
                        };
                        if parts[pos].is_some() {
                            break;
                        }
                        pos += 1;
                    }
                    if pos == parts.len() {
                        break;
                    }
                    out.push(Observable {
                        name: tensor_name(&parts, &names),
                        spec: ObsSpec::Tensor(parts.clone()),
                    });
                }
                // The truncated group sum enumerates the same atoms only when
                // no multiple `kα_i`, `0 < |k| ≤ SUM_TRUNCATION`, is an integer.
                if factors
                    .iter()
                    .all(|b| matches!(b, BaseModel::Rotation1 { alpha } if !alpha.is_rational()))
                {
                    out.push(Observable {
                        name: format!("sum|k|<={SUM_TRUNCATION}"),
                        spec: ObsSpec::GroupSum,
                    });
                }
                out
            }
            ActionModel::BergelsonWard { base, vectors } => {
                let names = |_: usize| base_observables(base);
                let m = vectors.len();
                let mut out = Vec::new();
                for j in 0..base_observables(base).len() {
                    for a in 0..m {
                        for b in a..m {
                            let mut parts = vec![None; m];
                            parts[a] = Some(j);
                            parts[b] = Some(j);
                            out.push(Observable {
                                name: tensor_name(&parts, &names),
                                spec: ObsSpec::Tensor(parts),
                            });
                        }
                    }
                }
                out
            }
            ActionModel::OdometerEigen { dim, .. } => {
                let mut out: Vec<Observable> = (0..*dim)
                    .map(|i| {
                        let mut k = vec![0; *dim];
                        k[i] = 1;
                        Observable {
                            name: format!("chi{k:?}"),
                            spec: ObsSpec::Character(k),
                        }
                    })
                    .collect();
                let ones = vec![1; *dim];
                out.push(Observable {
                    name: format!("chi{ones:?}"),
                    spec: ObsSpec::Character(ones),
                });
                out.push(Observable {
                    name: "sum".into(),
                    spec: ObsSpec::GroupSum,
                });
                out
            }
        }
    }

    fn observable(&self, index: usize) -> Result<Observable> {
        self.observables()
            .into_iter()
            .nth(index)
            .ok_or_else(|| Error::InvalidInput(format!("unknown observable {index} for {}", self.label())))
    }
}

fn parallel(a: &[i64], b: &[i64]) -> bool {
    (0..a.len()).all(|i| (i..a.len()).all(|j| a[i] * b[j] == a[j] * b[i]))
}

fn odometer_period(q: u64, level: u32) -> i64 {
    q.pow(level) as i64
}

/// `φ_f(n)` for the observable with the given index.
pub fn correlation(model: &ActionModel, n: &[i64], obs: usize) -> Result<Complex64> {
    if n.len() != model.dim() {
        return Err(Error::DimensionMismatch {
            expected: model.dim(),
            got: n.len(),
        });
    }
    let o = model.observable(obs)?;
    let one = Complex64::new(1.0, 0.0);
    Ok(match (model, &o.spec) {
        (ActionModel::Rotation { alphas }, ObsSpec::Exp(k)) => {
            let field = model.field();
            let x = crate::linalg::dot(alphas, &int_vector(&field, n));
            character(&x.scale(&num_rational::BigRational::from_integer((*k).into())))
        }
        (ActionModel::Rotation { alphas }, ObsSpec::GroupSum) => {
            let field = model.field();
            let x = crate::linalg::dot(alphas, &int_vector(&field, n));
            let b = SUM_TRUNCATION as i64;
            (-b..=b)
                .filter(|&k| k != 0)
                .map(|k| character(&x.scale(&num_rational::BigRational::from_integer(k.into()))))
                .sum()
        }
        (ActionModel::ProductType { factors }, ObsSpec::Tensor(parts)) => factors
            .iter()
            .zip(parts)
            .zip(n)
            .map(|((b, p), &k)| p.map_or(one, |j| base_correlation(b, j, k)))
            .product(),
        (ActionModel::ProductType { factors }, ObsSpec::GroupSum) => {
            let b = SUM_TRUNCATION as i64;
            let prod: Complex64 = factors
                .iter()
                .zip(n)
                .map(|(f, &k)| match f {
                    BaseModel::Rotation1 { alpha } => (-b..=b)
                        .map(|e| character(&alpha.scale(&num_rational::BigRational::from_integer((e * k).into()))))
                        .sum(),
                    BaseModel::Bernoulli => one,
                })
                .product();
            prod - one
        }
        (ActionModel::BergelsonWard { base, vectors }, ObsSpec::Tensor(parts)) => vectors
            .iter()
            .zip(parts)
            .map(|(m, p)| p.map_or(one, |j| base_correlation(base, j, dot_int(m, n))))
            .product(),
        (ActionModel::OdometerEigen { q, level, .. }, ObsSpec::Character(k)) => {
            let p = odometer_period(*q, *level);
            let f = FieldSpec::rationals();
            character(&FieldScalar::from_ratio(&f, dot_int(k, n).rem_euclid(p), p))
        }
        (ActionModel::OdometerEigen { q, level, dim }, ObsSpec::GroupSum) => {
            let p = odometer_period(*q, *level);
            let full = if n.iter().all(|x| x.rem_euclid(p) == 0) {
                (p as f64).powi(*dim as i32)
            } else {
                0.0
            };
            Complex64::new(full - 1.0, 0.0)
        }
        _ => unreachable!("observable list and correlation rules agree"),
    })
}

fn base_piece(b: &BaseModel, obs: usize, dir: &FieldVector, segments: &mut Vec<FieldVector>, anchor: &mut FieldVector) {
    match b {
        BaseModel::Bernoulli => segments.push(dir.clone()),
        BaseModel::Rotation1 { alpha } => {
            let e = ROTATION_EXPONENTS[obs];
            let c = alpha.scale(&num_rational::BigRational::from_integer((-e).into()));
            *anchor = crate::linalg::add(anchor, &scale(dir, &c));
        }
    }
}

/// The spectral measure class expected for the model on `T^d`.
pub fn expected_measure(model: &ActionModel) -> Result<SymbolicMeasure> {
    model.validate()?;
    let f = model.field();
    let d = model.dim();
    let zero = zero_vector(&f, d);
    let unit = |i: usize| crate::linalg::unit_vector(&f, d, i);
    let raws = match model {
        ActionModel::Rotation { alphas } => vec![Raw::group(vec![alphas.clone()], Ring::Z, zero)],
        ActionModel::ProductType { factors } => {
            if factors.iter().all(|b| *b == BaseModel::Bernoulli) {
                (1u64..1 << d)
                    .map(|mask| {
                        let segs = (0..d).filter(|i| mask >> i & 1 == 1).map(unit).collect();
                        Raw::boxed(segs, zero.clone())
                    })
                    .collect()
            } else if factors.iter().all(|b| matches!(b, BaseModel::Rotation1 { .. })) {
                let gens = factors
                    .iter()
                    .enumerate()
                    .map(|(i, b)| match b {
                        BaseModel::Rotation1 { alpha } => scale(&unit(i), alpha),
                        BaseModel::Bernoulli => unreachable!(),
                    })
                    .collect();
                vec![Raw::group(gens, Ring::Z, zero)]
            } else {
                return Err(Error::Unsupported(
                    "product of Bernoulli and rotation factors has no finite symbolic form".into(),
                ));
            }
        }
        ActionModel::BergelsonWard { base, vectors } => {
            let ms: Vec<FieldVector> = vectors.iter().map(|m| int_vector(&f, m)).collect();
            match base {
                BaseModel::Bernoulli => {
                    let mut raws: Vec<Raw> = ms.iter().map(|m| Raw::boxed(vec![m.clone()], zero.clone())).collect();
                    for a in 0..ms.len() {
                        for b in a + 1..ms.len() {
                            raws.push(Raw::boxed(vec![ms[a].clone(), ms[b].clone()], zero.clone()));
                        }
                    }
                    raws
                }
                BaseModel::Rotation1 { alpha } => {
                    vec![Raw::group(ms.iter().map(|m| scale(m, alpha)).collect(), Ring::Z, zero)]
                }
            }
        }
        ActionModel::OdometerEigen { q, level, .. } => {
            let p = odometer_period(*q, *level);
            let mut raws = Vec::new();
            let mut k = vec![0i64; d];
            loop {
                let mut pos = 0;
                while pos < d && k[pos] == p - 1 {
                    k[pos] = 0;
                    pos += 1;
                }
                if pos == d {
                    break;
                }
                k[pos] += 1;
                let pts: Vec<(i64, i64)> = k.iter().map(|&x| (x, p)).collect();
                raws.push(Raw::atom(rational_vector(&f, &pts)));
            }
            raws
        }
    };
    SymbolicMeasure::new(Space::Torus(d), &f, false, raws)
}

/// Spectral measure of one observable (unit weights) and the transform
/// settings it needs.
pub fn observable_measure(model: &ActionModel, obs: usize) -> Result<(SymbolicMeasure, FtConfig)> {
    model.validate()?;
    let o = model.observable(obs)?;
    let f = model.field();
    let d = model.dim();
    let cfg = FtConfig::default();
    let single = |raw: Raw| SymbolicMeasure::new(Space::Torus(d), &f, false, vec![raw]);
    let m = match (model, &o.spec) {
        (ActionModel::Rotation { alphas }, ObsSpec::Exp(k)) => {
            let c = FieldScalar::from_int(&f, -k);
            single(Raw::atom(scale(alphas, &c)))?
        }
        (ActionModel::Rotation { .. }, ObsSpec::GroupSum)
        | (ActionModel::ProductType { .. }, ObsSpec::GroupSum) => {
            return Ok((
                expected_measure(model)?,
                FtConfig {
                    group_truncation: Some(SUM_TRUNCATION),
                    ..cfg
                },
            ))
        }
        (ActionModel::OdometerEigen { .. }, ObsSpec::GroupSum) => expected_measure(model)?,
        (ActionModel::ProductType { factors }, ObsSpec::Tensor(parts)) => {
            let mut segments = Vec::new();
            let mut anchor = zero_vector(&f, d);
            for (i, (b, p)) in factors.iter().zip(parts).enumerate() {
                if let Some(j) = p {
                    base_piece(b, *j, &crate::linalg::unit_vector(&f, d, i), &mut segments, &mut anchor);
                }
            }
            single(Raw::boxed(segments, anchor))?
        }
        (ActionModel::BergelsonWard { base, vectors }, ObsSpec::Tensor(parts)) => {
            let mut segments = Vec::new();
            let mut anchor = zero_vector(&f, d);
            for (m, p) in vectors.iter().zip(parts) {
                if let Some(j) = p {
                    base_piece(base, *j, &int_vector(&f, m), &mut segments, &mut anchor);
                }
            }
            single(Raw::boxed(segments, anchor))?
        }
        (ActionModel::OdometerEigen { q, level, .. }, ObsSpec::Character(k)) => {
            let p = odometer_period(*q, *level);
            let pts: Vec<(i64, i64)> = k.iter().map(|&x| ((-x).rem_euclid(p), p)).collect();
            single(Raw::atom(rational_vector(&f, &pts)))?
        }
        _ => unreachable!("observable list and measure rules agree"),
    };
    Ok((m, cfg))
}

/// Whether every class of `part` lies inside a class of `whole`.
pub fn is_subordinate(part: &SymbolicMeasure, whole: &SymbolicMeasure) -> bool {
    part.components().iter().all(|c| {
        whole.components().iter().any(|w| {
            if w.kind() == c.kind() {
                return true;
            }
            match (c.kind(), w.kind()) {
                (
                    Kind::Atom { point },
                    Kind::AtomGroup {
                        generators,
                        ring,
                        shift,
                    },
                ) => coset_contains(
                    &Coset {
                        field: whole.field(),
                        dim: whole.dim(),
                        generators,
                        ring: *ring,
                        shift,
                        torus: whole.is_modular(),
                    },
                    point,
                ),
                _ => false,
            }
        })
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Mismatch {
    pub observable: String,
    pub n: Vec<i64>,
    pub expected: Complex64,
    pub got: Complex64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CrosscheckReport {
    pub model: String,
    pub bound: usize,
    pub tolerance: f64,
    pub max_error: f64,
    pub points: usize,
    pub subordinate: bool,
    /// First mismatches, at most [`MAX_REPORTED`].
    pub failures: Vec<Mismatch>,
    pub failure_count: usize,
}

pub const MAX_REPORTED: usize = 20;

impl CrosscheckReport {
    pub fn passed(&self) -> bool {
        self.subordinate && self.failure_count == 0
    }

    pub fn to_json(&self) -> Value {
        let c = |z: Complex64| json!([z.re, z.im]);
        json!({
            "model": self.model,
            "bound": self.bound,
            "tolerance": self.tolerance,
            "max_error": self.max_error,
            "points": self.points,
            "subordinate": self.subordinate,
            "passed": self.passed(),
            "failure_count": self.failure_count,
            "failures": self.failures.iter().map(|m| json!({
                "observable": m.observable,
                "n": m.n,
                "correlation": c(m.expected),
                "transform": c(m.got),
            })).collect::<Vec<_>>(),
        })
    }
}

/// All `n ∈ Z^d` with `‖n‖∞ ≤ bound`, lexicographic.
pub fn lattice_box(d: usize, bound: usize) -> Vec<Vec<i64>> {
    let b = bound as i64;
    let mut out = Vec::new();
    let mut n = vec![-b; d];
    loop {
        out.push(n.clone());
        let mut pos = d;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            if n[pos] < b {
                n[pos] += 1;
                break;
            }
            n[pos] = -b;
        }
    }
}

/// Compares `φ_f(n)` with the transform of each observable's measure,
/// scaled so the two agree at `n = 0`.
pub fn crosscheck(model: &ActionModel, bound: usize, tol: f64, execution: Execution) -> Result<CrosscheckReport> {
    let expected = expected_measure(model)?;
    let grid = lattice_box(model.dim(), bound);
    let origin = vec![0i64; model.dim()];
    let mut report = CrosscheckReport {
        model: model.label().into(),
        bound,
        tolerance: tol,
        max_error: 0.0,
        points: 0,
        subordinate: true,
        failures: Vec::new(),
        failure_count: 0,
    };
    for (i, o) in model.observables().iter().enumerate() {
        let (m, cfg) = observable_measure(model, i)?;
        report.subordinate &= is_subordinate(&m, &expected);
        let tr = Transform::new(&m, &cfg)?;
        let fit = correlation(model, &origin, i)?.re / tr.eval_lattice(&origin).re;
        let rows = exec::map(execution, &grid, |n| -> Result<(Complex64, Complex64)> {
            Ok((correlation(model, n, i)?, tr.eval_lattice(n) * fit))
        });
        for (n, row) in grid.iter().zip(rows) {
            let (phi, got) = row?;
            let err = (phi - got).norm();
            report.points += 1;
            report.max_error = report.max_error.max(err);
            // NaN counts as a mismatch.
            if err.is_nan() || err >= tol {
                report.failure_count += 1;
                if report.failures.len() < MAX_REPORTED {
                    report.failures.push(Mismatch {
                        observable: o.name.clone(),
                        n: n.clone(),
                        expected: phi,
                        got,
                    });
                }
            }
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq)]
pub struct GramReport {
    pub observable: String,
    pub size: usize,
    pub min_eigenvalue: f64,
}

/// Smallest eigenvalue of `[φ(n_i − n_j)]` over the lattice box, one entry
/// per observable. Positive definiteness of `φ` makes each one `≥ 0`.
pub fn gram_check(model: &ActionModel, bound: usize) -> Result<Vec<GramReport>> {
    let grid = lattice_box(model.dim(), bound);
    let k = grid.len();
    let mut out = Vec::new();
    for (o, obs) in model.observables().iter().enumerate() {
        // Hermitian G = A + iB embeds as the real symmetric [[A, -B], [B, A]].
        let mut real = DMatrix::<f64>::zeros(2 * k, 2 * k);
        for (i, a) in grid.iter().enumerate() {
            for (j, b) in grid.iter().enumerate() {
                let diff: Vec<i64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
                let z = correlation(model, &diff, o)?;
                real[(i, j)] = z.re;
                real[(i + k, j + k)] = z.re;
                real[(i, j + k)] = -z.im;
                real[(i + k, j)] = z.im;
            }
        }
        let sym = (&real + real.transpose()) * 0.5;
        let min = sym.symmetric_eigenvalues().iter().copied().fold(f64::INFINITY, f64::min);
        out.push(GramReport {
            observable: obs.name.clone(),
            size: k,
            min_eigenvalue: min,
        });
    }
    Ok(out)
}

fn base_to_json(b: &BaseModel) -> Value {
    match b {
        BaseModel::Bernoulli => json!({"kind": "bernoulli"}),
        BaseModel::Rotation1 { alpha } => json!({"kind": "rotation", "alpha": alpha.to_json()}),
    }
}

pub fn model_to_json(model: &ActionModel) -> Value {
    let mut v = match model {
        ActionModel::Rotation { alphas } => json!({"alphas": vector_to_json(alphas)}),
        ActionModel::ProductType { factors } => {
            json!({"factors": factors.iter().map(base_to_json).collect::<Vec<_>>()})
        }
        ActionModel::BergelsonWard { base, vectors } => {
            json!({"base": base_to_json(base), "vectors": vectors})
        }
        ActionModel::OdometerEigen { q, level, dim } => json!({"q": q, "level": level, "dim": dim}),
    };
    v["kind"] = json!(model.label());
    v["field"] = json!(model.field().roots());
    v
}

fn model_field(value: &Value) -> Result<Field> {
    match value.get("field") {
        Some(Value::Array(roots)) => {
            let roots: Vec<u64> = roots
                .iter()
                .map(|r| r.as_u64().ok_or_else(|| Error::Parse("field roots must be integers".into())))
                .collect::<Result<_>>()?;
            FieldSpec::new(&roots)
        }
        Some(_) => Err(Error::Parse("field must be a list of radicands".into())),
        None => {
            let mut rad = Vec::new();
            crate::measure::codec::collect_radicands(value, &mut rad);
            FieldSpec::covering(&rad)
        }
    }
}

fn base_from_json(field: &Field, v: &Value) -> Result<BaseModel> {
    match v.get("kind").and_then(Value::as_str) {
        Some("bernoulli") => Ok(BaseModel::Bernoulli),
        Some("rotation") => {
            let a = v.get("alpha").ok_or_else(|| Error::Parse("rotation needs alpha".into()))?;
            Ok(BaseModel::Rotation1 {
                alpha: FieldScalar::from_json(field, a)?,
            })
        }
        other => Err(Error::Parse(format!("unknown base model {other:?}"))),
    }
}

fn get<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| Error::Parse(format!("model is missing {key:?}")))
}

fn as_u64(v: &Value, key: &str) -> Result<u64> {
    get(v, key)?
        .as_u64()
        .ok_or_else(|| Error::Parse(format!("{key:?} must be a non-negative integer")))
}

pub fn model_from_json(value: &Value) -> Result<ActionModel> {
    let field = model_field(value)?;
    let kind = get(value, "kind")?.as_str().unwrap_or_default();
    let model = match kind {
        "rotation" => {
            let raw = get(value, "alphas")?;
            let d = raw.as_array().map_or(0, Vec::len);
            ActionModel::Rotation {
                alphas: vector_from_json(&field, raw, d)?,
            }
        }
        "product_type" => ActionModel::ProductType {
            factors: get(value, "factors")?
                .as_array()
                .ok_or_else(|| Error::Parse("factors must be a list".into()))?
                .iter()
                .map(|b| base_from_json(&field, b))
                .collect::<Result<_>>()?,
        },
        "bergelson_ward" => ActionModel::BergelsonWard {
            base: base_from_json(&field, get(value, "base")?)?,
            vectors: serde_json::from_value(get(value, "vectors")?.clone())?,
        },
        "odometer" => ActionModel::OdometerEigen {
            q: as_u64(value, "q")?,
            level: as_u64(value, "level")? as u32,
            dim: as_u64(value, "dim")? as usize,
        },
        other => return Err(Error::Parse(format!("unknown model kind {other:?}"))),
    };
    model.validate()?;
    Ok(model)
}

/// Models shipped with the crate, each with a short name.
pub fn bundled_models() -> Vec<(&'static str, ActionModel)> {
    let q2 = FieldSpec::new(&[2]).expect("valid field");
    let q23 = FieldSpec::new(&[2, 3]).expect("valid field");
    let r2 = FieldScalar::sqrt(&q2, 2).expect("root in field");
    let slope = r2.checked_sub(&FieldScalar::one(&q2)).expect("same field");
    vec![
        (
            "rotation_sqrt2_sqrt3",
            ActionModel::Rotation {
                alphas: vec![
                    FieldScalar::sqrt(&q23, 2).expect("root in field"),
                    FieldScalar::sqrt(&q23, 3).expect("root in field"),
                ],
            },
        ),
        (
            "product_bernoulli",
            ActionModel::ProductType {
                factors: vec![BaseModel::Bernoulli, BaseModel::Bernoulli],
            },
        ),
        (
            "product_rotations",
            ActionModel::ProductType {
                factors: vec![
                    BaseModel::Rotation1 { alpha: slope.clone() },
                    BaseModel::Rotation1 { alpha: r2.scale(&num_rational::BigRational::new(1.into(), 2.into())) },
                ],
            },
        ),
        (
            "bergelson_ward_4",
            ActionModel::BergelsonWard {
                base: BaseModel::Bernoulli,
                vectors: vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![1, -1]],
            },
        ),
        (
            "bergelson_ward_8",
            ActionModel::BergelsonWard {
                base: BaseModel::Bernoulli,
                vectors: bergelson_ward_vectors(),
            },
        ),
        (
            "bergelson_ward_rotation",
            ActionModel::BergelsonWard {
                base: BaseModel::Rotation1 { alpha: slope },
                vectors: vec![vec![1, 0], vec![1, 2]],
            },
        ),
        (
            "odometer_2_3",
            ActionModel::OdometerEigen {
                q: 2,
                level: 3,
                dim: 2,
            },
        ),
    ]
}

/// Eight pairwise non-parallel integer vectors in the plane.
pub fn bergelson_ward_vectors() -> Vec<Vec<i64>> {
    vec![
        vec![1, 0],
        vec![0, 1],
        vec![1, 1],
        vec![1, -1],
        vec![1, 2],
        vec![2, 1],
        vec![1, -2],
        vec![2, -1],
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_correlations() {
        let m = ActionModel::ProductType {
            factors: vec![BaseModel::Bernoulli],
        };
        assert_eq!(correlation(&m, &[0], 0).unwrap(), Complex64::new(1.0, 0.0));
        assert_eq!(correlation(&m, &[5], 0).unwrap(), Complex64::new(0.0, 0.0));
        let bw = ActionModel::BergelsonWard {
            base: BaseModel::Bernoulli,
            vectors: vec![vec![1, 2]],
        };
        assert_eq!(correlation(&bw, &[2, -1], 0).unwrap(), Complex64::new(1.0, 0.0));
        assert!(matches!(correlation(&bw, &[2, -1], 99), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn rotation_character() {
        let f = FieldSpec::new(&[2]).unwrap();
        let a = FieldScalar::sqrt(&f, 2).unwrap().checked_sub(&FieldScalar::one(&f)).unwrap();
        let m = ActionModel::Rotation { alphas: vec![a] };
        let z = correlation(&m, &[3], 0).unwrap();
        let expect = Complex64::from_polar(1.0, 2.0 * PI * 3.0 * (2f64.sqrt() - 1.0));
        assert!((z - expect).norm() < 1e-12);
    }

    #[test]
    fn product_bernoulli_measure() {
        let m = expected_measure(&bundled_models()[1].1).unwrap();
        let dims: Vec<usize> = m.components().iter().map(|c| c.dimension()).collect();
        assert_eq!(dims, vec![1, 1, 2]);
    }

    #[test]
    fn validation() {
        let bad = ActionModel::BergelsonWard {
            base: BaseModel::Bernoulli,
            vectors: vec![vec![1, 1], vec![2, 2]],
        };
        assert!(bad.validate().is_err());
        let mixed = ActionModel::ProductType {
            factors: vec![
                BaseModel::Bernoulli,
                BaseModel::Rotation1 {
                    alpha: FieldScalar::from_ratio(&FieldSpec::rationals(), 1, 3),
                },
            ],
        };
        assert!(matches!(expected_measure(&mixed), Err(Error::Unsupported(_))));
    }

    #[test]
    fn json_round_trip() {
        for (_, m) in bundled_models() {
            let back = model_from_json(&model_to_json(&m)).unwrap();
            assert_eq!(back, m);
        }
    }
}
