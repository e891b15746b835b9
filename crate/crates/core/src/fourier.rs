//! Floating-point Fourier transforms of measure representatives, used as an
//! independent numerical check of the symbolic classifier.
//!
//! Convention: `σ̂(t) = ∫ e^{-2πi a·t} dσ(a)`. A box representative is the
//! uniform measure on `anchor + Σ [0, 1] g_j`, so
//! `σ̂(t) = w e^{-2πi anchor·t} Π_j e^{-πi g_j·t} sinc(π g_j·t)`.

use num_complex::Complex64;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::linalg::groups::Ring;
use crate::linalg::{
    add, dot, int_vector, is_integer_vector, is_zero_vector, reduce_mod_lattice, scale, sub,
    to_f64_vector, FieldVector, Subspace,
};
use crate::measure::{Kind, SymbolicMeasure};
use crate::scalar::FieldScalar;

pub const DEFAULT_PERIODIZATION: usize = 8;
/// Wiener batches used for the spread estimate.
const BATCHES: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FtConfig {
    /// Lattice translates `‖n‖∞ ≤ periodization` kept for periodized
    /// families. The dropped weight is below `(2N+3)^d 2^{-N}` relative.
    pub periodization: usize,
    /// Coefficient bound for atom groups; `None` rejects them.
    pub group_truncation: Option<usize>,
}

impl Default for FtConfig {
    fn default() -> Self {
        FtConfig {
            periodization: DEFAULT_PERIODIZATION,
            group_truncation: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimatorConfig {
    pub samples: usize,
    pub radius: f64,
    pub seed: u64,
    pub tolerance: f64,
    pub ft: FtConfig,
    pub execution: Execution,
}

impl Default for EstimatorConfig {
    fn default() -> Self {
        EstimatorConfig {
            samples: 4096,
            radius: 200.0,
            seed: 0,
            tolerance: 0.05,
            ft: FtConfig::default(),
            execution: Execution::default(),
        }
    }
}

impl EstimatorConfig {
    pub fn validate(&self) -> Result<()> {
        if self.samples == 0 {
            return Err(Error::InvalidInput("samples must be >= 1".into()));
        }
        if !(self.radius > 0.0 && self.radius.is_finite()) {
            return Err(Error::InvalidInput("radius must be positive".into()));
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "samples": self.samples,
            "radius": self.radius,
            "seed": self.seed,
            "tolerance": self.tolerance,
            "periodization": self.ft.periodization,
            "group_truncation": self.ft.group_truncation,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FtSample {
    pub t: Vec<f64>,
    pub value: Complex64,
}

/// One summand of the representative, with exact data kept for lattice
/// evaluation.
#[derive(Debug, Clone)]
struct Piece {
    weight: f64,
    anchor: FieldVector,
    segments: Vec<FieldVector>,
    anchor_f: Vec<f64>,
    segments_f: Vec<Vec<f64>>,
}

impl Piece {
    fn new(weight: f64, anchor: FieldVector, segments: Vec<FieldVector>) -> Self {
        Piece {
            weight,
            anchor_f: to_f64_vector(&anchor),
            segments_f: segments.iter().map(|g| to_f64_vector(g)).collect(),
            anchor,
            segments,
        }
    }
}

fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-8 {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

fn dotf(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `e^{-2πi x}` with the argument reduced first.
fn cis_neg(x: f64) -> Complex64 {
    let r = x - x.round();
    Complex64::from_polar(1.0, -2.0 * PI * r)
}

/// Segment factor `e^{-πi s} sinc(π s)`.
fn segment_factor(s: f64) -> Complex64 {
    let half = s / 2.0;
    cis_neg(half) * sinc(PI * s)
}

fn coefficient_values(ring: Ring, bound: usize) -> Vec<(i64, i64)> {
    let b = bound as i64;
    match ring {
        Ring::Z => (-b..=b).map(|p| (p, 1)).collect(),
        Ring::Q => {
            let mut out = vec![(0, 1)];
            for q in 1..=b.max(1) {
                for p in -b..=b {
                    if p != 0 && p.gcd(&q) == 1 {
                        out.push((p, q));
                    }
                }
            }
            out
        }
    }
}

/// Elements `shift + Σ c_i g_i` with coefficients from the truncated ring,
/// excluding the identity, in enumeration order.
pub fn group_elements(
    m: &SymbolicMeasure,
    generators: &[FieldVector],
    ring: Ring,
    shift: &[FieldScalar],
    bound: usize,
) -> Vec<FieldVector> {
    let field = m.field();
    let values = coefficient_values(ring, bound);
    let mut out = Vec::new();
    let mut idx = vec![0usize; generators.len()];
    loop {
        let mut x = shift.to_vec();
        for (g, &k) in generators.iter().zip(&idx) {
            let (p, q) = values[k];
            if p != 0 {
                x = add(&x, &scale(g, &FieldScalar::from_ratio(field, p, q)));
            }
        }
        let trivial = if m.is_modular() {
            is_integer_vector(&x)
        } else {
            is_zero_vector(&x)
        };
        if !trivial {
            out.push(if m.is_modular() { reduce_mod_lattice(&x) } else { x });
        }
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                return out;
            }
            idx[pos] += 1;
            if idx[pos] < values.len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// A measure compiled for repeated transform evaluation.
#[derive(Debug, Clone)]
pub struct Transform {
    dim: usize,
    periodized: Option<(usize, f64)>,
    pieces: Vec<Piece>,
}

fn periodization_norm(d: usize, n: usize) -> f64 {
    (0..=n)
        .map(|k| {
            let shell = (2 * k + 1).pow(d as u32) - if k == 0 { 0 } else { (2 * k - 1).pow(d as u32) };
            shell as f64 * 0.5f64.powi(k as i32)
        })
        .sum()
}

impl Transform {
    pub fn new(m: &SymbolicMeasure, cfg: &FtConfig) -> Result<Self> {
        let mut pieces = Vec::new();
        for c in m.components() {
            match c.kind() {
                Kind::AtomGroup {
                    generators,
                    ring,
                    shift,
                } => {
                    let bound = cfg.group_truncation.ok_or_else(|| {
                        Error::Unsupported(
                            "atom groups need a truncation count for Fourier evaluation".into(),
                        )
                    })?;
                    let w = c.mass().to_f64().unwrap_or(f64::NAN);
                    for x in group_elements(m, generators, *ring, shift, bound) {
                        pieces.push(Piece::new(w, x, Vec::new()));
                    }
                }
                _ => {
                    for r in c.reps() {
                        pieces.push(Piece::new(
                            r.weight.to_f64().unwrap_or(f64::NAN),
                            r.anchor.clone(),
                            r.segments.clone(),
                        ));
                    }
                }
            }
        }
        let periodized = m
            .periodized()
            .then(|| (cfg.periodization, 1.0 / periodization_norm(m.dim(), cfg.periodization)));
        Ok(Transform {
            dim: m.dim(),
            periodized,
            pieces,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn total_weight(&self) -> f64 {
        self.pieces.iter().map(|p| p.weight).sum()
    }

    /// Normalized `Σ_{‖n‖∞≤N} 2^{-‖n‖∞} e^{-2πi n·t}`, evaluated shell by
    /// shell through Dirichlet kernels (the sum is real).
    fn periodization_factor(&self, t: &[f64]) -> f64 {
        let Some((n, norm)) = self.periodized else {
            return 1.0;
        };
        let kernel = |k: usize| -> f64 {
            t.iter()
                .map(|&x| 1.0 + 2.0 * (1..=k).map(|m| (2.0 * PI * m as f64 * x).cos()).sum::<f64>())
                .product()
        };
        let mut total = 0.0;
        let mut prev = 0.0;
        for k in 0..=n {
            let cur = kernel(k);
            total += 0.5f64.powi(k as i32) * (cur - prev);
            prev = cur;
        }
        total * norm
    }

    pub fn eval(&self, t: &[f64]) -> Complex64 {
        assert_eq!(t.len(), self.dim, "evaluation point has the wrong dimension");
        let base: Complex64 = self
            .pieces
            .iter()
            .map(|p| {
                let mut z = cis_neg(dotf(&p.anchor_f, t)) * p.weight;
                for g in &p.segments_f {
                    z *= segment_factor(dotf(g, t));
                }
                z
            })
            .sum();
        base * self.periodization_factor(t)
    }

    /// Evaluation at a lattice point with phases reduced exactly in the
    /// field before rounding. Periodization is invisible there.
    pub fn eval_lattice(&self, n: &[i64]) -> Complex64 {
        assert_eq!(n.len(), self.dim, "evaluation point has the wrong dimension");
        let Some(first) = self.pieces.first() else {
            return Complex64::new(0.0, 0.0);
        };
        let nv = int_vector(first.anchor[0].field(), n);
        self.pieces
            .iter()
            .map(|p| {
                let phase = dot(&p.anchor, &nv).reduce_mod_one().to_f64();
                let mut z = cis_neg(phase) * p.weight;
                for g in &p.segments {
                    z *= segment_factor(dot(g, &nv).to_f64());
                }
                z
            })
            .sum()
    }
}

pub fn ft(m: &SymbolicMeasure, t: &[f64], cfg: &FtConfig) -> Result<Complex64> {
    if t.len() != m.dim() {
        return Err(Error::DimensionMismatch {
            expected: m.dim(),
            got: t.len(),
        });
    }
    Ok(Transform::new(m, cfg)?.eval(t))
}

pub fn ft_lattice(m: &SymbolicMeasure, n: &[i64], cfg: &FtConfig) -> Result<Complex64> {
    if n.len() != m.dim() {
        return Err(Error::DimensionMismatch {
            expected: m.dim(),
            got: n.len(),
        });
    }
    Ok(Transform::new(m, cfg)?.eval_lattice(n))
}

pub fn ft_samples(
    m: &SymbolicMeasure,
    points: &[Vec<f64>],
    cfg: &FtConfig,
    execution: Execution,
) -> Result<Vec<FtSample>> {
    let tr = Transform::new(m, cfg)?;
    for p in points {
        if p.len() != m.dim() {
            return Err(Error::DimensionMismatch {
                expected: m.dim(),
                got: p.len(),
            });
        }
    }
    Ok(exec::map(execution, points, |t| FtSample {
        t: t.clone(),
        value: tr.eval(t),
    }))
}

/// Orthonormal basis of the span of `vs` (numerically dependent vectors
/// are dropped).
pub fn orthonormalize(vs: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> = Vec::new();
    for v in vs {
        let mut w = v.clone();
        for _ in 0..2 {
            for q in &out {
                let c = dotf(&w, q);
                for (x, y) in w.iter_mut().zip(q) {
                    *x -= c * y;
                }
            }
        }
        let norm = dotf(&w, &w).sqrt();
        if norm > 1e-12 {
            out.push(w.into_iter().map(|x| x / norm).collect());
        }
    }
    out
}

fn orthonormal_basis(l: &Subspace) -> Vec<Vec<f64>> {
    orthonormalize(&l.basis().iter().map(|b| to_f64_vector(b)).collect::<Vec<_>>())
}

fn combine(basis: &[Vec<f64>], coeffs: &[f64], dim: usize) -> Vec<f64> {
    let mut t = vec![0.0; dim];
    for (q, c) in basis.iter().zip(coeffs) {
        for (x, y) in t.iter_mut().zip(q) {
            *x += c * y;
        }
    }
    t
}

fn radical_inverse(mut i: u64, base: u64) -> f64 {
    let inv = 1.0 / base as f64;
    let mut f = inv;
    let mut r = 0.0;
    while i > 0 {
        r += f * (i % base) as f64;
        i /= base;
        f *= inv;
    }
    r
}

const PRIMES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// `count` points of the radius-`r` ball in `R^e`: a Halton sequence with
/// a seeded Cranley–Patterson rotation, rejecting cube points outside the
/// ball.
pub fn ball_points(e: usize, r: f64, count: usize, seed: u64) -> Vec<Vec<f64>> {
    assert!(e >= 1 && e <= PRIMES.len(), "ball dimension out of range");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rot: Vec<f64> = (0..e).map(|_| rng.gen::<f64>()).collect();
    let mut out = Vec::with_capacity(count);
    let mut i = 1u64;
    while out.len() < count {
        let p: Vec<f64> = (0..e)
            .map(|k| {
                let u = (radical_inverse(i, PRIMES[k]) + rot[k]).fract();
                2.0 * u - 1.0
            })
            .collect();
        i += 1;
        if dotf(&p, &p) <= 1.0 {
            out.push(p.into_iter().map(|x| x * r).collect());
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct WienerEstimate {
    pub estimate: f64,
    pub imaginary: f64,
    pub spread: f64,
}

impl WienerEstimate {
    pub fn to_json(&self) -> Value {
        json!({"estimate": self.estimate, "imaginary": self.imaginary, "spread": self.spread})
    }
}

fn euclidean_view(m: &SymbolicMeasure) -> Result<SymbolicMeasure> {
    if m.is_torus() {
        m.suspend()
    } else {
        Ok(m.clone())
    }
}

fn check_wall(m: &SymbolicMeasure, l: &Subspace, ell: &[FieldScalar]) -> Result<()> {
    if l.ambient() != m.dim() {
        return Err(Error::DimensionMismatch {
            expected: m.dim(),
            got: l.ambient(),
        });
    }
    if ell.len() != m.dim() || !l.contains(ell) {
        return Err(Error::NotInSubspace("ℓ must lie in the direction L".into()));
    }
    if l.is_zero() {
        return Err(Error::InvalidInput("direction must be a nonzero subspace".into()));
    }
    Ok(())
}

/// Average of `e^{2πi ℓ·t} σ̂(t)` over the radius-`R` ball of `L`; tends to
/// the representative's mass on `L^⊥ + ℓ`. Torus measures are evaluated
/// through their periodized lift.
pub fn wiener_mass(
    m: &SymbolicMeasure,
    l: &Subspace,
    ell: &[FieldScalar],
    cfg: &EstimatorConfig,
) -> Result<WienerEstimate> {
    cfg.validate()?;
    check_wall(m, l, ell)?;
    let lifted = euclidean_view(m)?;
    let tr = Transform::new(&lifted, &cfg.ft)?;
    let basis = orthonormal_basis(l);
    let ell_f = to_f64_vector(ell);
    let d = m.dim();
    let pts = ball_points(basis.len(), cfg.radius, cfg.samples, cfg.seed);
    let values = exec::map(cfg.execution, &pts, |s| {
        let t = combine(&basis, s, d);
        tr.eval(&t) * cis_neg(-dotf(&ell_f, &t))
    });
    let n = values.len() as f64;
    let mean: Complex64 = values.iter().sum::<Complex64>() / n;
    let batch = values.len().div_ceil(BATCHES);
    let means: Vec<f64> = values
        .chunks(batch)
        .map(|ch| ch.iter().map(|z| z.re).sum::<f64>() / ch.len() as f64)
        .collect();
    let mu = means.iter().sum::<f64>() / means.len() as f64;
    let var = means.iter().map(|x| (x - mu).powi(2)).sum::<f64>() / means.len() as f64;
    Ok(WienerEstimate {
        estimate: mean.re,
        imaginary: mean.im,
        spread: var.sqrt(),
    })
}

/// Exact mass of the concrete representative on `L^⊥ + ℓ`, the quantity
/// [`wiener_mass`] estimates. A zonotope piece counts in full when its
/// affine span lies in the wall and not at all otherwise.
pub fn representative_wall_mass(
    m: &SymbolicMeasure,
    l: &Subspace,
    ell: &[FieldScalar],
    cfg: &FtConfig,
) -> Result<f64> {
    check_wall(m, l, ell)?;
    let lifted = euclidean_view(m)?;
    let tr = Transform::new(&lifted, cfg)?;
    let bl = l.basis();
    let on_wall = |x: &[FieldScalar]| bl.iter().all(|b| dot(b, x).is_zero());
    let field = m.field();
    let d = m.dim();
    let mut shifts: Vec<(FieldVector, f64)> = Vec::new();
    match tr.periodized {
        None => shifts.push((crate::linalg::zero_vector(field, d), 1.0)),
        Some((n, norm)) => {
            let b = n as i64;
            let mut idx = vec![-b; d];
            loop {
                let k = idx.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0);
                shifts.push((int_vector(field, &idx), norm * 0.5f64.powi(k as i32)));
                let mut pos = 0;
                while pos < d && idx[pos] == b {
                    idx[pos] = -b;
                    pos += 1;
                }
                if pos == d {
                    break;
                }
                idx[pos] += 1;
            }
        }
    }
    let mut total = 0.0;
    for p in &tr.pieces {
        if !p.segments.iter().all(|g| on_wall(g)) {
            continue;
        }
        let base = sub(&p.anchor, ell);
        for (s, w) in &shifts {
            if on_wall(&add(&base, s)) {
                total += p.weight * w;
            }
        }
    }
    Ok(total)
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecayRow {
    pub radius: f64,
    pub sup: f64,
    /// `max` of `sup` over this and all larger radii.
    pub envelope: f64,
}

/// `sup |σ̂(t)|` over sampled `t ∈ L` with `|t| = r`, for each radius.
pub fn rajchman_probe(
    m: &SymbolicMeasure,
    l: &Subspace,
    radii: &[f64],
    cfg: &EstimatorConfig,
) -> Result<Vec<DecayRow>> {
    if l.ambient() != m.dim() {
        return Err(Error::DimensionMismatch {
            expected: m.dim(),
            got: l.ambient(),
        });
    }
    if l.is_zero() {
        return Err(Error::InvalidInput("direction must be a nonzero subspace".into()));
    }
    let tr = Transform::new(&euclidean_view(m)?, &cfg.ft)?;
    let basis = orthonormal_basis(l);
    let e = basis.len();
    let dirs: Vec<Vec<f64>> = if e == 1 {
        vec![vec![1.0], vec![-1.0]]
    } else {
        ball_points(e, 1.0, 64, cfg.seed)
            .into_iter()
            .filter(|p| dotf(p, p) > 0.01)
            .map(|p| {
                let n = dotf(&p, &p).sqrt();
                p.into_iter().map(|x| x / n).collect()
            })
            .collect()
    };
    let d = m.dim();
    let sups = exec::map(cfg.execution, radii, |&r| {
        dirs.iter()
            .map(|u| {
                let s: Vec<f64> = u.iter().map(|x| x * r).collect();
                tr.eval(&combine(&basis, &s, d)).norm()
            })
            .fold(0.0, f64::max)
    });
    let mut rows: Vec<DecayRow> = radii
        .iter()
        .zip(&sups)
        .map(|(&radius, &sup)| DecayRow {
            radius,
            sup,
            envelope: sup,
        })
        .collect();
    for i in (0..rows.len().saturating_sub(1)).rev() {
        rows[i].envelope = rows[i].envelope.max(rows[i + 1].envelope);
    }
    Ok(rows)
}

pub fn decay_table_json(rows: &[DecayRow]) -> Value {
    Value::Array(
        rows.iter()
            .map(|r| json!({"radius": r.radius, "sup": r.sup, "envelope": r.envelope}))
            .collect(),
    )
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConstancyReport {
    pub passed: bool,
    pub max_deviation: f64,
    pub trials: usize,
}

/// Checks `|σ̂(t + u) − σ̂(t)| < tol` for random `t` and `u ∈ K^⊥`, where
/// `σ` is a single box through the origin with carrier `K`.
pub fn coset_constancy_check(
    m: &SymbolicMeasure,
    tol: f64,
    trials: usize,
    seed: u64,
) -> Result<ConstancyReport> {
    let [c] = m.components() else {
        return Err(Error::InvalidInput("expected a single component".into()));
    };
    let Kind::Box { carrier } = c.kind() else {
        return Err(Error::InvalidInput("not a Box component".into()));
    };
    if !carrier.is_linear() {
        return Err(Error::InvalidInput("the box carrier must pass through the origin".into()));
    }
    let tr = Transform::new(m, &FtConfig::default())?;
    let perp = orthonormal_basis(&carrier.subspace().orthocomplement());
    if perp.is_empty() {
        return Ok(ConstancyReport {
            passed: true,
            max_deviation: 0.0,
            trials: 0,
        });
    }
    let d = m.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let t: Vec<f64> = (0..d).map(|_| rng.gen_range(-5.0..5.0)).collect();
        let coeffs: Vec<f64> = perp.iter().map(|_| rng.gen_range(-10.0..10.0)).collect();
        let u = combine(&perp, &coeffs, d);
        let moved: Vec<f64> = t.iter().zip(&u).map(|(a, b)| a + b).collect();
        worst = worst.max((tr.eval(&moved) - tr.eval(&t)).norm());
    }
    Ok(ConstancyReport {
        passed: worst < tol,
        max_deviation: worst,
        trials,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rational_vector, zero_vector};
    use crate::measure::{Raw, Space};
    use crate::scalar::FieldSpec;

    #[test]
    fn atom_at_origin_is_one() {
        let f = FieldSpec::rationals();
        let m = SymbolicMeasure::new(Space::Euclid(2), &f, false, vec![Raw::atom(zero_vector(&f, 2))])
            .unwrap();
        let z = ft(&m, &[0.3, -7.1], &FtConfig::default()).unwrap();
        assert!((z - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn unit_segment_at_half() {
        let f = FieldSpec::rationals();
        let m = SymbolicMeasure::new(
            Space::Euclid(2),
            &f,
            false,
            vec![Raw::boxed(vec![int_vector(&f, &[1, 0])], zero_vector(&f, 2))],
        )
        .unwrap();
        let z = ft(&m, &[0.5, 0.0], &FtConfig::default()).unwrap();
        // ∫_0^1 e^{-πi x} dx = -2i/π
        assert!((z - Complex64::new(0.0, -2.0 / PI)).norm() < 1e-14);
    }

    #[test]
    fn group_needs_truncation() {
        let f = FieldSpec::new(&[2]).unwrap();
        let g = vec![FieldScalar::sqrt(&f, 2).unwrap()];
        let m = SymbolicMeasure::new(
            Space::Torus(1),
            &f,
            false,
            vec![Raw::group(vec![g], Ring::Z, zero_vector(&f, 1))],
        )
        .unwrap();
        assert!(matches!(ft(&m, &[1.0], &FtConfig::default()), Err(Error::Unsupported(_))));
        let cfg = FtConfig {
            group_truncation: Some(2),
            ..FtConfig::default()
        };
        // four nontrivial elements ±√2, ±2√2 at t = 0
        assert!((ft_lattice(&m, &[0], &cfg).unwrap().re - 4.0).abs() < 1e-12);
    }

    #[test]
    fn periodization_is_normalized() {
        let f = FieldSpec::rationals();
        let m = SymbolicMeasure::new(
            Space::Euclid(2),
            &f,
            true,
            vec![Raw::atom(rational_vector(&f, &[(1, 3), (0, 1)]))],
        )
        .unwrap();
        let tr = Transform::new(&m, &FtConfig::default()).unwrap();
        assert!((tr.eval(&[0.0, 0.0]).re - 1.0).abs() < 1e-12);
        assert!((tr.eval(&[2.0, -1.0]) - tr.eval_lattice(&[2, -1])).norm() < 1e-9);
    }

    #[test]
    fn ball_points_stay_inside() {
        for p in ball_points(3, 2.0, 500, 7) {
            assert!(dotf(&p, &p) <= 4.0 + 1e-12);
        }
        assert_eq!(ball_points(2, 1.0, 10, 1), ball_points(2, 1.0, 10, 1));
    }
}
