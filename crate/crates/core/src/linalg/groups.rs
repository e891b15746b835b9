//! Finitely generated groups of atoms: canonical generators and exact
//! intersection tests against affine conditions.
//!
//! A group coset is `{s + G^T c : c ∈ R^k}` for a shift `s`, generator rows
//! `G` and `R` either `Z` or `Q`; on the torus it is taken modulo `Z^d`. The
//! identity never counts as an atom, so every test asks for a solution whose
//! element is nontrivial.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::elim::{null_space_from_rref, rref, rref_tracked, solve_linear};
use super::expand::{combine, decode_vector, expand_system, expand_vector};
use super::integer::{hermite_normal_form, solve_integer_system};
use super::{dot, is_integer_vector, is_zero_vector, unit_vector, FieldVector};
use crate::scalar::{Field, FieldScalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Ring {
    Z,
    Q,
}

impl Ring {
    pub fn label(self) -> &'static str {
        match self {
            Ring::Z => "Z",
            Ring::Q => "Q",
        }
    }
}

/// Canonical generator rows of the group.
///
/// Ring `Q`: RREF of the rational expansions. Ring `Z`: Hermite form of the
/// scaled expansions; on the torus `Z^d` is adjoined first and generators
/// that are integer vectors are dropped afterwards, so the output depends
/// only on the group modulo `Z^d`.
pub fn canonical_generators(
    field: &Field,
    dim: usize,
    gens: &[FieldVector],
    ring: Ring,
    torus: bool,
) -> Vec<FieldVector> {
    let mut rows: Vec<Vec<BigRational>> = gens.iter().map(|g| expand_vector(g)).collect();
    let out: Vec<Vec<BigRational>> = match ring {
        Ring::Q => {
            rref(&mut rows, dim * field.degree());
            rows
        }
        Ring::Z => {
            if torus {
                rows.extend((0..dim).map(|i| expand_vector(&unit_vector(field, dim, i))));
            }
            let n = dim * field.degree();
            let denom = rows
                .iter()
                .flatten()
                .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            let dq = BigRational::from_integer(denom.clone());
            let ints: Vec<Vec<BigInt>> = rows
                .iter()
                .map(|r| r.iter().map(|q| (q * &dq).to_integer()).collect())
                .collect();
            hermite_normal_form(&ints, n)
                .into_iter()
                .map(|r| {
                    r.into_iter()
                        .map(|x| BigRational::new(x, denom.clone()))
                        .collect()
                })
                .collect()
        }
    };
    out.iter()
        .map(|r| decode_vector(field, r))
        .filter(|v| !(torus && ring == Ring::Z && is_integer_vector(v)))
        .collect()
}

/// An affine condition `A x - S n = b` on a group element `x`, where `n`
/// ranges over integer vectors (`S` absent means no shift).
pub struct AffineCondition<'a> {
    pub a: &'a [FieldVector],
    pub shift: Option<&'a [FieldVector]>,
    pub b: &'a [FieldScalar],
}

fn nontrivial(x: &[FieldScalar], torus: bool) -> bool {
    if torus {
        !is_integer_vector(x)
    } else {
        !is_zero_vector(x)
    }
}

/// A coset `shift + <generators>` over `ring`, on `T^d` when `torus`.
#[derive(Clone, Copy)]
pub struct Coset<'a> {
    pub field: &'a Field,
    pub dim: usize,
    pub generators: &'a [FieldVector],
    pub ring: Ring,
    pub shift: &'a [FieldScalar],
    pub torus: bool,
}

/// True when some nonidentity element of the coset satisfies the condition.
pub fn group_meets(coset: &Coset<'_>, cond: &AffineCondition<'_>) -> bool {
    let Coset {
        field,
        dim,
        generators: gens,
        ring,
        shift: base,
        torus,
    } = *coset;
    let k = gens.len();
    let m = cond.a.len();
    let b: FieldVector = cond
        .b
        .iter()
        .zip(cond.a)
        .map(|(bi, ai)| bi - &dot(ai, base))
        .collect();
    if k == 0 {
        return nontrivial(base, torus) && shift_only(field, cond, &b);
    }
    let s = cond.shift.map_or(0, |sh| sh.first().map_or(0, Vec::len));
    let zero = FieldScalar::zero(field);
    // Field system in the unknowns (c, n).
    let rows: Vec<FieldVector> = (0..m)
        .map(|i| {
            let mut row: FieldVector = gens.iter().map(|g| dot(&cond.a[i], g)).collect();
            if let Some(sh) = cond.shift {
                row.extend(sh[i].iter().map(|x| &zero - x));
            }
            row
        })
        .collect();
    let (mat, rhs) = expand_system(field, &rows, &b, k + s);
    let element = |c: &[BigRational]| super::add(base, &combine(field, dim, gens, c));
    let direction = |c: &[BigRational]| combine(field, dim, gens, c);

    match ring {
        Ring::Z => {
            let Some(sol) = solve_integer_system(&mat, &rhs, k + s) else {
                return false;
            };
            let to_q = |v: &[BigInt]| -> Vec<BigRational> {
                v[..k].iter().cloned().map(BigRational::from_integer).collect()
            };
            nontrivial(&element(&to_q(&sol.particular)), torus)
                || sol
                    .lattice
                    .iter()
                    .any(|l| nontrivial(&direction(&to_q(l)), torus))
        }
        Ring::Q => {
            let mc: Vec<Vec<BigRational>> = mat.iter().map(|r| r[..k].to_vec()).collect();
            let mn: Vec<Vec<BigRational>> = mat.iter().map(|r| r[k..].to_vec()).collect();
            let unit = BigRational::one();
            if s == 0 {
                let Some((c0, null)) = solve_linear(&mc, &rhs, k, &unit) else {
                    return false;
                };
                return null.iter().any(|v| !is_zero_vector(&direction(v)))
                    || nontrivial(&element(&c0), torus);
            }
            let nrows = mc.len();
            let mut echelon = mc.clone();
            let mut track: Vec<Vec<BigRational>> = (0..nrows)
                .map(|i| {
                    (0..nrows)
                        .map(|j| if i == j { unit.clone() } else { BigRational::zero() })
                        .collect()
                })
                .collect();
            let pivots = rref_tracked(&mut echelon, k, Some(&mut track));
            let rank = pivots.len();
            let kernel = null_space_from_rref(&echelon, &pivots, k, &unit);
            if kernel.iter().any(|v| !is_zero_vector(&direction(v))) {
                // Solvability in c does not depend on the kernel, so feasibility
                // alone decides; rescaling along the kernel leaves Z^d.
                return shift_feasible(&track[rank..], &mn, &rhs, s).is_some();
            }
            let Some(sol) = shift_feasible(&track[rank..], &mn, &rhs, s) else {
                return false;
            };
            // c(n) = E (rhs - M_n n) read off at the pivots.
            let c_of = |n: &[BigInt], with_rhs: bool| -> Vec<BigRational> {
                let mut v: Vec<BigRational> = if with_rhs {
                    rhs.clone()
                } else {
                    vec![BigRational::zero(); nrows]
                };
                for (vi, row) in v.iter_mut().zip(&mn) {
                    for (x, ni) in row.iter().zip(n) {
                        *vi -= x * BigRational::from_integer(ni.clone());
                    }
                }
                let mut c = vec![BigRational::zero(); k];
                for (i, &p) in pivots.iter().enumerate() {
                    c[p] = track[i].iter().zip(&v).map(|(e, x)| e * x).sum();
                }
                c
            };
            nontrivial(&element(&c_of(&sol.particular, true)), torus)
                || sol
                    .lattice
                    .iter()
                    .any(|l| nontrivial(&direction(&c_of(l, false)), torus))
        }
    }
}

/// Feasibility of `-S n = b` alone, for a coset with no generators.
fn shift_only(field: &Field, cond: &AffineCondition<'_>, b: &[FieldScalar]) -> bool {
    let Some(sh) = cond.shift else {
        return b.iter().all(FieldScalar::is_zero);
    };
    let s = sh.first().map_or(0, Vec::len);
    let (mat, rhs) = expand_system(field, sh, b, s);
    let neg: Vec<Vec<BigRational>> = mat.iter().map(|r| r.iter().map(|x| -x).collect()).collect();
    solve_integer_system(&neg, &rhs, s).is_some()
}

/// Integer `n` with `P M_n n = P rhs`, `P` spanning the left null space.
fn shift_feasible(
    left_null: &[Vec<BigRational>],
    mn: &[Vec<BigRational>],
    rhs: &[BigRational],
    s: usize,
) -> Option<super::integer::IntegerSolution> {
    let pm: Vec<Vec<BigRational>> = left_null
        .iter()
        .map(|p| {
            (0..s)
                .map(|j| p.iter().zip(mn).map(|(x, row)| x * &row[j]).sum())
                .collect()
        })
        .collect();
    let pr: Vec<BigRational> = left_null
        .iter()
        .map(|p| p.iter().zip(rhs).map(|(x, y)| x * y).sum())
        .collect();
    solve_integer_system(&pm, &pr, s)
}

/// True when the nontrivial point `x` lies in the coset (modulo `Z^d` on
/// the torus).
pub fn coset_contains(coset: &Coset<'_>, x: &[FieldScalar]) -> bool {
    let ident: Vec<FieldVector> = (0..coset.dim)
        .map(|i| unit_vector(coset.field, coset.dim, i))
        .collect();
    let cond = AffineCondition {
        a: &ident,
        shift: if coset.torus { Some(&ident) } else { None },
        b: x,
    };
    group_meets(coset, &cond)
}

/// Canonical shift of the coset `shift + <generators>` (plus `Z^d` on the
/// torus): the expanded shift reduced against the rational span (ring `Q`)
/// and then against the Hermite form of the remaining lattice.
pub fn canonical_shift(
    field: &Field,
    dim: usize,
    gens: &[FieldVector],
    ring: Ring,
    torus: bool,
    shift: &[FieldScalar],
) -> FieldVector {
    let n = dim * field.degree();
    let mut span: Vec<Vec<BigRational>> = Vec::new();
    let mut lattice: Vec<Vec<BigRational>> = Vec::new();
    match ring {
        Ring::Q => span = gens.iter().map(|g| expand_vector(g)).collect(),
        Ring::Z => lattice = gens.iter().map(|g| expand_vector(g)).collect(),
    }
    if torus {
        lattice.extend((0..dim).map(|i| expand_vector(&unit_vector(field, dim, i))));
    }
    let pivots = rref(&mut span, n);
    let reduce_span = |v: &mut Vec<BigRational>| {
        for (row, &p) in span.iter().zip(&pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                *x -= &f * r;
            }
        }
    };
    let mut x = expand_vector(shift);
    reduce_span(&mut x);
    for g in lattice.iter_mut() {
        reduce_span(g);
    }
    let denom = lattice
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let dq = BigRational::from_integer(denom);
    let ints: Vec<Vec<BigInt>> = lattice
        .iter()
        .map(|r| r.iter().map(|q| (q * &dq).to_integer()).collect())
        .collect();
    let mut y: Vec<BigRational> = x.iter().map(|q| q * &dq).collect();
    for row in hermite_normal_form(&ints, n) {
        let p = row.iter().position(|c| !c.is_zero()).expect("nonzero HNF row");
        let f = (&y[p] / BigRational::from_integer(row[p].clone())).floor();
        if f.is_zero() {
            continue;
        }
        for (yi, ri) in y.iter_mut().zip(&row) {
            *yi -= &f * BigRational::from_integer(ri.clone());
        }
    }
    let y: Vec<BigRational> = y.iter().map(|q| q / &dq).collect();
    decode_vector(field, &y)
}
