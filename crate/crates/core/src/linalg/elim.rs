//! Gauss-Jordan elimination shared by rational and field matrices.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::scalar::FieldScalar;

pub trait Elem: Clone {
    fn is_zero_elem(&self) -> bool;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn mul_elem(&self, other: &Self) -> Self;
    fn sub_elem(&self, other: &Self) -> Self;
    /// Inverse of a nonzero element.
    fn inv_elem(&self) -> Self;
}

impl Elem for BigRational {
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn mul_elem(&self, other: &Self) -> Self {
        self * other
    }
    fn sub_elem(&self, other: &Self) -> Self {
        self - other
    }
    fn inv_elem(&self) -> Self {
        self.recip()
    }
}

impl Elem for FieldScalar {
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn zero_like(&self) -> Self {
        FieldScalar::zero(self.field())
    }
    fn one_like(&self) -> Self {
        FieldScalar::one(self.field())
    }
    fn mul_elem(&self, other: &Self) -> Self {
        self * other
    }
    fn sub_elem(&self, other: &Self) -> Self {
        self - other
    }
    fn inv_elem(&self) -> Self {
        self.invert().expect("pivot is nonzero")
    }
}

/// Reduces `rows` (all of length `ncols`) to reduced row echelon form in
/// place, dropping zero rows. Returns the pivot columns. The result is the
/// unique RREF of the row space.
pub fn rref<E: Elem>(rows: &mut Vec<Vec<E>>, ncols: usize) -> Vec<usize> {
    rref_tracked(rows, ncols, None)
}

/// Like [`rref`], additionally applying every row operation to `track`
/// (one row per input row, usually the identity), so that `track` ends up
/// holding `E` with `E * input = [output; 0]`.
pub fn rref_tracked<E: Elem>(
    rows: &mut Vec<Vec<E>>,
    ncols: usize,
    mut track: Option<&mut Vec<Vec<E>>>,
) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero_elem()) else {
            continue;
        };
        rows.swap(r, p);
        if let Some(t) = track.as_deref_mut() {
            t.swap(r, p);
        }
        let inv = rows[r][c].inv_elem();
        for x in rows[r].iter_mut() {
            *x = x.mul_elem(&inv);
        }
        if let Some(t) = track.as_deref_mut() {
            for x in t[r].iter_mut() {
                *x = x.mul_elem(&inv);
            }
        }
        for i in 0..rows.len() {
            if i == r || rows[i][c].is_zero_elem() {
                continue;
            }
            let f = rows[i][c].clone();
            for j in 0..ncols {
                let delta = f.mul_elem(&rows[r][j]);
                rows[i][j] = rows[i][j].sub_elem(&delta);
            }
            if let Some(t) = track.as_deref_mut() {
                for j in 0..t[r].len() {
                    let delta = f.mul_elem(&t[r][j]);
                    t[i][j] = t[i][j].sub_elem(&delta);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    // `track` keeps all rows: those past the rank span the left null space
    rows.truncate(r);
    pivots
}

/// Basis of the right null space `{x : M x = 0}` given `M` in RREF.
pub fn null_space_from_rref<E: Elem>(rref_rows: &[Vec<E>], pivots: &[usize], ncols: usize, unit: &E) -> Vec<Vec<E>> {
    let zero = unit.zero_like();
    let one = unit.one_like();
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![zero.clone(); ncols];
        v[free] = one.clone();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = zero.sub_elem(&rref_rows[i][free]);
        }
        out.push(v);
    }
    out
}

/// Solves `M x = b` for one particular solution (free variables zero), or
/// `None` when inconsistent. Also returns a null-space basis of `M`.
pub fn solve_linear<E: Elem>(
    m: &[Vec<E>],
    b: &[E],
    ncols: usize,
    unit: &E,
) -> Option<(Vec<E>, Vec<Vec<E>>)> {
    let mut aug: Vec<Vec<E>> = m
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let zero = unit.zero_like();
    let mut x = vec![zero; ncols];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = aug[i][ncols].clone();
    }
    let coeff_rows: Vec<Vec<E>> = aug.iter().map(|r| r[..ncols].to_vec()).collect();
    let null = null_space_from_rref(&coeff_rows, &pivots, ncols, unit);
    Some((x, null))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn rref_is_canonical() {
        let mut a = vec![vec![q(2), q(4), q(0)], vec![q(1), q(2), q(1)]];
        let mut b = vec![vec![q(0), q(0), q(3)], vec![q(3), q(6), q(3)]];
        let pa = rref(&mut a, 3);
        let pb = rref(&mut b, 3);
        assert_eq!(a, b);
        assert_eq!(pa, vec![0, 2]);
        assert_eq!(pb, pa);
    }

    #[test]
    fn solves_and_reports_null_space() {
        let m = vec![vec![q(1), q(1)]];
        let (x, null) = solve_linear(&m, &[q(3)], 2, &q(1)).unwrap();
        assert_eq!(x, vec![q(3), q(0)]);
        assert_eq!(null, vec![vec![q(-1), q(1)]]);
        let m = vec![vec![q(1), q(1)], vec![q(2), q(2)]];
        assert!(solve_linear(&m, &[q(1), q(3)], 2, &q(1)).is_none());
    }
}
