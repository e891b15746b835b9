//! Coordinates of field vectors over the rational basis of the field.
//!
//! A vector in `K^d` with `K` of degree `D` becomes a rational vector of
//! length `d * D`, coordinate `i * D + j` holding basis coefficient `j` of
//! entry `i`. Linear systems with rational (or integer) unknowns and field
//! coefficients expand into rational systems this way.

use num_rational::BigRational;
use num_traits::Zero;

use super::FieldVector;
use crate::scalar::{Field, FieldScalar};

pub fn expand_vector(v: &[FieldScalar]) -> Vec<BigRational> {
    v.iter().flat_map(|s| s.coeffs().iter().cloned()).collect()
}

pub fn decode_vector(field: &Field, x: &[BigRational]) -> FieldVector {
    let deg = field.degree();
    x.chunks(deg)
        .map(|c| FieldScalar::from_coeffs(field, c.to_vec()).expect("chunk has field degree"))
        .collect()
}

/// Expands `sum_j a[i][j] x_j = b[i]` (field coefficients, rational unknowns
/// `x`) into an equivalent rational system with `rows * degree` equations.
pub fn expand_system(
    field: &Field,
    a: &[Vec<FieldScalar>],
    b: &[FieldScalar],
    ncols: usize,
) -> (Vec<Vec<BigRational>>, Vec<BigRational>) {
    let deg = field.degree();
    let mut m = Vec::with_capacity(a.len() * deg);
    let mut r = Vec::with_capacity(a.len() * deg);
    for (row, rhs) in a.iter().zip(b) {
        for beta in 0..deg {
            m.push(
                (0..ncols)
                    .map(|j| row[j].coeff(beta).clone())
                    .collect::<Vec<_>>(),
            );
            r.push(rhs.coeff(beta).clone());
        }
    }
    (m, r)
}

/// Rational vector times field matrix columns: `sum_j c_j cols[j]`.
pub fn combine(field: &Field, dim: usize, cols: &[FieldVector], c: &[BigRational]) -> FieldVector {
    let mut out = vec![FieldScalar::zero(field); dim];
    for (col, cj) in cols.iter().zip(c) {
        if cj.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(col) {
            *o = &*o + &x.scale(cj);
        }
    }
    out
}
