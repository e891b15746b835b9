//! Integer matrices: Smith and Hermite normal forms and integer solving.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type IntMatrix = Vec<Vec<BigInt>>;

pub fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

pub fn int_matrix(rows: &[&[i64]]) -> IntMatrix {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).map(|k| &row[k] * &b[k][j]).sum())
                .collect()
        })
        .collect()
}

/// `U * M * V = D` with `U`, `V` unimodular and `D` diagonal, nonnegative,
/// each diagonal entry dividing the next.
#[derive(Debug, Clone)]
pub struct Snf {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub rank: usize,
}

impl Snf {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d[i][i].clone()).collect()
    }
}

pub fn smith_normal_form(m: &IntMatrix, ncols: usize) -> Snf {
    let rows = m.len();
    let mut a = m.clone();
    let mut u = identity(rows);
    let mut v = identity(ncols);
    let mut rank = 0;
    for t in 0..rows.min(ncols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..ncols {
                    if !a[i][j].is_zero()
                        && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return finish(a, u, v, rank);
            };
            a.swap(t, bi);
            u.swap(t, bi);
            swap_cols(&mut a, t, bj);
            swap_cols(&mut v, t, bj);

            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                row_axpy(&mut a, i, t, &q);
                row_axpy(&mut u, i, t, &q);
                if !a[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..ncols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                col_axpy(&mut a, j, t, &q);
                col_axpy(&mut v, j, t, &q);
                if !a[t][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            let offending = (t + 1..rows).find(|&i| {
                (t + 1..ncols).any(|j| !a[i][j].is_multiple_of(&a[t][t]))
            });
            match offending {
                Some(i) => {
                    let one = BigInt::from(-1);
                    row_axpy(&mut a, t, i, &one);
                    row_axpy(&mut u, t, i, &one);
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -&*x;
            }
            for x in u[t].iter_mut() {
                *x = -&*x;
            }
        }
        rank += 1;
    }
    finish(a, u, v, rank)
}

fn finish(d: IntMatrix, u: IntMatrix, v: IntMatrix, rank: usize) -> Snf {
    Snf { u, d, v, rank }
}

fn swap_cols(m: &mut IntMatrix, i: usize, j: usize) {
    if i != j {
        for row in m.iter_mut() {
            row.swap(i, j);
        }
    }
}

/// row_dst -= q * row_src
fn row_axpy(m: &mut IntMatrix, dst: usize, src: usize, q: &BigInt) {
    let src_row = m[src].clone();
    for (x, s) in m[dst].iter_mut().zip(&src_row) {
        *x -= q * s;
    }
}

/// col_dst -= q * col_src
fn col_axpy(m: &mut IntMatrix, dst: usize, src: usize, q: &BigInt) {
    for row in m.iter_mut() {
        let s = row[src].clone();
        row[dst] -= q * s;
    }
}

/// Row-style Hermite normal form of the lattice spanned by `rows`: echelon
/// rows with positive pivots and entries above each pivot reduced into
/// `[0, pivot)`. Zero rows are dropped. Equal lattices give equal output.
pub fn hermite_normal_form(rows: &IntMatrix, ncols: usize) -> IntMatrix {
    let mut a: IntMatrix = rows.clone();
    let mut r = 0;
    for c in 0..ncols {
        if r == a.len() {
            break;
        }
        loop {
            let best = (r..a.len())
                .filter(|&i| !a[i][c].is_zero())
                .min_by(|&i, &j| a[i][c].abs().cmp(&a[j][c].abs()));
            let Some(b) = best else { break };
            a.swap(r, b);
            let mut done = true;
            for i in r + 1..a.len() {
                if a[i][c].is_zero() {
                    continue;
                }
                let q = a[i][c].div_floor(&a[r][c]);
                row_axpy(&mut a, i, r, &q);
                if !a[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if a[r][c].is_zero() {
            continue;
        }
        if a[r][c].is_negative() {
            for x in a[r].iter_mut() {
                *x = -&*x;
            }
        }
        for i in 0..r {
            let q = a[i][c].div_floor(&a[r][c]);
            if !q.is_zero() {
                row_axpy(&mut a, i, r, &q);
            }
        }
        r += 1;
    }
    a.truncate(r);
    a
}

/// Integer solutions of a rational linear system `M x = b`.
#[derive(Debug, Clone, PartialEq)]
pub struct IntegerSolution {
    pub particular: Vec<BigInt>,
    /// Basis of the homogeneous solution lattice.
    pub lattice: Vec<Vec<BigInt>>,
}

/// Scales a rational row (with right-hand side) to coprime integers.
pub(crate) fn clear_denominators(row: &[BigRational]) -> Vec<BigInt> {
    let l = row
        .iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    row.iter().map(|q| (q * &l).to_integer()).collect()
}

pub fn solve_integer_system(
    m: &[Vec<BigRational>],
    b: &[BigRational],
    ncols: usize,
) -> Option<IntegerSolution> {
    let mut int_rows = Vec::with_capacity(m.len());
    let mut rhs = Vec::with_capacity(m.len());
    for (row, r) in m.iter().zip(b) {
        let mut full = row.clone();
        full.push(r.clone());
        let mut scaled = clear_denominators(&full);
        rhs.push(scaled.pop().expect("nonempty"));
        int_rows.push(scaled);
    }
    let snf = smith_normal_form(&int_rows, ncols);
    let c: Vec<BigInt> = snf
        .u
        .iter()
        .map(|row| row.iter().zip(&rhs).map(|(x, y)| x * y).sum())
        .collect();
    let mut y = vec![BigInt::zero(); ncols];
    for (i, ci) in c.iter().enumerate() {
        if i < snf.rank {
            let (q, r) = ci.div_rem(&snf.d[i][i]);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        } else if !ci.is_zero() {
            return None;
        }
    }
    let particular = (0..ncols)
        .map(|i| (0..ncols).map(|j| &snf.v[i][j] * &y[j]).sum())
        .collect();
    let lattice = (snf.rank..ncols)
        .map(|j| (0..ncols).map(|i| snf.v[i][j].clone()).collect())
        .collect();
    Some(IntegerSolution {
        particular,
        lattice,
    })
}
