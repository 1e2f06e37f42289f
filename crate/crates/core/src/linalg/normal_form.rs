use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::ExactMatrix;
use crate::coeff::xgcd;
use crate::Error;

type Rows = Vec<Vec<BigInt>>;

fn identity(n: usize) -> Rows {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

/// Replaces rows `(i, k)` by `(s·r_i + t·r_k, u·r_i + v·r_k)`.
fn combine_rows(m: &mut Rows, i: usize, k: usize, s: &BigInt, t: &BigInt, u: &BigInt, v: &BigInt) {
    let (ri, rk) = (m[i].clone(), m[k].clone());
    for j in 0..ri.len() {
        m[i][j] = s * &ri[j] + t * &rk[j];
        m[k][j] = u * &ri[j] + v * &rk[j];
    }
}

fn add_row_multiple(m: &mut Rows, target: usize, src: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    let src_row = m[src].clone();
    for (t, s) in m[target].iter_mut().zip(src_row.iter()) {
        *t += q * s;
    }
}

fn negate_row(m: &mut Rows, i: usize) {
    for v in m[i].iter_mut() {
        *v = -&*v;
    }
}

/// Row-style Hermite normal form `H = U·M` with `U` unimodular.
///
/// `H` is in row echelon form with positive pivots, and every entry above a
/// pivot lies in `[0, pivot)`.
pub fn hermite_normal_form(m: &ExactMatrix) -> Result<(ExactMatrix, ExactMatrix), Error> {
    m.require_integers()?;
    let (h, u) = hnf_rows(m.to_bigint_rows(), m.rows(), m.cols());
    Ok((
        ExactMatrix::from_bigint_rows(&h, m.cols()),
        ExactMatrix::from_bigint_rows(&u, m.rows()),
    ))
}

pub(crate) fn hnf_rows(mut h: Rows, nrows: usize, ncols: usize) -> (Rows, Rows) {
    let mut u = identity(nrows);
    let mut r = 0;
    for col in 0..ncols {
        if r == nrows {
            break;
        }
        for i in r + 1..nrows {
            if h[i][col].is_zero() {
                continue;
            }
            let a = h[r][col].clone();
            let b = h[i][col].clone();
            let (g, s, t) = xgcd(&a, &b);
            let (a_g, b_g) = (&a / &g, &b / &g);
            let neg_b = -b_g;
            combine_rows(&mut h, r, i, &s, &t, &neg_b, &a_g);
            combine_rows(&mut u, r, i, &s, &t, &neg_b, &a_g);
        }
        if h[r][col].is_zero() {
            continue;
        }
        if h[r][col].is_negative() {
            negate_row(&mut h, r);
            negate_row(&mut u, r);
        }
        let pivot = h[r][col].clone();
        for i in 0..r {
            let q = -h[i][col].div_floor(&pivot);
            add_row_multiple(&mut h, i, r, &q);
            add_row_multiple(&mut u, i, r, &q);
        }
        r += 1;
    }
    (h, u)
}

/// Smith normal form `S = U·M·V` with `U`, `V` unimodular, `S` diagonal with
/// non-negative entries forming a divisibility chain (zeros last).
pub fn smith_normal_form(
    m: &ExactMatrix,
) -> Result<(ExactMatrix, ExactMatrix, ExactMatrix), Error> {
    m.require_integers()?;
    let (s, u, v) = snf_rows(m.to_bigint_rows(), m.rows(), m.cols());
    Ok((
        ExactMatrix::from_bigint_rows(&s, m.cols()),
        ExactMatrix::from_bigint_rows(&u, m.rows()),
        ExactMatrix::from_bigint_rows(&v, m.cols()),
    ))
}

fn swap_cols(m: &mut Rows, a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

fn add_col_multiple(m: &mut Rows, target: usize, src: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for row in m.iter_mut() {
        let s = row[src].clone();
        row[target] += q * s;
    }
}

pub(crate) fn snf_rows(mut s: Rows, nrows: usize, ncols: usize) -> (Rows, Rows, Rows) {
    let mut u = identity(nrows);
    let mut v = identity(ncols);
    let steps = nrows.min(ncols);
    for t in 0..steps {
        loop {
            // smallest non-zero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..nrows {
                for j in t..ncols {
                    if s[i][j].is_zero() {
                        continue;
                    }
                    let better = match best {
                        None => true,
                        Some((bi, bj)) => s[i][j].abs() < s[bi][bj].abs(),
                    };
                    if better {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return (s, u, v);
            };
            s.swap(t, pi);
            u.swap(t, pi);
            swap_cols(&mut s, t, pj);
            swap_cols(&mut v, t, pj);

            let pivot = s[t][t].clone();
            let mut clean = true;
            for i in t + 1..nrows {
                if s[i][t].is_zero() {
                    continue;
                }
                let q = -s[i][t].div_floor(&pivot);
                add_row_multiple(&mut s, i, t, &q);
                add_row_multiple(&mut u, i, t, &q);
                clean &= s[i][t].is_zero();
            }
            for j in t + 1..ncols {
                if s[t][j].is_zero() {
                    continue;
                }
                let q = -s[t][j].div_floor(&pivot);
                add_col_multiple(&mut s, j, t, &q);
                add_col_multiple(&mut v, j, t, &q);
                clean &= s[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            // divisibility: fold an offending row into the pivot row
            let offending = (t + 1..nrows)
                .find(|&i| (t + 1..ncols).any(|j| !(&s[i][j] % &pivot).is_zero()));
            match offending {
                Some(i) => {
                    add_row_multiple(&mut s, t, i, &BigInt::one());
                    add_row_multiple(&mut u, t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if s[t][t].is_negative() {
            negate_row(&mut s, t);
            negate_row(&mut u, t);
        }
    }
    (s, u, v)
}

/// Determinant of a square integer matrix by fraction-free (Bareiss)
/// elimination.
pub fn determinant(m: &ExactMatrix) -> Result<BigInt, Error> {
    m.require_integers()?;
    if m.rows() != m.cols() {
        return Err(Error::Dimension("determinant of a non-square matrix".into()));
    }
    let n = m.rows();
    let mut a = m.to_bigint_rows();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = num / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    Ok(if n == 0 { BigInt::one() } else { sign * &a[n - 1][n - 1] })
}
