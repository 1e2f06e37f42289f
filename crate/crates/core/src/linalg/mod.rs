//! Exact linear algebra: Hermite and Smith normal forms over the integers,
//! Gaussian elimination over prime fields, and presentations of quotient
//! groups `ambient / row space`.

mod normal_form;
mod presentation;
mod span;

pub use normal_form::{determinant, hermite_normal_form, smith_normal_form};
pub use presentation::{normalize_chain, AbelianPresentation, GroupShape};
pub use span::{left_kernel, FieldSpan, LatticeSpan, Span};

use num_bigint::BigInt;

use crate::{Coeff, CoeffDomain, Error};

/// A dense matrix with canonical entries in a fixed domain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    domain: CoeffDomain,
    rows: usize,
    cols: usize,
    entries: Vec<Coeff>,
}

impl ExactMatrix {
    pub fn zero(domain: CoeffDomain, rows: usize, cols: usize) -> Self {
        ExactMatrix {
            domain,
            rows,
            cols,
            entries: vec![Coeff::zero(); rows * cols],
        }
    }

    pub fn identity(domain: CoeffDomain, n: usize) -> Self {
        let mut m = Self::zero(domain, n, n);
        for i in 0..n {
            m.set(i, i, domain.one());
        }
        m
    }

    pub fn from_i64_rows(domain: CoeffDomain, rows: &[Vec<i64>]) -> Result<Self, Error> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        let entries = rows
            .iter()
            .flat_map(|r| r.iter().map(|&v| domain.canon_i64(v)))
            .collect();
        Ok(ExactMatrix {
            domain,
            rows: rows.len(),
            cols,
            entries,
        })
    }

    pub fn from_coeff_rows(
        domain: CoeffDomain,
        cols: usize,
        rows: &[Vec<Coeff>],
    ) -> Result<Self, Error> {
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        let entries = rows
            .iter()
            .flat_map(|r| r.iter().map(|c| domain.canon(&c.to_bigint())))
            .collect();
        Ok(ExactMatrix {
            domain,
            rows: rows.len(),
            cols,
            entries,
        })
    }

    pub(crate) fn from_bigint_rows(rows: &[Vec<BigInt>], cols: usize) -> Self {
        let entries = rows
            .iter()
            .flat_map(|r| r.iter().map(|v| Coeff::from_bigint(v.clone())))
            .collect();
        ExactMatrix {
            domain: CoeffDomain::Integers,
            rows: rows.len(),
            cols,
            entries,
        }
    }

    pub(crate) fn to_bigint_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(Coeff::to_bigint).collect())
            .collect()
    }

    pub fn domain(&self) -> CoeffDomain {
        self.domain
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Coeff {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Coeff) {
        debug_assert!(self.domain.is_canonical(&v));
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Coeff] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Coeff>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix, Error> {
        if self.domain != other.domain {
            return Err(Error::Dimension("matrices over different domains".into()));
        }
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let d = self.domain;
        let mut out = ExactMatrix::zero(d, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = d.add(out.get(i, j), &d.mul(a, b));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Coeff::is_zero)
    }

    fn require_integers(&self) -> Result<(), Error> {
        match self.domain {
            CoeffDomain::Integers => Ok(()),
            d => Err(Error::NotIntegers(d)),
        }
    }
}

/// Builds the elimination structure matching the domain of `m`.
pub fn span_of(m: &ExactMatrix) -> Result<Span, Error> {
    let mut s = Span::new(m.domain(), m.cols())?;
    for i in 0..m.rows() {
        s.insert(m.row(i));
    }
    Ok(s)
}

/// True iff `v` is a combination of the rows of `m` with coefficients in the
/// domain (integer combinations over the integers).
pub fn row_space_membership(v: &[Coeff], m: &ExactMatrix) -> Result<bool, Error> {
    if v.len() != m.cols() {
        return Err(Error::Dimension(format!(
            "vector of length {} against {} columns",
            v.len(),
            m.cols()
        )));
    }
    let d = m.domain();
    let v: Vec<Coeff> = v.iter().map(|c| d.canon(&c.to_bigint())).collect();
    Ok(span_of(m)?.contains(&v))
}

/// Presents `Z^n / rowspace` (or `F_p^n / rowspace`).
pub fn quotient_presentation(
    span: &ExactMatrix,
    ambient_rank: usize,
) -> Result<AbelianPresentation, Error> {
    if span.cols() != ambient_rank {
        return Err(Error::Dimension(format!(
            "span has {} columns, ambient rank is {ambient_rank}",
            span.cols()
        )));
    }
    AbelianPresentation::of_span(&span_of(span)?)
}
