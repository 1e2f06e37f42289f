use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::normal_form::{hnf_rows, snf_rows};
use super::presentation::normalize_chain;
use crate::coeff::{inv_mod, xgcd};
use crate::{Coeff, CoeffDomain, Error};

/// Row space over `F_p`, kept in reduced row echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldSpan {
    p: u64,
    n: usize,
    // sorted by pivot; each row has a 1 at its pivot and 0 at other pivots
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl FieldSpan {
    pub fn new(p: u64, n: usize) -> Self {
        FieldSpan {
            p,
            n,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Columns without a pivot; they index a basis of the quotient.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.n];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..self.n).filter(|&c| !is_pivot[c]).collect()
    }

    /// Reduces `v` in place to the canonical coset representative.
    pub fn reduce(&self, v: &mut [u64]) {
        let p = self.p;
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let f = v[c];
            if f == 0 {
                continue;
            }
            let k = p - f;
            for (x, &r) in v.iter_mut().zip(row) {
                if r != 0 {
                    *x = (*x + k * r) % p;
                }
            }
        }
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, mut v: Vec<u64>) -> bool {
        debug_assert_eq!(v.len(), self.n);
        self.reduce(&mut v);
        let Some(c) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let p = self.p;
        let inv = inv_mod(v[c], p);
        for x in v.iter_mut() {
            *x = (*x * inv) % p;
        }
        for row in self.rows.iter_mut() {
            let f = row[c];
            if f == 0 {
                continue;
            }
            let k = p - f;
            for (x, &r) in row.iter_mut().zip(&v) {
                if r != 0 {
                    *x = (*x + k * r) % p;
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < c);
        self.pivots.insert(at, c);
        self.rows.insert(at, v);
        true
    }
}

/// Sublattice of `Z^n`, kept in row Hermite normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeSpan {
    n: usize,
    // sorted by pivot; positive pivots, entries above pivots in [0, pivot)
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

impl LatticeSpan {
    pub fn new(n: usize) -> Self {
        LatticeSpan {
            n,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Canonical representative of `v` modulo the lattice.
    pub fn reduce(&self, v: &mut [BigInt]) {
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            if v[c].is_zero() {
                continue;
            }
            let q = v[c].div_floor(&row[c]);
            for (x, r) in v.iter_mut().zip(row) {
                *x -= &q * r;
            }
        }
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(Zero::is_zero)
    }

    /// Adds `v` to the lattice; returns whether the lattice changed.
    pub fn insert(&mut self, mut v: Vec<BigInt>) -> bool {
        debug_assert_eq!(v.len(), self.n);
        let mut changed = false;
        while let Some(c) = v.iter().position(|x| !x.is_zero()) {
            match self.pivots.binary_search(&c) {
                Ok(k) => {
                    let a = self.rows[k][c].clone();
                    let b = v[c].clone();
                    if (&b % &a).is_zero() {
                        let q = &b / &a;
                        for (x, r) in v.iter_mut().zip(&self.rows[k]) {
                            *x -= &q * r;
                        }
                        continue;
                    }
                    let (g, s, t) = xgcd(&a, &b);
                    let (a_g, b_g) = (&a / &g, &b / &g);
                    let row = std::mem::take(&mut self.rows[k]);
                    let new_row: Vec<BigInt> =
                        row.iter().zip(&v).map(|(r, x)| &s * r + &t * x).collect();
                    v = row.iter().zip(&v).map(|(r, x)| &a_g * x - &b_g * r).collect();
                    self.rows[k] = new_row;
                    changed = true;
                }
                Err(at) => {
                    if v[c].is_negative() {
                        for x in v.iter_mut() {
                            *x = -&*x;
                        }
                    }
                    self.pivots.insert(at, c);
                    self.rows.insert(at, v);
                    changed = true;
                    break;
                }
            }
        }
        if changed {
            self.normalize();
        }
        changed
    }

    fn normalize(&mut self) {
        for k in 0..self.rows.len() {
            let c = self.pivots[k];
            if self.rows[k][c].is_negative() {
                for x in self.rows[k].iter_mut() {
                    *x = -&*x;
                }
            }
        }
        for k in 0..self.rows.len() {
            let c = self.pivots[k];
            let (above, rest) = self.rows.split_at_mut(k);
            let pivot_row = &rest[0];
            for row in above.iter_mut() {
                let q = row[c].div_floor(&pivot_row[c]);
                if q.is_zero() {
                    continue;
                }
                for (x, r) in row.iter_mut().zip(pivot_row) {
                    *x -= &q * r;
                }
            }
        }
    }

    /// Invariant factors of `Z^n / self`, as a divisibility chain.
    pub fn quotient_factors(&self) -> Vec<BigInt> {
        let mut factors = self.diagonal_factors(&self.rows);
        factors.extend(std::iter::repeat_n(BigInt::zero(), self.n - self.rank()));
        normalize_chain(factors)
    }

    /// Invariant factors of `self / sub`; `sub` must be contained in `self`.
    pub fn quotient_by(&self, sub: &LatticeSpan) -> Vec<BigInt> {
        debug_assert!(sub.rows.iter().all(|r| self.contains(r)));
        let coords: Vec<Vec<BigInt>> = sub.rows.iter().map(|r| self.coordinates(r)).collect();
        let mut factors = self.diagonal_factors(&coords);
        factors.extend(std::iter::repeat_n(BigInt::zero(), self.rank() - sub.rank()));
        normalize_chain(factors)
    }

    fn diagonal_factors(&self, rows: &[Vec<BigInt>]) -> Vec<BigInt> {
        if rows.is_empty() {
            return Vec::new();
        }
        let cols = rows[0].len();
        let (s, _, _) = snf_rows(rows.to_vec(), rows.len(), cols);
        (0..rows.len().min(cols))
            .map(|i| s[i][i].clone())
            .filter(|d| !d.is_zero())
            .collect()
    }

    /// Coordinates of a lattice vector with respect to the HNF rows.
    pub fn coordinates(&self, v: &[BigInt]) -> Vec<BigInt> {
        let mut w = v.to_vec();
        let mut out = vec![BigInt::zero(); self.rank()];
        for (k, (row, &c)) in self.rows.iter().zip(&self.pivots).enumerate() {
            if w[c].is_zero() {
                continue;
            }
            let (q, r) = w[c].div_rem(&row[c]);
            debug_assert!(r.is_zero(), "vector not in lattice");
            for (x, y) in w.iter_mut().zip(row) {
                *x -= &q * y;
            }
            out[k] = q;
        }
        out
    }
}

/// Elimination structure for one coefficient domain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Span {
    Field(FieldSpan),
    Lattice(LatticeSpan),
}

fn to_u64(v: &[Coeff]) -> Vec<u64> {
    v.iter()
        .map(|c| c.to_i64().expect("residue") as u64)
        .collect()
}

fn to_big(v: &[Coeff]) -> Vec<BigInt> {
    v.iter().map(Coeff::to_bigint).collect()
}

impl Span {
    pub fn new(domain: CoeffDomain, n: usize) -> Result<Self, Error> {
        domain.require_elimination()?;
        Ok(match domain {
            CoeffDomain::Integers => Span::Lattice(LatticeSpan::new(n)),
            CoeffDomain::Modular(p) => Span::Field(FieldSpan::new(p, n)),
        })
    }

    /// The whole ambient module.
    pub fn full(domain: CoeffDomain, n: usize) -> Result<Self, Error> {
        let mut s = Span::new(domain, n)?;
        for i in 0..n {
            let mut v = vec![Coeff::zero(); n];
            v[i] = Coeff::small(1);
            s.insert(&v);
        }
        Ok(s)
    }

    pub fn domain(&self) -> CoeffDomain {
        match self {
            Span::Field(f) => CoeffDomain::Modular(f.p),
            Span::Lattice(_) => CoeffDomain::Integers,
        }
    }

    pub fn ambient(&self) -> usize {
        match self {
            Span::Field(f) => f.ambient(),
            Span::Lattice(l) => l.ambient(),
        }
    }

    pub fn rank(&self) -> usize {
        match self {
            Span::Field(f) => f.rank(),
            Span::Lattice(l) => l.rank(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.rank() == 0
    }

    /// True when the span is the whole ambient module.
    pub fn is_full(&self) -> bool {
        match self {
            Span::Field(f) => f.rank() == f.ambient(),
            Span::Lattice(l) => {
                l.rank() == l.ambient()
                    && l.rows().iter().zip(l.pivots()).all(|(r, &c)| r[c].is_one())
            }
        }
    }

    pub fn insert(&mut self, v: &[Coeff]) -> bool {
        match self {
            Span::Field(f) => f.insert(to_u64(v)),
            Span::Lattice(l) => l.insert(to_big(v)),
        }
    }

    pub fn contains(&self, v: &[Coeff]) -> bool {
        match self {
            Span::Field(f) => f.contains(&to_u64(v)),
            Span::Lattice(l) => l.contains(&to_big(v)),
        }
    }

    /// Canonical coset representative of `v`.
    pub fn reduce(&self, v: &[Coeff]) -> Vec<Coeff> {
        match self {
            Span::Field(f) => {
                let mut w = to_u64(v);
                f.reduce(&mut w);
                w.into_iter().map(|x| Coeff::small(x as i64)).collect()
            }
            Span::Lattice(l) => {
                let mut w = to_big(v);
                l.reduce(&mut w);
                w.into_iter().map(Coeff::from_bigint).collect()
            }
        }
    }

    /// Canonical generating rows.
    pub fn basis(&self) -> Vec<Vec<Coeff>> {
        match self {
            Span::Field(f) => f
                .rows()
                .iter()
                .map(|r| r.iter().map(|&x| Coeff::small(x as i64)).collect())
                .collect(),
            Span::Lattice(l) => l
                .rows()
                .iter()
                .map(|r| r.iter().cloned().map(Coeff::from_bigint).collect())
                .collect(),
        }
    }

    pub fn extend_from(&mut self, other: &Span) {
        for row in other.basis() {
            self.insert(&row);
        }
    }

    pub fn is_subspace_of(&self, other: &Span) -> bool {
        self.basis().iter().all(|r| other.contains(r))
    }

    /// Invariant factors of `ambient / self`.
    pub fn quotient_factors(&self) -> Vec<BigInt> {
        match self {
            Span::Field(f) => vec![BigInt::from(f.p); f.ambient() - f.rank()],
            Span::Lattice(l) => l.quotient_factors(),
        }
    }

    /// Invariant factors of `self / sub` for `sub ⊆ self`.
    pub fn quotient_by(&self, sub: &Span) -> Vec<BigInt> {
        match (self, sub) {
            (Span::Field(f), Span::Field(g)) => vec![BigInt::from(f.p); f.rank() - g.rank()],
            (Span::Lattice(l), Span::Lattice(m)) => l.quotient_by(m),
            _ => panic!("quotient of spans over different domains"),
        }
    }
}

/// Generators of the left kernel `{x : x·M = 0}` of the matrix with the given
/// rows (`ncols` columns each).
pub fn left_kernel(
    domain: CoeffDomain,
    rows: &[Vec<Coeff>],
    ncols: usize,
) -> Result<Vec<Vec<Coeff>>, Error> {
    domain.require_elimination()?;
    let nrows = rows.len();
    match domain {
        CoeffDomain::Integers => {
            let h: Vec<Vec<BigInt>> = rows.iter().map(|r| to_big(r)).collect();
            let (h, u) = hnf_rows(h, nrows, ncols);
            Ok((0..nrows)
                .filter(|&i| h[i].iter().all(Zero::is_zero))
                .map(|i| u[i].iter().cloned().map(Coeff::from_bigint).collect())
                .collect())
        }
        CoeffDomain::Modular(p) => {
            // eliminate on [M | I]; rows whose M-part vanishes carry the kernel
            let mut span = FieldSpan::new(p, ncols + nrows);
            for (i, r) in rows.iter().enumerate() {
                let mut v = to_u64(r);
                v.resize(ncols + nrows, 0);
                v[ncols + i] = 1;
                span.insert(v);
            }
            Ok(span
                .rows()
                .iter()
                .zip(span.pivots())
                .filter(|(_, &c)| c >= ncols)
                .map(|(r, _)| {
                    r[ncols..]
                        .iter()
                        .map(|&x| Coeff::small(x as i64))
                        .collect()
                })
                .collect())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn lattice_insert_keeps_hnf() {
        let mut l = LatticeSpan::new(2);
        l.insert(b(&[2, 4]));
        l.insert(b(&[1, 3]));
        assert_eq!(l.rows(), &[b(&[1, 1]), b(&[0, 2])]);
        assert!(l.contains(&b(&[3, 7])));
        assert!(!l.contains(&b(&[0, 1])));
        assert_eq!(l.quotient_factors(), b(&[2]));
    }

    #[test]
    fn lattice_quotient_by_sublattice() {
        let mut big = LatticeSpan::new(2);
        big.insert(b(&[1, 0]));
        big.insert(b(&[0, 1]));
        let mut sub = LatticeSpan::new(2);
        sub.insert(b(&[2, 0]));
        sub.insert(b(&[0, 3]));
        assert_eq!(big.quotient_by(&sub), b(&[6]));
        let mut half = LatticeSpan::new(2);
        half.insert(b(&[2, 0]));
        assert_eq!(big.quotient_by(&half), b(&[2, 0]));
    }

    #[test]
    fn field_span_rref() {
        let mut f = FieldSpan::new(5, 3);
        assert!(f.insert(vec![2, 4, 1]));
        assert!(!f.insert(vec![4, 3, 2]));
        assert!(f.insert(vec![0, 1, 1]));
        assert_eq!(f.rank(), 2);
        assert_eq!(f.free_columns(), vec![2]);
        assert!(f.contains(&[1, 3, 4]));
        assert!(!f.contains(&[1, 3, 3]));
    }

    #[test]
    fn kernels() {
        let rows = vec![
            vec![Coeff::small(1), Coeff::small(2)],
            vec![Coeff::small(2), Coeff::small(4)],
        ];
        let k = left_kernel(CoeffDomain::Integers, &rows, 2).unwrap();
        assert_eq!(k.len(), 1);
        let x = &k[0];
        for j in 0..2 {
            let s = x[0].to_bigint() * rows[0][j].to_bigint() + x[1].to_bigint() * rows[1][j].to_bigint();
            assert!(s.is_zero());
        }
        let k = left_kernel(CoeffDomain::Modular(3), &rows, 2).unwrap();
        assert_eq!(k.len(), 1);
    }
}
