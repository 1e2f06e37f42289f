use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use super::{FiniteLieRing, OracleCaps};
use crate::linalg::LatticeSpan;
use crate::variety::SeriesKind;
use crate::Error;

/// An additive subgroup of `(Z/m)^d`, stored as its preimage in `Z^d`
/// (a full-rank lattice containing `m Z^d`) in Hermite normal form.
#[derive(Clone, Debug)]
pub struct ModSpan {
    modulus: u64,
    lattice: LatticeSpan,
}

impl ModSpan {
    pub fn zero(modulus: u64, d: usize) -> Self {
        let mut lattice = LatticeSpan::new(d);
        for i in 0..d {
            let mut v = vec![BigInt::zero(); d];
            v[i] = BigInt::from(modulus);
            lattice.insert(v);
        }
        ModSpan { modulus, lattice }
    }

    pub fn insert(&mut self, v: &[u64]) -> bool {
        self.lattice.insert(v.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.lattice.contains(&v.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>())
    }

    /// Nonzero generators, reduced mod `m`.
    pub fn generators(&self) -> Vec<Vec<u64>> {
        let m = BigInt::from(self.modulus);
        self.lattice
            .rows()
            .iter()
            .map(|r| r.iter().map(|c| (c % &m).to_u64().unwrap()).collect::<Vec<u64>>())
            .filter(|r| r.iter().any(|&c| c != 0))
            .collect()
    }

    /// Number of elements.
    pub fn order(&self) -> BigInt {
        let index: BigInt = self
            .lattice
            .rows()
            .iter()
            .zip(self.lattice.pivots())
            .map(|(r, &c)| r[c].clone())
            .product();
        num_traits::pow(BigInt::from(self.modulus), self.lattice.ambient()) / index
    }

    pub fn is_zero(&self) -> bool {
        self.order().is_one()
    }

    /// Canonical form, for equality tests.
    pub fn key(&self) -> Vec<Vec<BigInt>> {
        self.lattice.rows().to_vec()
    }
}

/// Orders of the terms of a series, computed from spanning sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSeries {
    pub kind: SeriesKind,
    /// Term orders, starting at `L^1` for central series and `L^(0)` for the
    /// derived series.
    pub orders: Vec<BigInt>,
    /// Index of the first zero term; `None` when the series stabilizes
    /// above zero.
    pub first_zero: Option<usize>,
}

fn bracket_span(ring: &FiniteLieRing, a: &[Vec<u64>], b: &[Vec<u64>]) -> ModSpan {
    let mut out = ModSpan::zero(ring.modulus(), ring.rank());
    for x in a {
        for y in b {
            out.insert(&ring.bracket_raw(x, y));
        }
    }
    out
}

fn run_series(ring: &FiniteLieRing, start: &ModSpan, kind: SeriesKind) -> FiniteSeries {
    let first_index = if kind == SeriesKind::Derived { 0 } else { 1 };
    let base = match kind {
        SeriesKind::SquareLowerCentral => {
            let g = start.generators();
            bracket_span(ring, &g, &g)
        }
        _ => start.clone(),
    };
    let base_gens = base.generators();
    let mut cur = base;
    let mut orders = vec![cur.order()];
    let mut first_zero = None;
    loop {
        if cur.is_zero() {
            first_zero = Some(first_index + orders.len() - 1);
            break;
        }
        let g = cur.generators();
        let next = match kind {
            SeriesKind::Derived => bracket_span(ring, &g, &g),
            _ => bracket_span(ring, &base_gens, &g),
        };
        // a repeated term means the series has stabilized
        if next.key() == cur.key() {
            break;
        }
        orders.push(next.order());
        cur = next;
    }
    FiniteSeries {
        kind,
        orders,
        first_zero,
    }
}

pub fn series_by_spans(ring: &FiniteLieRing, kind: SeriesKind) -> FiniteSeries {
    let mut all = ModSpan::zero(ring.modulus(), ring.rank());
    for i in 0..ring.rank() {
        all.insert(&ring.basis_element(i));
    }
    run_series(ring, &all, kind)
}

/// Exponent in the convention where abelian rings have exponent 1; `None`
/// when the ring is not nilpotent.
pub fn nilpotency_exponent_by_spans(ring: &FiniteLieRing) -> Option<usize> {
    series_by_spans(ring, SeriesKind::LowerCentral).first_zero.map(|k| k - 1)
}

/// Solvable length, abelian rings having length 0; `None` when the ring is
/// not solvable. The zero ring also gets length 0.
pub fn solvable_length_by_spans(ring: &FiniteLieRing) -> Option<usize> {
    series_by_spans(ring, SeriesKind::Derived)
        .first_zero
        .map(|k| k.saturating_sub(1))
}

/// A subring of a finite ring.
#[derive(Clone, Debug)]
pub struct Subring {
    pub span: ModSpan,
}

impl Subring {
    pub fn order(&self) -> BigInt {
        self.span.order()
    }
}

pub fn subring_series(ring: &FiniteLieRing, sub: &Subring, kind: SeriesKind) -> FiniteSeries {
    run_series(ring, &sub.span, kind)
}

fn closure(ring: &FiniteLieRing, gens: &[Vec<u64>]) -> ModSpan {
    let mut s = ModSpan::zero(ring.modulus(), ring.rank());
    for g in gens {
        s.insert(g);
    }
    loop {
        let g = s.generators();
        let mut grew = false;
        for x in &g {
            for y in &g {
                grew |= s.insert(&ring.bracket_raw(x, y));
            }
        }
        if !grew {
            return s;
        }
    }
}

/// The distinct subrings generated by `g` elements, over all `g`-tuples, in
/// order of first appearance.
pub fn enumerate_generated_subrings(
    ring: &FiniteLieRing,
    g: usize,
    caps: &OracleCaps,
) -> Result<Vec<Subring>, Error> {
    let total = caps.check(ring, g)?;
    let order = ring.order().expect("checked above");
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for n in 0..total {
        let mut rest = n;
        let mut gens = Vec::with_capacity(g);
        for _ in 0..g {
            gens.push(ring.element_at(rest % order));
            rest /= order;
        }
        let s = closure(ring, &gens);
        if seen.insert(s.key()) {
            out.push(Subring { span: s });
        }
    }
    Ok(out)
}
