//! Independent ground truth: finite Lie rings given by structure constants,
//! identity checking by total enumeration, series by element spans and
//! subring enumeration.

mod brute;
mod corpus;
mod spans;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use brute::{agreement_check, brute_check_identity, structural_check, Agreement, BruteVerdict, OracleCaps};
pub use corpus::{corpus, corpus_identities, heisenberg, strictly_upper_triangular};
pub use spans::{
    enumerate_generated_subrings, nilpotency_exponent_by_spans, series_by_spans, solvable_length_by_spans,
    subring_series, FiniteSeries, ModSpan, Subring,
};

use crate::coeff::MAX_MODULUS;
use crate::ring::LieRing;
use crate::variety::RelativelyFreeRing;
use crate::linalg::Span;
use crate::Error;

/// A Lie ring whose additive group is `(Z/m)^d`, given by the brackets of
/// basis elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteLieRing {
    modulus: u64,
    rank: usize,
    // table[i * rank + j] = [e_i, e_j]
    table: Vec<Vec<u64>>,
}

/// A failed axiom on basis elements (1-based indices).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: &'static str,
    pub basis: Vec<usize>,
    pub value: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct RingFile {
    modulus: u64,
    rank: usize,
    #[serde(default)]
    brackets: Vec<BracketEntry>,
}

#[derive(Serialize, Deserialize)]
struct BracketEntry {
    i: usize,
    j: usize,
    value: Vec<i64>,
}

impl FiniteLieRing {
    /// Builds a ring from the brackets `[e_i, e_j]` with `i < j` (0-based);
    /// the rest is filled in by antisymmetry.
    pub fn from_brackets(modulus: u64, rank: usize, brackets: &[(usize, usize, Vec<i64>)]) -> Result<Self, Error> {
        let mut table = Self::zero_table(modulus, rank)?;
        for (i, j, v) in brackets {
            let (i, j) = (*i, *j);
            if i >= j || j >= rank {
                return Err(Error::InvalidRing(format!(
                    "bracket entries need i < j <= rank, got ({}, {})",
                    i + 1,
                    j + 1
                )));
            }
            if v.len() != rank {
                return Err(Error::InvalidRing(format!(
                    "value of [e{}, e{}] has {} coefficients, expected {rank}",
                    i + 1,
                    j + 1,
                    v.len()
                )));
            }
            let val: Vec<u64> = v.iter().map(|&c| c.rem_euclid(modulus as i64) as u64).collect();
            table[j * rank + i] = val.iter().map(|&c| (modulus - c) % modulus).collect();
            table[i * rank + j] = val;
        }
        Ok(FiniteLieRing { modulus, rank, table })
    }

    /// Builds a ring from a full table `[e_i, e_j]`, without filling in
    /// antisymmetry. The result may violate the axioms.
    pub fn from_table(modulus: u64, rank: usize, table: Vec<Vec<u64>>) -> Result<Self, Error> {
        Self::zero_table(modulus, rank)?;
        if table.len() != rank * rank || table.iter().any(|v| v.len() != rank) {
            return Err(Error::InvalidRing("table must have rank^2 rows of length rank".into()));
        }
        let table = table
            .into_iter()
            .map(|v| v.into_iter().map(|c| c % modulus).collect())
            .collect();
        Ok(FiniteLieRing { modulus, rank, table })
    }

    fn zero_table(modulus: u64, rank: usize) -> Result<Vec<Vec<u64>>, Error> {
        if !(2..=MAX_MODULUS).contains(&modulus) {
            return Err(Error::InvalidRing(format!("modulus must lie in 2..={MAX_MODULUS}, got {modulus}")));
        }
        if rank == 0 || rank > 64 {
            return Err(Error::InvalidRing(format!("rank must lie in 1..=64, got {rank}")));
        }
        Ok(vec![vec![0; rank]; rank * rank])
    }

    pub fn abelian(modulus: u64, rank: usize) -> Result<Self, Error> {
        Self::from_brackets(modulus, rank, &[])
    }

    pub fn from_json(text: &str) -> Result<Self, Error> {
        let f: RingFile = serde_json::from_str(text)?;
        let brackets: Vec<(usize, usize, Vec<i64>)> = f
            .brackets
            .into_iter()
            .map(|b| {
                if b.i == 0 || b.j == 0 {
                    return Err(Error::InvalidRing("bracket indices are 1-based".into()));
                }
                Ok((b.i - 1, b.j - 1, b.value))
            })
            .collect::<Result<_, _>>()?;
        Self::from_brackets(f.modulus, f.rank, &brackets)
    }

    /// JSON with 1-based indices, storing only nonzero brackets with `i < j`.
    pub fn to_json(&self) -> String {
        let mut brackets = Vec::new();
        for i in 0..self.rank {
            for j in i + 1..self.rank {
                let v = &self.table[i * self.rank + j];
                if v.iter().any(|&c| c != 0) {
                    brackets.push(BracketEntry {
                        i: i + 1,
                        j: j + 1,
                        value: v.iter().map(|&c| c as i64).collect(),
                    });
                }
            }
        }
        let f = RingFile {
            modulus: self.modulus,
            rank: self.rank,
            brackets,
        };
        serde_json::to_string_pretty(&f).expect("ring file serializes")
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of elements, `m^d`, or `None` past `u128`.
    pub fn order(&self) -> Option<u128> {
        (self.modulus as u128).checked_pow(self.rank as u32)
    }

    pub fn basis_bracket(&self, i: usize, j: usize) -> &[u64] {
        &self.table[i * self.rank + j]
    }

    pub fn basis_element(&self, i: usize) -> Vec<u64> {
        let mut v = vec![0; self.rank];
        v[i] = 1;
        v
    }

    /// The `n`-th element in enumeration order: base-`m` digits, first
    /// coordinate most significant.
    pub fn element_at(&self, mut n: u128) -> Vec<u64> {
        let m = self.modulus as u128;
        let mut v = vec![0; self.rank];
        for c in v.iter_mut().rev() {
            *c = (n % m) as u64;
            n /= m;
        }
        v
    }

    pub fn element(&self, coords: &[i64]) -> Result<Vec<u64>, Error> {
        if coords.len() != self.rank {
            return Err(Error::Dimension(format!(
                "element has {} coordinates, ring has rank {}",
                coords.len(),
                self.rank
            )));
        }
        Ok(coords.iter().map(|&c| c.rem_euclid(self.modulus as i64) as u64).collect())
    }

    fn bracket_raw(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let m = self.modulus;
        let d = self.rank;
        let mut out = vec![0u64; d];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                if bj == 0 || i == j {
                    continue;
                }
                let s = ai * bj % m;
                for (o, &c) in out.iter_mut().zip(&self.table[i * d + j]) {
                    if c != 0 {
                        *o = (*o + s * c) % m;
                    }
                }
            }
        }
        out
    }

    /// Checks antisymmetry and the Jacobi identity on all basis tuples;
    /// bilinearity makes that sufficient. Jacobi is taken in the form
    /// `((a,b),c) + ((b,c),a) + ((c,a),b) = 0`.
    pub fn validate_structure(&self) -> (bool, Option<Violation>) {
        let d = self.rank;
        let m = self.modulus;
        for i in 0..d {
            for j in 0..d {
                let sum: Vec<u64> = self.table[i * d + j]
                    .iter()
                    .zip(&self.table[j * d + i])
                    .map(|(a, b)| (a + b) % m)
                    .collect();
                if i == j && self.table[i * d + i].iter().any(|&c| c != 0) {
                    return (
                        false,
                        Some(Violation {
                            axiom: "alternating",
                            basis: vec![i + 1, i + 1],
                            value: self.table[i * d + i].clone(),
                        }),
                    );
                }
                if sum.iter().any(|&c| c != 0) {
                    return (
                        false,
                        Some(Violation {
                            axiom: "antisymmetry",
                            basis: vec![i + 1, j + 1],
                            value: sum,
                        }),
                    );
                }
            }
        }
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let v = self.jacobi(&self.basis_element(i), &self.basis_element(j), &self.basis_element(k));
                    if v.iter().any(|&c| c != 0) {
                        return (
                            false,
                            Some(Violation {
                                axiom: "jacobi",
                                basis: vec![i + 1, j + 1, k + 1],
                                value: v,
                            }),
                        );
                    }
                }
            }
        }
        (true, None)
    }

    /// The Jacobi sum `((a,b),c) + ((b,c),a) + ((c,a),b)`.
    pub fn jacobi(&self, a: &[u64], b: &[u64], c: &[u64]) -> Vec<u64> {
        let m = self.modulus;
        let t1 = self.bracket_raw(&self.bracket_raw(a, b), c);
        let t2 = self.bracket_raw(&self.bracket_raw(b, c), a);
        let t3 = self.bracket_raw(&self.bracket_raw(c, a), b);
        (0..self.rank).map(|i| (t1[i] + t2[i] + t3[i]) % m).collect()
    }

    /// The truncated relatively free ring `r` as a finite ring, over a prime
    /// field. The basis is formed by the free Lie basis elements outside the
    /// pivot columns of the reduced ideal, block by block.
    pub fn from_relatively_free(r: &RelativelyFreeRing) -> Result<Self, Error> {
        let Some(p) = r.domain().prime_field() else {
            return Err(Error::Unsupported(format!(
                "export needs a prime field, got {}",
                r.domain()
            )));
        };
        let ctx = r.context();
        let mut basis: Vec<u32> = Vec::new();
        for (b, block) in ctx.blocks().iter().enumerate() {
            let Span::Field(fs) = r.ideal().block_span(b as u32) else {
                unreachable!("prime field spans are field spans");
            };
            basis.extend(fs.free_columns().into_iter().map(|c| block.members[c]));
        }
        let pos: std::collections::HashMap<u32, usize> = basis.iter().enumerate().map(|(i, &b)| (b, i)).collect();
        let d = basis.len();
        if d == 0 {
            return Err(Error::InvalidRing("the quotient is zero".into()));
        }
        let mut brackets = Vec::new();
        for i in 0..d {
            for j in i + 1..d {
                let e = ctx.bracket(&ctx.basis_element(basis[i]), &ctx.basis_element(basis[j]))?;
                let e = r.reduce(&e)?;
                if e.is_zero() {
                    continue;
                }
                let mut v = vec![0i64; d];
                for (b, c) in e.terms() {
                    v[pos[b]] = c.to_i64().expect("residues fit in i64");
                }
                brackets.push((i, j, v));
            }
        }
        Self::from_brackets(p, d, &brackets)
    }
}

impl fmt::Display for FiniteLieRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(Z/{})^{}", self.modulus, self.rank)
    }
}

/// Renders an element as its coordinate tuple.
pub fn render_element(v: &[u64]) -> String {
    let parts: Vec<String> = v.iter().map(u64::to_string).collect();
    format!("({})", parts.join(","))
}

impl LieRing for FiniteLieRing {
    type Element = Vec<u64>;

    fn zero(&self) -> Vec<u64> {
        vec![0; self.rank]
    }

    fn add(&self, a: &Vec<u64>, b: &Vec<u64>) -> Result<Vec<u64>, Error> {
        if a.len() != self.rank || b.len() != self.rank {
            return Err(Error::Dimension("element length differs from ring rank".into()));
        }
        Ok(a.iter().zip(b).map(|(x, y)| (x + y) % self.modulus).collect())
    }

    fn neg(&self, a: &Vec<u64>) -> Result<Vec<u64>, Error> {
        Ok(a.iter().map(|&x| (self.modulus - x) % self.modulus).collect())
    }

    fn bracket(&self, a: &Vec<u64>, b: &Vec<u64>) -> Result<Vec<u64>, Error> {
        if a.len() != self.rank || b.len() != self.rank {
            return Err(Error::Dimension("element length differs from ring rank".into()));
        }
        Ok(self.bracket_raw(a, b))
    }

    fn is_zero(&self, a: &Vec<u64>) -> bool {
        a.iter().all(|&c| c == 0)
    }

    fn scale_int(&self, k: i64, a: &Vec<u64>) -> Result<Vec<u64>, Error> {
        let m = self.modulus;
        let k = k.rem_euclid(m as i64) as u64;
        Ok(a.iter().map(|&x| x * k % m).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let h = heisenberg(3);
        let back = FiniteLieRing::from_json(&h.to_json()).unwrap();
        assert_eq!(h, back);
        assert!(FiniteLieRing::from_json(r#"{"modulus":3,"rank":2,"brackets":[{"i":2,"j":1,"value":[1,0]}]}"#).is_err());
        assert!(FiniteLieRing::from_json("{").is_err());
    }

    #[test]
    fn jacobi_witness() {
        let r = FiniteLieRing::from_brackets(5, 3, &[(0, 1, vec![1, 0, 0]), (1, 2, vec![0, 1, 0])]).unwrap();
        let (ok, w) = r.validate_structure();
        assert!(!ok);
        let w = w.unwrap();
        assert_eq!(w.axiom, "jacobi");
        assert_eq!(w.basis, vec![1, 2, 3]);
        assert_eq!(w.value, vec![4, 0, 0]);
        assert!(heisenberg(3).validate_structure().0);
        assert!(FiniteLieRing::abelian(2, 3).unwrap().validate_structure().0);
    }

    #[test]
    fn element_enumeration_order() {
        let r = FiniteLieRing::abelian(3, 2).unwrap();
        assert_eq!(r.element_at(0), vec![0, 0]);
        assert_eq!(r.element_at(1), vec![0, 1]);
        assert_eq!(r.element_at(3), vec![1, 0]);
    }
}
