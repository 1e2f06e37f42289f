use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use super::normal_form::snf_rows;
use super::span::{FieldSpan, Span};
use crate::{Coeff, Error};

/// Rewrites a list of cyclic orders (0 = infinite cyclic) into the invariant
/// factor chain `d1 | d2 | ...` of their direct sum, dropping 1s.
pub fn normalize_chain(mut f: Vec<BigInt>) -> Vec<BigInt> {
    f.retain(|d| !d.is_one());
    let n = f.len();
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (&f[i], &f[j]);
            let (g, l) = if a.is_zero() {
                (b.clone(), BigInt::zero())
            } else if b.is_zero() {
                (a.clone(), BigInt::zero())
            } else {
                (a.gcd(b), a.lcm(b))
            };
            f[i] = g;
            f[j] = l;
        }
    }
    f.retain(|d| !d.is_one());
    f
}

/// A finitely generated abelian group given by its invariant factors.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroupShape {
    pub invariant_factors: Vec<BigInt>,
}

impl GroupShape {
    pub fn new(factors: Vec<BigInt>) -> Self {
        GroupShape {
            invariant_factors: normalize_chain(factors),
        }
    }

    pub fn trivial() -> Self {
        GroupShape::default()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn free_rank(&self) -> usize {
        self.invariant_factors.iter().filter(|d| d.is_zero()).count()
    }

    /// Number of cyclic factors; equals the dimension over a prime field.
    pub fn num_factors(&self) -> usize {
        self.invariant_factors.len()
    }

    /// Group order, or `None` when a free factor is present.
    pub fn order(&self) -> Option<BigInt> {
        if self.free_rank() > 0 {
            return None;
        }
        Some(self.invariant_factors.iter().product())
    }

    pub fn direct_sum(&self, other: &GroupShape) -> GroupShape {
        let mut f = self.invariant_factors.clone();
        f.extend(other.invariant_factors.iter().cloned());
        GroupShape::new(f)
    }

    /// `(free rank, torsion order)`; compares sizes of nested subquotients.
    pub fn size_key(&self) -> (usize, BigInt) {
        let torsion = self
            .invariant_factors
            .iter()
            .filter(|d| !d.is_zero())
            .product();
        (self.free_rank(), torsion)
    }
}

impl fmt::Display for GroupShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .invariant_factors
            .iter()
            .map(|d| {
                if d.is_zero() {
                    "Z".to_string()
                } else {
                    format!("Z/{d}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Serialize for GroupShape {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let nums: Vec<serde_json::Value> = self
            .invariant_factors
            .iter()
            .map(|d| match d.to_u64() {
                Some(v) => serde_json::Value::from(v),
                None => serde_json::Value::from(d.to_string()),
            })
            .collect();
        nums.serialize(s)
    }
}

#[derive(Clone, Debug)]
enum CoordinateMap {
    // v ↦ v·V restricted to the columns carrying a nontrivial factor
    Smith { v: Vec<Vec<BigInt>>, columns: Vec<usize> },
    // reduce by the RREF, read the free columns
    Field { span: FieldSpan, free: Vec<usize> },
}

/// Presentation of `ambient / span` with a map into quotient coordinates.
#[derive(Clone, Debug)]
pub struct AbelianPresentation {
    pub ambient_rank: usize,
    pub invariant_factors: Vec<BigInt>,
    map: CoordinateMap,
}

impl AbelianPresentation {
    pub fn of_span(span: &Span) -> Result<Self, Error> {
        let n = span.ambient();
        match span {
            Span::Field(f) => {
                let free = f.free_columns();
                Ok(AbelianPresentation {
                    ambient_rank: n,
                    invariant_factors: span.quotient_factors(),
                    map: CoordinateMap::Field {
                        span: f.clone(),
                        free,
                    },
                })
            }
            Span::Lattice(l) => {
                let rows = l.rows().to_vec();
                let r = rows.len();
                let (s, v) = if r == 0 {
                    (Vec::new(), identity(n))
                } else {
                    let (s, _, v) = snf_rows(rows, r, n);
                    (s, v)
                };
                let mut factors = Vec::new();
                let mut columns = Vec::new();
                for i in 0..n {
                    let d = if i < r { s[i][i].clone() } else { BigInt::zero() };
                    if !d.is_one() {
                        factors.push(d);
                        columns.push(i);
                    }
                }
                Ok(AbelianPresentation {
                    ambient_rank: n,
                    invariant_factors: factors,
                    map: CoordinateMap::Smith { v, columns },
                })
            }
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn shape(&self) -> GroupShape {
        GroupShape::new(self.invariant_factors.clone())
    }

    /// Coordinates of the coset of `v`, one per invariant factor, reduced
    /// modulo that factor (free coordinates are left unreduced).
    pub fn coordinates(&self, v: &[Coeff]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.ambient_rank);
        match &self.map {
            CoordinateMap::Field { span, free } => {
                let mut w: Vec<u64> = v.iter().map(|c| c.to_i64().unwrap() as u64).collect();
                span.reduce(&mut w);
                free.iter().map(|&c| BigInt::from(w[c])).collect()
            }
            CoordinateMap::Smith { v: basis, columns } => columns
                .iter()
                .zip(&self.invariant_factors)
                .map(|(&j, d)| {
                    let x: BigInt = v
                        .iter()
                        .zip(basis.iter())
                        .map(|(c, row)| c.to_bigint() * &row[j])
                        .sum();
                    if d.is_zero() {
                        x
                    } else {
                        x.mod_floor(d)
                    }
                })
                .collect(),
        }
    }
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::CoeffDomain;

    fn b(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn chains() {
        assert_eq!(normalize_chain(b(&[2, 3])), b(&[6]));
        assert_eq!(normalize_chain(b(&[4, 2, 0, 1])), b(&[2, 4, 0]));
        assert_eq!(normalize_chain(b(&[0, 3, 3])), b(&[3, 3, 0]));
        assert!(normalize_chain(b(&[1, 1])).is_empty());
    }

    #[test]
    fn coordinates_detect_cosets() {
        let mut s = Span::new(CoeffDomain::Integers, 2).unwrap();
        s.insert(&[Coeff::small(3), Coeff::small(0)]);
        let p = AbelianPresentation::of_span(&s).unwrap();
        assert_eq!(p.invariant_factors, b(&[3, 0]));
        let c = |x, y| p.coordinates(&[Coeff::small(x), Coeff::small(y)]);
        assert_eq!(c(3, 0), b(&[0, 0]));
        assert_eq!(c(4, 2), c(1, 2));
        assert_ne!(c(1, 0), c(2, 0));
    }

    #[test]
    fn shapes() {
        let g = GroupShape::new(b(&[3, 0]));
        assert_eq!(g.to_string(), "Z/3 + Z");
        assert_eq!(g.order(), None);
        assert_eq!(GroupShape::new(b(&[2, 3])).order(), Some(BigInt::from(6)));
        assert!(GroupShape::trivial().is_trivial());
    }
}
