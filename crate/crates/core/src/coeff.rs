//! Exact coefficients: the integers and the integers modulo `m`.
//!
//! [`Coeff`] keeps small values inline and only promotes to a heap-backed
//! [`BigInt`] when an `i64` operation would overflow, so arithmetic modulo a
//! small `m` never allocates.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::Error;

/// Largest modulus accepted for `Modular` domains; keeps products inside `u64`.
pub const MAX_MODULUS: u64 = u32::MAX as u64;

/// The coefficient ring of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum CoeffDomain {
    Integers,
    Modular(u64),
}

impl CoeffDomain {
    pub fn modular(m: u64) -> Result<Self, Error> {
        if !(2..=MAX_MODULUS).contains(&m) {
            return Err(Error::InvalidDomain(format!(
                "modulus must lie in 2..={MAX_MODULUS}, got {m}"
            )));
        }
        Ok(CoeffDomain::Modular(m))
    }

    /// Additive exponent of the coefficient ring (0 for the integers).
    pub fn characteristic(&self) -> u64 {
        match self {
            CoeffDomain::Integers => 0,
            CoeffDomain::Modular(m) => *m,
        }
    }

    /// The prime `p` when the domain is a prime field.
    pub fn prime_field(&self) -> Option<u64> {
        match self {
            CoeffDomain::Modular(m) if is_prime(*m) => Some(*m),
            _ => None,
        }
    }

    /// Fails for composite moduli, which support evaluation but not elimination.
    pub fn require_elimination(&self) -> Result<(), Error> {
        match self {
            CoeffDomain::Modular(m) if !is_prime(*m) => Err(Error::CompositeModulus(*m)),
            _ => Ok(()),
        }
    }

    pub fn canon(&self, c: &BigInt) -> Coeff {
        match self {
            CoeffDomain::Integers => Coeff::from_bigint(c.clone()),
            CoeffDomain::Modular(m) => {
                let r = c.mod_floor(&BigInt::from(*m));
                Coeff::small(r.to_i64().expect("residue fits in i64"))
            }
        }
    }

    pub fn canon_i64(&self, c: i64) -> Coeff {
        match self {
            CoeffDomain::Integers => Coeff::small(c),
            CoeffDomain::Modular(m) => Coeff::small(c.rem_euclid(*m as i64)),
        }
    }

    pub fn zero(&self) -> Coeff {
        Coeff::zero()
    }

    pub fn one(&self) -> Coeff {
        Coeff::small(1)
    }

    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match self {
            CoeffDomain::Integers => a.add_int(b),
            CoeffDomain::Modular(m) => {
                let s = a.residue() + b.residue();
                Coeff::small((s % m) as i64)
            }
        }
    }

    pub fn sub(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &Coeff) -> Coeff {
        match self {
            CoeffDomain::Integers => a.neg_int(),
            CoeffDomain::Modular(m) => {
                let r = a.residue();
                Coeff::small(if r == 0 { 0 } else { (m - r) as i64 })
            }
        }
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match self {
            CoeffDomain::Integers => a.mul_int(b),
            CoeffDomain::Modular(m) => Coeff::small(((a.residue() * b.residue()) % m) as i64),
        }
    }

    /// `k · a` for a raw integer multiplier.
    pub fn scale_i64(&self, k: i64, a: &Coeff) -> Coeff {
        self.mul(&self.canon_i64(k), a)
    }

    pub fn is_canonical(&self, a: &Coeff) -> bool {
        match (self, a) {
            (CoeffDomain::Integers, _) => true,
            (CoeffDomain::Modular(m), Coeff::Small(v)) => *v >= 0 && (*v as u64) < *m,
            (CoeffDomain::Modular(_), Coeff::Big(_)) => false,
        }
    }
}

impl fmt::Display for CoeffDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffDomain::Integers => write!(f, "int"),
            CoeffDomain::Modular(m) => write!(f, "zmod:{m}"),
        }
    }
}

impl FromStr for CoeffDomain {
    type Err = Error;

    /// Parses `int` or `zmod:<m>`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if s == "int" {
            return Ok(CoeffDomain::Integers);
        }
        match s.strip_prefix("zmod:") {
            Some(m) => {
                let m: u64 = m
                    .parse()
                    .map_err(|_| Error::InvalidDomain(format!("bad modulus in `{s}`")))?;
                CoeffDomain::modular(m)
            }
            None => Err(Error::InvalidDomain(format!(
                "expected `int` or `zmod:<m>`, got `{s}`"
            ))),
        }
    }
}

impl TryFrom<String> for CoeffDomain {
    type Error = Error;
    fn try_from(s: String) -> Result<Self, Error> {
        s.parse()
    }
}

impl From<CoeffDomain> for String {
    fn from(d: CoeffDomain) -> String {
        d.to_string()
    }
}

/// An exact integer value. `Big` is used only outside the `i64` range.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coeff {
    Small(i64),
    Big(BigInt),
}

impl Coeff {
    pub fn small(v: i64) -> Self {
        Coeff::Small(v)
    }

    pub fn zero() -> Self {
        Coeff::Small(0)
    }

    pub fn from_bigint(v: BigInt) -> Self {
        match v.to_i64() {
            Some(s) => Coeff::Small(s),
            None => Coeff::Big(v),
        }
    }

    pub fn to_bigint(&self) -> BigInt {
        match self {
            Coeff::Small(v) => BigInt::from(*v),
            Coeff::Big(v) => v.clone(),
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Coeff::Small(v) => Some(*v),
            Coeff::Big(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Coeff::Small(0))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Coeff::Small(1))
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Coeff::Small(v) => *v < 0,
            Coeff::Big(v) => v.is_negative(),
        }
    }

    // Residues are always stored as non-negative `Small` values.
    fn residue(&self) -> u64 {
        match self {
            Coeff::Small(v) => *v as u64,
            Coeff::Big(_) => unreachable!("modular coefficient stored as big integer"),
        }
    }

    fn add_int(&self, other: &Coeff) -> Coeff {
        if let (Coeff::Small(a), Coeff::Small(b)) = (self, other) {
            if let Some(s) = a.checked_add(*b) {
                return Coeff::Small(s);
            }
        }
        Coeff::from_bigint(self.to_bigint() + other.to_bigint())
    }

    fn mul_int(&self, other: &Coeff) -> Coeff {
        if let (Coeff::Small(a), Coeff::Small(b)) = (self, other) {
            if let Some(s) = a.checked_mul(*b) {
                return Coeff::Small(s);
            }
        }
        Coeff::from_bigint(self.to_bigint() * other.to_bigint())
    }

    fn neg_int(&self) -> Coeff {
        match self {
            Coeff::Small(v) => match v.checked_neg() {
                Some(n) => Coeff::Small(n),
                None => Coeff::Big(-BigInt::from(*v)),
            },
            Coeff::Big(v) => Coeff::from_bigint(-v),
        }
    }
}

impl Default for Coeff {
    fn default() -> Self {
        Coeff::zero()
    }
}

impl From<i64> for Coeff {
    fn from(v: i64) -> Self {
        Coeff::Small(v)
    }
}

impl From<BigInt> for Coeff {
    fn from(v: BigInt) -> Self {
        Coeff::from_bigint(v)
    }
}

impl PartialOrd for Coeff {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Coeff {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Coeff::Small(a), Coeff::Small(b)) => a.cmp(b),
            _ => self.to_bigint().cmp(&other.to_bigint()),
        }
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Small(v) => write!(f, "{v}"),
            Coeff::Big(v) => write!(f, "{v}"),
        }
    }
}

/// Deterministic trial-division primality test; moduli are at most `u32::MAX`.
pub fn is_prime(m: u64) -> bool {
    if m < 2 {
        return false;
    }
    if m.is_multiple_of(2) {
        return m == 2;
    }
    let mut d = 3u64;
    while d * d <= m {
        if m.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Multiplicative inverse modulo a prime `p`.
pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    let (g, x, _) = ext_gcd_i128(a as i128, p as i128);
    debug_assert_eq!(g, 1);
    x.rem_euclid(p as i128) as u64
}

fn ext_gcd_i128(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd_i128(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// `(g, s, t)` with `g = gcd(a, b) ≥ 0` and `s·a + t·b = g`.
///
/// When `a` divides `b` and `a > 0` the result is `(a, 1, 0)`, which keeps
/// row operations trivial in that case.
pub(crate) fn xgcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    if a.is_positive() && (b % a).is_zero() {
        return (a.clone(), BigInt::one(), BigInt::zero());
    }
    let e = a.extended_gcd(b);
    let (mut g, mut s, mut t) = (e.gcd, e.x, e.y);
    if g.is_negative() {
        g = -g;
        s = -s;
        t = -t;
    }
    (g, s, t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canon_examples() {
        let z5 = CoeffDomain::Modular(5);
        let z3 = CoeffDomain::Modular(3);
        assert_eq!(z5.canon(&BigInt::from(7)), Coeff::small(2));
        assert_eq!(z3.canon(&BigInt::from(-1)), Coeff::small(2));
        assert_eq!(CoeffDomain::Integers.canon(&BigInt::from(-4)), Coeff::small(-4));
    }

    #[test]
    fn arithmetic_examples() {
        let z3 = CoeffDomain::Modular(3);
        let z5 = CoeffDomain::Modular(5);
        assert_eq!(z3.add(&Coeff::small(2), &Coeff::small(2)), Coeff::small(1));
        assert_eq!(z5.mul(&Coeff::small(2), &Coeff::small(3)), Coeff::small(1));
        assert_eq!(CoeffDomain::Integers.neg(&Coeff::zero()), Coeff::zero());
    }

    #[test]
    fn promotes_on_overflow() {
        let d = CoeffDomain::Integers;
        let big = d.mul(&Coeff::small(i64::MAX), &Coeff::small(4));
        assert!(matches!(big, Coeff::Big(_)));
        let back = d.add(&big, &d.mul(&Coeff::small(i64::MAX), &Coeff::small(-4)));
        assert_eq!(back, Coeff::zero());
        assert_eq!(d.neg(&Coeff::small(i64::MIN)).to_bigint(), -BigInt::from(i64::MIN));
    }

    #[test]
    fn domain_parsing() {
        assert_eq!("int".parse::<CoeffDomain>().unwrap(), CoeffDomain::Integers);
        assert_eq!("zmod:7".parse::<CoeffDomain>().unwrap(), CoeffDomain::Modular(7));
        assert!("zmod:1".parse::<CoeffDomain>().is_err());
        assert!("zmod:x".parse::<CoeffDomain>().is_err());
        assert!("rat".parse::<CoeffDomain>().is_err());
        assert_eq!(CoeffDomain::Modular(4).characteristic(), 4);
        assert_eq!(CoeffDomain::Integers.characteristic(), 0);
    }

    #[test]
    fn composite_rejected_for_elimination() {
        assert!(CoeffDomain::Modular(4).require_elimination().is_err());
        assert!(CoeffDomain::Modular(5).require_elimination().is_ok());
        assert!(CoeffDomain::Integers.require_elimination().is_ok());
    }

    #[test]
    fn inverse_mod_prime() {
        for p in [2u64, 3, 5, 7, 101] {
            for a in 1..p {
                assert_eq!(a * inv_mod(a, p) % p, 1);
            }
        }
    }

    #[test]
    fn xgcd_bezout() {
        for a in -12i64..=12 {
            for b in -12i64..=12 {
                let (g, s, t) = xgcd(&BigInt::from(a), &BigInt::from(b));
                assert_eq!(&s * a + &t * b, g);
                assert_eq!(g, BigInt::from(a).gcd(&BigInt::from(b)));
            }
        }
    }
}
