//! The backend interface word evaluation runs against.

use crate::Error;

/// A Lie ring whose elements can be added, negated and bracketed.
///
/// Implemented by truncated free Lie rings, their relatively free quotients
/// and finite structure-constant rings, so that one evaluator serves all.
pub trait LieRing {
    type Element: Clone;

    fn zero(&self) -> Self::Element;
    fn add(&self, a: &Self::Element, b: &Self::Element) -> Result<Self::Element, Error>;
    fn neg(&self, a: &Self::Element) -> Result<Self::Element, Error>;
    fn bracket(&self, a: &Self::Element, b: &Self::Element) -> Result<Self::Element, Error>;
    fn is_zero(&self, a: &Self::Element) -> bool;

    fn sub(&self, a: &Self::Element, b: &Self::Element) -> Result<Self::Element, Error> {
        self.add(a, &self.neg(b)?)
    }

    /// `k · a` by repeated doubling; `k` may be negative.
    fn scale_int(&self, k: i64, a: &Self::Element) -> Result<Self::Element, Error> {
        let mut acc = self.zero();
        let mut base = if k < 0 { self.neg(a)? } else { a.clone() };
        let mut n = k.unsigned_abs();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.add(&acc, &base)?;
            }
            n >>= 1;
            if n > 0 {
                base = self.add(&base, &base)?;
            }
        }
        Ok(acc)
    }
}
