use crate::Coeff;

/// A sparse combination of basis elements of one context.
///
/// Terms are sorted by basis index and carry no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LieElement {
    pub(crate) ctx: u64,
    pub(crate) terms: Vec<(u32, Coeff)>,
}

impl LieElement {
    pub(crate) fn from_sorted(ctx: u64, terms: Vec<(u32, Coeff)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        LieElement { ctx, terms }
    }

    pub fn context_id(&self) -> u64 {
        self.ctx
    }

    pub fn terms(&self) -> &[(u32, Coeff)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, index: u32) -> Coeff {
        match self.terms.binary_search_by_key(&index, |t| t.0) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => Coeff::zero(),
        }
    }
}
