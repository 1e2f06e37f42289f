//! Commutator words in the left-normed comma/semicolon notation.
//!
//! `(a,b,c)` is `[[a,b],c]`, and `;` separates segments whose values are
//! bracketed left-normed in turn, so `(a,b;c,d)` is `[[a,b],[c,d]]`.

mod expand;
mod parse;

pub use expand::{
    expand_pairs, expand_rightmost, multihomogeneous_components, pairs_source, polarize,
    polarize_combination, rightmost_source,
};
pub use parse::{parse, parse_identities, parse_identity, ParseError};

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::ring::LieRing;
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CommutatorWord {
    Var(String),
    /// Left-normed commutator of at least two subwords.
    LeftNormed(Vec<CommutatorWord>),
}

impl CommutatorWord {
    pub fn var(name: &str) -> Self {
        CommutatorWord::Var(name.to_string())
    }

    /// Left-normed commutator of named variables.
    pub fn left_normed_vars(names: &[&str]) -> Self {
        assert!(names.len() >= 2);
        CommutatorWord::LeftNormed(names.iter().map(|n| Self::var(n)).collect())
    }

    /// Distinct variable names in order of first occurrence.
    pub fn variables(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.visit_vars(&mut |v| {
            if !out.iter().any(|o: &String| o == v) {
                out.push(v.to_string());
            }
        });
        out
    }

    pub fn multiplicity(&self, v: &str) -> usize {
        let mut n = 0;
        self.visit_vars(&mut |x| n += usize::from(x == v));
        n
    }

    /// Number of variable occurrences, which is the degree of every value.
    pub fn degree(&self) -> usize {
        let mut n = 0;
        self.visit_vars(&mut |_| n += 1);
        n
    }

    fn visit_vars(&self, f: &mut impl FnMut(&str)) {
        match self {
            CommutatorWord::Var(v) => f(v),
            CommutatorWord::LeftNormed(ch) => ch.iter().for_each(|c| c.visit_vars(f)),
        }
    }

    /// Replaces every variable by the word `f` returns for it.
    pub fn substitute(&self, f: &mut impl FnMut(&str) -> CommutatorWord) -> CommutatorWord {
        match self {
            CommutatorWord::Var(v) => f(v),
            CommutatorWord::LeftNormed(ch) => {
                CommutatorWord::LeftNormed(ch.iter().map(|c| c.substitute(f)).collect())
            }
        }
    }

    pub fn rename(&self, map: &HashMap<String, String>) -> CommutatorWord {
        self.substitute(&mut |v| CommutatorWord::Var(map.get(v).cloned().unwrap_or_else(|| v.to_string())))
    }

    pub fn evaluate<R: LieRing>(
        &self,
        ring: &R,
        assignment: &HashMap<String, R::Element>,
    ) -> Result<R::Element, Error> {
        match self {
            CommutatorWord::Var(v) => assignment
                .get(v)
                .cloned()
                .ok_or_else(|| Error::UnassignedVariable(v.clone())),
            CommutatorWord::LeftNormed(ch) => {
                let mut acc = ch[0].evaluate(ring, assignment)?;
                for c in &ch[1..] {
                    let x = c.evaluate(ring, assignment)?;
                    acc = ring.bracket(&acc, &x)?;
                }
                Ok(acc)
            }
        }
    }

    fn write_item(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CommutatorWord::Var(v) => write!(f, "{v}"),
            w => write!(f, "{w}"),
        }
    }
}

impl fmt::Display for CommutatorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CommutatorWord::Var(v) => write!(f, "{v}"),
            CommutatorWord::LeftNormed(ch) => {
                let semicolons = ch.iter().any(|c| matches!(c, CommutatorWord::LeftNormed(_)));
                write!(f, "(")?;
                for (i, c) in ch.iter().enumerate() {
                    if i > 0 {
                        write!(f, "{}", if semicolons { ";" } else { "," })?;
                    }
                    match c {
                        CommutatorWord::LeftNormed(items) if semicolons => {
                            for (j, item) in items.iter().enumerate() {
                                if j > 0 {
                                    write!(f, ",")?;
                                }
                                item.write_item(f)?;
                            }
                        }
                        other => other.write_item(f)?,
                    }
                }
                write!(f, ")")
            }
        }
    }
}

impl std::str::FromStr for CommutatorWord {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

/// Prints the word in the notation [`parse`] accepts.
pub fn print(word: &CommutatorWord) -> String {
    word.to_string()
}

/// `lhs = rhs`, with `rhs = None` meaning zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Identity {
    pub lhs: CommutatorWord,
    pub rhs: Option<CommutatorWord>,
}

impl Identity {
    pub fn zero(lhs: CommutatorWord) -> Self {
        Identity { lhs, rhs: None }
    }

    pub fn equal(lhs: CommutatorWord, rhs: CommutatorWord) -> Self {
        Identity { lhs, rhs: Some(rhs) }
    }

    /// `lhs - rhs` as a formal combination.
    pub fn combination(&self) -> WordCombination {
        let mut terms = vec![(1, self.lhs.clone())];
        if let Some(r) = &self.rhs {
            terms.push((-1, r.clone()));
        }
        WordCombination { terms }
    }

    pub fn variables(&self) -> Vec<String> {
        self.combination().variables()
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.rhs {
            Some(r) => write!(f, "{} = {}", self.lhs, r),
            None => write!(f, "{} = 0", self.lhs),
        }
    }
}

impl TryFrom<String> for Identity {
    type Error = ParseError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        parse_identity(&s)
    }
}

impl From<Identity> for String {
    fn from(i: Identity) -> String {
        i.to_string()
    }
}

/// A formal integer combination of words.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct WordCombination {
    pub terms: Vec<(i64, CommutatorWord)>,
}

impl WordCombination {
    pub fn single(w: CommutatorWord) -> Self {
        WordCombination {
            terms: vec![(1, w)],
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn variables(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for (_, w) in &self.terms {
            for v in w.variables() {
                if !out.contains(&v) {
                    out.push(v);
                }
            }
        }
        out
    }

    /// Per-variable multiplicity, provided it is the same in every term.
    pub fn uniform_multiplicities(&self) -> Result<Vec<(String, usize)>, Error> {
        let vars = self.variables();
        vars.into_iter()
            .map(|v| {
                let ms: Vec<usize> = self.terms.iter().map(|(_, w)| w.multiplicity(&v)).collect();
                if ms.windows(2).any(|p| p[0] != p[1]) {
                    return Err(Error::Unsupported(format!(
                        "variable `{v}` occurs with different multiplicities across terms"
                    )));
                }
                Ok((v, ms.first().copied().unwrap_or(0)))
            })
            .collect()
    }

    /// Merges equal words and drops zero coefficients; order is canonical.
    pub fn normalized(&self) -> WordCombination {
        let mut acc: std::collections::BTreeMap<CommutatorWord, i64> = Default::default();
        for (c, w) in &self.terms {
            *acc.entry(w.clone()).or_insert(0) += c;
        }
        WordCombination {
            terms: acc.into_iter().filter(|t| t.1 != 0).map(|(w, c)| (c, w)).collect(),
        }
    }

    pub fn evaluate<R: LieRing>(
        &self,
        ring: &R,
        assignment: &HashMap<String, R::Element>,
    ) -> Result<R::Element, Error> {
        let mut acc = ring.zero();
        for (c, w) in &self.terms {
            let v = w.evaluate(ring, assignment)?;
            let v = match c {
                1 => v,
                -1 => ring.neg(&v)?,
                k => ring.scale_int(*k, &v)?,
            };
            acc = ring.add(&acc, &v)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for WordCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (c, w)) in self.terms.iter().enumerate() {
            let (neg, mag) = (*c < 0, c.unsigned_abs());
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if mag != 1 {
                write!(f, "{mag}")?;
            }
            write!(f, "{w}")?;
        }
        Ok(())
    }
}
