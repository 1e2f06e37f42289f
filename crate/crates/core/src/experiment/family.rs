//! Parametrized identity families.

use serde::{Deserialize, Serialize};

use crate::wordlang::{CommutatorWord, Identity};
use crate::Error;

/// An identity family with its parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Family {
    /// `(x,y1,...,yn,x) = 0`.
    RepeatedEnds { n: usize },
    /// `(x,y;x1,...,x2n;x,z) = 0`.
    PairChain { n: usize },
    /// `(x,y;x1,...,x2n;x,z;y1,...,ym) = 0`. Flagged unless `2n >= m >= 1`.
    PairChainTail { n: usize, m: usize },
    /// `(x1,...,xi,xi+1,...,xn) = (x1,...,xi+1,xi,...,xn)`.
    SwapAt { n: usize, i: usize },
    /// `(x1,...,(xi,xi+1),...,xn) = 0`.
    BracketAt { n: usize, i: usize },
    /// `(x1,...,xn,xn+1,xn+2) = (x1,...,xn,xn+2,xn+1)`.
    SwapLast { n: usize },
    /// `(x1,...,xn;xn+1,xn+2) = 0`.
    BracketLast { n: usize },
    /// `(x1,x2,...,xn) = (x1,xρ(2),...,xρ(n))` for every non-identity
    /// permutation ρ of `2..=n`.
    Permutations { n: usize },
}

fn v(name: &str) -> CommutatorWord {
    CommutatorWord::var(name)
}

fn xs(range: std::ops::RangeInclusive<usize>) -> Vec<CommutatorWord> {
    range.map(|i| v(&format!("x{i}"))).collect()
}

fn ln(items: Vec<CommutatorWord>) -> CommutatorWord {
    if items.len() == 1 {
        items.into_iter().next().unwrap()
    } else {
        CommutatorWord::LeftNormed(items)
    }
}

fn need(cond: bool, what: &str) -> Result<(), Error> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("family parameters: {what}")))
    }
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for k in 0..items.len() {
        let mut rest = items.to_vec();
        let first = rest.remove(k);
        for mut p in permutations(&rest) {
            p.insert(0, first);
            out.push(p);
        }
    }
    out
}

impl Family {
    /// The identities of the family, and warnings about side conditions.
    pub fn identities(&self) -> Result<(Vec<Identity>, Vec<String>), Error> {
        let mut warnings = Vec::new();
        let ids = match *self {
            Family::RepeatedEnds { n } => {
                need(n >= 1, "n >= 1")?;
                let mut items = vec![v("x")];
                items.extend((1..=n).map(|i| v(&format!("y{i}"))));
                items.push(v("x"));
                vec![Identity::zero(ln(items))]
            }
            Family::PairChain { n } | Family::PairChainTail { n, .. } => {
                need(n >= 1, "n >= 1")?;
                let mut segs = vec![ln(vec![v("x"), v("y")]), ln(xs(1..=2 * n)), ln(vec![v("x"), v("z")])];
                if let Family::PairChainTail { m, .. } = *self {
                    need(m >= 1, "m >= 1")?;
                    if 2 * n < m {
                        warnings.push(format!("side condition 2n >= m fails for n = {n}, m = {m}"));
                    }
                    segs.push(ln((1..=m).map(|i| v(&format!("y{i}"))).collect()));
                }
                vec![Identity::zero(CommutatorWord::LeftNormed(segs))]
            }
            Family::SwapAt { n, i } => {
                need(n >= 2 && i >= 1 && i < n, "n >= 2 and 1 <= i < n")?;
                let lhs = xs(1..=n);
                let mut rhs = lhs.clone();
                rhs.swap(i - 1, i);
                vec![Identity::equal(ln(lhs), ln(rhs))]
            }
            Family::BracketAt { n, i } => {
                need(n >= 2 && i >= 1 && i < n, "n >= 2 and 1 <= i < n")?;
                let all = xs(1..=n);
                let mut items: Vec<CommutatorWord> = all[..i - 1].to_vec();
                items.push(ln(all[i - 1..=i].to_vec()));
                items.extend_from_slice(&all[i + 1..]);
                vec![Identity::zero(ln(items))]
            }
            Family::SwapLast { n } => {
                need(n >= 1, "n >= 1")?;
                let lhs = xs(1..=n + 2);
                let mut rhs = lhs.clone();
                rhs.swap(n, n + 1);
                vec![Identity::equal(ln(lhs), ln(rhs))]
            }
            Family::BracketLast { n } => {
                need(n >= 1, "n >= 1")?;
                let mut items = vec![ln(xs(1..=n))];
                items.push(ln(xs(n + 1..=n + 2)));
                vec![Identity::zero(CommutatorWord::LeftNormed(items))]
            }
            Family::Permutations { n } => {
                need((3..=8).contains(&n), "3 <= n <= 8")?;
                let tail: Vec<usize> = (2..=n).collect();
                let lhs = ln(xs(1..=n));
                permutations(&tail)
                    .into_iter()
                    .filter(|p| *p != tail)
                    .map(|p| {
                        let mut items = vec![v("x1")];
                        items.extend(p.iter().map(|i| v(&format!("x{i}"))));
                        Identity::equal(lhs.clone(), ln(items))
                    })
                    .collect()
            }
        };
        Ok((ids, warnings))
    }
}
