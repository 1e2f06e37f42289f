//! Substitution instances of identities: the polarization family, compiled
//! evaluation and tuple enumeration.

use crate::freelie::FreeLieContext;
use crate::ring::LieRing;
use crate::wordlang::{multihomogeneous_components, CommutatorWord, WordCombination};
use crate::{CoeffDomain, Error};

/// Cap on the number of substitution tuples for one family member.
pub const MAX_TUPLES: u128 = 50_000_000;

/// The combinations whose values at tuples of additive generators span all
/// values of `comb`.
///
/// Each variable of multiplicity `k ≥ 2` is replaced in turn by the
/// multihomogeneous components of a sum of fresh variables. For `k = 2`
/// the single component is an integer combination of values of `comb`, so
/// this is sound over every domain. For `k ≥ 3` the components are only
/// recovered by Vandermonde inversion, which needs a prime field with
/// `p > k`; other domains are rejected.
pub fn substitution_family(
    comb: &WordCombination,
    domain: CoeffDomain,
) -> Result<Vec<WordCombination>, Error> {
    let mults = comb.uniform_multiplicities()?;
    let mut family = vec![comb.clone()];
    for (v, k) in mults {
        if k < 2 {
            continue;
        }
        if k >= 3 {
            match domain.prime_field() {
                Some(p) if p > k as u64 => {}
                _ => {
                    return Err(Error::Unsupported(format!(
                        "variable `{v}` occurs {k} times; polarization needs a prime field of characteristic > {k}, got {domain}"
                    )))
                }
            }
        }
        let mut next = Vec::new();
        for g in family {
            let comps = multihomogeneous_components(&g, &v)?;
            next.push(g);
            next.extend(comps.into_iter().map(|(_, c)| c));
        }
        family = next;
    }
    Ok(family)
}

#[derive(Clone, Debug)]
enum Node {
    Var(usize),
    LeftNormed(Vec<Node>),
}

/// A word combination with variables resolved to argument positions.
#[derive(Clone, Debug)]
pub struct CompiledCombination {
    source: WordCombination,
    vars: Vec<String>,
    mults: Vec<usize>,
    terms: Vec<(i64, Node)>,
}

impl CompiledCombination {
    pub fn new(comb: &WordCombination) -> Result<Self, Error> {
        let m = comb.uniform_multiplicities()?;
        let vars: Vec<String> = m.iter().map(|(v, _)| v.clone()).collect();
        let mults = m.iter().map(|(_, k)| *k).collect();
        fn compile(w: &CommutatorWord, vars: &[String]) -> Node {
            match w {
                CommutatorWord::Var(v) => Node::Var(vars.iter().position(|x| x == v).unwrap()),
                CommutatorWord::LeftNormed(ch) => {
                    Node::LeftNormed(ch.iter().map(|c| compile(c, vars)).collect())
                }
            }
        }
        let terms = comb
            .terms
            .iter()
            .map(|(c, w)| (*c, compile(w, &vars)))
            .collect();
        Ok(CompiledCombination {
            source: comb.clone(),
            vars,
            mults,
            terms,
        })
    }

    pub fn source(&self) -> &WordCombination {
        &self.source
    }

    pub fn variables(&self) -> &[String] {
        &self.vars
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.mults
    }

    /// Degree of every term (sum of multiplicities).
    pub fn degree(&self) -> usize {
        self.mults.iter().sum()
    }

    pub fn evaluate<R: LieRing>(&self, ring: &R, args: &[R::Element]) -> Result<R::Element, Error> {
        fn eval<R: LieRing>(n: &Node, ring: &R, args: &[R::Element]) -> Result<R::Element, Error> {
            match n {
                Node::Var(i) => Ok(args[*i].clone()),
                Node::LeftNormed(ch) => {
                    let mut acc = eval(&ch[0], ring, args)?;
                    for c in &ch[1..] {
                        if ring.is_zero(&acc) {
                            return Ok(acc);
                        }
                        acc = ring.bracket(&acc, &eval(c, ring, args)?)?;
                    }
                    Ok(acc)
                }
            }
        }
        let mut acc = ring.zero();
        for (c, n) in &self.terms {
            let v = eval(n, ring, args)?;
            if ring.is_zero(&v) {
                continue;
            }
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

/// All tuples of basis indices `(b_1, ..., b_s)` with
/// `Σ mults[j] · deg(b_j) ≤ class`, in lexicographic order.
pub fn graded_tuples(ctx: &FreeLieContext, mults: &[usize]) -> Result<Vec<Vec<u32>>, Error> {
    let count = count_graded_tuples(ctx, mults);
    if count > MAX_TUPLES {
        return Err(Error::guard("substitution tuples", count, MAX_TUPLES));
    }
    let class = ctx.class();
    // minimal degree still needed by positions j..
    let mut tail = vec![0usize; mults.len() + 1];
    for j in (0..mults.len()).rev() {
        tail[j] = tail[j + 1] + mults[j];
    }
    let mut out = Vec::with_capacity(count as usize);
    let mut cur = Vec::with_capacity(mults.len());
    #[allow(clippy::too_many_arguments)]
    fn go(
        j: usize,
        used: usize,
        ctx: &FreeLieContext,
        mults: &[usize],
        tail: &[usize],
        cur: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if j == mults.len() {
            out.push(cur.clone());
            return;
        }
        let class = ctx.class();
        for i in 0..ctx.dimension() as u32 {
            let d = ctx.degree_of(i);
            if used + mults[j] * d + tail[j + 1] > class {
                break;
            }
            cur.push(i);
            go(j + 1, used + mults[j] * d, ctx, mults, tail, cur, out);
            cur.pop();
        }
    }
    if tail[0] <= class {
        go(0, 0, ctx, mults, &tail, &mut cur, &mut out);
    }
    Ok(out)
}

/// Number of tuples [`graded_tuples`] would produce (saturating).
pub fn count_graded_tuples(ctx: &FreeLieContext, mults: &[usize]) -> u128 {
    let class = ctx.class();
    // ways[t] = number of partial tuples with weighted degree t
    let mut ways = vec![0u128; class + 1];
    ways[0] = 1;
    for &m in mults {
        let mut next = vec![0u128; class + 1];
        for (t, &w) in ways.iter().enumerate() {
            if w == 0 {
                continue;
            }
            for d in 1..=class {
                let nt = t + m * d;
                if nt > class {
                    break;
                }
                let dim = ctx.degree_dim(d).unwrap() as u128;
                next[nt] = next[nt].saturating_add(w.saturating_mul(dim));
            }
        }
        ways = next;
    }
    ways.iter().fold(0u128, |a, &b| a.saturating_add(b))
}
