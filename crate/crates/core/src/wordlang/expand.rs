use super::{CommutatorWord, WordCombination};
use crate::Error;

fn var(s: &str) -> CommutatorWord {
    CommutatorWord::var(s)
}

/// A name `base'`, `base''`, ... not already used in `taken`.
fn fresh_prefix(base: &str, taken: &[String]) -> String {
    let mut p = format!("{base}'");
    while taken.iter().any(|t| t.starts_with(&p)) {
        p.push('\'');
    }
    p
}

// Replaces the occurrences of `v`, in traversal order, by `names[slots[i]]`.
fn place(word: &CommutatorWord, v: &str, slots: &[usize], names: &[String]) -> CommutatorWord {
    let mut i = 0;
    word.substitute(&mut |x| {
        if x == v {
            let w = var(&names[slots[i]]);
            i += 1;
            w
        } else {
            var(x)
        }
    })
}

// All sequences over 0..counts.len() using value t exactly counts[t] times.
fn arrangements(counts: &mut [usize], len: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == len {
        out.push(cur.clone());
        return;
    }
    for t in 0..counts.len() {
        if counts[t] > 0 {
            counts[t] -= 1;
            cur.push(t);
            arrangements(counts, len, cur, out);
            cur.pop();
            counts[t] += 1;
        }
    }
}

fn compositions(k: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            if cur.len() >= 2 {
                out.push(cur.clone());
            }
            return;
        }
        for first in 1..=rest {
            cur.push(first);
            go(rest - first, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(k, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| b.cmp(a)));
    out
}

fn fresh_names(comb: &WordCombination, v: &str, j: usize) -> Vec<String> {
    let prefix = fresh_prefix(v, &comb.variables());
    (1..=j).map(|i| format!("{prefix}{i}")).collect()
}

fn multiplicity_of(comb: &WordCombination, v: &str) -> Result<usize, Error> {
    let m = comb
        .uniform_multiplicities()?
        .into_iter()
        .find(|(x, _)| x == v)
        .map(|(_, k)| k)
        .unwrap_or(0);
    if m == 0 {
        return Err(Error::InvalidArgument(format!("variable `{v}` does not occur")));
    }
    Ok(m)
}

/// The multihomogeneous component of `comb` with `v` replaced by
/// `v'1 + ... + v'j`, of multidegree `counts` in the fresh variables.
fn component(comb: &WordCombination, v: &str, counts: &[usize], names: &[String]) -> WordCombination {
    let k: usize = counts.iter().sum();
    let mut slots = Vec::new();
    arrangements(&mut counts.to_vec(), k, &mut Vec::new(), &mut slots);
    let mut out = WordCombination::default();
    for (c, w) in &comb.terms {
        for s in &slots {
            out.terms.push((*c, place(w, v, s, names)));
        }
    }
    out
}

/// Cross terms of substituting sums for `v` in `comb`.
///
/// For each `j` in `2..=k` (with `k` the multiplicity of `v`) the result
/// holds the sum of all terms of `comb(v'1 + ... + v'j)` using every fresh
/// variable at least once. By inclusion-exclusion this is
/// `Σ_S (-1)^(j-|S|) comb(Σ_{i∈S} v'i)`, an integer combination of values of
/// `comb` itself.
pub fn polarize_combination(comb: &WordCombination, v: &str) -> Result<Vec<WordCombination>, Error> {
    let k = multiplicity_of(comb, v)?;
    let mut out = Vec::new();
    for j in 2..=k {
        let names = fresh_names(comb, v, j);
        let mut acc = WordCombination::default();
        for counts in compositions(k).into_iter().filter(|c| c.len() == j) {
            acc.terms.extend(component(comb, v, &counts, &names).terms);
        }
        out.push(acc);
    }
    Ok(out)
}

/// [`polarize_combination`] for a single word.
pub fn polarize(word: &CommutatorWord, v: &str) -> Result<Vec<WordCombination>, Error> {
    polarize_combination(&WordCombination::single(word.clone()), v)
}

/// The individual multihomogeneous components of `comb(v'1 + ... + v'j)`,
/// one per composition `(k1, ..., kj)` of the multiplicity with `j ≥ 2`.
///
/// For multiplicity 2 this agrees with [`polarize_combination`]. For higher
/// multiplicity a single component is in general only a rational
/// combination of values of `comb`.
pub fn multihomogeneous_components(
    comb: &WordCombination,
    v: &str,
) -> Result<Vec<(Vec<usize>, WordCombination)>, Error> {
    let k = multiplicity_of(comb, v)?;
    Ok(compositions(k)
        .into_iter()
        .map(|counts| {
            let names = fresh_names(comb, v, counts.len());
            let c = component(comb, v, &counts, &names);
            (counts, c)
        })
        .collect())
}

fn left_normed(names: &[String]) -> CommutatorWord {
    CommutatorWord::LeftNormed(names.iter().map(|n| var(n)).collect())
}

/// `(y1, ..., yn, x)`.
pub fn rightmost_source(n: usize) -> CommutatorWord {
    let mut names: Vec<String> = (1..=n).map(|i| format!("y{i}")).collect();
    names.push("x".into());
    if n == 0 {
        return var("x");
    }
    left_normed(&names)
}

/// `(y1, ..., yn, x)` as `2^(n-1)` signed words `(x, y_π(1), ..., y_π(n))`.
pub fn expand_rightmost(n: usize) -> Result<WordCombination, Error> {
    if n == 0 {
        return Err(Error::InvalidArgument("expand_rightmost needs n >= 1".into()));
    }
    // A(p, [y1..yk]) = [(p), (y1..yk)]
    //               = A(p, [y1..yk-1]) extended by yk - A(p + yk, [y1..yk-1])
    fn a(prefix: Vec<String>, ys: &[String]) -> Vec<(i64, Vec<String>)> {
        match ys.split_last() {
            None => vec![(1, prefix)],
            Some((last, [])) => {
                let mut p = prefix;
                p.push(last.clone());
                vec![(1, p)]
            }
            Some((last, rest)) => {
                let mut out: Vec<(i64, Vec<String>)> = a(prefix.clone(), rest)
                    .into_iter()
                    .map(|(c, mut w)| {
                        w.push(last.clone());
                        (c, w)
                    })
                    .collect();
                let mut p = prefix;
                p.push(last.clone());
                out.extend(a(p, rest).into_iter().map(|(c, w)| (-c, w)));
                out
            }
        }
    }
    let ys: Vec<String> = (1..=n).map(|i| format!("y{i}")).collect();
    let terms = a(vec!["x".into()], &ys)
        .into_iter()
        .map(|(c, w)| (-c, left_normed(&w)))
        .collect();
    Ok(WordCombination { terms })
}

/// `(x1,x2; x3,x4; ...; x2n-1,x2n)`.
pub fn pairs_source(n: usize) -> CommutatorWord {
    let pair = |i: usize| CommutatorWord::left_normed_vars(&[&format!("x{}", 2 * i - 1), &format!("x{}", 2 * i)]);
    if n == 1 {
        return pair(1);
    }
    CommutatorWord::LeftNormed((1..=n).map(pair).collect())
}

/// `(x1,x2; ...; x2n-1,x2n)` as `2^(n-1)` signed left-normed words in
/// `x1..x2n`, using `[w, [a,b]] = (w,a,b) - (w,b,a)`.
pub fn expand_pairs(n: usize) -> Result<WordCombination, Error> {
    if n == 0 {
        return Err(Error::InvalidArgument("expand_pairs needs n >= 1".into()));
    }
    let mut terms: Vec<(i64, Vec<String>)> = vec![(1, vec!["x1".into(), "x2".into()])];
    for i in 2..=n {
        let (a, b) = (format!("x{}", 2 * i - 1), format!("x{}", 2 * i));
        terms = terms
            .into_iter()
            .flat_map(|(c, w)| {
                let mut ab = w.clone();
                ab.extend([a.clone(), b.clone()]);
                let mut ba = w;
                ba.extend([b.clone(), a.clone()]);
                [(c, ab), (-c, ba)]
            })
            .collect();
    }
    Ok(WordCombination {
        terms: terms.into_iter().map(|(c, w)| (c, left_normed(&w))).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wordlang::parse;

    #[test]
    fn polarize_square() {
        let w = parse("(x,y,x)").unwrap();
        let p = polarize(&w, "x").unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p[0].to_string(), "(x'1,y,x'2) + (x'2,y,x'1)");
        assert!(polarize(&parse("(x,y)").unwrap(), "x").unwrap().is_empty());
        assert!(polarize(&w, "z").is_err());
        let p = polarize(&parse("(x,y;x,z)").unwrap(), "x").unwrap();
        assert_eq!(p[0].to_string(), "(x'1,y;x'2,z) + (x'2,y;x'1,z)");
    }

    #[test]
    fn cubic_components() {
        let w = WordCombination::single(parse("(x,y,x,x)").unwrap());
        let comps = multihomogeneous_components(&w, "x").unwrap();
        let shapes: Vec<Vec<usize>> = comps.iter().map(|c| c.0.clone()).collect();
        assert_eq!(shapes, vec![vec![2, 1], vec![1, 2], vec![1, 1, 1]]);
        assert_eq!(comps[0].1.len(), 3);
        assert_eq!(comps[2].1.len(), 6);
        let p = polarize_combination(&w, "x").unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p[0].len(), 6);
    }

    #[test]
    fn expansion_shapes() {
        assert_eq!(expand_rightmost(1).unwrap().to_string(), "-(x,y1)");
        assert_eq!(expand_rightmost(2).unwrap().to_string(), "-(x,y1,y2) + (x,y2,y1)");
        assert_eq!(expand_pairs(2).unwrap().to_string(), "(x1,x2,x3,x4) - (x1,x2,x4,x3)");
        for n in 1..=5 {
            assert_eq!(expand_rightmost(n).unwrap().len(), 1 << (n - 1));
            assert_eq!(expand_pairs(n).unwrap().len(), 1 << (n - 1));
        }
        assert_eq!(pairs_source(2).to_string(), "(x1,x2;x3,x4)");
        assert_eq!(rightmost_source(2).to_string(), "(y1,y2,x)");
    }
}
