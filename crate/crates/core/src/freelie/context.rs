use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use dashmap::DashMap;

use super::element::LieElement;
use super::lyndon::{lyndon_words, necklace_count, standard_split};
use crate::ring::LieRing;
use crate::{Coeff, CoeffDomain, Error};

/// Default cap on the total number of basis elements of a context.
pub const DEFAULT_BASIS_CAP: u128 = 250_000;

const MAX_CLASS: usize = 64;

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

type Product = Arc<[(u32, i64)]>;

/// One Lyndon basis element with its standard factorization.
#[derive(Clone, Debug)]
pub struct BasicCommutator {
    pub word: Vec<u8>,
    /// Indices of the standard factors; `None` for generators.
    pub factors: Option<(u32, u32)>,
    pub block: u32,
    pub local: u32,
}

impl BasicCommutator {
    pub fn degree(&self) -> usize {
        self.word.len()
    }

    pub fn is_generator(&self) -> bool {
        self.factors.is_none()
    }
}

/// The basis elements of a single multidegree, in basis order.
#[derive(Clone, Debug)]
pub struct Block {
    pub degree: usize,
    pub multidegree: Vec<u8>,
    pub members: Vec<u32>,
}

impl Block {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// The free nilpotent Lie ring of a given rank and class over a domain.
pub struct FreeLieContext {
    id: u64,
    rank: usize,
    class: usize,
    domain: CoeffDomain,
    basis: Vec<BasicCommutator>,
    // degree d occupies degree_start[d-1]..degree_start[d]
    degree_start: Vec<usize>,
    index: HashMap<Vec<u8>, u32>,
    blocks: Vec<Block>,
    block_index: HashMap<Vec<u8>, u32>,
    products: DashMap<(u32, u32), Product>,
}

impl std::fmt::Debug for FreeLieContext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FreeLieContext")
            .field("rank", &self.rank)
            .field("class", &self.class)
            .field("domain", &self.domain)
            .field("dim", &self.basis.len())
            .finish()
    }
}

impl FreeLieContext {
    pub fn new(rank: usize, class: usize, domain: CoeffDomain) -> Result<Self, Error> {
        Self::with_cap(rank, class, domain, DEFAULT_BASIS_CAP)
    }

    pub fn with_cap(
        rank: usize,
        class: usize,
        domain: CoeffDomain,
        cap: u128,
    ) -> Result<Self, Error> {
        if rank == 0 {
            return Err(Error::InvalidArgument("rank must be at least 1".into()));
        }
        if class == 0 {
            return Err(Error::InvalidArgument("class cutoff must be at least 1".into()));
        }
        if rank > 256 {
            return Err(Error::guard("rank", rank as u128, 256));
        }
        if class > MAX_CLASS {
            return Err(Error::guard("class cutoff", class as u128, MAX_CLASS as u128));
        }
        let total = Self::predicted_dimension(rank, class);
        if total > cap {
            return Err(Error::guard("basis size", total, cap));
        }

        let mut words = lyndon_words(rank, class);
        words.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let index: HashMap<Vec<u8>, u32> = words
            .iter()
            .enumerate()
            .map(|(i, w)| (w.clone(), i as u32))
            .collect();

        let mut degree_start = vec![0; class + 1];
        for w in &words {
            degree_start[w.len()] += 1;
        }
        for d in 1..=class {
            degree_start[d] += degree_start[d - 1];
        }

        let mut blocks: Vec<Block> = Vec::new();
        let mut block_index: HashMap<Vec<u8>, u32> = HashMap::new();
        let mut basis = Vec::with_capacity(words.len());
        for (i, w) in words.iter().enumerate() {
            let mut md = vec![0u8; rank];
            for &l in w {
                md[l as usize] += 1;
            }
            let b = *block_index.entry(md.clone()).or_insert_with(|| {
                blocks.push(Block {
                    degree: w.len(),
                    multidegree: md,
                    members: Vec::new(),
                });
                (blocks.len() - 1) as u32
            });
            let local = blocks[b as usize].members.len() as u32;
            blocks[b as usize].members.push(i as u32);
            let factors = (w.len() > 1).then(|| {
                let s = standard_split(w);
                (index[&w[..s]], index[&w[s..]])
            });
            basis.push(BasicCommutator {
                word: w.clone(),
                factors,
                block: b,
                local,
            });
        }

        Ok(FreeLieContext {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            rank,
            class,
            domain,
            basis,
            degree_start,
            index,
            blocks,
            block_index,
            products: DashMap::new(),
        })
    }

    /// Total basis size predicted by Witt's formula, saturating.
    pub fn predicted_dimension(rank: usize, class: usize) -> u128 {
        (1..=class as u32)
            .map(|d| necklace_count(rank as u128, d))
            .fold(0u128, |a, b| a.saturating_add(b))
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn class(&self) -> usize {
        self.class
    }

    pub fn domain(&self) -> CoeffDomain {
        self.domain
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasicCommutator] {
        &self.basis
    }

    pub fn basic(&self, index: u32) -> &BasicCommutator {
        &self.basis[index as usize]
    }

    /// Basis index range of the degree-`d` component.
    pub fn degree_range(&self, d: usize) -> Result<std::ops::Range<usize>, Error> {
        self.check_degree(d)?;
        Ok(self.degree_start[d - 1]..self.degree_start[d])
    }

    pub fn degree_dim(&self, d: usize) -> Result<usize, Error> {
        Ok(self.degree_range(d)?.len())
    }

    pub fn degree_of(&self, index: u32) -> usize {
        self.basis[index as usize].word.len()
    }

    pub fn index_of_word(&self, word: &[u8]) -> Option<u32> {
        self.index.get(word).copied()
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn block(&self, b: u32) -> &Block {
        &self.blocks[b as usize]
    }

    pub fn block_of_multidegree(&self, md: &[u8]) -> Option<u32> {
        self.block_index.get(md).copied()
    }

    /// Block ids of degree `d`, in basis order.
    pub fn blocks_of_degree(&self, d: usize) -> Vec<u32> {
        (0..self.blocks.len() as u32)
            .filter(|&b| self.blocks[b as usize].degree == d)
            .collect()
    }

    fn check_degree(&self, d: usize) -> Result<(), Error> {
        if d == 0 || d > self.class {
            return Err(Error::DegreeOutOfRange {
                degree: d,
                cutoff: self.class,
            });
        }
        Ok(())
    }

    fn check(&self, a: &LieElement) -> Result<(), Error> {
        if a.ctx != self.id {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }

    pub fn generator_name(&self, i: usize) -> String {
        format!("x{}", i + 1)
    }

    pub fn zero(&self) -> LieElement {
        LieElement::from_sorted(self.id, Vec::new())
    }

    /// The `i`-th generator, 0-based.
    pub fn generator(&self, i: usize) -> Result<LieElement, Error> {
        if i >= self.rank {
            return Err(Error::InvalidArgument(format!(
                "generator {} out of range for rank {}",
                i + 1,
                self.rank
            )));
        }
        Ok(self.basis_element(i as u32))
    }

    pub fn generators(&self) -> Vec<LieElement> {
        (0..self.rank as u32).map(|i| self.basis_element(i)).collect()
    }

    /// Looks up a generator by its display name `x<k>`.
    pub fn generator_named(&self, name: &str) -> Option<LieElement> {
        let k: usize = name.strip_prefix('x')?.parse().ok()?;
        (1..=self.rank)
            .contains(&k)
            .then(|| self.basis_element((k - 1) as u32))
    }

    pub fn basis_element(&self, index: u32) -> LieElement {
        LieElement::from_sorted(self.id, vec![(index, Coeff::small(1))])
    }

    /// Builds an element from arbitrary `(index, raw coefficient)` pairs.
    pub fn element(&self, terms: &[(u32, Coeff)]) -> Result<LieElement, Error> {
        let mut acc: HashMap<u32, Coeff> = HashMap::new();
        for (i, c) in terms {
            if *i as usize >= self.basis.len() {
                return Err(Error::InvalidArgument(format!("basis index {i} out of range")));
            }
            let c = self.domain.canon(&c.to_bigint());
            let e = acc.entry(*i).or_insert_with(Coeff::zero);
            *e = self.domain.add(e, &c);
        }
        Ok(self.collect(acc))
    }

    fn collect(&self, acc: HashMap<u32, Coeff>) -> LieElement {
        let mut terms: Vec<(u32, Coeff)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by_key(|t| t.0);
        LieElement::from_sorted(self.id, terms)
    }

    pub fn add(&self, a: &LieElement, b: &LieElement) -> Result<LieElement, Error> {
        self.check(a)?;
        self.check(b)?;
        let d = self.domain;
        let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < a.terms.len() || j < b.terms.len() {
            let ka = a.terms.get(i).map(|t| t.0);
            let kb = b.terms.get(j).map(|t| t.0);
            match (ka, kb) {
                (Some(x), Some(y)) if x == y => {
                    let s = d.add(&a.terms[i].1, &b.terms[j].1);
                    if !s.is_zero() {
                        out.push((x, s));
                    }
                    i += 1;
                    j += 1;
                }
                (Some(x), Some(y)) if x < y => {
                    out.push(a.terms[i].clone());
                    i += 1;
                }
                (Some(_), None) => {
                    out.push(a.terms[i].clone());
                    i += 1;
                }
                _ => {
                    out.push(b.terms[j].clone());
                    j += 1;
                }
            }
        }
        Ok(LieElement::from_sorted(self.id, out))
    }

    pub fn neg(&self, a: &LieElement) -> Result<LieElement, Error> {
        self.check(a)?;
        let terms = a
            .terms
            .iter()
            .map(|(i, c)| (*i, self.domain.neg(c)))
            .collect();
        Ok(LieElement::from_sorted(self.id, terms))
    }

    pub fn sub(&self, a: &LieElement, b: &LieElement) -> Result<LieElement, Error> {
        self.add(a, &self.neg(b)?)
    }

    pub fn scale(&self, k: &Coeff, a: &LieElement) -> Result<LieElement, Error> {
        self.check(a)?;
        let k = self.domain.canon(&k.to_bigint());
        let terms = a
            .terms
            .iter()
            .map(|(i, c)| (*i, self.domain.mul(&k, c)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        Ok(LieElement::from_sorted(self.id, terms))
    }

    pub fn is_zero(&self, a: &LieElement) -> bool {
        a.is_zero()
    }

    pub fn graded_component(&self, a: &LieElement, d: usize) -> Result<LieElement, Error> {
        self.check(a)?;
        let r = self.degree_range(d)?;
        let terms = a
            .terms
            .iter()
            .filter(|(i, _)| r.contains(&(*i as usize)))
            .cloned()
            .collect();
        Ok(LieElement::from_sorted(self.id, terms))
    }

    /// Coefficients of the degree-`d` component in basis order.
    pub fn to_vector(&self, a: &LieElement, d: usize) -> Result<Vec<Coeff>, Error> {
        self.check(a)?;
        let r = self.degree_range(d)?;
        let mut v = vec![Coeff::zero(); r.len()];
        for (i, c) in &a.terms {
            let i = *i as usize;
            if r.contains(&i) {
                v[i - r.start] = c.clone();
            }
        }
        Ok(v)
    }

    pub fn from_vector(&self, d: usize, v: &[Coeff]) -> Result<LieElement, Error> {
        let r = self.degree_range(d)?;
        if v.len() != r.len() {
            return Err(Error::Dimension(format!(
                "degree {d} has dimension {}, got a vector of length {}",
                r.len(),
                v.len()
            )));
        }
        let terms = v
            .iter()
            .enumerate()
            .map(|(k, c)| ((r.start + k) as u32, self.domain.canon(&c.to_bigint())))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        Ok(LieElement::from_sorted(self.id, terms))
    }

    /// Splits `a` into dense per-block coefficient vectors, in block order.
    pub fn block_parts(&self, a: &LieElement) -> Result<Vec<(u32, Vec<Coeff>)>, Error> {
        self.check(a)?;
        let mut parts: Vec<(u32, Vec<Coeff>)> = Vec::new();
        for (i, c) in &a.terms {
            let bc = &self.basis[*i as usize];
            let pos = match parts.iter().position(|p| p.0 == bc.block) {
                Some(p) => p,
                None => {
                    let n = self.blocks[bc.block as usize].len();
                    parts.push((bc.block, vec![Coeff::zero(); n]));
                    parts.len() - 1
                }
            };
            parts[pos].1[bc.local as usize] = c.clone();
        }
        parts.sort_by_key(|p| p.0);
        Ok(parts)
    }

    pub fn from_block(&self, block: u32, v: &[Coeff]) -> Result<LieElement, Error> {
        let b = self
            .blocks
            .get(block as usize)
            .ok_or_else(|| Error::InvalidArgument(format!("block {block} out of range")))?;
        if v.len() != b.len() {
            return Err(Error::Dimension(format!(
                "block {block} has dimension {}, got {}",
                b.len(),
                v.len()
            )));
        }
        let terms = b
            .members
            .iter()
            .zip(v)
            .map(|(&i, c)| (i, self.domain.canon(&c.to_bigint())))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        Ok(LieElement::from_sorted(self.id, terms))
    }

    pub fn bracket(&self, a: &LieElement, b: &LieElement) -> Result<LieElement, Error> {
        self.check(a)?;
        self.check(b)?;
        let d = self.domain;
        let mut acc: HashMap<u32, Coeff> = HashMap::new();
        for (i, ca) in &a.terms {
            let di = self.degree_of(*i);
            for (j, cb) in &b.terms {
                if di + self.degree_of(*j) > self.class {
                    continue;
                }
                let (prod, sign) = self.structure(*i, *j);
                if prod.is_empty() {
                    continue;
                }
                let ab = d.mul(ca, cb);
                for &(k, c) in prod.iter() {
                    let t = d.mul(&ab, &d.canon_i64(sign * c));
                    let e = acc.entry(k).or_insert_with(Coeff::zero);
                    *e = d.add(e, &t);
                }
            }
        }
        Ok(self.collect(acc))
    }

    /// Left-normed bracket `(a1, ..., an)`.
    pub fn left_normed(&self, args: &[LieElement]) -> Result<LieElement, Error> {
        let (first, rest) = args
            .split_first()
            .ok_or_else(|| Error::InvalidArgument("left_normed of an empty list".into()))?;
        self.check(first)?;
        rest.iter()
            .try_fold(first.clone(), |acc, x| self.bracket(&acc, x))
    }

    /// Integer structure constants of `[e_u, e_v]`, returned as a shared
    /// product for the ordered pair together with a sign.
    fn structure(&self, u: u32, v: u32) -> (Product, i64) {
        if u == v || self.degree_of(u) + self.degree_of(v) > self.class {
            return (Arc::from(Vec::new()), 1);
        }
        let (wu, wv) = (&self.basis[u as usize].word, &self.basis[v as usize].word);
        if wu < wv {
            (self.ordered_product(u, v), 1)
        } else {
            (self.ordered_product(v, u), -1)
        }
    }

    // [e_u, e_v] for word(u) < word(v); the guard is dropped before recursing.
    fn ordered_product(&self, u: u32, v: u32) -> Product {
        if let Some(p) = self.products.get(&(u, v)) {
            return p.clone();
        }
        let bu = &self.basis[u as usize];
        let wv = &self.basis[v as usize].word;
        let result: Vec<(u32, i64)> = match bu.factors {
            Some((u1, u2)) if self.basis[u2 as usize].word < *wv => {
                // [[u1,u2],v] = [[u1,v],u2] + [u1,[u2,v]]
                let mut acc: HashMap<u32, i64> = HashMap::new();
                let (p, s) = self.structure(u1, v);
                for &(k, c) in p.iter() {
                    self.accumulate(&mut acc, k, u2, s * c);
                }
                let (p, s) = self.structure(u2, v);
                for &(k, c) in p.iter() {
                    self.accumulate(&mut acc, u1, k, s * c);
                }
                let mut out: Vec<(u32, i64)> = acc.into_iter().filter(|t| t.1 != 0).collect();
                out.sort_unstable();
                out
            }
            _ => {
                let mut w = bu.word.clone();
                w.extend_from_slice(wv);
                let k = self.index[&w];
                vec![(k, 1)]
            }
        };
        let p: Product = Arc::from(result);
        self.products.insert((u, v), p.clone());
        p
    }

    fn accumulate(&self, acc: &mut HashMap<u32, i64>, x: u32, y: u32, scale: i64) {
        let (p, s) = self.structure(x, y);
        for &(k, c) in p.iter() {
            let t = scale
                .checked_mul(s * c)
                .expect("structure constant overflows i64");
            let e = acc.entry(k).or_insert(0);
            *e = e.checked_add(t).expect("structure constant overflows i64");
        }
    }

    /// Bracket form of a basis element, e.g. `[x1,[x1,x2]]`.
    pub fn render_basic(&self, index: u32) -> String {
        let mut s = String::new();
        self.render_into(index, &mut s);
        s
    }

    fn render_into(&self, index: u32, s: &mut String) {
        let b = &self.basis[index as usize];
        match b.factors {
            None => {
                let _ = write!(s, "x{}", b.word[0] + 1);
            }
            Some((l, r)) => {
                s.push('[');
                self.render_into(l, s);
                s.push(',');
                self.render_into(r, s);
                s.push(']');
            }
        }
    }

    /// Human-readable rendering, terms in basis order.
    pub fn render(&self, a: &LieElement) -> String {
        if a.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (n, (i, c)) in a.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = if neg { c.to_bigint().magnitude().clone().into() } else { c.to_bigint() };
            match (n, neg) {
                (0, true) => s.push('-'),
                (0, false) => {}
                (_, true) => s.push_str(" - "),
                (_, false) => s.push_str(" + "),
            }
            if mag != 1.into() {
                let _ = write!(s, "{mag}*");
            }
            self.render_into(*i, &mut s);
        }
        s
    }

    /// One line per basis element: bracket form and degree.
    pub fn basis_dump(&self) -> String {
        let mut s = String::new();
        for i in 0..self.basis.len() as u32 {
            let _ = writeln!(s, "{} {}", self.render_basic(i), self.degree_of(i));
        }
        s
    }

    /// Number of cached basis-pair products.
    pub fn cached_products(&self) -> usize {
        self.products.len()
    }
}

impl LieRing for FreeLieContext {
    type Element = LieElement;

    fn zero(&self) -> LieElement {
        FreeLieContext::zero(self)
    }

    fn add(&self, a: &LieElement, b: &LieElement) -> Result<LieElement, Error> {
        FreeLieContext::add(self, a, b)
    }

    fn neg(&self, a: &LieElement) -> Result<LieElement, Error> {
        FreeLieContext::neg(self, a)
    }

    fn bracket(&self, a: &LieElement, b: &LieElement) -> Result<LieElement, Error> {
        FreeLieContext::bracket(self, a, b)
    }

    fn is_zero(&self, a: &LieElement) -> bool {
        a.is_zero()
    }

    fn scale_int(&self, k: i64, a: &LieElement) -> Result<LieElement, Error> {
        self.scale(&Coeff::small(k), a)
    }
}
