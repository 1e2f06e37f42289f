use std::sync::Arc;

use rayon::prelude::*;

use crate::freelie::{FreeLieContext, LieElement};
use crate::linalg::{GroupShape, Span};
use crate::{Coeff, Error};

/// A multigraded submodule of a truncated free Lie ring, stored as one
/// span per multidegree block.
///
/// Inserting an element inserts each of its multihomogeneous components.
/// Every subspace the engine builds (verbal ideals, series terms, centers)
/// is multigraded, so this loses nothing.
#[derive(Clone, Debug)]
pub struct GradedSubspace {
    ctx: Arc<FreeLieContext>,
    spans: Vec<Span>,
}

impl GradedSubspace {
    pub fn empty(ctx: &Arc<FreeLieContext>) -> Result<Self, Error> {
        let d = ctx.domain();
        let spans = ctx
            .blocks()
            .iter()
            .map(|b| Span::new(d, b.len()))
            .collect::<Result<_, _>>()?;
        Ok(GradedSubspace {
            ctx: ctx.clone(),
            spans,
        })
    }

    /// The whole ambient ring.
    pub fn full(ctx: &Arc<FreeLieContext>) -> Result<Self, Error> {
        let d = ctx.domain();
        let spans = ctx
            .blocks()
            .iter()
            .map(|b| Span::full(d, b.len()))
            .collect::<Result<_, _>>()?;
        Ok(GradedSubspace {
            ctx: ctx.clone(),
            spans,
        })
    }

    /// Everything of degree at least `d`.
    pub fn from_degree(ctx: &Arc<FreeLieContext>, d: usize) -> Result<Self, Error> {
        let mut s = Self::empty(ctx)?;
        for (b, block) in ctx.blocks().iter().enumerate() {
            if block.degree >= d {
                s.spans[b] = Span::full(ctx.domain(), block.len())?;
            }
        }
        Ok(s)
    }

    pub fn context(&self) -> &Arc<FreeLieContext> {
        &self.ctx
    }

    pub fn block_span(&self, b: u32) -> &Span {
        &self.spans[b as usize]
    }

    pub fn insert(&mut self, a: &LieElement) -> Result<bool, Error> {
        let mut grew = false;
        for (b, v) in self.ctx.block_parts(a)? {
            grew |= self.spans[b as usize].insert(&v);
        }
        Ok(grew)
    }

    /// Inserts many elements, reducing blocks in parallel.
    pub fn insert_all(&mut self, elems: &[LieElement]) -> Result<(), Error> {
        let mut by_block: Vec<Vec<Vec<Coeff>>> = vec![Vec::new(); self.spans.len()];
        for a in elems {
            for (b, v) in self.ctx.block_parts(a)? {
                if !self.spans[b as usize].is_full() {
                    by_block[b as usize].push(v);
                }
            }
        }
        self.spans
            .par_iter_mut()
            .zip(by_block.into_par_iter())
            .for_each(|(span, rows)| {
                for r in rows {
                    if span.is_full() {
                        break;
                    }
                    span.insert(&r);
                }
            });
        Ok(())
    }

    pub fn contains(&self, a: &LieElement) -> Result<bool, Error> {
        Ok(self
            .ctx
            .block_parts(a)?
            .iter()
            .all(|(b, v)| self.spans[*b as usize].contains(v)))
    }

    /// Canonical representative of `a` modulo this subspace.
    pub fn reduce(&self, a: &LieElement) -> Result<LieElement, Error> {
        let mut out = self.ctx.zero();
        for (b, v) in self.ctx.block_parts(a)? {
            let r = self.spans[b as usize].reduce(&v);
            out = self.ctx.add(&out, &self.ctx.from_block(b, &r)?)?;
        }
        Ok(out)
    }

    pub fn extend(&mut self, other: &GradedSubspace) {
        for (s, o) in self.spans.iter_mut().zip(&other.spans) {
            if !s.is_full() {
                s.extend_from(o);
            }
        }
    }

    pub fn is_subspace_of(&self, other: &GradedSubspace) -> bool {
        self.spans
            .iter()
            .zip(&other.spans)
            .all(|(a, b)| b.is_full() || a.is_subspace_of(b))
    }

    pub fn same_as(&self, other: &GradedSubspace) -> bool {
        self.is_subspace_of(other) && other.is_subspace_of(self)
    }

    /// Generating elements, block by block in basis order.
    pub fn basis_elements(&self) -> Result<Vec<LieElement>, Error> {
        let mut out = Vec::new();
        for (b, s) in self.spans.iter().enumerate() {
            for row in s.basis() {
                out.push(self.ctx.from_block(b as u32, &row)?);
            }
        }
        Ok(out)
    }

    /// Generators of this subspace modulo `modulo`, skipping those inside it.
    pub fn basis_elements_mod(&self, modulo: &GradedSubspace) -> Result<Vec<LieElement>, Error> {
        let mut out = Vec::new();
        for (b, s) in self.spans.iter().enumerate() {
            let m = &modulo.spans[b];
            if m.is_full() {
                continue;
            }
            for row in s.basis() {
                let r = m.reduce(&row);
                if r.iter().any(|c| !c.is_zero()) {
                    out.push(self.ctx.from_block(b as u32, &r)?);
                }
            }
        }
        Ok(out)
    }

    /// Rank of the degree-`d` part.
    pub fn degree_rank(&self, d: usize) -> usize {
        self.blocks_of(d).map(|b| self.spans[b].rank()).sum()
    }

    fn blocks_of(&self, d: usize) -> impl Iterator<Item = usize> + '_ {
        self.ctx
            .blocks()
            .iter()
            .enumerate()
            .filter(move |(_, b)| b.degree == d)
            .map(|(i, _)| i)
    }

    /// `(degree-d part of self) / (degree-d part of sub)` for `sub ⊆ self`.
    pub fn degree_quotient_by(&self, sub: &GradedSubspace, d: usize) -> GroupShape {
        let mut f = Vec::new();
        for b in self.blocks_of(d) {
            f.extend(self.spans[b].quotient_by(&sub.spans[b]));
        }
        GroupShape::new(f)
    }

    /// `ambient_d / (degree-d part of self)`.
    pub fn degree_cokernel(&self, d: usize) -> GroupShape {
        let mut f = Vec::new();
        for b in self.blocks_of(d) {
            f.extend(self.spans[b].quotient_factors());
        }
        GroupShape::new(f)
    }

    /// True when the degree-`d` part of `self` lies in `sub`.
    pub fn degree_within(&self, sub: &GradedSubspace, d: usize) -> bool {
        self.blocks_of(d)
            .all(|b| sub.spans[b].is_full() || self.spans[b].is_subspace_of(&sub.spans[b]))
    }

    /// True when the degree-`d` part is the whole degree-`d` component.
    pub fn degree_is_full(&self, d: usize) -> bool {
        self.blocks_of(d).all(|b| self.spans[b].is_full())
    }

    pub fn is_empty(&self) -> bool {
        self.spans.iter().all(Span::is_empty)
    }
}

/// Smallest ideal containing `gen`: brackets with the degree-1 generators,
/// degree by degree up to the cutoff.
pub fn ideal_closure(gen: &GradedSubspace) -> Result<GradedSubspace, Error> {
    let ctx: &FreeLieContext = &gen.ctx;
    let mut out = gen.clone();
    let gens = ctx.generators();
    for d in 1..ctx.class() {
        let rows: Vec<LieElement> = ctx
            .blocks_of_degree(d)
            .into_iter()
            .flat_map(|b| {
                out.spans[b as usize]
                    .basis()
                    .into_iter()
                    .map(move |r| ctx.from_block(b, &r))
            })
            .collect::<Result<_, _>>()?;
        let images: Vec<LieElement> = rows
            .par_iter()
            .flat_map_iter(|r| gens.iter().map(move |g| ctx.bracket(r, g)))
            .collect::<Result<_, _>>()?;
        out.insert_all(&images)?;
    }
    Ok(out)
}

/// `span{[a, b] : a ∈ A, b ∈ B} + modulo`, where `A`, `B` are taken modulo
/// `modulo` and products above the cutoff are skipped.
pub fn bracket_span(
    a: &GradedSubspace,
    b: &GradedSubspace,
    modulo: &GradedSubspace,
) -> Result<GradedSubspace, Error> {
    let ctx = a.ctx.clone();
    let ra = a.basis_elements_mod(modulo)?;
    let rb = b.basis_elements_mod(modulo)?;
    let deg = |e: &LieElement| ctx.degree_of(e.terms()[0].0);
    let db: Vec<usize> = rb.iter().map(deg).collect();
    let mut out = modulo.clone();
    for chunk in ra.chunks(64) {
        let images: Vec<LieElement> = chunk
            .par_iter()
            .flat_map_iter(|x| {
                let dx = deg(x);
                let ctx = &ctx;
                rb.iter()
                    .zip(&db)
                    .filter(move |(_, &dy)| dx + dy <= ctx.class())
                    .map(move |(y, _)| ctx.bracket(x, y))
            })
            .collect::<Result<_, _>>()?;
        out.insert_all(&images)?;
    }
    Ok(out)
}
