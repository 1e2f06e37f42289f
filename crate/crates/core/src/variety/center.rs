use rayon::prelude::*;

use super::graded::GradedSubspace;
use super::RelativelyFreeRing;
use crate::freelie::LieElement;
use crate::linalg::left_kernel;
use crate::{Coeff, Error};

/// Preimage of the center: all `v` with `[v, L] ⊆ I`.
///
/// Since `L` is generated in degree 1 and `I` is an ideal, it suffices that
/// `[v, x_i] ∈ I` for every generator `x_i`.
pub fn center(r: &RelativelyFreeRing) -> Result<GradedSubspace, Error> {
    let gens = r.context().generators();
    annihilator(r, &gens)
}

/// Preimage of the centralizer of `s`: all `v` with `[v, s] ⊆ I`.
pub fn centralizer(r: &RelativelyFreeRing, s: &GradedSubspace) -> Result<GradedSubspace, Error> {
    let others = s.basis_elements_mod(r.ideal())?;
    annihilator(r, &others)
}

// {v : [v, t] ∈ I for all t in `targets`}, block by block. Each target is
// multihomogeneous, so v ↦ [v, t] maps a block into a single block.
fn annihilator(r: &RelativelyFreeRing, targets: &[LieElement]) -> Result<GradedSubspace, Error> {
    let ctx = r.context();
    let ideal = r.ideal();
    let domain = ctx.domain();
    let nblocks = ctx.blocks().len();
    let spans: Vec<Result<Vec<Vec<Coeff>>, Error>> = (0..nblocks as u32)
        .into_par_iter()
        .map(|b| {
            let block = ctx.block(b);
            let n = block.len();
            // column segments, one per target that lands below the cutoff
            let mut segments: Vec<(u32, usize)> = Vec::new();
            let mut images: Vec<Vec<Coeff>> = vec![Vec::new(); n];
            let mut offset = 0;
            for t in targets {
                let tb = ctx.basic(t.terms()[0].0).block;
                let td = ctx.block(tb);
                if block.degree + td.degree > ctx.class() {
                    continue;
                }
                let md: Vec<u8> = block
                    .multidegree
                    .iter()
                    .zip(&td.multidegree)
                    .map(|(a, b)| a + b)
                    .collect();
                let Some(target) = ctx.block_of_multidegree(&md) else {
                    continue;
                };
                let width = ctx.block(target).len();
                if ideal.block_span(target).is_full() {
                    continue;
                }
                for (i, &m) in block.members.iter().enumerate() {
                    let img = ctx.bracket(&ctx.basis_element(m), t)?;
                    let mut row = vec![Coeff::zero(); width];
                    for (pb, v) in ctx.block_parts(&img)? {
                        debug_assert_eq!(pb, target);
                        row = v;
                    }
                    images[i].extend(row);
                }
                segments.push((target, offset));
                offset += width;
            }
            if segments.is_empty() {
                // every bracket vanishes modulo I
                return Ok((0..n)
                    .map(|i| {
                        let mut e = vec![Coeff::zero(); n];
                        e[i] = domain.one();
                        e
                    })
                    .collect());
            }
            let mut rows = images;
            for &(target, off) in &segments {
                for irow in ideal.block_span(target).basis() {
                    let mut row = vec![Coeff::zero(); offset];
                    row[off..off + irow.len()].clone_from_slice(&irow);
                    rows.push(row);
                }
            }
            let kernel = left_kernel(domain, &rows, offset)?;
            Ok(kernel.into_iter().map(|k| k[..n].to_vec()).collect())
        })
        .collect();
    let mut out = ideal.clone();
    for (b, rows) in spans.into_iter().enumerate() {
        for row in rows? {
            if row.iter().any(|c| !c.is_zero()) {
                out.insert(&ctx.from_block(b as u32, &row)?)?;
            }
        }
    }
    Ok(out)
}
