//! Verbal ideals and relatively free Lie rings.
//!
//! The relatively free ring of a variety at rank `r` and class cutoff `c` is
//! the free nilpotent ring of that rank and class modulo the ideal generated
//! by all values of the defining identities. Everything is multigraded, so
//! ideals, series terms and centers are stored per multidegree block.

mod center;
mod graded;
mod series;
mod substitution;

pub use center::{center, centralizer};
pub use graded::{bracket_span, ideal_closure, GradedSubspace};
pub use series::{
    derived_series, lower_central_series, nilpotency_exponent, solvable_length,
    square_lower_central_series, square_nilpotency_exponent, DegreeSize, SeriesBound,
    SeriesKind, SeriesReport, SeriesTerm,
};
pub use substitution::{
    count_graded_tuples, graded_tuples, substitution_family, CompiledCombination, MAX_TUPLES,
};

use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::freelie::{FreeLieContext, LieElement, DEFAULT_BASIS_CAP};
use crate::linalg::GroupShape;
use crate::ring::LieRing;
use crate::wordlang::{CommutatorWord, Identity};
use crate::{CoeffDomain, Error};

const BATCH: usize = 1 << 14;

/// A set of identities over a coefficient domain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VarietySpec {
    pub identities: Vec<Identity>,
    pub domain: CoeffDomain,
}

impl VarietySpec {
    pub fn new(identities: Vec<Identity>, domain: CoeffDomain) -> Result<Self, Error> {
        if identities.is_empty() {
            return Err(Error::InvalidArgument("a variety needs at least one identity".into()));
        }
        Ok(VarietySpec { identities, domain })
    }

    /// Parses identities in the line-oriented file format.
    pub fn parse(text: &str, domain: CoeffDomain) -> Result<Self, Error> {
        Self::new(crate::wordlang::parse_identities(text)?, domain)
    }

    /// Largest number of distinct variables in one identity.
    pub fn max_variables(&self) -> usize {
        self.identities.iter().map(|i| i.variables().len()).max().unwrap_or(0)
    }

    /// Largest degree of an identity.
    pub fn max_degree(&self) -> usize {
        self.identities.iter().map(|i| i.lhs.degree()).max().unwrap_or(0)
    }
}

/// A failing substitution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// The combination that failed to vanish (the identity or one of its
    /// polarizations).
    pub combination: String,
    pub assignment: Vec<(String, String)>,
    pub value: String,
}

/// Runs `visit` over the values of every member of the substitution family
/// of `ident` at every graded basis tuple, in a fixed order, stopping at the
/// first `Some`.
fn scan_values<T: Send>(
    ctx: &FreeLieContext,
    ident: &Identity,
    visit: impl Fn(&CompiledCombination, &[u32], LieElement) -> Result<Option<T>, Error> + Sync,
    mut sink: impl FnMut(Vec<LieElement>) -> Result<(), Error>,
) -> Result<Option<T>, Error> {
    let comb = ident.combination();
    for member in substitution_family(&comb, ctx.domain())? {
        let compiled = CompiledCombination::new(&member)?;
        if compiled.degree() > ctx.class() {
            continue;
        }
        let tuples = graded_tuples(ctx, compiled.multiplicities())?;
        for batch in tuples.chunks(BATCH) {
            let results: Vec<Result<(LieElement, Option<T>), Error>> = batch
                .par_iter()
                .map(|t| {
                    let args: Vec<LieElement> = t.iter().map(|&i| ctx.basis_element(i)).collect();
                    let v = compiled.evaluate(ctx, &args)?;
                    let hit = visit(&compiled, t, v.clone())?;
                    Ok((v, hit))
                })
                .collect();
            let mut values = Vec::with_capacity(results.len());
            for r in results {
                let (v, hit) = r?;
                if hit.is_some() {
                    return Ok(hit);
                }
                if !v.is_zero() {
                    values.push(v);
                }
            }
            sink(values)?;
        }
    }
    Ok(None)
}

/// The span of all values of `ident` (and of its polarizations) at tuples of
/// basis elements of total degree at most the cutoff. Not yet closed under
/// brackets; see [`ideal_closure`].
pub fn verbal_generators(ident: &Identity, ctx: &Arc<FreeLieContext>) -> Result<GradedSubspace, Error> {
    let mut out = GradedSubspace::empty(ctx)?;
    scan_values::<()>(ctx, ident, |_, _, _| Ok(None), |vals| out.insert_all(&vals))?;
    Ok(out)
}

/// The closed verbal ideal of a list of identities.
pub fn verbal_ideal(identities: &[Identity], ctx: &Arc<FreeLieContext>) -> Result<GradedSubspace, Error> {
    let mut gens = GradedSubspace::empty(ctx)?;
    for id in identities {
        gens.extend(&verbal_generators(id, ctx)?);
    }
    ideal_closure(&gens)
}

/// Free nilpotent ring of rank `r` and class `c` modulo a verbal ideal.
#[derive(Clone, Debug)]
pub struct RelativelyFreeRing {
    ctx: Arc<FreeLieContext>,
    identities: Vec<Identity>,
    ideal: GradedSubspace,
}

impl RelativelyFreeRing {
    pub fn new(spec: &VarietySpec, rank: usize, class: usize) -> Result<Self, Error> {
        Self::with_cap(spec, rank, class, DEFAULT_BASIS_CAP)
    }

    pub fn with_cap(spec: &VarietySpec, rank: usize, class: usize, cap: u128) -> Result<Self, Error> {
        spec.domain.require_elimination()?;
        let ctx = Arc::new(FreeLieContext::with_cap(rank, class, spec.domain, cap)?);
        Self::over(ctx, &spec.identities)
    }

    /// The free nilpotent ring itself (no identities).
    pub fn free(rank: usize, class: usize, domain: CoeffDomain) -> Result<Self, Error> {
        domain.require_elimination()?;
        let ctx = Arc::new(FreeLieContext::new(rank, class, domain)?);
        Self::over(ctx, &[])
    }

    /// Quotient of an existing context by the verbal ideal of `identities`.
    pub fn over(ctx: Arc<FreeLieContext>, identities: &[Identity]) -> Result<Self, Error> {
        let ideal = verbal_ideal(identities, &ctx)?;
        Ok(RelativelyFreeRing {
            ctx,
            identities: identities.to_vec(),
            ideal,
        })
    }

    pub fn context(&self) -> &Arc<FreeLieContext> {
        &self.ctx
    }

    pub fn identities(&self) -> &[Identity] {
        &self.identities
    }

    pub fn ideal(&self) -> &GradedSubspace {
        &self.ideal
    }

    pub fn domain(&self) -> CoeffDomain {
        self.ctx.domain()
    }

    pub fn rank(&self) -> usize {
        self.ctx.rank()
    }

    pub fn class(&self) -> usize {
        self.ctx.class()
    }

    /// The degree-`d` component of the quotient as an abelian group.
    pub fn degree_shape(&self, d: usize) -> GroupShape {
        self.ideal.degree_cokernel(d)
    }

    pub fn degree_is_trivial(&self, d: usize) -> bool {
        self.ideal.degree_is_full(d)
    }

    /// Per-degree ambient dimension and quotient group, degrees ascending.
    pub fn degree_sizes(&self) -> Vec<DegreeSize> {
        (1..=self.class())
            .map(|d| DegreeSize {
                degree: d,
                ambient: self.ctx.degree_dim(d).unwrap(),
                size: self.degree_shape(d),
            })
            .collect()
    }

    /// Canonical representative of the coset of `a`.
    pub fn reduce(&self, a: &LieElement) -> Result<LieElement, Error> {
        self.ideal.reduce(a)
    }

    pub fn generators(&self) -> Result<Vec<LieElement>, Error> {
        self.ctx.generators().iter().map(|g| self.reduce(g)).collect()
    }

    /// Checks that brackets of ideal generators with the ring generators stay
    /// in the ideal, so the quotient bracket is well defined.
    pub fn ideal_is_closed(&self) -> Result<bool, Error> {
        let gens = self.ctx.generators();
        for row in self.ideal.basis_elements()? {
            for g in &gens {
                if !self.ideal.contains(&self.ctx.bracket(&row, g)?)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Whether `ident` holds in the quotient (up to the class cutoff); on
    /// failure returns the first failing substitution in enumeration order.
    pub fn satisfies(&self, ident: &Identity) -> Result<(bool, Option<Witness>), Error> {
        let ctx = &self.ctx;
        let witness = scan_values(
            ctx,
            ident,
            |c, t, v| {
                if v.is_zero() || self.ideal.contains(&v)? {
                    return Ok(None);
                }
                Ok(Some(Witness {
                    combination: c.source().to_string(),
                    assignment: c
                        .variables()
                        .iter()
                        .zip(t)
                        .map(|(n, &i)| (n.clone(), ctx.render_basic(i)))
                        .collect(),
                    value: ctx.render(&self.reduce(&v)?),
                }))
            },
            |_| Ok(()),
        )?;
        Ok((witness.is_none(), witness))
    }

    /// `C(k, ρ)`: `(x1,...,xk) = (x1,x2,x_ρ(3),...,x_ρ(k))`, with `rho`
    /// listing the images of `3..=k`.
    pub fn satisfies_c(&self, k: usize, rho: &[usize]) -> Result<bool, Error> {
        Ok(self.satisfies(&c_identity(k, rho)?)?.0)
    }
}

/// The identity `C(k, ρ)`.
pub fn c_identity(k: usize, rho: &[usize]) -> Result<Identity, Error> {
    if k < 3 {
        return Err(Error::InvalidArgument("C(k, rho) needs k >= 3".into()));
    }
    let mut sorted = rho.to_vec();
    sorted.sort_unstable();
    if sorted != (3..=k).collect::<Vec<_>>() {
        return Err(Error::InvalidArgument(format!(
            "rho must be a permutation of 3..={k}, got {rho:?}"
        )));
    }
    let names: Vec<String> = (1..=k).map(|i| format!("x{i}")).collect();
    let lhs = CommutatorWord::LeftNormed(names.iter().map(|n| CommutatorWord::var(n)).collect());
    let mut rhs_names = vec![names[0].clone(), names[1].clone()];
    rhs_names.extend(rho.iter().map(|&i| names[i - 1].clone()));
    let rhs = CommutatorWord::LeftNormed(rhs_names.iter().map(|n| CommutatorWord::var(n)).collect());
    Ok(Identity::equal(lhs, rhs))
}

impl LieRing for RelativelyFreeRing {
    type Element = LieElement;

    fn zero(&self) -> LieElement {
        self.ctx.zero()
    }

    fn add(&self, a: &LieElement, b: &LieElement) -> Result<LieElement, Error> {
        self.reduce(&self.ctx.add(a, b)?)
    }

    fn neg(&self, a: &LieElement) -> Result<LieElement, Error> {
        self.reduce(&self.ctx.neg(a)?)
    }

    fn bracket(&self, a: &LieElement, b: &LieElement) -> Result<LieElement, Error> {
        self.reduce(&self.ctx.bracket(a, b)?)
    }

    fn is_zero(&self, a: &LieElement) -> bool {
        a.is_zero() || self.ideal.contains(a).unwrap_or(false)
    }
}

/// Per-degree comparison of two verbal ideals in one context.
#[derive(Clone, Debug, Serialize)]
pub struct EqualityReport {
    pub equal: bool,
    /// Degrees where the ideals differ, ascending.
    pub differing_degrees: Vec<usize>,
}

/// Whether the verbal ideals of `a` and `b` coincide at the given rank and
/// cutoff.
pub fn variety_equal(a: &VarietySpec, b: &VarietySpec, rank: usize, class: usize) -> Result<bool, Error> {
    Ok(compare_varieties(a, b, rank, class)?.equal)
}

pub fn compare_varieties(
    a: &VarietySpec,
    b: &VarietySpec,
    rank: usize,
    class: usize,
) -> Result<EqualityReport, Error> {
    if a.domain != b.domain {
        return Err(Error::InvalidArgument(format!(
            "cannot compare varieties over {} and {}",
            a.domain, b.domain
        )));
    }
    a.domain.require_elimination()?;
    let ctx = Arc::new(FreeLieContext::new(rank, class, a.domain)?);
    let ia = verbal_ideal(&a.identities, &ctx)?;
    let ib = verbal_ideal(&b.identities, &ctx)?;
    let differing: Vec<usize> = (1..=class)
        .filter(|&d| !(ia.degree_within(&ib, d) && ib.degree_within(&ia, d)))
        .collect();
    Ok(EqualityReport {
        equal: differing.is_empty(),
        differing_degrees: differing,
    })
}
