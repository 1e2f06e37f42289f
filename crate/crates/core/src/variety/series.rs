use serde::Serialize;

use super::graded::{bracket_span, ideal_closure, GradedSubspace};
use super::RelativelyFreeRing;
use crate::linalg::GroupShape;
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesKind {
    /// `L^1 = L`, `L^(k+1) = [L, L^k]`.
    LowerCentral,
    /// `L^(0) = L`, `L^(k+1) = [L^(k), L^(k)]`.
    Derived,
    /// Lower central series of the ring `L^2 = [L, L]`.
    SquareLowerCentral,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeSize {
    pub degree: usize,
    pub ambient: usize,
    #[serde(rename = "quotient")]
    pub size: GroupShape,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesTerm {
    pub index: usize,
    /// Size of the term in each degree, as a subgroup of the quotient.
    pub degrees: Vec<DegreeSize>,
    pub vanishes: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesReport {
    pub kind: SeriesKind,
    pub terms: Vec<SeriesTerm>,
    /// Index of the first vanishing term, if one was reached.
    pub first_zero: Option<usize>,
    /// True when that term vanishes only because degrees above the cutoff
    /// are discarded, so the true value may be larger.
    pub truncated: bool,
}

/// A nilpotency exponent or solvable length read off a series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesBound {
    pub value: usize,
    /// When set, `value` is only a lower bound: the series reached zero
    /// only through truncation at the cutoff.
    pub truncated: bool,
}

fn term(r: &RelativelyFreeRing, index: usize, w: &GradedSubspace) -> SeriesTerm {
    let degrees: Vec<DegreeSize> = (1..=r.class())
        .map(|d| DegreeSize {
            degree: d,
            ambient: r.context().degree_dim(d).unwrap(),
            size: w.degree_quotient_by(r.ideal(), d),
        })
        .collect();
    let vanishes = degrees.iter().all(|s| s.size.is_trivial());
    SeriesTerm {
        index,
        degrees,
        vanishes,
    }
}

/// Smallest degree in which the quotient vanishes, if any. Past it every
/// degree vanishes, since the ring is generated in degree 1.
fn nilpotent_degree(r: &RelativelyFreeRing) -> Option<usize> {
    (1..=r.class()).find(|&d| r.degree_is_trivial(d))
}

pub fn lower_central_series(r: &RelativelyFreeRing) -> Result<SeriesReport, Error> {
    let ctx = r.context();
    let mut w = GradedSubspace::full(ctx)?;
    let mut terms = vec![term(r, 1, &w)];
    let gens = restrict_to_degree(&w, 1)?;
    let mut k = 1;
    while !terms.last().unwrap().vanishes && k <= r.class() {
        w = ideal_closure(&bracket_span(&w, &gens, r.ideal())?)?;
        k += 1;
        terms.push(term(r, k, &w));
    }
    let first_zero = terms.iter().find(|t| t.vanishes).map(|t| t.index);
    // L^(c+1) always vanishes by truncation
    let truncated = first_zero == Some(r.class() + 1);
    Ok(SeriesReport {
        kind: SeriesKind::LowerCentral,
        terms,
        first_zero,
        truncated,
    })
}

fn restrict_to_degree(w: &GradedSubspace, d: usize) -> Result<GradedSubspace, Error> {
    let ctx = w.context();
    let mut out = GradedSubspace::empty(ctx)?;
    for e in w.basis_elements()? {
        if ctx.degree_of(e.terms()[0].0) == d {
            out.insert(&e)?;
        }
    }
    Ok(out)
}

/// Largest `k` with `L^k ≠ 0`, in the convention where an abelian ring has
/// exponent 1.
pub fn nilpotency_exponent(r: &RelativelyFreeRing) -> Result<SeriesBound, Error> {
    let s = lower_central_series(r)?;
    let first = s.first_zero.expect("lower central series always reaches zero");
    Ok(SeriesBound {
        value: first - 1,
        truncated: s.truncated,
    })
}

pub fn derived_series(r: &RelativelyFreeRing) -> Result<SeriesReport, Error> {
    let mut w = GradedSubspace::full(r.context())?;
    let mut terms = vec![term(r, 0, &w)];
    let mut k = 0;
    while !terms.last().unwrap().vanishes {
        w = bracket_span(&w, &w, r.ideal())?;
        k += 1;
        terms.push(term(r, k, &w));
    }
    // unless the quotient dies below the cutoff, vanishing is only known
    // up to the cutoff
    let truncated = k > 0 && nilpotent_degree(r).is_none();
    Ok(SeriesReport {
        kind: SeriesKind::Derived,
        first_zero: Some(k),
        terms,
        truncated,
    })
}

/// Solvable length in the convention where abelian rings have length 0:
/// the least `n` with `L^(n+1) = 0`.
pub fn solvable_length(r: &RelativelyFreeRing) -> Result<SeriesBound, Error> {
    let s = derived_series(r)?;
    let first = s.first_zero.unwrap();
    Ok(SeriesBound {
        value: first.saturating_sub(1),
        truncated: s.truncated,
    })
}

/// The lower central series of `L^2`: `S_1 = L^2`, `S_(k+1) = [L^2, S_k]`.
pub fn square_lower_central_series(r: &RelativelyFreeRing) -> Result<SeriesReport, Error> {
    let full = GradedSubspace::full(r.context())?;
    let square = bracket_span(&full, &full, r.ideal())?;
    let mut w = square.clone();
    let mut terms = vec![term(r, 1, &w)];
    let mut k = 1;
    while !terms.last().unwrap().vanishes {
        w = bracket_span(&square, &w, r.ideal())?;
        k += 1;
        terms.push(term(r, k, &w));
    }
    let truncated = k > 1 && nilpotent_degree(r).is_none();
    Ok(SeriesReport {
        kind: SeriesKind::SquareLowerCentral,
        first_zero: Some(k),
        terms,
        truncated,
    })
}

/// Nilpotency exponent of the ring `L^2`.
pub fn square_nilpotency_exponent(r: &RelativelyFreeRing) -> Result<SeriesBound, Error> {
    let s = square_lower_central_series(r)?;
    Ok(SeriesBound {
        value: s.first_zero.unwrap() - 1,
        truncated: s.truncated,
    })
}
