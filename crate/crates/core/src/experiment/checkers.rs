use num_bigint::BigInt;
use serde::Deserialize;
use serde_json::{json, Value};

use super::{Certification, ClaimChecker, Family, Manifest, Outcome};
use crate::linalg::GroupShape;
use crate::oracle::{
    corpus, enumerate_generated_subrings, nilpotency_exponent_by_spans, subring_series, OracleCaps,
};
use crate::variety::{
    compare_varieties, derived_series, nilpotency_exponent, square_lower_central_series, DegreeSize,
    SeriesKind, SeriesTerm, VarietySpec,
};
use crate::wordlang::Identity;
use crate::Error;

fn params<T: for<'de> Deserialize<'de>>(m: &Manifest) -> Result<T, Error> {
    serde_json::from_value(m.claim.clone())
        .map_err(|e| Error::InvalidArgument(format!("manifest {}: claim: {e}", m.id)))
}

fn need_class(m: &Manifest, degree: usize) -> Result<(), Error> {
    if m.class < degree {
        return Err(Error::InvalidArgument(format!(
            "manifest {}: the claim lives in degree {degree}, above the cutoff {}",
            m.id, m.class
        )));
    }
    Ok(())
}

fn term_sizes(t: &SeriesTerm) -> Value {
    json!(t
        .degrees
        .iter()
        .map(|d| json!({"degree": d.degree, "size": d.size}))
        .collect::<Vec<_>>())
}

#[derive(Deserialize)]
struct Bound {
    bound: usize,
    #[serde(default)]
    exact: bool,
}

/// `L^(bound+1) = 0`. The term is spanned by values of a multilinear word
/// of degree `bound + 1`, so rank `bound + 1` gives a full certificate.
pub struct NilpotencyChecker;

impl ClaimChecker for NilpotencyChecker {
    fn kind(&self) -> &'static str {
        "nilpotency_exponent"
    }

    fn check(&self, m: &Manifest) -> Result<Outcome, Error> {
        let p: Bound = params(m)?;
        let d = p.bound + 1;
        need_class(m, d)?;
        let r = m.ring()?;
        let e = nilpotency_exponent(&r)?;
        let mut pass = r.degree_is_trivial(d);
        if p.exact {
            pass &= e.value == p.bound;
        }
        Ok(Outcome {
            claim: format!("nilpotency exponent {} {}", if p.exact { "=" } else { "<=" }, p.bound),
            observed: json!({"exponent": e.value, "lower_bound_only": e.truncated}),
            certification: Certification::at_rank(m.rank, d),
            degrees: r.degree_sizes(),
            pass,
            warnings: vec![],
        })
    }
}

#[derive(Deserialize)]
struct OptBound {
    #[serde(default)]
    bound: Option<usize>,
}

/// `L^(bound+1) = 0` for the derived series. Without a bound, the series
/// must terminate below the cutoff and its length is certified.
pub struct SolvableChecker;

impl ClaimChecker for SolvableChecker {
    fn kind(&self) -> &'static str {
        "solvable_length"
    }

    fn check(&self, m: &Manifest) -> Result<Outcome, Error> {
        let p: OptBound = params(m)?;
        if let Some(b) = p.bound {
            need_class(m, 1 << (b + 1))?;
        }
        let r = m.ring()?;
        let s = derived_series(&r)?;
        let first = s.first_zero.expect("derived series reaches zero by truncation");
        let length = first.saturating_sub(1);
        let (claim, pass, bound) = match p.bound {
            Some(b) => (format!("solvable length <= {b}"), first <= b + 1, b),
            None => ("solvable".to_string(), !s.truncated, length),
        };
        let checked = s.terms.get(bound + 1).map(term_sizes).unwrap_or(Value::Null);
        let mut warnings = vec![];
        if p.bound.is_none() && m.class < 1 << (bound + 1) {
            warnings.push("cutoff below the degree of the observed length".into());
        }
        Ok(Outcome {
            claim,
            observed: json!({
                "length": length,
                "lower_bound_only": s.truncated,
                "checked_term": bound + 1,
                "term_sizes": checked,
            }),
            certification: if s.truncated && p.bound.is_none() {
                Certification::Partial { rank: m.rank }
            } else {
                Certification::at_rank(m.rank, 1 << (bound + 1))
            },
            degrees: r.degree_sizes(),
            pass,
            warnings,
        })
    }
}

/// `(L^2)^(bound+1) = 0`, the term being spanned by values of a
/// multilinear word of degree `2(bound + 1)`.
pub struct SquareChecker;

impl ClaimChecker for SquareChecker {
    fn kind(&self) -> &'static str {
        "L2_exponent"
    }

    fn check(&self, m: &Manifest) -> Result<Outcome, Error> {
        let p: Bound = params(m)?;
        let d = 2 * (p.bound + 1);
        need_class(m, d)?;
        let r = m.ring()?;
        let s = square_lower_central_series(&r)?;
        let first = s.first_zero.expect("series reaches zero by truncation");
        let checked = s.terms.get(p.bound).map(term_sizes).unwrap_or(Value::Null);
        Ok(Outcome {
            claim: format!("L^2 nilpotency exponent <= {}", p.bound),
            observed: json!({
                "exponent": first - 1,
                "lower_bound_only": s.truncated,
                "checked_term": p.bound + 1,
                "term_sizes": checked,
            }),
            certification: Certification::at_rank(m.rank, d),
            degrees: r.degree_sizes(),
            pass: first <= p.bound + 1,
            warnings: vec![],
        })
    }
}

#[derive(Deserialize)]
struct Other {
    #[serde(default)]
    other: Vec<Identity>,
    #[serde(default)]
    other_family: Option<Family>,
    #[serde(default = "yes")]
    expected: bool,
}

fn yes() -> bool {
    true
}

fn with_family(mut ids: Vec<Identity>, f: &Option<Family>) -> Result<Vec<Identity>, Error> {
    if let Some(f) = f {
        ids.extend(f.identities()?.0);
    }
    Ok(ids)
}

fn max_shape(ids: &[Identity]) -> (usize, usize) {
    let vars = ids.iter().map(|i| i.variables().len()).max().unwrap_or(0);
    let deg = ids
        .iter()
        .map(|i| i.combination().terms.iter().map(|(_, w)| w.degree()).max().unwrap_or(0))
        .max()
        .unwrap_or(0);
    (vars, deg)
}

/// The two varieties have the same consequences at the manifest's rank
/// and cutoff. Full when rank and cutoff cover every identity.
pub struct EqualityChecker;

impl ClaimChecker for EqualityChecker {
    fn kind(&self) -> &'static str {
        "variety_equal"
    }

    fn check(&self, m: &Manifest) -> Result<Outcome, Error> {
        let p: Other = params(m)?;
        let a = m.spec()?;
        let b = VarietySpec::new(with_family(p.other, &p.other_family)?, m.domain()?)?;
        let rep = compare_varieties(&a, &b, m.rank, m.class)?;
        let mut all = a.identities.clone();
        all.extend(b.identities.iter().cloned());
        let (vars, deg) = max_shape(&all);
        let lines: Vec<String> = b.identities.iter().map(|i| i.to_string()).collect();
        let degrees = m.ring()?.degree_sizes();
        Ok(Outcome {
            claim: format!(
                "variety {} {}",
                if p.expected { "equals" } else { "differs from" },
                lines.join("; ")
            ),
            observed: json!({"equal": rep.equal, "differing_degrees": rep.differing_degrees}),
            certification: if m.class >= deg {
                Certification::at_rank(m.rank, vars)
            } else {
                Certification::Partial { rank: m.rank }
            },
            degrees,
            pass: rep.equal == p.expected,
            warnings: vec![],
        })
    }
}

#[derive(Deserialize)]
struct Check {
    #[serde(default)]
    check: Vec<Identity>,
    #[serde(default)]
    check_family: Option<Family>,
    #[serde(default = "yes")]
    expected: bool,
}

/// The relatively free ring satisfies (or fails) each listed identity.
pub struct SatisfiesChecker;

impl ClaimChecker for SatisfiesChecker {
    fn kind(&self) -> &'static str {
        "satisfies"
    }

    fn check(&self, m: &Manifest) -> Result<Outcome, Error> {
        let p: Check = params(m)?;
        let ids = with_family(p.check, &p.check_family)?;
        if ids.is_empty() {
            return Err(Error::InvalidArgument(format!("manifest {}: nothing to check", m.id)));
        }
        let r = m.ring()?;
        let mut results = Vec::new();
        let mut pass = true;
        for id in &ids {
            let (holds, witness) = r.satisfies(id)?;
            pass &= holds == p.expected;
            results.push(json!({"identity": id.to_string(), "holds": holds, "witness": witness}));
        }
        let (vars, deg) = max_shape(&ids);
        let lines: Vec<String> = ids.iter().map(|i| i.to_string()).collect();
        Ok(Outcome {
            claim: format!("{} {}", if p.expected { "satisfies" } else { "violates" }, lines.join("; ")),
            observed: json!({"results": results}),
            certification: if m.class >= deg {
                Certification::at_rank(m.rank, vars)
            } else {
                Certification::Partial { rank: m.rank }
            },
            degrees: r.degree_sizes(),
            pass,
            warnings: vec![],
        })
    }
}

#[derive(Deserialize)]
struct Torsion {
    degree: usize,
    allowed: Vec<u64>,
    #[serde(default)]
    present: Option<u64>,
}

/// The invariant factors of a degree component lie in an allowed set.
pub struct TorsionChecker;

impl ClaimChecker for TorsionChecker {
    fn kind(&self) -> &'static str {
        "torsion"
    }

    fn check(&self, m: &Manifest) -> Result<Outcome, Error> {
        let p: Torsion = params(m)?;
        need_class(m, p.degree)?;
        let r = m.ring()?;
        let shape: GroupShape = r.degree_shape(p.degree);
        let factors = &shape.invariant_factors;
        let allowed = |f: &BigInt| p.allowed.iter().any(|a| BigInt::from(*a) == *f);
        let mut pass = factors.iter().all(allowed);
        if let Some(q) = p.present {
            pass &= factors.iter().any(|f| *f == BigInt::from(q));
        }
        let mut claim = format!("degree-{} invariant factors in {:?}", p.degree, p.allowed);
        if let Some(q) = p.present {
            claim.push_str(&format!(", {q} present"));
        }
        Ok(Outcome {
            claim,
            observed: json!({"factors": shape}),
            certification: Certification::at_rank(m.rank, p.degree),
            degrees: r.degree_sizes(),
            pass,
            warnings: vec![],
        })
    }
}

#[derive(Deserialize)]
struct Subrings {
    ring: String,
    generators: usize,
    bound: usize,
    ring_bound: usize,
}

/// On a bundled finite ring: if every subring with `generators` generators
/// has exponent at most `bound`, the ring has exponent at most
/// `ring_bound`. Evidence only.
pub struct SubringChecker;

impl ClaimChecker for SubringChecker {
    fn kind(&self) -> &'static str {
        "subring_exponent"
    }

    fn check(&self, m: &Manifest) -> Result<Outcome, Error> {
        let p: Subrings = params(m)?;
        let ring = corpus()
            .into_iter()
            .find(|(n, _)| *n == p.ring)
            .map(|(_, r)| r)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown corpus ring {}", p.ring)))?;
        let subs = enumerate_generated_subrings(&ring, p.generators, &OracleCaps::default())?;
        let exps: Vec<Option<usize>> = subs
            .iter()
            .map(|s| {
                subring_series(&ring, s, SeriesKind::LowerCentral)
                    .first_zero
                    .map(|k| k - 1)
            })
            .collect();
        let subs_ok = exps.iter().all(|e| matches!(e, Some(e) if *e <= p.bound));
        let ring_exp = nilpotency_exponent_by_spans(&ring);
        let ring_ok = matches!(ring_exp, Some(e) if e <= p.ring_bound);
        // null when some subring is not nilpotent
        let max: Option<usize> = exps.iter().copied().collect::<Option<Vec<_>>>().and_then(|v| v.into_iter().max());
        Ok(Outcome {
            claim: format!(
                "{}-generated subrings of exponent <= {} imply exponent <= {}",
                p.generators, p.bound, p.ring_bound
            ),
            observed: json!({
                "ring": p.ring,
                "subrings": subs.len(),
                "max_subring_exponent": max,
                "all_subrings_within_bound": subs_ok,
                "ring_exponent": ring_exp,
            }),
            certification: Certification::Evidence,
            degrees: Vec::<DegreeSize>::new(),
            pass: !subs_ok || ring_ok,
            warnings: vec![],
        })
    }
}
