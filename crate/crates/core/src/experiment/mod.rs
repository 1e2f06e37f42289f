//! Experiment manifests: a variety, a ring size and a claim, checked by a
//! claim checker looked up by kind.

mod checkers;
mod family;

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize, Serializer};
use serde_json::Value;

pub use checkers::{
    EqualityChecker, NilpotencyChecker, SatisfiesChecker, SolvableChecker, SquareChecker, SubringChecker,
    TorsionChecker,
};
pub use family::Family;

use crate::variety::{DegreeSize, RelativelyFreeRing, VarietySpec};
use crate::wordlang::Identity;
use crate::{CoeffDomain, Error};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tier {
    /// Runs with `--all`.
    #[default]
    Quick,
    /// Runs with `--all --deep`.
    Deep,
    /// Runs only when named.
    Optional,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub id: String,
    /// The claim in words.
    pub statement: String,
    #[serde(default)]
    pub tier: Tier,
    #[serde(default)]
    pub identities: Vec<Identity>,
    #[serde(default)]
    pub family: Option<Family>,
    #[serde(default)]
    pub domain: Option<CoeffDomain>,
    #[serde(default)]
    pub rank: usize,
    #[serde(default)]
    pub class: usize,
    pub claim: Value,
    /// When false the outcome is reported but does not affect the verdict.
    #[serde(default = "yes")]
    pub asserted: bool,
}

fn yes() -> bool {
    true
}

impl Manifest {
    pub fn kind(&self) -> Result<&str, Error> {
        self.claim
            .get("kind")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::InvalidArgument(format!("manifest {}: claim has no kind", self.id)))
    }

    pub fn domain(&self) -> Result<CoeffDomain, Error> {
        self.domain
            .ok_or_else(|| Error::InvalidArgument(format!("manifest {}: no domain", self.id)))
    }

    /// Inline identities followed by the family's, with family warnings.
    pub fn all_identities(&self) -> Result<(Vec<Identity>, Vec<String>), Error> {
        let mut ids = self.identities.clone();
        let mut warnings = Vec::new();
        if let Some(f) = &self.family {
            let (more, w) = f.identities()?;
            ids.extend(more);
            warnings.extend(w);
        }
        Ok((ids, warnings))
    }

    /// The relatively free ring of the manifest's variety; the free
    /// nilpotent ring when no identities are given.
    pub fn ring(&self) -> Result<RelativelyFreeRing, Error> {
        let (ids, _) = self.all_identities()?;
        let domain = self.domain()?;
        if ids.is_empty() {
            RelativelyFreeRing::free(self.rank, self.class, domain)
        } else {
            RelativelyFreeRing::new(&VarietySpec::new(ids, domain)?, self.rank, self.class)
        }
    }

    pub fn spec(&self) -> Result<VarietySpec, Error> {
        VarietySpec::new(self.all_identities()?.0, self.domain()?)
    }
}

/// How much a passing check proves.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Certification {
    /// The check implies the claim for every ring in the variety.
    Full,
    /// The check was made at a rank too small to imply the claim.
    Partial { rank: usize },
    /// A spot check on explicit finite rings.
    Evidence,
}

impl Certification {
    /// Full at rank `needed` or more, partial below.
    pub fn at_rank(rank: usize, needed: usize) -> Self {
        if rank >= needed {
            Certification::Full
        } else {
            Certification::Partial { rank }
        }
    }
}

impl fmt::Display for Certification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certification::Full => write!(f, "full"),
            Certification::Partial { rank } => write!(f, "partial(rank={rank})"),
            Certification::Evidence => write!(f, "evidence"),
        }
    }
}

impl Serialize for Certification {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// What a checker found.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub claim: String,
    pub observed: Value,
    pub certification: Certification,
    pub degrees: Vec<DegreeSize>,
    pub pass: bool,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub id: String,
    pub claim: String,
    pub observed: Value,
    pub certification: Certification,
    pub degrees: Vec<DegreeSize>,
    pub pass: bool,
    pub asserted: bool,
    pub warnings: Vec<String>,
}

impl Report {
    /// False only for an asserted claim that failed.
    pub fn ok(&self) -> bool {
        self.pass || !self.asserted
    }
}

/// Checks one kind of claim.
pub trait ClaimChecker: Send + Sync {
    fn kind(&self) -> &'static str;
    fn check(&self, m: &Manifest) -> Result<Outcome, Error>;
}

/// Claim checkers by kind.
pub struct Registry {
    checkers: BTreeMap<&'static str, Box<dyn ClaimChecker>>,
}

impl Registry {
    pub fn empty() -> Self {
        Registry {
            checkers: BTreeMap::new(),
        }
    }

    pub fn register(&mut self, c: Box<dyn ClaimChecker>) {
        self.checkers.insert(c.kind(), c);
    }

    pub fn get(&self, kind: &str) -> Result<&dyn ClaimChecker, Error> {
        self.checkers
            .get(kind)
            .map(|c| c.as_ref())
            .ok_or_else(|| Error::UnknownClaim(kind.to_string()))
    }

    pub fn kinds(&self) -> Vec<&'static str> {
        self.checkers.keys().copied().collect()
    }

    pub fn run(&self, m: &Manifest) -> Result<Report, Error> {
        let o = self.get(m.kind()?)?.check(m)?;
        let mut warnings = m.all_identities()?.1;
        warnings.extend(o.warnings);
        Ok(Report {
            id: m.id.clone(),
            claim: o.claim,
            observed: o.observed,
            certification: o.certification,
            degrees: o.degrees,
            pass: o.pass,
            asserted: m.asserted,
            warnings,
        })
    }

    /// Runs manifests on a pool of `workers` threads; results keep the
    /// input order.
    pub fn run_many(&self, ms: &[Manifest], workers: usize) -> Vec<Result<Report, Error>> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers.max(1))
            .build()
            .expect("thread pool");
        pool.install(|| ms.par_iter().map(|m| self.run(m)).collect())
    }
}

impl Default for Registry {
    fn default() -> Self {
        let mut r = Registry::empty();
        r.register(Box::new(NilpotencyChecker));
        r.register(Box::new(SolvableChecker));
        r.register(Box::new(SquareChecker));
        r.register(Box::new(EqualityChecker));
        r.register(Box::new(SatisfiesChecker));
        r.register(Box::new(TorsionChecker));
        r.register(Box::new(SubringChecker));
        r
    }
}

const BUNDLED: &[(&str, &str)] = &[
    ("lemmas", include_str!("../../manifests/lemmas.json")),
    ("nilpotent", include_str!("../../manifests/nilpotent.json")),
    ("metabelian", include_str!("../../manifests/metabelian.json")),
    ("solvable", include_str!("../../manifests/solvable.json")),
    ("equalities", include_str!("../../manifests/equalities.json")),
    ("permutations", include_str!("../../manifests/permutations.json")),
    ("subrings", include_str!("../../manifests/subrings.json")),
];

/// The bundled manifests, in file order.
pub fn bundled() -> Vec<Manifest> {
    BUNDLED
        .iter()
        .flat_map(|(name, text)| {
            serde_json::from_str::<Vec<Manifest>>(text)
                .unwrap_or_else(|e| panic!("bundled manifest file {name}: {e}"))
        })
        .collect()
}

pub fn find(id: &str) -> Result<Manifest, Error> {
    bundled()
        .into_iter()
        .find(|m| m.id == id)
        .ok_or_else(|| Error::UnknownManifest(id.to_string()))
}

/// The quick tier, plus the deep tier when `deep` is set.
pub fn select(deep: bool) -> Vec<Manifest> {
    bundled()
        .into_iter()
        .filter(|m| m.tier == Tier::Quick || (deep && m.tier == Tier::Deep))
        .collect()
}
