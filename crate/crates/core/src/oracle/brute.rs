use rayon::prelude::*;
use serde::Serialize;

use super::{render_element, FiniteLieRing};
use crate::coeff::CoeffDomain;
use crate::ring::LieRing;
use crate::variety::{substitution_family, CompiledCombination};
use crate::wordlang::Identity;
use crate::Error;

/// Enumeration limits for the brute-force oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleCaps {
    /// Largest ring order accepted.
    pub max_order: u128,
    /// Largest number of assignments (or generator tuples) enumerated.
    pub max_assignments: u128,
}

impl Default for OracleCaps {
    fn default() -> Self {
        OracleCaps {
            max_order: 729,
            max_assignments: 1 << 24,
        }
    }
}

impl OracleCaps {
    pub(crate) fn check(&self, ring: &FiniteLieRing, vars: usize) -> Result<u128, Error> {
        let order = ring.order().unwrap_or(u128::MAX);
        if order > self.max_order {
            return Err(Error::guard("ring order", order, self.max_order));
        }
        let total = order.checked_pow(vars as u32).unwrap_or(u128::MAX);
        if total > self.max_assignments {
            return Err(Error::guard("assignments", total, self.max_assignments));
        }
        Ok(total)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BruteVerdict {
    pub holds: bool,
    pub assignments: u128,
    /// The first failing assignment in enumeration order.
    pub witness: Option<Vec<(String, String)>>,
    pub value: Option<String>,
}

const CHUNK: u128 = 1 << 12;

/// Evaluates `ident` at every assignment of ring elements to its variables.
/// Assignments are enumerated lexicographically, first variable most
/// significant, and the first failure is reported.
pub fn brute_check_identity(
    ring: &FiniteLieRing,
    ident: &Identity,
    caps: &OracleCaps,
) -> Result<BruteVerdict, Error> {
    let compiled = CompiledCombination::new(&ident.combination())?;
    let vars = compiled.variables().len();
    let total = caps.check(ring, vars)?;
    let order = ring.order().expect("checked above");
    let nchunks = total.div_ceil(CHUNK);
    let hit = (0..nchunks as u64)
        .into_par_iter()
        .map(|c| -> Result<Option<(u128, Vec<u64>)>, Error> {
            let lo = c as u128 * CHUNK;
            let hi = (lo + CHUNK).min(total);
            let mut args: Vec<Vec<u64>> = vec![Vec::new(); vars];
            for n in lo..hi {
                let mut rest = n;
                for a in args.iter_mut().rev() {
                    *a = ring.element_at(rest % order);
                    rest /= order;
                }
                let v = compiled.evaluate(ring, &args)?;
                if !ring.is_zero(&v) {
                    return Ok(Some((n, v)));
                }
            }
            Ok(None)
        })
        .find_map_first(|r| match r {
            Ok(None) => None,
            other => Some(other),
        });
    let hit = match hit {
        None => None,
        Some(r) => r?,
    };
    Ok(match hit {
        None => BruteVerdict {
            holds: true,
            assignments: total,
            witness: None,
            value: None,
        },
        Some((n, v)) => {
            let mut rest = n;
            let mut assignment = Vec::with_capacity(vars);
            for name in compiled.variables().iter().rev() {
                assignment.push((name.clone(), render_element(&ring.element_at(rest % order))));
                rest /= order;
            }
            assignment.reverse();
            BruteVerdict {
                holds: false,
                assignments: total,
                witness: Some(assignment),
                value: Some(render_element(&v)),
            }
        }
    })
}

/// The verdict of the variety engine's method applied to `ring`: the
/// substitution family of `ident` evaluated at tuples of basis elements.
/// Returns the first failing tuple (1-based basis indices) if any.
pub fn structural_check(ring: &FiniteLieRing, ident: &Identity) -> Result<(bool, Option<Vec<usize>>), Error> {
    let domain = CoeffDomain::Modular(ring.modulus());
    let d = ring.rank();
    for member in substitution_family(&ident.combination(), domain)? {
        let compiled = CompiledCombination::new(&member)?;
        let vars = compiled.variables().len();
        let total = (d as u128).checked_pow(vars as u32).unwrap_or(u128::MAX);
        if total > crate::variety::MAX_TUPLES {
            return Err(Error::guard("basis tuples", total, crate::variety::MAX_TUPLES));
        }
        let basis: Vec<Vec<u64>> = (0..d).map(|i| ring.basis_element(i)).collect();
        let hit = (0..total as u64).into_par_iter().find_map_first(|n| {
            let mut rest = n as usize;
            let mut idx = vec![0; vars];
            for i in idx.iter_mut().rev() {
                *i = rest % d;
                rest /= d;
            }
            let args: Vec<Vec<u64>> = idx.iter().map(|&i| basis[i].clone()).collect();
            match compiled.evaluate(ring, &args) {
                Ok(v) if ring.is_zero(&v) => None,
                Ok(_) => Some(Ok(idx.iter().map(|i| i + 1).collect::<Vec<_>>())),
                Err(e) => Some(Err(e)),
            }
        });
        if let Some(w) = hit {
            return Ok((false, Some(w?)));
        }
    }
    Ok((true, None))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Agreement {
    pub brute: bool,
    pub structural: bool,
    pub agree: bool,
}

/// Compares the total-enumeration verdict with the structural one.
pub fn agreement_check(ring: &FiniteLieRing, ident: &Identity, caps: &OracleCaps) -> Result<Agreement, Error> {
    let brute = brute_check_identity(ring, ident, caps)?.holds;
    let structural = structural_check(ring, ident)?.0;
    Ok(Agreement {
        brute,
        structural,
        agree: brute == structural,
    })
}
