//! Two independent PDS verifiers: ordered difference counts and the
//! character criterion chi(D) in {(beta +- sqrt(Delta))/2}.

use num_bigint::BigInt;
use serde::Serialize;

use super::{is_perfect_square, PdsError, PdsParams, PreimageSet, Result};
use crate::limits::Limits;
use crate::space::Space;
use crate::spectral::character_sums;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    BruteForce,
    Characters,
}

/// Result of checking a set against candidate parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verification {
    pub method: Method,
    pub verified: bool,
}

fn candidacy(group: &Space, d: &PreimageSet) -> Result<()> {
    if d.group != *group {
        return Err(PdsError::GroupMismatch);
    }
    if d.members.first().is_some_and(|x| x.is_zero()) {
        return Err(PdsError::ContainsZero);
    }
    if !d.is_symmetric() {
        return Err(PdsError::NotSymmetric);
    }
    Ok(())
}

/// Counts ordered pairs (d1, d2) in D^2 with d1 - d2 = g for every g != 0 and
/// returns (v, |D|, lambda, mu) when the count is lambda on D and mu off it.
pub fn verify_pds_bruteforce(group: &Space, d: &PreimageSet, limits: &Limits) -> Result<PdsParams> {
    candidacy(group, d)?;
    let size = d.len() as u64;
    if size > limits.brute_force_max {
        return Err(PdsError::SizeGuard { size, cap: limits.brute_force_max });
    }
    let v = group.order();
    if d.is_empty() {
        return Ok(PdsParams::new(v, 0, 0, 0));
    }
    let sub = group.subtractor();
    let mut counts = vec![0u32; v as usize];
    for &a in &d.members {
        for &b in &d.members {
            counts[sub.sub(a, b).index()] += 1;
        }
    }
    let inside = d.indicator();
    let (mut lambda, mut mu): (Option<u32>, Option<u32>) = (None, None);
    for g in 1..v as usize {
        let slot = if inside[g] { &mut lambda } else { &mut mu };
        match *slot {
            None => *slot = Some(counts[g]),
            Some(c) if c != counts[g] => {
                let which = if inside[g] { "inside" } else { "outside" };
                return Err(PdsError::NotPds(format!("counts {c} and {} both occur {which} the set", counts[g])));
            }
            Some(_) => {}
        }
    }
    Ok(PdsParams::new(v, size, lambda.unwrap_or(0), mu.unwrap_or(0)))
}

/// Checks D against `candidate` through one transform of its indicator:
/// every nontrivial character sum must be one of the integers
/// (beta +- sqrt(Delta))/2, and |D|, |G| must match k, v.
pub fn verify_pds_characters(group: &Space, d: &PreimageSet, candidate: &PdsParams, limits: &Limits) -> Result<bool> {
    candidacy(group, d)?;
    let delta = candidate.delta();
    let root = is_perfect_square(&delta).ok_or(PdsError::NonSquareDelta(delta))?;
    if candidate.v != BigInt::from(group.order()) || candidate.k != BigInt::from(d.len()) {
        return Ok(false);
    }
    let beta = candidate.beta();
    let allowed: Vec<BigInt> = [&beta + &root, &beta - &root]
        .into_iter()
        .filter(|x| x % 2 == BigInt::from(0))
        .map(|x| x / 2)
        .collect();
    let weights: Vec<i64> = d.indicator().into_iter().map(i64::from).collect();
    let sums = character_sums(group, &weights, limits)?;
    for u in group.points().skip(1) {
        let value = sums.value(u);
        match value.as_integer() {
            Some(x) if allowed.contains(x) => {}
            _ => return Ok(false),
        }
    }
    Ok(true)
}

/// The character route, falling back to difference counts when Delta is not
/// a perfect square.
pub fn verify_pds(group: &Space, d: &PreimageSet, candidate: &PdsParams, limits: &Limits) -> Result<Verification> {
    match verify_pds_characters(group, d, candidate, limits) {
        Ok(verified) => Ok(Verification { method: Method::Characters, verified }),
        Err(PdsError::NonSquareDelta(_)) => {
            let verified = match verify_pds_bruteforce(group, d, limits) {
                Ok(found) => found == *candidate,
                Err(PdsError::NotPds(_)) => false,
                Err(e) => return Err(e),
            };
            Ok(Verification { method: Method::BruteForce, verified })
        }
        Err(e) => Err(e),
    }
}
