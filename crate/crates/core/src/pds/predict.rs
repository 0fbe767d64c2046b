//! Turning a certified vectorial dual-bent function into concrete PDS
//! predictions, one per applicable theorem and preimage set.

use std::collections::BTreeSet;

use serde::Serialize;

use super::{
    check_hypotheses, params_coset_union, params_subset, preimage, semiprimitive_check, sigma_predicates,
    verify_pds_bruteforce, verify_pds_characters, PdsError, PdsParams, Result,
};
use crate::arith;
use crate::field::{FieldDesc, FieldElem};
use crate::limits::Limits;
use crate::spectral::{DualBentCertificate, VectorialFunction};

/// The result a prediction rests on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Theorem {
    /// sigma is the identity: every preimage D_A.
    Subset,
    /// sigma^{-1}(c) H_l = c H_l: coset preimages and their unions with D_0.
    CosetUnion,
    /// sigma fixes the squares: D_S and D_N.
    Squares,
    /// Semiprimitive t with sigma permuting the cosets of H_t.
    Semiprimitive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Prediction {
    pub theorem: Theorem,
    pub description: String,
    /// D = {x != 0 : F(x) in values}.
    pub values: BTreeSet<FieldElem>,
    pub params: PdsParams,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PredictionOutcome {
    pub size: usize,
    /// Parameters found by difference counting, `None` when the counts are
    /// not constant.
    pub bruteforce: Option<PdsParams>,
    /// Whether the character criterion accepts the predicted parameters.
    pub characters: bool,
}

impl PredictionOutcome {
    pub fn confirmed(&self, predicted: &PdsParams) -> bool {
        self.characters && self.bruteforce.as_ref() == Some(predicted)
    }
}

fn subset_family(k: &FieldDesc) -> Vec<BTreeSet<FieldElem>> {
    let q = k.order() as usize;
    if q <= 5 {
        return (0u32..1 << q)
            .map(|mask| (0..q as u32).filter(|i| mask >> i & 1 == 1).map(FieldElem).collect())
            .collect();
    }
    let all: Vec<FieldElem> = k.elements().collect();
    let mut out: Vec<BTreeSet<FieldElem>> = vec![
        BTreeSet::new(),
        BTreeSet::from([FieldElem::ZERO]),
        BTreeSet::from([FieldElem::ONE]),
        BTreeSet::from([FieldElem::ZERO, FieldElem::ONE]),
        all.iter().copied().filter(|c| !c.is_zero()).collect(),
        all.iter().copied().collect(),
        all.iter().copied().filter(|c| c.0 % 2 == 1).collect(),
        all.iter().copied().take(q / 2).collect(),
    ];
    out.dedup();
    out
}

fn coset_values(k: &FieldDesc, exponent: u64, count: u64) -> Result<Vec<BTreeSet<FieldElem>>> {
    let w = k.primitive_element();
    (0..count)
        .map(|i| Ok(k.subgroup_coset(exponent, k.pow(w, i))?.members))
        .collect()
}

fn coset_predictions(
    k: &FieldDesc,
    theorem: Theorem,
    exponent: u64,
    n: u32,
    eps: i8,
    out: &mut Vec<Prediction>,
) -> Result<()> {
    let (p, s) = (k.p(), k.m());
    let order = k.order() - 1;
    let g = arith::gcd(exponent, order);
    let h = order / g;
    let cosets = coset_values(k, exponent, g)?;
    for (i, values) in cosets.iter().enumerate() {
        out.push(Prediction {
            theorem,
            description: format!("coset w^{i} H_{exponent}"),
            values: values.clone(),
            params: params_coset_union(n, s, p, h, 1, 0, eps)?,
        });
    }
    for m1 in 0..=g {
        for m0 in 0..=1u32 {
            if (m1, m0) == (0, 0) || (m1, m0) == (1, 0) {
                continue;
            }
            let mut values: BTreeSet<FieldElem> = cosets.iter().take(m1 as usize).flatten().copied().collect();
            if m0 == 1 {
                values.insert(FieldElem::ZERO);
            }
            out.push(Prediction {
                theorem,
                description: format!("union of {m1} cosets of H_{exponent}, m0 = {m0}"),
                values,
                params: params_coset_union(n, s, p, h, m1, m0, eps)?,
            });
        }
    }
    Ok(())
}

/// Every PDS the certified function `f` is predicted to yield. Fails with
/// [`PdsError::HypothesisViolation`] when the shared premises do not hold.
pub fn predictions(f: &VectorialFunction, cert: &DualBentCertificate) -> Result<Vec<Prediction>> {
    let eps = check_hypotheses(f, cert)?;
    let k = f.codomain();
    let (p, s, n) = (k.p(), k.m(), f.domain().dim());
    let order = k.order() - 1;
    let mut out = Vec::new();
    let base = sigma_predicates(k, &cert.sigma, 1, 1)?;
    if base.is_identity {
        for values in subset_family(k) {
            let contains_zero = values.contains(&FieldElem::ZERO);
            out.push(Prediction {
                theorem: Theorem::Subset,
                description: format!("subset of size {}", values.len()),
                params: params_subset(n, s, p, values.len() as u64, contains_zero, eps)?,
                values,
            });
        }
    }
    for g in arith::divisors(order) {
        let flags = sigma_predicates(k, &cert.sigma, g, g)?;
        if flags.coset_stable {
            coset_predictions(k, Theorem::CosetUnion, g, n, eps, &mut out)?;
        }
        if g >= 2 && semiprimitive_check(p, s, g).ok && flags.coset_permuting {
            coset_predictions(k, Theorem::Semiprimitive, g, n, eps, &mut out)?;
        }
    }
    if base.squares_stable {
        let squares: BTreeSet<FieldElem> = k.nonzero_elements().filter(|&c| k.is_square(c)).collect();
        let nonsquares: BTreeSet<FieldElem> = k.nonzero_elements().filter(|&c| !k.is_square(c)).collect();
        let params = params_coset_union(n, s, p, order / 2, 1, 0, eps)?;
        for (name, values) in [("squares", squares), ("non-squares", nonsquares)] {
            out.push(Prediction { theorem: Theorem::Squares, description: name.into(), values, params: params.clone() });
        }
    }
    Ok(out)
}

/// Extracts the predicted set and runs both verifiers on it.
pub fn check_prediction(f: &VectorialFunction, prediction: &Prediction, limits: &Limits) -> Result<PredictionOutcome> {
    let d = preimage(f, &prediction.values, true)?;
    let bruteforce = match verify_pds_bruteforce(f.domain(), &d, limits) {
        Ok(found) => Some(found),
        Err(PdsError::NotPds(_)) => None,
        Err(e) => return Err(e),
    };
    let characters = match verify_pds_characters(f.domain(), &d, &prediction.params, limits) {
        Ok(ok) => ok,
        Err(PdsError::NonSquareDelta(_)) => false,
        Err(e) => return Err(e),
    };
    Ok(PredictionOutcome { size: d.len(), bruteforce, characters })
}
