//! Vectorial dual-bent certificates: (F_c)* = (F*)_{sigma(c)} for a
//! permutation sigma of the nonzero codomain elements.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::{classify_bent, SpectralError, VectorialFunction};
use crate::field::FieldElem;
use crate::limits::Limits;

/// Evidence that `dual` is a vectorial dual of the certified function.
#[derive(Debug, Clone, Serialize)]
pub struct DualBentCertificate {
    pub dual: VectorialFunction,
    /// sigma(c) for every nonzero codomain element c.
    pub sigma: BTreeMap<FieldElem, FieldElem>,
    /// The sign of each component, `None` when it is bent but not weakly
    /// regular.
    pub epsilons: BTreeMap<FieldElem, Option<i8>>,
}

impl DualBentCertificate {
    pub fn sigma(&self, c: FieldElem) -> Option<FieldElem> {
        self.sigma.get(&c).copied()
    }

    /// The common sign of all components, if there is one.
    pub fn constant_epsilon(&self) -> Option<i8> {
        let mut it = self.epsilons.values();
        let first = (*it.next()?)?;
        it.all(|&e| e == Some(first)).then_some(first)
    }

    pub fn all_weakly_regular(&self) -> bool {
        self.epsilons.values().all(Option::is_some)
    }
}

/// True when every nonzero component of `f` is bent.
pub fn is_vectorial_bent(f: &VectorialFunction, limits: &Limits) -> Result<bool, SpectralError> {
    for c in f.codomain().nonzero_elements() {
        if !classify_bent(&f.component(c)?, limits)?.is_bent {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Checks that `fstar` is a vectorial dual of `f`.
///
/// For every nonzero c the dual of F_c must coincide with exactly one
/// component of `fstar`, and the resulting map c -> d must be a bijection.
/// Components of `fstar` matched by non-weakly-regular components are
/// themselves checked for bentness. An [`SpectralError::Uncertified`] result
/// only says that `fstar` is not a valid witness.
pub fn dual_bent_certificate(
    f: &VectorialFunction,
    fstar: &VectorialFunction,
    limits: &Limits,
) -> Result<DualBentCertificate, SpectralError> {
    if f.domain() != fstar.domain() || f.codomain() != fstar.codomain() {
        return Err(SpectralError::Mismatch);
    }
    let mut by_table: HashMap<Vec<u32>, FieldElem> = HashMap::new();
    for d in fstar.codomain().nonzero_elements() {
        let table = fstar.component(d)?.table().to_vec();
        if let Some(prev) = by_table.insert(table, d) {
            return Err(SpectralError::Uncertified(format!("dual components {prev} and {d} coincide")));
        }
    }
    let mut sigma = BTreeMap::new();
    let mut epsilons = BTreeMap::new();
    let mut used = HashMap::new();
    for c in f.codomain().nonzero_elements() {
        let cls = classify_bent(&f.component(c)?, limits)?;
        if !cls.is_bent {
            return Err(SpectralError::NotBent(c));
        }
        let dual = cls.dual.expect("bent functions carry a dual");
        let d = *by_table
            .get(dual.table())
            .ok_or_else(|| SpectralError::Uncertified(format!("dual of component {c} is not a component of the proposed dual")))?;
        if let Some(prev) = used.insert(d, c) {
            return Err(SpectralError::Uncertified(format!("components {prev} and {c} share dual component {d}")));
        }
        if cls.epsilon.is_none() && !classify_bent(&dual, limits)?.is_bent {
            return Err(SpectralError::Uncertified(format!("dual component {d} is not bent")));
        }
        sigma.insert(c, d);
        epsilons.insert(c, cls.epsilon);
    }
    Ok(DualBentCertificate { dual: fstar.clone(), sigma, epsilons })
}
