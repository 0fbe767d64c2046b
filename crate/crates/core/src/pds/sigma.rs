//! Conditions on the permutation sigma that make preimage sets PDS.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::{PdsError, Result};
use crate::arith;
use crate::field::{FieldDesc, FieldElem};

/// The sigma conditions, each decided by comparing sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SigmaFlags {
    /// sigma(c) = c for all c.
    pub is_identity: bool,
    /// sigma^{-1}(c) H_l = c H_l for all c.
    pub coset_stable: bool,
    /// sigma maps the squares onto the squares.
    pub squares_stable: bool,
    /// sigma maps every coset of H_t onto a coset of H_t.
    pub coset_permuting: bool,
}

fn check_bijection(k: &FieldDesc, sigma: &BTreeMap<FieldElem, FieldElem>) -> Result<()> {
    let keys: BTreeSet<FieldElem> = sigma.keys().copied().collect();
    let values: BTreeSet<FieldElem> = sigma.values().copied().collect();
    let nonzero: BTreeSet<FieldElem> = k.nonzero_elements().collect();
    if keys != nonzero || values != nonzero {
        return Err(PdsError::NotBijection);
    }
    Ok(())
}

fn coset(k: &FieldDesc, exponent: u64, beta: FieldElem) -> Result<BTreeSet<FieldElem>> {
    Ok(k.subgroup_coset(exponent, beta)?.members)
}

/// Evaluates the sigma conditions for `l` (cosets of H_l) and `t` (coset
/// permutation of H_t) on GF(p^s) = `k`. When sigma is a power map the
/// coset condition is also decided arithmetically and the routes must agree.
pub fn sigma_predicates(k: &FieldDesc, sigma: &BTreeMap<FieldElem, FieldElem>, l: u64, t: u64) -> Result<SigmaFlags> {
    check_bijection(k, sigma)?;
    let inverse: BTreeMap<FieldElem, FieldElem> = sigma.iter().map(|(&c, &d)| (d, c)).collect();
    let is_identity = sigma.iter().all(|(c, d)| c == d);

    let mut coset_stable = true;
    for c in k.nonzero_elements() {
        if coset(k, l, inverse[&c])? != coset(k, l, c)? {
            coset_stable = false;
            break;
        }
    }

    let squares: BTreeSet<FieldElem> = k.nonzero_elements().filter(|&c| k.is_square(c)).collect();
    let squares_stable = squares.iter().map(|c| sigma[c]).collect::<BTreeSet<_>>() == squares;

    let mut coset_permuting = true;
    for beta in k.nonzero_elements() {
        let image: BTreeSet<FieldElem> = coset(k, t, beta)?.iter().map(|c| sigma[c]).collect();
        let first = *image.iter().next().expect("cosets are nonempty");
        if image != coset(k, t, first)? {
            coset_permuting = false;
            break;
        }
    }

    if let Some(shortcut) = coset_stable_shortcut(k, sigma, l)? {
        if shortcut != coset_stable {
            return Err(PdsError::FormulaMismatch(format!(
                "coset condition for l = {l}: set comparison {coset_stable}, arithmetic {shortcut}"
            )));
        }
    }
    Ok(SigmaFlags { is_identity, coset_stable, squares_stable, coset_permuting })
}

/// When sigma(c) = c^{-t'} with t' invertible modulo p^s - 1, the coset
/// condition for l holds iff gcd(l, p^s - 1) divides 1 + r where t' r = 1.
/// Returns `None` when sigma is not of that shape.
pub fn coset_stable_shortcut(k: &FieldDesc, sigma: &BTreeMap<FieldElem, FieldElem>, l: u64) -> Result<Option<bool>> {
    check_bijection(k, sigma)?;
    let order = k.order() - 1;
    let w = k.primitive_element();
    // sigma(w) = w^e pins e down; it must then hold for every c.
    let e = k.log(sigma[&w])?;
    if !sigma.iter().all(|(&c, &d)| k.pow(c, e) == d) {
        return Ok(None);
    }
    let t_prime = (order - e % order) % order;
    let Some(r) = arith::mod_inverse(t_prime, order) else {
        return Ok(None);
    };
    let g = arith::gcd(l, order);
    Ok(Some((1 + r) % g == 0))
}
