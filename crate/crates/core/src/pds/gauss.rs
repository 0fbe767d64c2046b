//! Gaussian periods sum_{x in H_t} zeta^{Tr(a x)} and their closed form in the
//! semiprimitive case.

use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;

use super::{PdsError, Result};
use crate::cyclo::CyclotomicInt;
use crate::field::{FieldDesc, FieldElem, FieldError};

/// Outcome of the semiprimitive test: `j` is the least j <= s with
/// t | p^j + 1, and `ok` holds when s = 2 j r.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Semiprimitive {
    pub ok: bool,
    pub j: Option<u32>,
    pub r: Option<u32>,
}

pub fn semiprimitive_check(p: u32, s: u32, t: u64) -> Semiprimitive {
    let j = (t >= 2)
        .then(|| (1..=s).find(|&j| ((p as u64).pow(j) + 1) % t == 0))
        .flatten();
    match j {
        Some(j) if s.is_multiple_of(2 * j) => Semiprimitive { ok: true, j: Some(j), r: Some(s / (2 * j)) },
        _ => Semiprimitive { ok: false, j, r: None },
    }
}

fn subgroup_for(k: &FieldDesc, t: u64) -> Result<Vec<FieldElem>> {
    let order = k.order() - 1;
    if t == 0 || !order.is_multiple_of(t) {
        return Err(PdsError::NonDivisor { divisor: t, modulus: order });
    }
    Ok(k.subgroup_coset(t, FieldElem::ONE)?.members.into_iter().collect())
}

/// The Gaussian period of a in GF(p^s) for H_t, by direct summation.
pub fn gaussian_period(p: u32, s: u32, t: u64, a: FieldElem) -> Result<CyclotomicInt> {
    let k = FieldDesc::new(p, s)?;
    k.check(a)?;
    if a.is_zero() {
        return Err(FieldError::ZeroArgument.into());
    }
    let mut counts = vec![0i64; p as usize];
    for x in subgroup_for(&k, t)? {
        counts[k.abs_trace(k.mul(a, x)) as usize] += 1;
    }
    Ok(CyclotomicInt::from_group_ring_i64(p, &counts))
}

/// The semiprimitive closed form, using the field's primitive element for the
/// shifted coset in the first branch.
pub fn gaussian_period_semiprimitive(p: u32, s: u32, t: u64, a: FieldElem) -> Result<CyclotomicInt> {
    let k = FieldDesc::new(p, s)?;
    gaussian_period_semiprimitive_with(p, s, t, a, k.primitive_element())
}

/// The semiprimitive closed form with `w` as the primitive element:
/// for r and (p^j + 1)/t both odd it is
/// delta_{w^{t/2} H_t}(a) p^{s/2} - (p^{s/2} + 1)/t, and otherwise
/// delta_{H_t}(a) (-1)^{r+1} p^{s/2} + ((-1)^r p^{s/2} - 1)/t.
pub fn gaussian_period_semiprimitive_with(p: u32, s: u32, t: u64, a: FieldElem, w: FieldElem) -> Result<CyclotomicInt> {
    let sp = semiprimitive_check(p, s, t);
    let (Some(j), Some(r), true) = (sp.j, sp.r, sp.ok) else {
        return Err(PdsError::NotSemiprimitive { p, s, t });
    };
    let k = FieldDesc::new(p, s)?;
    k.check(a)?;
    if a.is_zero() {
        return Err(FieldError::ZeroArgument.into());
    }
    if k.multiplicative_order(w)? != k.order() - 1 {
        return Err(PdsError::HypothesisViolation(format!("{w} is not primitive")));
    }
    let half = BigInt::from(p).pow(s / 2);
    let tb = BigInt::from(t);
    let exact = |num: BigInt| -> Result<BigInt> {
        let (q, rem) = num.div_rem(&tb);
        if rem == BigInt::from(0) {
            Ok(q)
        } else {
            Err(PdsError::NonIntegral(format!("{num}/{t}")))
        }
    };
    let ratio = ((p as u64).pow(j) + 1) / t;
    let h = subgroup_for(&k, t)?;
    let value = if r % 2 == 1 && ratio % 2 == 1 {
        let shift = k.pow(w, t / 2);
        let inside = h.iter().any(|&x| k.mul(shift, x) == a);
        let delta = BigInt::from(u8::from(inside));
        delta * &half - exact(&half + 1)?
    } else {
        let inside = h.contains(&a);
        let delta = BigInt::from(u8::from(inside));
        let sign = if r % 2 == 1 { BigInt::from(1) } else { BigInt::from(-1) };
        let tail = if r % 2 == 1 { -&half - 1 } else { &half - 1 };
        delta * sign * &half + exact(tail)?
    };
    Ok(CyclotomicInt::from_int(p, value))
}
