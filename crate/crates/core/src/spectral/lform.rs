//! l-form exponents and the empirical check that weakly regular dual-bent
//! p-ary functions vanishing at 0 are l-forms with gcd(l - 1, p - 1) = 1.

use serde::Serialize;

use super::{classify_bent, dual_bent_certificate, PAryFunction, SpectralError};
use crate::arith;
use crate::field::FieldElem;
use crate::limits::Limits;

/// All l in 1..=p-1 with f(a x) = a^l f(x) for every a in GF(p)^* and x.
pub fn lform_exponents(f: &PAryFunction) -> Vec<u32> {
    let p = f.p() as u64;
    let space = f.domain();
    // scaled[a][x] = f(a x)
    let scaled: Vec<Vec<u32>> = (2..p)
        .map(|a| space.points().map(|x| f.eval(space.scalar_mul(a as u32, x))).collect())
        .collect();
    (1..p)
        .filter(|&l| {
            scaled.iter().enumerate().all(|(i, row)| {
                let a = i as u64 + 2;
                let al = (0..l).fold(1u64, |acc, _| acc * a % p);
                row.iter().zip(f.table()).all(|(&lhs, &v)| lhs as u64 == al * v as u64 % p)
            })
        })
        .map(|l| l as u32)
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Theorem5Report {
    /// f is not a weakly regular vectorial dual-bent function.
    NotApplicable { reason: String },
    /// An l-form exponent with gcd(l - 1, p - 1) = 1 was found.
    Confirmed { l: u32, lforms: Vec<u32>, sigma: Vec<(u32, u32)>, epsilon: i8 },
    /// f qualifies but has no admissible l-form exponent.
    Counterexample { lforms: Vec<u32> },
}

impl Theorem5Report {
    pub fn is_counterexample(&self) -> bool {
        matches!(self, Theorem5Report::Counterexample { .. })
    }
}

/// Decides whether `f` is weakly regular vectorial dual-bent as a map into
/// GF(p) and, if so, whether it is an l-form with gcd(l - 1, p - 1) = 1.
///
/// Any vectorial dual of such an f is a nonzero multiple of f*, so
/// certifying against f* itself loses nothing.
pub fn theorem5_check(f: &PAryFunction, limits: &Limits) -> Result<Theorem5Report, SpectralError> {
    if f.eval(crate::space::Point::ZERO) != 0 {
        return Err(SpectralError::PreconditionF0(f.eval(crate::space::Point::ZERO)));
    }
    let not_applicable = |reason: &str| Ok(Theorem5Report::NotApplicable { reason: reason.into() });
    let cls = classify_bent(f, limits)?;
    if !cls.is_bent {
        return not_applicable("not bent");
    }
    let Some(epsilon) = cls.epsilon else {
        return not_applicable("bent but not weakly regular");
    };
    let dual = cls.dual.expect("bent").to_vectorial();
    let cert = match dual_bent_certificate(&f.to_vectorial(), &dual, limits) {
        Ok(cert) => cert,
        Err(SpectralError::Uncertified(_)) => return not_applicable("not vectorial dual-bent"),
        Err(e) => return Err(e),
    };
    if !cert.all_weakly_regular() {
        return not_applicable("some multiple c f is not weakly regular");
    }
    let p = f.p() as u64;
    let lforms = lform_exponents(f);
    let sigma = cert.sigma.iter().map(|(c, d): (&FieldElem, &FieldElem)| (c.0, d.0)).collect();
    match lforms.iter().find(|&&l| arith::gcd(l as u64 - 1, p - 1) == 1) {
        Some(&l) => Ok(Theorem5Report::Confirmed { l, lforms, sigma, epsilon }),
        None => Ok(Theorem5Report::Counterexample { lforms }),
    }
}
