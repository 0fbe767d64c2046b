//! Bentness and (weak) regularity by exact matching of Walsh values.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::{walsh_full, PAryFunction, SpectralError, WalshSpectrum};
use crate::cyclo::CyclotomicInt;
use crate::limits::Limits;
use crate::space::Point;

/// Outcome of matching a spectrum against `±u zeta^j`, where
/// `u = p^{n/2}` for even n and `u = p^{(n-1)/2} g` (g the quadratic Gauss
/// sum) for odd n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BentClassification {
    pub is_bent: bool,
    pub weakly_regular: bool,
    /// The constant sign, when weakly regular.
    pub epsilon: Option<i8>,
    /// Weakly regular with sign +1.
    pub regular: bool,
    /// The dual f*, whenever f is bent.
    pub dual: Option<PAryFunction>,
    /// Per-point signs, whenever f is bent.
    pub signs: Option<Vec<i8>>,
}

impl BentClassification {
    fn not_bent() -> Self {
        BentClassification {
            is_bent: false,
            weakly_regular: false,
            epsilon: None,
            regular: false,
            dual: None,
            signs: None,
        }
    }
}

/// The unit `u` against which spectrum values are matched.
pub(crate) fn bent_unit(p: u32, n: u32) -> CyclotomicInt {
    let half = BigInt::from(p).pow(n / 2);
    if n.is_multiple_of(2) {
        CyclotomicInt::from_int(p, half)
    } else {
        CyclotomicInt::gauss_sum(p).expect("odd prime").scale(&half)
    }
}

/// Classifies `f` from its fast Walsh spectrum.
pub fn classify_bent(f: &PAryFunction, limits: &Limits) -> Result<BentClassification, SpectralError> {
    let w = walsh_full(f, limits)?;
    classify_spectrum(f, &w)
}

/// Classifies `f` given its spectrum `w`.
pub fn classify_spectrum(f: &PAryFunction, w: &WalshSpectrum) -> Result<BentClassification, SpectralError> {
    let p = w.p();
    let n = w.dim();
    let unit = bent_unit(p, n);
    let mut candidates: HashMap<Vec<i64>, (u32, i8)> = HashMap::with_capacity(2 * p as usize);
    for j in 0..p {
        let v = unit.mul_zeta(j as i64);
        for (sign, val) in [(1i8, v.clone()), (-1i8, -&v)] {
            let key = val.coeffs().iter().map(|c| c.to_i64().expect("|u| <= p^{n/2}")).collect();
            candidates.insert(key, (j, sign));
        }
    }
    let target = BigInt::from(p).pow(n);
    let mut dual = Vec::with_capacity(w.len());
    let mut signs = Vec::with_capacity(w.len());
    for a in 0..w.len() as u64 {
        match candidates.get(w.coeffs(Point(a))) {
            Some(&(j, sign)) => {
                dual.push(j);
                signs.push(sign);
            }
            None => {
                return if w.value(Point(a)).conj_norm() == Some(target) {
                    Err(SpectralError::MatchFailure(Point(a)))
                } else {
                    Ok(BentClassification::not_bent())
                };
            }
        }
    }
    let first = signs[0];
    let weakly_regular = signs.iter().all(|&s| s == first);
    let epsilon = weakly_regular.then_some(first);
    Ok(BentClassification {
        is_bent: true,
        weakly_regular,
        epsilon,
        regular: epsilon == Some(1),
        dual: Some(PAryFunction::new(f.domain().clone(), dual)?),
        signs: Some(signs),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::Space;

    #[test]
    fn product_function() {
        let s = Space::pure(3, 2).unwrap();
        let f = PAryFunction::from_fn(s.clone(), |x| {
            let c = s.coords(x);
            c[0] * c[1]
        });
        let c = classify_bent(&f, &Limits::default()).unwrap();
        assert!(c.is_bent && c.weakly_regular && c.regular);
        assert_eq!(c.epsilon, Some(1));
        let expect = PAryFunction::from_fn(s.clone(), |x| {
            let c = s.coords(x);
            2 * c[0] * c[1]
        });
        assert_eq!(c.dual.unwrap(), expect);
    }

    #[test]
    fn zero_is_not_bent() {
        let f = PAryFunction::zero(Space::pure(3, 2).unwrap());
        assert!(!classify_bent(&f, &Limits::default()).unwrap().is_bent);
    }

    #[test]
    fn odd_dimension_uses_gauss_sum() {
        let s = Space::pure(3, 1).unwrap();
        let f = PAryFunction::from_fn(s, |x| (x.0 * x.0) as u32);
        let c = classify_bent(&f, &Limits::default()).unwrap();
        assert!(c.is_bent && c.weakly_regular);
        // W(a) = sum_x zeta^{x^2 - a x} = zeta^{-a^2/4} g = zeta^{2a^2} g over GF(3).
        let dual = c.dual.unwrap();
        assert_eq!(dual.table(), &[0, 2, 2]);
        assert_eq!(c.epsilon, Some(1));
    }
}
