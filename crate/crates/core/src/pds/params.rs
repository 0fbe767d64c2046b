//! Closed-form PDS parameters, evaluated over exact rationals.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{rational_pow, to_integer, PdsError, PdsParams, Result};

fn int(x: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(x.into())
}

fn finish(p: u32, n: u32, k: BigRational, lambda: BigRational, mu: BigRational) -> Result<PdsParams> {
    Ok(PdsParams {
        v: BigInt::from(p).pow(n),
        k: to_integer(k, "k")?,
        lambda: to_integer(lambda, "lambda")?,
        mu: to_integer(mu, "mu")?,
    }
    .normalized())
}

fn check_sign(eps: i8) -> Result<()> {
    if eps == 1 || eps == -1 {
        Ok(())
    } else {
        Err(PdsError::HypothesisViolation(format!("sign must be +1 or -1, got {eps}")))
    }
}

/// Parameters of D_A = {x != 0 : F(x) in A} for a vectorial dual-bent F with
/// sigma the identity, given |A| and whether 0 lies in A.
pub fn params_subset(n: u32, s: u32, p: u32, size_a: u64, contains_zero: bool, eps: i8) -> Result<PdsParams> {
    if !n.is_multiple_of(2) {
        return Err(PdsError::OddDimension(n));
    }
    check_sign(eps)?;
    let ps = int(BigInt::from(p).pow(s));
    let a = int(size_a);
    let e = int(eps);
    let top = rational_pow(p, n as i64 - s as i64);
    let sq = rational_pow(p, n as i64 - 2 * s as i64);
    let half = rational_pow(p, n as i64 / 2 - s as i64) * &e;
    let (k, lambda, mu) = if contains_zero {
        let k = &a * &top + &half * (&ps - &a) - int(1);
        let lambda = &sq * &a * &a + &half * (&ps - &a) - int(2);
        let mu = &sq * &a * &a + &half * &a;
        (k, lambda, mu)
    } else {
        let k = &a * &top - &half * &a;
        let lambda = &sq * &a * &a + &half * (&ps - int(3) * &a);
        let mu = &sq * &a * &a - &half * &a;
        (k, lambda, mu)
    };
    finish(p, n, k, lambda, mu)
}

/// Parameters of a union of `m1` coset preimages D_{beta H}, |H| = `h_size`,
/// together with D_0 minus the zero vector when `m0 = 1`. With m1 = 1 and
/// m0 = 0 this is the single coset preimage. The semiprimitive case uses the
/// same formulas with h_size = (p^s - 1)/t.
pub fn params_coset_union(n_total: u32, s: u32, p: u32, h_size: u64, m1: u64, m0: u32, eps: i8) -> Result<PdsParams> {
    if !n_total.is_multiple_of(2) {
        return Err(PdsError::OddDimension(n_total));
    }
    check_sign(eps)?;
    if m0 > 1 {
        return Err(PdsError::BadM0(m0));
    }
    let group = (p as u64).pow(s) - 1;
    if h_size == 0 || !group.is_multiple_of(h_size) {
        return Err(PdsError::NonDivisor { divisor: h_size, modulus: group });
    }
    let ps = int(BigInt::from(p).pow(s));
    let e = int(eps);
    let h = int(m1) * int(h_size);
    let m0r = int(m0);
    let size = &h + &m0r;
    let top = rational_pow(p, n_total as i64 - s as i64);
    let sq = rational_pow(p, n_total as i64 - 2 * s as i64);
    let half = rational_pow(p, n_total as i64 / 2 - s as i64) * &e;
    let k = &size * &top + &half * (&m0r * &ps - &size) - &m0r;
    let lambda = &sq * &size * &size + &half * (&ps + (int(2) * &m0r - int(3)) * &h - &m0r) - int(2) * &m0r;
    let mu = &sq * &size * &size + &half * ((int(2) * &m0r - int(1)) * &h + &m0r);
    finish(p, n_total, k, lambda, mu)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tuple(p: &PdsParams) -> (String, String, String, String) {
        (p.v.to_string(), p.k.to_string(), p.lambda.to_string(), p.mu.to_string())
    }

    #[test]
    fn subsets() {
        let d1 = params_subset(2, 1, 3, 1, false, 1).unwrap();
        assert_eq!(d1, PdsParams::new(9, 2, 1, 0));
        let empty = params_subset(2, 1, 3, 0, false, 1).unwrap();
        assert_eq!(empty, PdsParams::new(9, 0, 0, 0));
        let full = params_subset(2, 1, 3, 3, true, 1).unwrap();
        assert_eq!(full, PdsParams::new(9, 8, 7, 0));
        assert!(matches!(params_subset(3, 1, 3, 1, false, 1), Err(PdsError::OddDimension(3))));
    }

    #[test]
    fn single_coset_matches_subset_formula() {
        // A single coset of size h is a set A with |A| = h and 0 not in A.
        for (p, s, n, h) in [(3, 1, 4, 2), (3, 2, 6, 4), (5, 1, 4, 2), (7, 2, 8, 16)] {
            for eps in [1, -1] {
                let a = params_coset_union(n, s, p, h, 1, 0, eps).unwrap();
                let b = params_subset(n, s, p, h, false, eps).unwrap();
                assert_eq!(a, b);
                let a = params_coset_union(n, s, p, h, 1, 1, eps).unwrap();
                let b = params_subset(n, s, p, h + 1, true, eps).unwrap();
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn worked_examples() {
        let got = params_coset_union(8, 2, 7, 16, 1, 0, 1).unwrap();
        assert_eq!(tuple(&got), ("5764801".into(), "1881600".into(), "614705".into(), "613872".into()));
        let got = params_coset_union(16, 2, 5, 12, 1, 0, -1).unwrap();
        assert_eq!(tuple(&got), ("152587890625".into(), "73242375000".into(), "35156421875".into(), "35156437500".into()));
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(params_coset_union(8, 2, 7, 5, 1, 0, 1), Err(PdsError::NonDivisor { .. })));
        assert!(matches!(params_coset_union(8, 2, 7, 16, 1, 2, 1), Err(PdsError::BadM0(2))));
        // p^{n/2 - s} is fractional here and the sizes do not come out whole.
        assert!(matches!(params_subset(2, 2, 3, 1, false, 1), Err(PdsError::NonIntegral(_))));
    }
}
