//! Exact arithmetic in the ring of cyclotomic integers Z[zeta_p].
//!
//! Values are stored in the basis 1, zeta, ..., zeta^{p-2}; the top power is
//! always rewritten with 1 + zeta + ... + zeta^{p-1} = 0, which makes the
//! representation unique and equality a plain coefficient comparison.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CycloError {
    #[error("operands live in different rings (p = {0} and p = {1})")]
    MixedPrime(u32, u32),
    #[error("automorphism index must be a nonzero residue mod p")]
    BetaZero,
    #[error("{0} is not an odd prime")]
    NotOddPrime(u32),
    #[error("expected {expected} coefficients, got {got}")]
    WrongLength { expected: usize, got: usize },
}

/// An element of Z[zeta_p], `sum coeffs[i] * zeta^i` for `i < p - 1`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "CycloRecord", into = "CycloRecord")]
pub struct CyclotomicInt {
    p: u32,
    coeffs: Vec<BigInt>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CycloRecord {
    p: u32,
    #[serde(with = "crate::json::bigint_vec")]
    coeffs: Vec<BigInt>,
}

impl TryFrom<CycloRecord> for CyclotomicInt {
    type Error = CycloError;

    fn try_from(r: CycloRecord) -> Result<Self, CycloError> {
        CyclotomicInt::from_coeffs(r.p, r.coeffs)
    }
}

impl From<CyclotomicInt> for CycloRecord {
    fn from(c: CyclotomicInt) -> Self {
        CycloRecord { p: c.p, coeffs: c.coeffs }
    }
}

fn check_prime(p: u32) -> Result<(), CycloError> {
    if p == 2 || !crate::arith::is_prime(p as u64) {
        Err(CycloError::NotOddPrime(p))
    } else {
        Ok(())
    }
}

impl CyclotomicInt {
    pub fn zero(p: u32) -> Self {
        CyclotomicInt { p, coeffs: vec![BigInt::zero(); p as usize - 1] }
    }

    pub fn from_int(p: u32, n: impl Into<BigInt>) -> Self {
        let mut out = Self::zero(p);
        out.coeffs[0] = n.into();
        out
    }

    /// zeta^j for any integer exponent.
    pub fn zeta_pow(p: u32, j: i64) -> Self {
        let mut ring = vec![BigInt::zero(); p as usize];
        ring[j.rem_euclid(p as i64) as usize] = BigInt::one();
        Self::from_group_ring(p, ring)
    }

    pub fn from_coeffs(p: u32, coeffs: Vec<BigInt>) -> Result<Self, CycloError> {
        check_prime(p)?;
        if coeffs.len() != p as usize - 1 {
            return Err(CycloError::WrongLength { expected: p as usize - 1, got: coeffs.len() });
        }
        Ok(CyclotomicInt { p, coeffs })
    }

    /// Reduces `sum ring[i] * zeta^i` over all `i < p`.
    pub fn from_group_ring(p: u32, ring: Vec<BigInt>) -> Self {
        debug_assert_eq!(ring.len(), p as usize);
        let mut ring = ring;
        let top = ring.pop().expect("p > 0");
        let coeffs = ring.into_iter().map(|c| c - &top).collect();
        CyclotomicInt { p, coeffs }
    }

    pub fn from_group_ring_i64(p: u32, ring: &[i64]) -> Self {
        let top = ring[p as usize - 1];
        let coeffs = ring[..p as usize - 1].iter().map(|&c| BigInt::from(c - top)).collect();
        CyclotomicInt { p, coeffs }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The rational integer this value equals, if it is one.
    pub fn as_integer(&self) -> Option<&BigInt> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    fn same_ring(&self, other: &Self) -> Result<(), CycloError> {
        if self.p == other.p {
            Ok(())
        } else {
            Err(CycloError::MixedPrime(self.p, other.p))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, CycloError> {
        self.same_ring(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(CyclotomicInt { p: self.p, coeffs })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, CycloError> {
        self.same_ring(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(CyclotomicInt { p: self.p, coeffs })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, CycloError> {
        self.same_ring(other)?;
        let p = self.p as usize;
        let mut ring = vec![BigInt::zero(); p];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    ring[(i + j) % p] += a * b;
                }
            }
        }
        Ok(Self::from_group_ring(self.p, ring))
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        CyclotomicInt { p: self.p, coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    /// Multiplication by zeta^j.
    pub fn mul_zeta(&self, j: i64) -> Self {
        let p = self.p as usize;
        let shift = j.rem_euclid(p as i64) as usize;
        let mut ring = vec![BigInt::zero(); p];
        for (i, c) in self.coeffs.iter().enumerate() {
            ring[(i + shift) % p] = c.clone();
        }
        Self::from_group_ring(self.p, ring)
    }

    /// Exact division by a rational integer, if every coefficient divides.
    pub fn div_exact(&self, d: &BigInt) -> Option<Self> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let (q, r) = c.div_rem(d);
            if !r.is_zero() {
                return None;
            }
            coeffs.push(q);
        }
        Some(CyclotomicInt { p: self.p, coeffs })
    }

    /// The automorphism zeta -> zeta^beta.
    pub fn automorphism(&self, beta: u32) -> Result<Self, CycloError> {
        let p = self.p as usize;
        let beta = beta as usize % p;
        if beta == 0 {
            return Err(CycloError::BetaZero);
        }
        let mut ring = vec![BigInt::zero(); p];
        for (i, c) in self.coeffs.iter().enumerate() {
            ring[i * beta % p] = c.clone();
        }
        Ok(Self::from_group_ring(self.p, ring))
    }

    /// Complex conjugate, zeta -> zeta^{p-1}.
    pub fn conj(&self) -> Self {
        self.automorphism(self.p - 1).expect("p - 1 is a unit")
    }

    /// |a|^2 = a * conj(a) as a rational integer, or `None` when it only
    /// lies in the real subring and is not rational.
    pub fn conj_norm(&self) -> Option<BigInt> {
        let prod = self * &self.conj();
        prod.as_integer().cloned()
    }

    /// The quadratic Gauss sum `sum_x zeta^{x^2}` over GF(p).
    pub fn gauss_sum(p: u32) -> Result<Self, CycloError> {
        check_prime(p)?;
        let mut ring = vec![BigInt::zero(); p as usize];
        for x in 0..p as u64 {
            ring[(x * x % p as u64) as usize] += 1;
        }
        Ok(Self::from_group_ring(p, ring))
    }

    /// p* = (-1)^{(p-1)/2} p, the square of the Gauss sum.
    pub fn p_star(p: u32) -> BigInt {
        if p % 4 == 1 {
            BigInt::from(p)
        } else {
            -BigInt::from(p)
        }
    }
}

impl fmt::Debug for CyclotomicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CyclotomicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = match i {
                0 => c.to_string(),
                _ => {
                    let z = if i == 1 { "z".to_string() } else { format!("z^{i}") };
                    if c.is_one() {
                        z
                    } else if (-c).is_one() {
                        format!("-{z}")
                    } else {
                        format!("{c}{z}")
                    }
                }
            };
            terms.push(term);
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        let mut out = terms[0].clone();
        for t in &terms[1..] {
            if let Some(rest) = t.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(t);
            }
        }
        write!(f, "{out}")
    }
}

impl Add for &CyclotomicInt {
    type Output = CyclotomicInt;

    /// Panics when the operands have different primes; see [`CyclotomicInt::checked_add`].
    fn add(self, rhs: Self) -> CyclotomicInt {
        self.checked_add(rhs).expect("mixed cyclotomic rings")
    }
}

impl Sub for &CyclotomicInt {
    type Output = CyclotomicInt;

    fn sub(self, rhs: Self) -> CyclotomicInt {
        self.checked_sub(rhs).expect("mixed cyclotomic rings")
    }
}

impl Mul for &CyclotomicInt {
    type Output = CyclotomicInt;

    fn mul(self, rhs: Self) -> CyclotomicInt {
        self.checked_mul(rhs).expect("mixed cyclotomic rings")
    }
}

impl Neg for &CyclotomicInt {
    type Output = CyclotomicInt;

    fn neg(self) -> CyclotomicInt {
        CyclotomicInt { p: self.p, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Add for CyclotomicInt {
    type Output = CyclotomicInt;

    fn add(self, rhs: Self) -> CyclotomicInt {
        &self + &rhs
    }
}

impl Sub for CyclotomicInt {
    type Output = CyclotomicInt;

    fn sub(self, rhs: Self) -> CyclotomicInt {
        &self - &rhs
    }
}

impl Mul for CyclotomicInt {
    type Output = CyclotomicInt;

    fn mul(self, rhs: Self) -> CyclotomicInt {
        &self * &rhs
    }
}

impl Neg for CyclotomicInt {
    type Output = CyclotomicInt;

    fn neg(self) -> CyclotomicInt {
        -&self
    }
}
