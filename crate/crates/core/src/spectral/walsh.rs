//! The generalized Walsh transform W_f(a) = sum_x zeta^{f(x) - <a,x>}.
//!
//! The fast path works in the group ring Z[C_p]: every point carries a
//! length-p coefficient vector, and one p-point DFT per GF(p) coordinate is
//! applied, where multiplying by zeta^r is a cyclic rotation. This yields
//! the sums for the plain dot product on digit coordinates; the trace form
//! of the space is then reached by re-indexing through
//! [`Space::dual_coords`].

use std::fmt;

use num_bigint::BigInt;
use serde::{Serialize, Serializer};

use super::{PAryFunction, SpectralError};
use crate::cyclo::CyclotomicInt;
use crate::limits::Limits;
use crate::space::{Point, Space};

/// The exact Walsh spectrum of a p-ary function, indexed by point rank.
#[derive(Clone, PartialEq, Eq)]
pub struct WalshSpectrum {
    p: u32,
    dim: u32,
    /// Reduced coefficients, `p - 1` per point. Each group-ring coefficient
    /// is bounded by p^n, so i64 never overflows under the 2^32 size guard.
    data: Vec<i64>,
}

impl fmt::Debug for WalshSpectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WalshSpectrum(p = {}, n = {})", self.p, self.dim)
    }
}

impl WalshSpectrum {
    pub fn p(&self) -> u32 {
        self.p
    }

    /// Dimension n of the domain.
    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.data.len() / (self.p as usize - 1)
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    /// Reduced coefficients of W(a).
    pub fn coeffs(&self, a: Point) -> &[i64] {
        let w = self.p as usize - 1;
        &self.data[a.index() * w..(a.index() + 1) * w]
    }

    pub fn value(&self, a: Point) -> CyclotomicInt {
        let coeffs = self.coeffs(a).iter().map(|&c| BigInt::from(c)).collect();
        CyclotomicInt::from_coeffs(self.p, coeffs).expect("length p - 1")
    }

    pub fn values(&self) -> impl Iterator<Item = CyclotomicInt> + '_ {
        (0..self.len() as u64).map(|a| self.value(Point(a)))
    }

    /// Sum of |W(a)|^2 over all a; equals p^{2n} for every function.
    /// The sum is formed in Z[zeta_p]; `None` means it is not rational,
    /// which cannot happen for a genuine spectrum.
    pub fn parseval_sum(&self) -> Option<BigInt> {
        let mut acc = CyclotomicInt::zero(self.p);
        for v in self.values() {
            acc = acc + &v * &v.conj();
        }
        acc.as_integer().cloned()
    }
}

impl Serialize for WalshSpectrum {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.values())
    }
}

fn guard(space: &Space, limits: &Limits) -> Result<(), SpectralError> {
    if space.order() > limits.transform_max {
        return Err(SpectralError::SizeGuard { order: space.order(), cap: limits.transform_max });
    }
    Ok(())
}

/// In-place transform of group-ring vectors: after the call, entry b holds
/// sum_x v_x * zeta^{sign * (b . x)} with b . x the digit dot product.
fn dft_digits(buf: &mut [i64], p: usize, dim: u32, sign: i64) {
    let order = buf.len() / p;
    let mut stride = 1usize;
    let mut scratch = vec![0i64; p * p];
    for _ in 0..dim {
        let block = stride * p;
        for base in (0..order).step_by(block) {
            for off in 0..stride {
                scratch.iter_mut().for_each(|c| *c = 0);
                for b in 0..p {
                    let out = &mut scratch[b * p..(b + 1) * p];
                    for t in 0..p {
                        let src = &buf[(base + off + t * stride) * p..][..p];
                        let r = (sign * (b * t) as i64).rem_euclid(p as i64) as usize;
                        for (k, &c) in src.iter().enumerate() {
                            if c != 0 {
                                out[(k + r) % p] += c;
                            }
                        }
                    }
                }
                for b in 0..p {
                    let dst = (base + off + b * stride) * p;
                    buf[dst..dst + p].copy_from_slice(&scratch[b * p..(b + 1) * p]);
                }
            }
        }
        stride = block;
    }
}

/// Re-index the digit transform by the trace form and reduce mod 1 + ... + zeta^{p-1}.
fn finish(space: &Space, buf: &[i64]) -> WalshSpectrum {
    let p = space.p() as usize;
    let mut data = Vec::with_capacity(space.order() as usize * (p - 1));
    let pure = space.is_pure();
    for a in space.points() {
        let b = if pure { a } else { space.from_coords(&space.dual_coords(a)) };
        let ring = &buf[b.index() * p..(b.index() + 1) * p];
        let top = ring[p - 1];
        data.extend(ring[..p - 1].iter().map(|&c| c - top));
    }
    WalshSpectrum { p: space.p(), dim: space.dim(), data }
}

/// The full spectrum of `f` by the radix-p fast transform.
pub fn walsh_full(f: &PAryFunction, limits: &Limits) -> Result<WalshSpectrum, SpectralError> {
    let space = f.domain();
    guard(space, limits)?;
    let p = space.p() as usize;
    let mut buf = vec![0i64; space.order() as usize * p];
    for (x, &v) in f.table().iter().enumerate() {
        buf[x * p + v as usize] = 1;
    }
    dft_digits(&mut buf, p, space.dim(), -1);
    Ok(finish(space, &buf))
}

/// chi_u(w) = sum_x w(x) zeta^{<u,x>} for every u, for integer weights `w`
/// (for an indicator function this is the character sum of the set).
pub fn character_sums(space: &Space, weights: &[i64], limits: &Limits) -> Result<WalshSpectrum, SpectralError> {
    guard(space, limits)?;
    if weights.len() as u64 != space.order() {
        return Err(SpectralError::TableLength { expected: space.order(), got: weights.len() });
    }
    let p = space.p() as usize;
    let mut buf = vec![0i64; space.order() as usize * p];
    for (x, &w) in weights.iter().enumerate() {
        buf[x * p] = w;
    }
    dft_digits(&mut buf, p, space.dim(), 1);
    Ok(finish(space, &buf))
}

/// The spectrum by direct summation over all (a, x) pairs; quadratic cost,
/// kept as an independent check on [`walsh_full`].
pub fn walsh_naive(f: &PAryFunction, limits: &Limits) -> Result<WalshSpectrum, SpectralError> {
    let space = f.domain();
    guard(space, limits)?;
    let p = space.p();
    let mut data = Vec::with_capacity(space.order() as usize * (p as usize - 1));
    let mut counts = vec![0i64; p as usize];
    for a in space.points() {
        counts.iter_mut().for_each(|c| *c = 0);
        for x in space.points() {
            let e = (f.eval(x) + p - space.inner_product(a, x)) % p;
            counts[e as usize] += 1;
        }
        let top = counts[p as usize - 1];
        data.extend(counts[..p as usize - 1].iter().map(|&c| c - top));
    }
    Ok(WalshSpectrum { p, dim: space.dim(), data })
}
