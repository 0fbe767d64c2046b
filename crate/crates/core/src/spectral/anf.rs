//! Algebraic normal form of functions on GF(p)^n.

use std::collections::BTreeMap;

use super::{PAryFunction, SpectralError};
use crate::limits::Limits;
use crate::space::Point;

/// Nonzero coefficients keyed by exponent tuples (one exponent in `0..p`
/// per variable).
pub type Anf = BTreeMap<Vec<u32>, u32>;

fn pow_mod(a: u64, e: u64, p: u64) -> u64 {
    let (mut base, mut e, mut acc) = (a % p, e, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// The unique polynomial of per-variable degree below p agreeing with `f`,
/// by univariate interpolation along each coordinate in turn.
pub fn anf(f: &PAryFunction, limits: &Limits) -> Result<Anf, SpectralError> {
    let space = f.domain();
    if !space.is_pure() {
        return Err(SpectralError::NotPure);
    }
    if space.order() > limits.transform_max {
        return Err(SpectralError::SizeGuard { order: space.order(), cap: limits.transform_max });
    }
    let p = space.p() as u64;
    let pu = p as usize;
    // Coefficient of x^k in the interpolant of the indicator of a:
    // k = 0 gives [a = 0]; k >= 1 gives -a^{p-1-k} (with 0^0 = 1).
    let mut interp = vec![0u64; pu * pu];
    for a in 0..p {
        interp[a as usize] = u64::from(a == 0);
        for k in 1..p {
            let e = p - 1 - k;
            let v = if a == 0 { u64::from(e == 0) } else { pow_mod(a, e, p) };
            interp[(k * p + a) as usize] = (p - v) % p;
        }
    }
    let mut coeffs: Vec<u64> = f.table().iter().map(|&v| v as u64).collect();
    let mut stride = 1usize;
    let mut column = vec![0u64; pu];
    for _ in 0..space.dim() {
        let block = stride * pu;
        for base in (0..coeffs.len()).step_by(block) {
            for off in 0..stride {
                for k in 0..pu {
                    let mut acc = 0u64;
                    for a in 0..pu {
                        acc += interp[k * pu + a] * coeffs[base + off + a * stride];
                    }
                    column[k] = acc % p;
                }
                for k in 0..pu {
                    coeffs[base + off + k * stride] = column[k];
                }
            }
        }
        stride = block;
    }
    Ok(coeffs
        .into_iter()
        .enumerate()
        .filter(|&(_, c)| c != 0)
        .map(|(idx, c)| (space.coords(Point(idx as u64)), c as u32))
        .collect())
}

/// Evaluates an ANF at the GF(p) coordinates `x`.
pub fn anf_eval(p: u32, poly: &Anf, x: &[u32]) -> u32 {
    let p = p as u64;
    let mut acc = 0u64;
    for (exps, &c) in poly {
        let mut term = c as u64;
        for (&xi, &e) in x.iter().zip(exps) {
            term = term * pow_mod(xi as u64, e as u64, p) % p;
            if term == 0 {
                break;
            }
        }
        acc = (acc + term) % p;
    }
    acc as u32
}
