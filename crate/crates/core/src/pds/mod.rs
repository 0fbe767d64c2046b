//! Partial difference sets from preimages of vectorial dual-bent functions:
//! preimage extraction, exact character sums, closed-form parameters,
//! Gaussian periods and two independent verifiers.

use std::collections::BTreeSet;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::cyclo::CyclotomicInt;
use crate::field::{FieldElem, FieldError};
use crate::json;
use crate::limits::Limits;
use crate::space::{Point, Space, SpaceError};
use crate::spectral::{character_sums, walsh_full, DualBentCertificate, SpectralError, VectorialFunction};

mod gauss;
mod params;
mod predict;
mod sigma;
mod verify;

pub use gauss::{gaussian_period, gaussian_period_semiprimitive, gaussian_period_semiprimitive_with, semiprimitive_check, Semiprimitive};
pub use params::{params_coset_union, params_subset};
pub use predict::{check_prediction, predictions, Prediction, PredictionOutcome, Theorem};
pub use sigma::{coset_stable_shortcut, sigma_predicates, SigmaFlags};
pub use verify::{verify_pds, verify_pds_bruteforce, verify_pds_characters, Method, Verification};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PdsError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error("closed form and direct computation disagree: {0}")]
    FormulaMismatch(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),
    #[error("sigma is not a bijection of the nonzero elements")]
    NotBijection,
    #[error("{divisor} does not divide {modulus}")]
    NonDivisor { divisor: u64, modulus: u64 },
    #[error("({p}, {s}, {t}) is not semiprimitive")]
    NotSemiprimitive { p: u32, s: u32, t: u64 },
    #[error("{0} is not an integer")]
    NonIntegral(String),
    #[error("set of size {size} exceeds the difference-count cap {cap}")]
    SizeGuard { size: u64, cap: u64 },
    #[error("the set is not closed under negation")]
    NotSymmetric,
    #[error("the set contains the zero vector")]
    ContainsZero,
    #[error("beta^2 + 4 gamma = {0} is not a perfect square")]
    NonSquareDelta(BigInt),
    #[error("difference counts are not constant: {0}")]
    NotPds(String),
    #[error("m0 must be 0 or 1, got {0}")]
    BadM0(u32),
    #[error("the dimension {0} must be even")]
    OddDimension(u32),
    #[error("the set does not live in the given group")]
    GroupMismatch,
}

type Result<T> = std::result::Result<T, PdsError>;

/// Which codomain values a preimage set was taken over.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Descriptor {
    pub values: BTreeSet<FieldElem>,
    pub exclude_zero_point: bool,
}

/// A subset of the group V_n, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PreimageSet {
    pub group: Space,
    pub descriptor: Option<Descriptor>,
    pub members: Vec<Point>,
}

impl PreimageSet {
    /// A set given by its members; duplicates are removed.
    pub fn from_points(group: Space, points: impl IntoIterator<Item = Point>) -> Result<Self> {
        let set: BTreeSet<Point> = points.into_iter().collect();
        for &x in &set {
            group.check(x)?;
        }
        Ok(PreimageSet { group, descriptor: None, members: set.into_iter().collect() })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: Point) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    /// Membership as a table over all group points.
    pub fn indicator(&self) -> Vec<bool> {
        let mut out = vec![false; self.group.order() as usize];
        for x in &self.members {
            out[x.index()] = true;
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        self.members.iter().all(|&x| self.contains(self.group.negate(x)))
    }
}

/// Parameters (v, k, lambda, mu) of a partial difference set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PdsParams {
    #[serde(with = "json::bigint")]
    pub v: BigInt,
    #[serde(with = "json::bigint")]
    pub k: BigInt,
    #[serde(with = "json::bigint")]
    pub lambda: BigInt,
    #[serde(with = "json::bigint")]
    pub mu: BigInt,
}

impl PdsParams {
    pub fn new(v: impl Into<BigInt>, k: impl Into<BigInt>, lambda: impl Into<BigInt>, mu: impl Into<BigInt>) -> Self {
        PdsParams { v: v.into(), k: k.into(), lambda: lambda.into(), mu: mu.into() }
    }

    /// lambda - mu.
    pub fn beta(&self) -> BigInt {
        &self.lambda - &self.mu
    }

    /// k - mu.
    pub fn gamma(&self) -> BigInt {
        &self.k - &self.mu
    }

    /// beta^2 + 4 gamma.
    pub fn delta(&self) -> BigInt {
        let b = self.beta();
        &b * &b + self.gamma() * 4
    }

    /// The empty set or the whole punctured group, where one of lambda, mu is
    /// vacuous and fixed to 0 by convention.
    pub fn is_degenerate(&self) -> bool {
        self.k.is_zero() || self.k == &self.v - 1
    }

    /// Applies the conventions for degenerate sets: lambda = mu = 0 for the
    /// empty set and mu = 0 for the whole punctured group.
    pub(crate) fn normalized(mut self) -> Self {
        if self.k.is_zero() {
            self.lambda = BigInt::zero();
            self.mu = BigInt::zero();
        } else if self.k == &self.v - 1 {
            self.mu = BigInt::zero();
        }
        self
    }

    pub fn as_tuple(&self) -> (BigInt, BigInt, BigInt, BigInt) {
        (self.v.clone(), self.k.clone(), self.lambda.clone(), self.mu.clone())
    }
}

pub(crate) fn to_integer(r: BigRational, what: &str) -> Result<BigInt> {
    if r.is_integer() {
        Ok(r.to_integer())
    } else {
        Err(PdsError::NonIntegral(format!("{what} = {r}")))
    }
}

pub(crate) fn rational_pow(p: u32, e: i64) -> BigRational {
    let base = BigRational::from_integer(BigInt::from(p));
    if e >= 0 {
        num_traits::pow(base, e as usize)
    } else {
        BigRational::one() / num_traits::pow(base, (-e) as usize)
    }
}

/// {x in V_n : F(x) in A}, with the zero vector removed on request.
pub fn preimage(f: &VectorialFunction, values: &BTreeSet<FieldElem>, exclude_zero_point: bool) -> Result<PreimageSet> {
    for &v in values {
        f.codomain().check(v)?;
    }
    let members = f
        .domain()
        .points()
        .filter(|&x| !(exclude_zero_point && x.is_zero()) && values.contains(&f.eval(x)))
        .collect();
    Ok(PreimageSet {
        group: f.domain().clone(),
        descriptor: Some(Descriptor { values: values.clone(), exclude_zero_point }),
        members,
    })
}

fn ring_sum(p: u32, counts: &[i64]) -> CyclotomicInt {
    CyclotomicInt::from_group_ring_i64(p, counts)
}

/// chi_u(D_i) for D_i = F^{-1}(i), by direct summation and by
/// p^{-s} sum_c W_{F_c}(-u) zeta^{-Tr(c i)}; the two must agree.
pub fn char_sum_preimage(f: &VectorialFunction, u: Point, i: FieldElem) -> Result<CyclotomicInt> {
    let space = f.domain();
    space.check(u)?;
    let k = f.codomain();
    k.check(i)?;
    let p = space.p();
    let pu = p as usize;
    let mut direct = vec![0i64; pu];
    for x in space.points() {
        if f.eval(x) == i {
            direct[space.inner_product(u, x) as usize] += 1;
        }
    }
    let direct = ring_sum(p, &direct);

    let mut total = vec![0i64; pu];
    let neg_u = space.negate(u);
    for c in k.nonzero_elements() {
        let comp = f.component(c)?;
        let shift = f.codomain().abs_trace(k.mul(c, i));
        for x in space.points() {
            let e = comp.eval(x) + 2 * p - space.inner_product(neg_u, x) - shift;
            total[(e % p) as usize] += 1;
        }
    }
    // The c = 0 term contributes sum_x zeta^{<u,x>}.
    for x in space.points() {
        total[space.inner_product(u, x) as usize] += 1;
    }
    let formula = scaled_down(ring_sum(p, &total), p, k.m())?;
    if formula != direct {
        return Err(PdsError::FormulaMismatch(format!("chi_{}(D_{i}): direct {direct}, formula {formula}", u.0)));
    }
    Ok(direct)
}

fn scaled_down(x: CyclotomicInt, p: u32, s: u32) -> Result<CyclotomicInt> {
    let q = BigInt::from(p).pow(s);
    x.div_exact(&q).ok_or_else(|| PdsError::FormulaMismatch(format!("{x} is not divisible by {q}")))
}

/// chi_u(D_i) for every u, by one transform of the indicator of D_i and by
/// the component spectra; the two must agree. Indexed by point rank.
pub fn char_sums_preimage_all(f: &VectorialFunction, i: FieldElem, limits: &Limits) -> Result<Vec<CyclotomicInt>> {
    let space = f.domain();
    let k = f.codomain();
    k.check(i)?;
    let p = space.p();
    let weights: Vec<i64> = f.table().iter().map(|&v| i64::from(v == i.0)).collect();
    let direct = character_sums(space, &weights, limits)?;
    let spectra = k
        .nonzero_elements()
        .map(|c| Ok((k.abs_trace(k.mul(c, i)), walsh_full(&f.component(c)?, limits)?)))
        .collect::<Result<Vec<_>>>()?;
    let order = BigInt::from(space.order());
    let mut out = Vec::with_capacity(space.order() as usize);
    for u in space.points() {
        let neg_u = space.negate(u);
        let mut acc = if u.is_zero() { CyclotomicInt::from_int(p, order.clone()) } else { CyclotomicInt::zero(p) };
        for (shift, w) in &spectra {
            acc = acc + w.value(neg_u).mul_zeta(-i64::from(*shift));
        }
        let formula = scaled_down(acc, p, k.m())?;
        let value = direct.value(u);
        if formula != value {
            return Err(PdsError::FormulaMismatch(format!("chi_{}(D_{i}): direct {value}, formula {formula}", u.0)));
        }
        out.push(value);
    }
    Ok(out)
}

/// Checks the premises shared by the parameter theorems: even dimension,
/// F(0) = 0, F(-x) = F(x) and a common sign of all components. Returns that
/// sign.
pub fn check_hypotheses(f: &VectorialFunction, cert: &DualBentCertificate) -> Result<i8> {
    let mut failed = Vec::new();
    if !f.domain().dim().is_multiple_of(2) {
        failed.push("dimension is odd");
    }
    if !f.vanishes_at_zero() {
        failed.push("F(0) != 0");
    }
    if !f.is_even() {
        failed.push("F(-x) != F(x)");
    }
    let eps = cert.constant_epsilon();
    if eps.is_none() {
        failed.push("component signs are not all equal");
    }
    match (failed.is_empty(), eps) {
        (true, Some(e)) => Ok(e),
        _ => Err(PdsError::HypothesisViolation(failed.join(", "))),
    }
}

/// |D_i| for every i in GF(p^s), D_i = F^{-1}(i) including the zero vector:
/// p^{n-s} + eps (p^s - 1) p^{n/2-s} for i = 0 and p^{n-s} - eps p^{n/2-s}
/// otherwise. Each value is checked against a direct count.
pub fn preimage_sizes(f: &VectorialFunction, cert: &DualBentCertificate) -> Result<BTreeMap<FieldElem, BigInt>> {
    let eps = check_hypotheses(f, cert)?;
    let space = f.domain();
    let (p, n, s) = (space.p(), space.dim() as i64, f.codomain().m() as i64);
    let ps = BigRational::from_integer(BigInt::from(p).pow(s as u32));
    let base = rational_pow(p, n - s);
    let half = rational_pow(p, n / 2 - s) * BigRational::from_integer(BigInt::from(eps));
    let zero_size = to_integer(&base + &half * (ps - BigRational::one()), "|D_0|")?;
    let other_size = to_integer(&base - &half, "|D_i|")?;
    let mut counts = vec![0u64; f.codomain().order() as usize];
    for &v in f.table() {
        counts[v as usize] += 1;
    }
    let mut out = BTreeMap::new();
    for i in f.codomain().elements() {
        let predicted = if i.is_zero() { zero_size.clone() } else { other_size.clone() };
        let counted = BigInt::from(counts[i.0 as usize]);
        if predicted != counted {
            return Err(PdsError::FormulaMismatch(format!("|D_{i}|: formula {predicted}, count {counted}")));
        }
        out.insert(i, predicted);
    }
    Ok(out)
}

pub(crate) fn is_perfect_square(x: &BigInt) -> Option<BigInt> {
    if x.is_negative() {
        return None;
    }
    let r = x.sqrt();
    (&r * &r == *x).then_some(r)
}
