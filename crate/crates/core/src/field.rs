//! Finite fields GF(p^m) for odd p, in polynomial basis.
//!
//! An element is addressed by its *rank*: the integer whose base-p digits are
//! the coefficients of its polynomial representative, constant term first.
//! Rank 0 is zero and rank 1 is one. Fields small enough to tabulate carry
//! discrete-log tables built from the least-rank primitive element, so
//! multiplication, inversion and powering are table lookups.
//!
//! Subfields are handled through [`Subfield`], which pairs the canonical
//! GF(p^k) with a fixed embedding into the ambient field and provides the
//! relative trace Tr_k^m.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith;

/// Fields up to this order get log/antilog and trace tables.
const TABLE_LIMIT: u64 = 1 << 21;
/// Hard guard on the field order.
const ORDER_LIMIT: u64 = 1 << 32;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("characteristic {0} is not an odd prime")]
    NotOddPrime(u32),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("GF({p}^{m}) exceeds the 2^32 size guard")]
    TooLarge { p: u32, m: u32 },
    #[error("modulus must have {expected} coefficients, got {got}")]
    ModulusLength { expected: usize, got: usize },
    #[error("modulus coefficient {0} is not reduced mod p")]
    ModulusCoefficient(u32),
    #[error("modulus is not monic")]
    NotMonic,
    #[error("modulus is reducible over GF({0})")]
    Reducible(u32),
    #[error("inverse of zero requested")]
    InverseOfZero,
    #[error("{k} does not divide the extension degree {m}")]
    NotADivisor { k: u32, m: u32 },
    #[error("argument must be nonzero")]
    ZeroArgument,
    #[error("coset representative must be nonzero")]
    ZeroBeta,
    #[error("exponent must be positive")]
    ZeroExponent,
    #[error("rank {rank} is out of range for a field of order {order}")]
    OutOfRange { rank: u64, order: u64 },
    #[error("element is not in the image of the subfield embedding")]
    NotInSubfield,
}

/// An element of some GF(p^m), by rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldElem(pub u32);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    pub fn rank(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct LogTables {
    log: Vec<u32>,
    /// `exp[i] = w^i` for `i < 2(q-1)`, so sums of two logs need no reduction.
    exp: Vec<u32>,
}

struct SubfieldData {
    k: u32,
    small: FieldDesc,
    image: Vec<u32>,
    preimage: HashMap<u32, u32>,
    trace: Option<Vec<u32>>,
}

struct Inner {
    p: u32,
    m: u32,
    order: u64,
    modulus: Vec<u32>,
    primitive: u32,
    tables: Option<LogTables>,
    subfields: Mutex<HashMap<u32, Arc<SubfieldData>>>,
}

/// Description of GF(p^m): characteristic, degree and a monic irreducible
/// modulus. Cheap to clone; immutable after construction.
#[derive(Clone)]
pub struct FieldDesc {
    inner: Arc<Inner>,
}

impl PartialEq for FieldDesc {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p
                && self.inner.m == other.inner.m
                && self.inner.modulus == other.inner.modulus)
    }
}

impl Eq for FieldDesc {}

impl fmt::Debug for FieldDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldDesc")
            .field("p", &self.inner.p)
            .field("m", &self.inner.m)
            .field("modulus", &self.inner.modulus)
            .finish()
    }
}

impl fmt::Display for FieldDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.inner.p, self.inner.m)
    }
}

// ---------------------------------------------------------------------------
// Polynomial helpers on coefficient vectors (constant term first).

fn rank_to_digits(rank: u64, p: u32, len: usize) -> Vec<u32> {
    let mut out = vec![0u32; len];
    let mut r = rank;
    for d in out.iter_mut() {
        *d = (r % p as u64) as u32;
        r /= p as u64;
    }
    out
}

fn digits_to_rank(digits: &[u32], p: u32) -> u64 {
    digits.iter().rev().fold(0u64, |acc, &d| acc * p as u64 + d as u64)
}

/// Remainder of `a` modulo the monic polynomial `modulus`.
fn poly_rem(a: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let m = modulus.len() - 1;
    let mut work: Vec<u64> = a.iter().map(|&c| c as u64).collect();
    let p64 = p as u64;
    if work.len() > m {
        for deg in (m..work.len()).rev() {
            let c = work[deg] % p64;
            if c == 0 {
                continue;
            }
            for (i, &mc) in modulus.iter().enumerate() {
                let idx = deg - m + i;
                work[idx] = (work[idx] + (p64 - c) * mc as u64) % p64;
            }
        }
    }
    work.truncate(m.max(1));
    work.resize(m, 0);
    work.into_iter().map(|c| (c % p64) as u32).collect()
}

fn poly_mulmod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let mut prod = vec![0u64; a.len() + b.len()];
    let p64 = p as u64;
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p64;
        }
    }
    let prod: Vec<u32> = prod.into_iter().map(|c| c as u32).collect();
    poly_rem(&prod, modulus, p)
}

/// True if the monic `f` of degree m has no monic factor of degree 1..=m/2.
fn is_irreducible(f: &[u32], p: u32) -> bool {
    let m = f.len() - 1;
    if m == 1 {
        return true;
    }
    for deg in 1..=m / 2 {
        let count = (p as u64).pow(deg as u32);
        for low in 0..count {
            let mut g = rank_to_digits(low, p, deg);
            g.push(1);
            if poly_rem(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl FieldDesc {
    /// GF(p^m) with the lexicographically smallest monic irreducible modulus
    /// (coefficients compared from x^{m-1} down to the constant term).
    pub fn new(p: u32, m: u32) -> Result<Self, FieldError> {
        Self::check_shape(p, m)?;
        let count = (p as u64).pow(m);
        for low in 0..count {
            let mut f = rank_to_digits(low, p, m as usize);
            f.push(1);
            if is_irreducible(&f, p) {
                return Self::build(p, m, f);
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    /// GF(p^m) with a caller-supplied modulus of `m + 1` coefficients,
    /// constant term first.
    pub fn with_modulus(p: u32, modulus: Vec<u32>) -> Result<Self, FieldError> {
        if modulus.len() < 2 {
            return Err(FieldError::ZeroDegree);
        }
        let m = (modulus.len() - 1) as u32;
        Self::check_shape(p, m)?;
        if let Some(&bad) = modulus.iter().find(|&&c| c >= p) {
            return Err(FieldError::ModulusCoefficient(bad));
        }
        if *modulus.last().unwrap() != 1 {
            return Err(FieldError::NotMonic);
        }
        if !is_irreducible(&modulus, p) {
            return Err(FieldError::Reducible(p));
        }
        Self::build(p, m, modulus)
    }

    /// The prime field GF(p).
    pub fn prime(p: u32) -> Result<Self, FieldError> {
        Self::new(p, 1)
    }

    fn check_shape(p: u32, m: u32) -> Result<(), FieldError> {
        if p == 2 || !arith::is_prime(p as u64) {
            return Err(FieldError::NotOddPrime(p));
        }
        if m == 0 {
            return Err(FieldError::ZeroDegree);
        }
        match arith::checked_pow(p as u64, m) {
            Some(q) if q < ORDER_LIMIT => Ok(()),
            _ => Err(FieldError::TooLarge { p, m }),
        }
    }

    fn build(p: u32, m: u32, modulus: Vec<u32>) -> Result<Self, FieldError> {
        let order = (p as u64).pow(m);
        let mut inner = Inner {
            p,
            m,
            order,
            modulus,
            primitive: 0,
            tables: None,
            subfields: Mutex::new(HashMap::new()),
        };
        let probe = FieldDesc { inner: Arc::new(inner) };
        let primitive = probe.search_primitive();
        inner = Arc::try_unwrap(probe.inner).ok().expect("probe is uniquely owned");
        inner.primitive = primitive;
        if order <= TABLE_LIMIT {
            let n = (order - 1) as usize;
            let mut log = vec![0u32; order as usize];
            let mut exp = vec![0u32; 2 * n];
            let tmp = FieldDesc { inner: Arc::new(inner) };
            let mut acc = 1u32;
            for i in 0..n {
                exp[i] = acc;
                exp[i + n] = acc;
                log[acc as usize] = i as u32;
                acc = tmp.slow_mul(acc, primitive);
            }
            inner = Arc::try_unwrap(tmp.inner).ok().expect("uniquely owned");
            inner.tables = Some(LogTables { log, exp });
        }
        Ok(FieldDesc { inner: Arc::new(inner) })
    }

    fn search_primitive(&self) -> u32 {
        let n = self.inner.order - 1;
        let factors = arith::prime_factors(n);
        (1..self.inner.order as u32)
            .find(|&g| factors.iter().all(|&r| self.slow_pow(g, n / r) != 1))
            .expect("the multiplicative group is cyclic")
    }

    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        let p = self.inner.p;
        let m = self.inner.m as usize;
        let da = rank_to_digits(a as u64, p, m);
        let db = rank_to_digits(b as u64, p, m);
        digits_to_rank(&poly_mulmod(&da, &db, &self.inner.modulus, p), p) as u32
    }

    fn slow_pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.slow_mul(acc, base);
            }
            base = self.slow_mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn p(&self) -> u32 {
        self.inner.p
    }

    pub fn m(&self) -> u32 {
        self.inner.m
    }

    /// Number of elements, p^m.
    pub fn order(&self) -> u64 {
        self.inner.order
    }

    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        (0..self.inner.order as u32).map(FieldElem)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElem> {
        (1..self.inner.order as u32).map(FieldElem)
    }

    pub fn check(&self, a: FieldElem) -> Result<FieldElem, FieldError> {
        if (a.0 as u64) < self.inner.order {
            Ok(a)
        } else {
            Err(FieldError::OutOfRange { rank: a.0 as u64, order: self.inner.order })
        }
    }

    /// The image of the integer `c` under Z -> GF(p).
    pub fn from_int(&self, c: i64) -> FieldElem {
        FieldElem(c.rem_euclid(self.inner.p as i64) as u32)
    }

    /// Polynomial-basis coordinates of `a`, constant term first.
    pub fn coords(&self, a: FieldElem) -> Vec<u32> {
        rank_to_digits(a.0 as u64, self.inner.p, self.inner.m as usize)
    }

    pub fn from_coords(&self, coords: &[u32]) -> FieldElem {
        FieldElem(digits_to_rank(coords, self.inner.p) as u32)
    }

    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        let p = self.inner.p as u64;
        if p == self.inner.order {
            return FieldElem(((a.0 as u64 + b.0 as u64) % p) as u32);
        }
        let (mut x, mut y) = (a.0 as u64, b.0 as u64);
        let (mut out, mut place) = (0u64, 1u64);
        while x > 0 || y > 0 {
            out += ((x % p + y % p) % p) * place;
            place *= p;
            x /= p;
            y /= p;
        }
        FieldElem(out as u32)
    }

    pub fn neg(&self, a: FieldElem) -> FieldElem {
        let p = self.inner.p as u64;
        let (mut x, mut out, mut place) = (a.0 as u64, 0u64, 1u64);
        while x > 0 {
            out += ((p - x % p) % p) * place;
            place *= p;
            x /= p;
        }
        FieldElem(out as u32)
    }

    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if a.0 == 0 || b.0 == 0 {
            return FieldElem::ZERO;
        }
        match &self.inner.tables {
            Some(t) => FieldElem(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize]),
            None => FieldElem(self.slow_mul(a.0, b.0)),
        }
    }

    /// `a^e` for a nonnegative exponent; `0^0 = 1`.
    pub fn pow(&self, a: FieldElem, e: u64) -> FieldElem {
        if e == 0 {
            return FieldElem::ONE;
        }
        if a.0 == 0 {
            return FieldElem::ZERO;
        }
        match &self.inner.tables {
            Some(t) => {
                let n = self.inner.order - 1;
                let idx = (t.log[a.0 as usize] as u128 * e as u128 % n as u128) as usize;
                FieldElem(t.exp[idx])
            }
            None => FieldElem(self.slow_pow(a.0, e)),
        }
    }

    /// `a^e` for a signed exponent; `a` must be nonzero when `e < 0`.
    pub fn pow_signed(&self, a: FieldElem, e: i64) -> Result<FieldElem, FieldError> {
        if e >= 0 {
            return Ok(self.pow(a, e as u64));
        }
        let inv = self.inv(a)?;
        Ok(self.pow(inv, e.unsigned_abs()))
    }

    pub fn inv(&self, a: FieldElem) -> Result<FieldElem, FieldError> {
        if a.0 == 0 {
            return Err(FieldError::InverseOfZero);
        }
        Ok(match &self.inner.tables {
            Some(t) => {
                let n = (self.inner.order - 1) as u32;
                FieldElem(t.exp[((n - t.log[a.0 as usize]) % n) as usize])
            }
            None => FieldElem(self.slow_pow(a.0, self.inner.order - 2)),
        })
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Discrete logarithm to the base [`primitive_element`](Self::primitive_element).
    pub fn log(&self, a: FieldElem) -> Result<u64, FieldError> {
        if a.0 == 0 {
            return Err(FieldError::ZeroArgument);
        }
        if let Some(t) = &self.inner.tables {
            return Ok(t.log[a.0 as usize] as u64);
        }
        let w = self.inner.primitive;
        let mut acc = 1u32;
        for i in 0..self.inner.order - 1 {
            if acc == a.0 {
                return Ok(i);
            }
            acc = self.slow_mul(acc, w);
        }
        unreachable!("primitive element generates the multiplicative group")
    }

    /// The least-rank element of multiplicative order p^m - 1.
    pub fn primitive_element(&self) -> FieldElem {
        FieldElem(self.inner.primitive)
    }

    pub fn multiplicative_order(&self, a: FieldElem) -> Result<u64, FieldError> {
        let n = self.inner.order - 1;
        Ok(n / arith::gcd(self.log(a)?, n))
    }

    /// Quadratic character: +1 on nonzero squares, -1 on non-squares.
    pub fn quadratic_character(&self, a: FieldElem) -> Result<i8, FieldError> {
        Ok(if self.log(a)? % 2 == 0 { 1 } else { -1 })
    }

    pub fn is_square(&self, a: FieldElem) -> bool {
        a.0 != 0 && self.log(a).map(|l| l % 2 == 0).unwrap_or(false)
    }

    /// The coset `beta * H_exponent` where `H_l = { x^l : x != 0 }`.
    pub fn subgroup_coset(&self, exponent: u64, beta: FieldElem) -> Result<CosetSet, FieldError> {
        if exponent == 0 {
            return Err(FieldError::ZeroExponent);
        }
        if beta.0 == 0 {
            return Err(FieldError::ZeroBeta);
        }
        self.check(beta)?;
        let members = self
            .nonzero_elements()
            .map(|x| self.mul(beta, self.pow(x, exponent)))
            .collect();
        Ok(CosetSet { field: self.clone(), exponent, beta, members })
    }

    /// Index `i` in `0..gcd(l, p^m - 1)` of the coset `w^i H_l` containing `a`,
    /// with `w` the primitive element.
    pub fn coset_index(&self, exponent: u64, a: FieldElem) -> Result<u64, FieldError> {
        let g = arith::gcd(exponent, self.inner.order - 1);
        Ok(self.log(a)? % g)
    }

    /// The canonical GF(p^k) together with its embedding into this field.
    pub fn subfield(&self, k: u32) -> Result<Subfield, FieldError> {
        if k == 0 || !self.inner.m.is_multiple_of(k) {
            return Err(FieldError::NotADivisor { k, m: self.inner.m });
        }
        let mut cache = self.inner.subfields.lock().expect("subfield cache poisoned");
        let data = match cache.get(&k) {
            Some(d) => d.clone(),
            None => {
                let d = Arc::new(self.build_subfield(k)?);
                cache.insert(k, d.clone());
                d
            }
        };
        Ok(Subfield { big: self.clone(), data })
    }

    fn build_subfield(&self, k: u32) -> Result<SubfieldData, FieldError> {
        let small = FieldDesc::new(self.inner.p, k)?;
        // Image of the small field's generator x: the least-rank root of its
        // modulus. Every root lies in the fixed field of x -> x^{p^k}.
        let root = self
            .elements()
            .find(|&z| {
                let mut acc = FieldElem::ZERO;
                for &c in small.modulus().iter().rev() {
                    acc = self.add(self.mul(acc, z), FieldElem(c));
                }
                acc.is_zero()
            })
            .expect("an irreducible of degree k splits in GF(p^m) when k | m");
        let mut powers = Vec::with_capacity(k as usize);
        let mut acc = FieldElem::ONE;
        for _ in 0..k {
            powers.push(acc);
            acc = self.mul(acc, root);
        }
        let mut image = Vec::with_capacity(small.order() as usize);
        let mut preimage = HashMap::with_capacity(small.order() as usize);
        for s in small.elements() {
            let mut v = FieldElem::ZERO;
            for (c, &pw) in small.coords(s).into_iter().zip(&powers) {
                v = self.add(v, self.mul(FieldElem(c), pw));
            }
            image.push(v.0);
            preimage.insert(v.0, s.0);
        }
        let mut data = SubfieldData { k, small, image, preimage, trace: None };
        if self.inner.order <= TABLE_LIMIT {
            let table = self
                .elements()
                .map(|a| {
                    let t = self.trace_sum(k, a);
                    *data.preimage.get(&t.0).expect("trace lands in the subfield")
                })
                .collect();
            data.trace = Some(table);
        }
        Ok(data)
    }

    /// Sum of the conjugates a^{p^{k i}}, i < m/k, as an element of this field.
    fn trace_sum(&self, k: u32, a: FieldElem) -> FieldElem {
        let step = (self.inner.p as u64).pow(k);
        let mut frob = a;
        let mut acc = FieldElem::ZERO;
        for _ in 0..self.inner.m / k {
            acc = self.add(acc, frob);
            frob = self.pow(frob, step);
        }
        acc
    }

    /// Relative trace Tr_k^m(a), as an element of the canonical GF(p^k).
    pub fn trace(&self, k: u32, a: FieldElem) -> Result<FieldElem, FieldError> {
        Ok(self.subfield(k)?.trace(a))
    }

    /// Absolute trace Tr_1^m(a) as an integer in `0..p`.
    pub fn abs_trace(&self, a: FieldElem) -> u32 {
        self.subfield(1).expect("1 divides m").trace(a).0
    }

    /// All absolute traces, indexed by rank.
    pub fn abs_trace_table(&self) -> Vec<u32> {
        let sub = self.subfield(1).expect("1 divides m");
        self.elements().map(|a| sub.trace(a).0).collect()
    }
}

/// GF(p^k) embedded in GF(p^m) for k | m.
#[derive(Clone)]
pub struct Subfield {
    big: FieldDesc,
    data: Arc<SubfieldData>,
}

impl fmt::Debug for Subfield {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subfield({} in {})", self.data.small, self.big)
    }
}

impl Subfield {
    pub fn degree(&self) -> u32 {
        self.data.k
    }

    /// The canonical GF(p^k).
    pub fn small(&self) -> &FieldDesc {
        &self.data.small
    }

    pub fn big(&self) -> &FieldDesc {
        &self.big
    }

    pub fn embed(&self, a: FieldElem) -> FieldElem {
        FieldElem(self.data.image[a.0 as usize])
    }

    /// Inverse of [`embed`](Self::embed) on its image.
    pub fn project(&self, a: FieldElem) -> Result<FieldElem, FieldError> {
        self.data.preimage.get(&a.0).map(|&s| FieldElem(s)).ok_or(FieldError::NotInSubfield)
    }

    /// Tr_k^m(a), expressed in the canonical GF(p^k).
    pub fn trace(&self, a: FieldElem) -> FieldElem {
        match &self.data.trace {
            Some(t) => FieldElem(t[a.0 as usize]),
            None => {
                let t = self.big.trace_sum(self.data.k, a);
                FieldElem(self.data.preimage[&t.0])
            }
        }
    }
}

/// A multiplicative coset `beta * H_l` inside GF(p^m)^*.
#[derive(Debug, Clone)]
pub struct CosetSet {
    pub field: FieldDesc,
    pub exponent: u64,
    pub beta: FieldElem,
    pub members: BTreeSet<FieldElem>,
}

impl CosetSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, a: FieldElem) -> bool {
        self.members.contains(&a)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FieldRecord {
    p: u32,
    m: u32,
    modulus: Vec<u32>,
}

impl Serialize for FieldDesc {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        FieldRecord { p: self.p(), m: self.m(), modulus: self.modulus().to_vec() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FieldDesc {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rec = FieldRecord::deserialize(d)?;
        if rec.modulus.len() != rec.m as usize + 1 {
            return Err(serde::de::Error::custom(FieldError::ModulusLength {
                expected: rec.m as usize + 1,
                got: rec.modulus.len(),
            }));
        }
        FieldDesc::with_modulus(rec.p, rec.modulus).map_err(serde::de::Error::custom)
    }
}
