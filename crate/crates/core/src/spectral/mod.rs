//! Walsh spectra of p-ary functions and everything built on them: bentness
//! and regularity, duals, vectorial dual-bent certificates, algebraic normal
//! forms and l-form tests.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::field::{FieldDesc, FieldElem, FieldError};
use crate::space::{Point, Space, SpaceError};

mod anf;
mod certificate;
mod classify;
mod lform;
mod walsh;

pub use anf::{anf, anf_eval, Anf};
pub use certificate::{dual_bent_certificate, is_vectorial_bent, DualBentCertificate};
pub use classify::{classify_bent, classify_spectrum, BentClassification};
pub use lform::{lform_exponents, theorem5_check, Theorem5Report};
pub use walsh::{character_sums, walsh_full, walsh_naive, WalshSpectrum};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpectralError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error("domain of order {order} exceeds the transform cap {cap}")]
    SizeGuard { order: u64, cap: u64 },
    #[error("table has {got} entries, the domain has {expected} points")]
    TableLength { expected: u64, got: usize },
    #[error("table entry {index} is {value}, outside 0..{bound}")]
    ValueOutOfRange { index: usize, value: u32, bound: u64 },
    #[error("component index must be nonzero")]
    ZeroComponent,
    #[error("Walsh value at {0} has full magnitude but matches no candidate")]
    MatchFailure(Point),
    #[error("component {0} is not bent")]
    NotBent(FieldElem),
    #[error("the proposed dual does not certify the function: {0}")]
    Uncertified(String),
    #[error("functions are defined on different domains or codomains")]
    Mismatch,
    #[error("the domain must be a product of prime fields; flatten it first")]
    NotPure,
    #[error("f(0) = {0}, expected 0")]
    PreconditionF0(u32),
}

/// A function V_n -> GF(p), stored as a table indexed by point rank.
#[derive(Clone, PartialEq, Eq)]
pub struct PAryFunction {
    domain: Space,
    table: Vec<u32>,
}

impl fmt::Debug for PAryFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PAryFunction({}, {} entries)", self.domain, self.table.len())
    }
}

fn check_table(domain: &Space, table: &[u32], bound: u64) -> Result<(), SpectralError> {
    if table.len() as u64 != domain.order() {
        return Err(SpectralError::TableLength { expected: domain.order(), got: table.len() });
    }
    if let Some((index, &value)) = table.iter().enumerate().find(|(_, &v)| v as u64 >= bound) {
        return Err(SpectralError::ValueOutOfRange { index, value, bound });
    }
    Ok(())
}

impl PAryFunction {
    pub fn new(domain: Space, table: Vec<u32>) -> Result<Self, SpectralError> {
        check_table(&domain, &table, domain.p() as u64)?;
        Ok(PAryFunction { domain, table })
    }

    /// Tabulates `f`, reducing each value mod p.
    pub fn from_fn(domain: Space, f: impl Fn(Point) -> u32) -> Self {
        let p = domain.p();
        let table = domain.points().map(|x| f(x) % p).collect();
        PAryFunction { domain, table }
    }

    pub fn zero(domain: Space) -> Self {
        let table = vec![0; domain.order() as usize];
        PAryFunction { domain, table }
    }

    pub fn domain(&self) -> &Space {
        &self.domain
    }

    pub fn p(&self) -> u32 {
        self.domain.p()
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    pub fn eval(&self, x: Point) -> u32 {
        self.table[x.index()]
    }

    /// x -> c f(x) for an integer scalar c.
    pub fn scale(&self, c: u32) -> Self {
        let p = self.p() as u64;
        let table = self.table.iter().map(|&v| (v as u64 * c as u64 % p) as u32).collect();
        PAryFunction { domain: self.domain.clone(), table }
    }

    /// x -> f(-x).
    pub fn reflect(&self) -> Self {
        PAryFunction::from_fn(self.domain.clone(), |x| self.eval(self.domain.negate(x)))
    }

    /// The same table read on the flattened GF(p)^n domain.
    pub fn flatten(&self) -> Self {
        PAryFunction { domain: self.domain.flatten(), table: self.table.clone() }
    }

    /// View as a vectorial function into GF(p).
    pub fn to_vectorial(&self) -> VectorialFunction {
        let codomain = FieldDesc::prime(self.p()).expect("domain characteristic is an odd prime");
        VectorialFunction { domain: self.domain.clone(), codomain, table: self.table.clone() }
    }
}

/// A function V_n -> GF(p^s), stored as a table of codomain ranks.
#[derive(Clone, PartialEq, Eq)]
pub struct VectorialFunction {
    domain: Space,
    codomain: FieldDesc,
    table: Vec<u32>,
}

impl fmt::Debug for VectorialFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VectorialFunction({} -> {}, {} entries)", self.domain, self.codomain, self.table.len())
    }
}

impl VectorialFunction {
    pub fn new(domain: Space, codomain: FieldDesc, table: Vec<u32>) -> Result<Self, SpectralError> {
        if codomain.p() != domain.p() {
            return Err(SpectralError::Mismatch);
        }
        check_table(&domain, &table, codomain.order())?;
        Ok(VectorialFunction { domain, codomain, table })
    }

    pub fn from_fn(domain: Space, codomain: FieldDesc, f: impl Fn(Point) -> FieldElem) -> Self {
        let table = domain.points().map(|x| f(x).0).collect();
        VectorialFunction { domain, codomain, table }
    }

    pub fn domain(&self) -> &Space {
        &self.domain
    }

    pub fn codomain(&self) -> &FieldDesc {
        &self.codomain
    }

    pub fn p(&self) -> u32 {
        self.domain.p()
    }

    /// Codomain degree s.
    pub fn s(&self) -> u32 {
        self.codomain.m()
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    pub fn eval(&self, x: Point) -> FieldElem {
        FieldElem(self.table[x.index()])
    }

    /// The component x -> Tr_1^s(c F(x)).
    pub fn component(&self, c: FieldElem) -> Result<PAryFunction, SpectralError> {
        if c.is_zero() {
            return Err(SpectralError::ZeroComponent);
        }
        self.codomain.check(c)?;
        let k = &self.codomain;
        let sub = k.subfield(1)?;
        let lookup: Vec<u32> = k.elements().map(|v| sub.trace(k.mul(c, v)).0).collect();
        let table = self.table.iter().map(|&v| lookup[v as usize]).collect();
        Ok(PAryFunction { domain: self.domain.clone(), table })
    }

    /// x -> F(-x).
    pub fn reflect(&self) -> Self {
        let table = self.domain.points().map(|x| self.table[self.domain.negate(x).index()]).collect();
        VectorialFunction { domain: self.domain.clone(), codomain: self.codomain.clone(), table }
    }

    pub fn is_even(&self) -> bool {
        self.domain.points().all(|x| self.table[x.index()] == self.table[self.domain.negate(x).index()])
    }

    pub fn vanishes_at_zero(&self) -> bool {
        self.table[0] == 0
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CodomainRecord {
    p: u32,
    s: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    modulus: Option<Vec<u32>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FunctionRecord {
    space: Space,
    codomain: CodomainRecord,
    table: Vec<u32>,
}

impl CodomainRecord {
    fn build(&self) -> Result<FieldDesc, FieldError> {
        match &self.modulus {
            None => FieldDesc::new(self.p, self.s),
            Some(m) => {
                if m.len() != self.s as usize + 1 {
                    return Err(FieldError::ModulusLength { expected: self.s as usize + 1, got: m.len() });
                }
                FieldDesc::with_modulus(self.p, m.clone())
            }
        }
    }
}

impl Serialize for VectorialFunction {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        FunctionRecord {
            space: self.domain.clone(),
            codomain: CodomainRecord {
                p: self.codomain.p(),
                s: self.codomain.m(),
                modulus: Some(self.codomain.modulus().to_vec()),
            },
            table: self.table.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for VectorialFunction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let rec = FunctionRecord::deserialize(d)?;
        let codomain = rec.codomain.build().map_err(D::Error::custom)?;
        VectorialFunction::new(rec.space, codomain, rec.table).map_err(D::Error::custom)
    }
}

impl Serialize for PAryFunction {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        FunctionRecord {
            space: self.domain.clone(),
            codomain: CodomainRecord { p: self.p(), s: 1, modulus: None },
            table: self.table.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PAryFunction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let rec = FunctionRecord::deserialize(d)?;
        if rec.codomain.s != 1 || rec.codomain.p != rec.space.p() {
            return Err(D::Error::custom("a p-ary function needs codomain GF(p) with s = 1"));
        }
        PAryFunction::new(rec.space, rec.table).map_err(D::Error::custom)
    }
}
