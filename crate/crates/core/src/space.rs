//! Finite vector spaces over GF(p) built as products of field factors.
//!
//! A point is addressed by a mixed-radix rank with factor 0 least
//! significant. Because every factor rank is itself a base-p numeral, the
//! point rank is simply the concatenation of all GF(p) coordinates, so
//! additive operations act digit by digit on the rank.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::field::{FieldDesc, FieldElem};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpaceError {
    #[error("a space needs at least one factor")]
    NoFactors,
    #[error("factors have different characteristics ({0} and {1})")]
    MixedCharacteristic(u32, u32),
    #[error("space of order {p}^{n} exceeds the 2^32 size guard")]
    TooLarge { p: u32, n: u32 },
    #[error("expected {expected} factor coordinates, got {got}")]
    WrongArity { expected: usize, got: usize },
    #[error("rank {rank} is out of range for a space of order {order}")]
    OutOfRange { rank: u64, order: u64 },
}

/// A point of a [`Space`], by rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point(pub u64);

impl Point {
    pub const ZERO: Point = Point(0);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// V_n = F_1 x ... x F_k with the sum of per-factor trace forms.
#[derive(Clone)]
pub struct Space {
    factors: Vec<FieldDesc>,
    p: u32,
    dim: u32,
    order: u64,
    /// `place[i]` is the rank weight of factor i.
    place: Vec<u64>,
    traces: Vec<Vec<u32>>,
}

impl PartialEq for Space {
    fn eq(&self, other: &Self) -> bool {
        self.factors == other.factors
    }
}

impl Eq for Space {}

impl fmt::Debug for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.factors.iter()).finish()
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|d| d.to_string()).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

impl Space {
    pub fn new(factors: Vec<FieldDesc>) -> Result<Self, SpaceError> {
        let first = factors.first().ok_or(SpaceError::NoFactors)?;
        let p = first.p();
        if let Some(bad) = factors.iter().find(|f| f.p() != p) {
            return Err(SpaceError::MixedCharacteristic(p, bad.p()));
        }
        let dim: u32 = factors.iter().map(|f| f.m()).sum();
        let order = crate::arith::checked_pow(p as u64, dim)
            .filter(|&q| q <= 1 << 32)
            .ok_or(SpaceError::TooLarge { p, n: dim })?;
        let mut place = Vec::with_capacity(factors.len());
        let mut acc = 1u64;
        for f in &factors {
            place.push(acc);
            acc *= f.order();
        }
        let traces = factors.iter().map(|f| f.abs_trace_table()).collect();
        Ok(Space { factors, p, dim, order, place, traces })
    }

    /// GF(p)^n with the ordinary dot product.
    pub fn pure(p: u32, n: u32) -> Result<Self, crate::Error> {
        let f = FieldDesc::prime(p)?;
        Ok(Space::new(vec![f; n as usize])?)
    }

    /// A single field GF(p^m) with the trace form.
    pub fn field(f: FieldDesc) -> Self {
        Space::new(vec![f]).expect("a single field always forms a valid space")
    }

    pub fn factors(&self) -> &[FieldDesc] {
        &self.factors
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Dimension n over GF(p).
    pub fn dim(&self) -> u32 {
        self.dim
    }

    /// Number of points, p^n.
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn points(&self) -> impl Iterator<Item = Point> {
        (0..self.order).map(Point)
    }

    pub fn check(&self, x: Point) -> Result<Point, SpaceError> {
        if x.0 < self.order {
            Ok(x)
        } else {
            Err(SpaceError::OutOfRange { rank: x.0, order: self.order })
        }
    }

    /// Is every factor the prime field, so coordinates are plain GF(p) values?
    pub fn is_pure(&self) -> bool {
        self.factors.iter().all(|f| f.m() == 1)
    }

    /// The pure GF(p)^n space with the same points, read in polynomial-basis
    /// coordinates.
    pub fn flatten(&self) -> Space {
        Space::pure(self.p, self.dim).expect("same order as an existing space")
    }

    pub fn parts(&self, x: Point) -> Vec<FieldElem> {
        self.factors
            .iter()
            .zip(&self.place)
            .map(|(f, &w)| FieldElem(((x.0 / w) % f.order()) as u32))
            .collect()
    }

    pub fn part(&self, x: Point, i: usize) -> FieldElem {
        FieldElem(((x.0 / self.place[i]) % self.factors[i].order()) as u32)
    }

    pub fn from_parts(&self, parts: &[FieldElem]) -> Result<Point, SpaceError> {
        if parts.len() != self.factors.len() {
            return Err(SpaceError::WrongArity { expected: self.factors.len(), got: parts.len() });
        }
        let mut rank = 0u64;
        for ((a, f), &w) in parts.iter().zip(&self.factors).zip(&self.place) {
            if a.0 as u64 >= f.order() {
                return Err(SpaceError::OutOfRange { rank: a.0 as u64, order: f.order() });
            }
            rank += a.0 as u64 * w;
        }
        Ok(Point(rank))
    }

    /// All n GF(p) coordinates, least significant first.
    pub fn coords(&self, x: Point) -> Vec<u32> {
        let p = self.p as u64;
        let mut r = x.0;
        (0..self.dim)
            .map(|_| {
                let d = (r % p) as u32;
                r /= p;
                d
            })
            .collect()
    }

    pub fn from_coords(&self, coords: &[u32]) -> Point {
        Point(coords.iter().rev().fold(0u64, |acc, &d| acc * self.p as u64 + d as u64))
    }

    fn digitwise(&self, a: u64, b: u64, op: impl Fn(u64, u64) -> u64) -> u64 {
        let p = self.p as u64;
        let (mut x, mut y, mut out, mut place) = (a, b, 0u64, 1u64);
        while x > 0 || y > 0 {
            out += op(x % p, y % p) * place;
            place *= p;
            x /= p;
            y /= p;
        }
        out
    }

    pub fn add(&self, a: Point, b: Point) -> Point {
        let p = self.p as u64;
        Point(self.digitwise(a.0, b.0, |x, y| (x + y) % p))
    }

    pub fn sub(&self, a: Point, b: Point) -> Point {
        let p = self.p as u64;
        Point(self.digitwise(a.0, b.0, |x, y| (x + p - y) % p))
    }

    pub fn negate(&self, a: Point) -> Point {
        self.sub(Point::ZERO, a)
    }

    /// Multiplication by the scalar `c` of GF(p) (taken mod p).
    pub fn scalar_mul(&self, c: u32, x: Point) -> Point {
        let p = self.p as u64;
        let c = c as u64 % p;
        Point(self.digitwise(x.0, 0, |d, _| d * c % p))
    }

    /// Sum over factors of Tr_1^{m_i}(a_i b_i), an integer in `0..p`.
    pub fn inner_product(&self, a: Point, b: Point) -> u32 {
        let mut acc = 0u32;
        for (i, f) in self.factors.iter().enumerate() {
            let prod = f.mul(self.part(a, i), self.part(b, i));
            acc = (acc + self.traces[i][prod.0 as usize]) % self.p;
        }
        acc
    }

    /// Coordinates of the linear form x -> <a, x> in the digit basis:
    /// entry j is <a, e_j> where e_j is the j-th GF(p) unit vector.
    pub fn dual_coords(&self, a: Point) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.dim as usize);
        for (i, f) in self.factors.iter().enumerate() {
            let ai = self.part(a, i);
            let mut basis = FieldElem::ONE;
            let x = if f.m() > 1 { FieldElem(f.p()) } else { FieldElem::ONE };
            for _ in 0..f.m() {
                out.push(self.traces[i][f.mul(ai, basis).0 as usize]);
                basis = f.mul(basis, x);
            }
        }
        out
    }

    /// A helper that subtracts points quickly by splitting ranks into two
    /// halves and tabulating digit-wise differences within each half.
    pub fn subtractor(&self) -> Subtractor {
        Subtractor::new(self)
    }
}

/// Table-driven point subtraction, see [`Space::subtractor`].
pub struct Subtractor {
    p: u64,
    dim: u32,
    split: u64,
    lo: Option<Vec<u32>>,
    hi: Option<Vec<u32>>,
    hi_size: u64,
}

const HALF_TABLE_LIMIT: u64 = 1 << 11;

impl Subtractor {
    fn new(space: &Space) -> Self {
        let p = space.p as u64;
        let lo_digits = space.dim / 2;
        let hi_digits = space.dim - lo_digits;
        let split = p.pow(lo_digits);
        let hi_size = p.pow(hi_digits);
        let build = |size: u64| -> Option<Vec<u32>> {
            if size > HALF_TABLE_LIMIT {
                return None;
            }
            let mut t = vec![0u32; (size * size) as usize];
            for a in 0..size {
                for b in 0..size {
                    t[(a * size + b) as usize] = digit_sub(a, b, p) as u32;
                }
            }
            Some(t)
        };
        Subtractor { p, dim: space.dim, split, lo: build(split), hi: build(hi_size), hi_size }
    }

    pub fn sub(&self, a: Point, b: Point) -> Point {
        match (&self.lo, &self.hi) {
            (Some(lo), Some(hi)) => {
                let (al, ah) = (a.0 % self.split, a.0 / self.split);
                let (bl, bh) = (b.0 % self.split, b.0 / self.split);
                let l = lo[(al * self.split + bl) as usize] as u64;
                let h = hi[(ah * self.hi_size + bh) as usize] as u64;
                Point(h * self.split + l)
            }
            _ => Point(digit_sub(a.0, b.0, self.p)),
        }
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }
}

fn digit_sub(a: u64, b: u64, p: u64) -> u64 {
    let (mut x, mut y, mut out, mut place) = (a, b, 0u64, 1u64);
    while x > 0 || y > 0 {
        out += ((x % p + p - y % p) % p) * place;
        place *= p;
        x /= p;
        y /= p;
    }
    out
}

impl Serialize for Space {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.factors.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Space {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let factors = Vec::<FieldDesc>::deserialize(d)?;
        Space::new(factors).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f3() -> Space {
        Space::pure(3, 2).unwrap()
    }

    fn f9() -> Space {
        Space::field(FieldDesc::new(3, 2).unwrap())
    }

    #[test]
    fn inner_products() {
        let s = f3();
        let a = s.from_coords(&[1, 2]);
        let b = s.from_coords(&[2, 2]);
        assert_eq!(s.inner_product(a, b), 0);
        assert_eq!(s.inner_product(a, Point::ZERO), 0);
        let x = Point(3);
        assert_eq!(f9().inner_product(x, x), 1);
    }

    #[test]
    fn scalar_action_and_negation() {
        let s = f3();
        let x = s.from_coords(&[1, 2]);
        assert_eq!(s.scalar_mul(2, x), s.from_coords(&[2, 1]));
        assert_eq!(s.scalar_mul(1, x), x);
        assert_eq!(s.scalar_mul(0, x), Point::ZERO);
        assert_eq!(Space::pure(3, 1).unwrap().negate(Point(1)), Point(2));
        let s5 = Space::pure(5, 2).unwrap();
        assert_eq!(s5.negate(s5.from_coords(&[1, 3])), s5.from_coords(&[4, 2]));
        assert_eq!(s5.negate(Point::ZERO), Point::ZERO);
    }

    #[test]
    fn scalar_action_matches_field_multiplication() {
        let f = FieldDesc::new(5, 2).unwrap();
        let s = Space::new(vec![f.clone(), f.clone()]).unwrap();
        for x in s.points().step_by(13) {
            for c in 0..5 {
                let expect: Vec<FieldElem> =
                    s.parts(x).into_iter().map(|a| f.mul(FieldElem(c), a)).collect();
                assert_eq!(s.parts(s.scalar_mul(c, x)), expect);
            }
        }
    }

    #[test]
    fn non_degenerate_forms() {
        let f = FieldDesc::new(3, 2).unwrap();
        for s in [f3(), f9(), Space::new(vec![f.clone(), FieldDesc::prime(3).unwrap()]).unwrap()] {
            for a in s.points().skip(1) {
                assert!(s.points().any(|b| s.inner_product(a, b) != 0), "{s}: {a}");
            }
        }
    }

    #[test]
    fn dual_coords_represent_the_form() {
        let f = FieldDesc::new(3, 2).unwrap();
        let s = Space::new(vec![f, FieldDesc::prime(3).unwrap()]).unwrap();
        for a in s.points() {
            let w = s.dual_coords(a);
            for x in s.points() {
                let dot: u32 = s.coords(x).iter().zip(&w).map(|(u, v)| u * v).sum::<u32>() % 3;
                assert_eq!(dot, s.inner_product(a, x));
            }
        }
    }

    #[test]
    fn rank_round_trips() {
        let f = FieldDesc::new(3, 3).unwrap();
        let s = Space::new(vec![f.clone(), FieldDesc::prime(3).unwrap(), f]).unwrap();
        for x in s.points() {
            assert_eq!(s.from_parts(&s.parts(x)).unwrap(), x);
            assert_eq!(s.from_coords(&s.coords(x)), x);
        }
        let big = Space::pure(3, 10).unwrap();
        for x in big.points() {
            assert_eq!(big.from_coords(&big.coords(x)), x);
        }
    }

    #[test]
    fn subtractor_matches_digit_loop() {
        for s in [Space::pure(3, 5).unwrap(), Space::pure(5, 3).unwrap(), Space::pure(3, 1).unwrap()] {
            let t = s.subtractor();
            for a in s.points() {
                for b in s.points().step_by(7) {
                    assert_eq!(t.sub(a, b), s.sub(a, b));
                }
            }
        }
    }

    #[test]
    fn rejects_bad_spaces() {
        assert_eq!(Space::new(vec![]).unwrap_err(), SpaceError::NoFactors);
        let mixed = vec![FieldDesc::prime(3).unwrap(), FieldDesc::prime(5).unwrap()];
        assert_eq!(Space::new(mixed).unwrap_err(), SpaceError::MixedCharacteristic(3, 5));
    }

    #[test]
    fn json_is_a_factor_list() {
        let s = f9();
        let text = serde_json::to_string(&s).unwrap();
        assert_eq!(text, r#"[{"p":3,"m":2,"modulus":[1,0,1]}]"#);
        assert_eq!(serde_json::from_str::<Space>(&text).unwrap(), s);
    }

    proptest! {
        #[test]
        fn bilinear(a in 0u64..729, b in 0u64..729, c in 0u64..729, k in 0u32..3) {
            let f = FieldDesc::new(3, 2).unwrap();
            let s = Space::new(vec![f, FieldDesc::new(3, 4).unwrap()]).unwrap();
            let (a, b, c) = (Point(a), Point(b), Point(c));
            prop_assert_eq!(s.inner_product(s.add(a, b), c), (s.inner_product(a, c) + s.inner_product(b, c)) % 3);
            prop_assert_eq!(s.inner_product(a, b), s.inner_product(b, a));
            prop_assert_eq!(s.inner_product(s.scalar_mul(k, a), b), k * s.inner_product(a, b) % 3);
            prop_assert_eq!(s.negate(s.negate(a)), a);
            prop_assert_eq!(s.add(s.sub(a, b), b), a);
        }
    }
}
