//! Slopes on a torus: primitive classes of `H_1(T^2; Z)` up to sign.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::json::JsonInt;
use crate::{Error, Int, Result};

/// A slope `p·x + q·y` in some ordered basis `(x, y)` of the torus.
///
/// Always stored in normal form: `p > 0`, or `(p, q) = (0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slope {
    p: Int,
    q: Int,
}

/// Normal-form representative of `±(p, q)`.
pub fn normalize(p: impl Into<Int>, q: impl Into<Int>) -> Result<Slope> {
    let (p, q) = (p.into(), q.into());
    if p.is_zero() && q.is_zero() {
        return Err(Error::ZeroSlope);
    }
    if !p.gcd(&q).is_one() {
        return Err(Error::NonPrimitive { p, q });
    }
    if p.is_negative() || (p.is_zero() && q.is_negative()) {
        Ok(Slope { p: -p, q: -q })
    } else {
        Ok(Slope { p, q })
    }
}

/// `|a.p·b.q − b.p·a.q|`.
pub fn distance(a: &Slope, b: &Slope) -> Int {
    (&a.p * &b.q - &b.p * &a.q).abs()
}

pub fn change_basis(s: &Slope, m: &BasisChange) -> Slope {
    let [p, q] = m.apply(&[s.p.clone(), s.q.clone()]);
    normalize(p, q).expect("unimodular maps send primitive vectors to primitive vectors")
}

impl Slope {
    pub fn new(p: impl Into<Int>, q: impl Into<Int>) -> Result<Self> {
        normalize(p, q)
    }

    pub fn p(&self) -> &Int {
        &self.p
    }

    pub fn q(&self) -> &Int {
        &self.q
    }

    pub fn vector(&self) -> [Int; 2] {
        [self.p.clone(), self.q.clone()]
    }

    pub fn distance(&self, other: &Slope) -> Int {
        distance(self, other)
    }

    pub fn change_basis(&self, m: &BasisChange) -> Slope {
        change_basis(self, m)
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

/// Parses `p/q` (the command-line form) or `p,q`.
impl FromStr for Slope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (a, b) = s
            .split_once('/')
            .or_else(|| s.split_once(','))
            .ok_or_else(|| Error::Parse(format!("expected a slope `p/q`, got `{s}`")))?;
        let parse = |t: &str| {
            Int::from_str(t.trim()).map_err(|_| Error::Parse(format!("bad integer `{t}` in slope")))
        };
        normalize(parse(a)?, parse(b)?)
    }
}

impl Serialize for Slope {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [JsonInt(self.p.clone()), JsonInt(self.q.clone())].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Slope {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [p, q] = <[JsonInt; 2]>::deserialize(d)?;
        normalize(p.0, q.0).map_err(serde::de::Error::custom)
    }
}

/// A unimodular 2×2 integer matrix acting on column vectors `(p, q)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasisChange {
    m: [[Int; 2]; 2],
}

impl BasisChange {
    /// The matrix `[[a, b], [c, d]]`.
    pub fn new(
        a: impl Into<Int>,
        b: impl Into<Int>,
        c: impl Into<Int>,
        d: impl Into<Int>,
    ) -> Result<Self> {
        let m = [[a.into(), b.into()], [c.into(), d.into()]];
        let det = &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0];
        if det.abs().is_one() {
            Ok(BasisChange { m })
        } else {
            Err(Error::NotUnimodular(det))
        }
    }

    pub fn identity() -> Self {
        BasisChange::new(1, 0, 0, 1).unwrap()
    }

    pub fn entries(&self) -> &[[Int; 2]; 2] {
        &self.m
    }

    pub fn determinant(&self) -> Int {
        &self.m[0][0] * &self.m[1][1] - &self.m[0][1] * &self.m[1][0]
    }

    pub fn apply(&self, v: &[Int; 2]) -> [Int; 2] {
        [
            &self.m[0][0] * &v[0] + &self.m[0][1] * &v[1],
            &self.m[1][0] * &v[0] + &self.m[1][1] * &v[1],
        ]
    }

    pub fn inverse(&self) -> Self {
        let det = self.determinant();
        let [[a, b], [c, d]] = &self.m;
        BasisChange {
            m: [[d * &det, -b * &det], [-c * &det, a * &det]],
        }
    }
}
