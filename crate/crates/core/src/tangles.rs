//! Rational tangles, two-bridge links and their double branched covers.
//!
//! A slope `(p, q)` corresponds to the tangle of fraction `p/q`; its
//! numerator closure is the two-bridge link `b(p, q)`, whose double branched
//! cover is the lens space `L(p, q)`.

use std::fmt;
use std::hash::{Hash, Hasher};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::json::{int, int_vec};
use crate::seifert::canonical_lens;
use crate::{Error, Int, Result, Slope};

/// The rational tangle of fraction `p/q`, `q ≥ 0`, with `1/0` the ∞ tangle.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RationalTangle {
    #[serde(with = "int")]
    p: Int,
    #[serde(with = "int")]
    q: Int,
    #[serde(with = "int_vec")]
    continued_fraction: Vec<Int>,
}

impl RationalTangle {
    pub fn new(p: impl Into<Int>, q: impl Into<Int>) -> Result<Self> {
        let (mut p, mut q) = (p.into(), q.into());
        if p.is_zero() && q.is_zero() {
            return Err(Error::ZeroSlope);
        }
        if !p.gcd(&q).is_one() {
            return Err(Error::NonPrimitive { p, q });
        }
        if q.is_negative() || (q.is_zero() && p.is_negative()) {
            p = -p;
            q = -q;
        }
        let continued_fraction = continued_fraction(&p, &q);
        Ok(RationalTangle {
            p,
            q,
            continued_fraction,
        })
    }

    pub fn numerator(&self) -> &Int {
        &self.p
    }

    pub fn denominator(&self) -> &Int {
        &self.q
    }

    /// All-positive expansion `[a0, a1, ...]` with
    /// `p/q = a0 + 1/(a1 + 1/(...))`, every term negated when `p/q < 0`;
    /// empty for `1/0`.
    pub fn continued_fraction(&self) -> &[Int] {
        &self.continued_fraction
    }

    pub fn is_infinity(&self) -> bool {
        self.q.is_zero()
    }
}

impl fmt::Display for RationalTangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.continued_fraction.iter().map(Int::to_string).collect();
        write!(f, "{}/{} = [{}]", self.p, self.q, terms.join(", "))
    }
}

/// Expansion of `p/q` with `q ≥ 0`.
pub fn continued_fraction(p: &Int, q: &Int) -> Vec<Int> {
    if q.is_zero() {
        return vec![];
    }
    let negative = p.is_negative();
    let (mut a, mut b) = (p.abs(), q.clone());
    let mut out = vec![];
    while !b.is_zero() {
        let (t, r) = a.div_rem(&b);
        out.push(if negative { -t } else { t });
        a = b;
        b = r;
    }
    out
}

/// Evaluates an expansion back to `(p, q)` in lowest terms with `q ≥ 0`;
/// the empty expansion is `1/0`.
pub fn evaluate_continued_fraction(terms: &[Int]) -> (Int, Int) {
    let (mut p, mut q) = (Int::one(), Int::zero());
    for t in terms.iter().rev() {
        let next = t * &p + &q;
        q = p;
        p = next;
    }
    if q.is_negative() {
        (-p, -q)
    } else {
        (p, q)
    }
}

/// The tangle attached by filling along `alpha`: `(p, q) ↦ p/q`.
pub fn tangle_from_slope(alpha: &Slope) -> RationalTangle {
    RationalTangle::new(alpha.p().clone(), alpha.q().clone()).expect("slopes are primitive")
}

/// The two-bridge link `b(p, q)`, `p ≥ 0`, with `0 < q < p` for `p ≥ 2`,
/// `b(1, 0)` the unknot and `b(0, 1)` the two-component unlink.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TwoBridgeLink {
    #[serde(with = "int")]
    p: Int,
    #[serde(with = "int")]
    q: Int,
}

impl TwoBridgeLink {
    pub fn new(p: impl Into<Int>, q: impl Into<Int>) -> Result<Self> {
        let (p, q) = (p.into(), q.into());
        if p.is_negative() || !p.gcd(&q).is_one() {
            return Err(Error::NonPrimitive { p, q });
        }
        Ok(match p.is_zero() {
            true => TwoBridgeLink { p, q: Int::one() },
            false => {
                let q = q.mod_floor(&p);
                TwoBridgeLink { p, q }
            }
        })
    }

    pub fn p(&self) -> &Int {
        &self.p
    }

    pub fn q(&self) -> &Int {
        &self.q
    }

    pub fn is_unknot(&self) -> bool {
        self.p.is_one()
    }

    pub fn is_unlink(&self) -> bool {
        self.p.is_zero()
    }

    /// Knots have odd `p`, two-component links even `p`.
    pub fn components(&self) -> usize {
        if self.p.is_odd() {
            1
        } else {
            2
        }
    }
}

impl fmt::Display for TwoBridgeLink {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "b({},{})", self.p, self.q)
    }
}

/// Numerator closure of the tangle. A negative fraction gives the mirror
/// `b(|p|, -q)`.
pub fn two_bridge(t: &RationalTangle) -> TwoBridgeLink {
    let p = t.p.abs();
    let q = if t.p.is_negative() { -&t.q } else { t.q.clone() };
    TwoBridgeLink::new(p, q).expect("tangle fractions are primitive")
}

/// A lens space up to homeomorphism: `L(p, q) = L(p, q')` iff
/// `q' ≡ ±q^{±1} (mod p)`. `L(0, 1)` is `S² × S¹`, `L(1, 0)` is `S³`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LensSpace {
    #[serde(with = "int")]
    p: Int,
    #[serde(with = "int")]
    q: Int,
}

impl LensSpace {
    pub fn new(p: impl Into<Int>, q: impl Into<Int>) -> Result<Self> {
        let (p, q) = (p.into(), q.into());
        if p.is_negative() || !p.gcd(&q).is_one() {
            return Err(Error::NonPrimitive { p, q });
        }
        let (p, q) = if p.is_zero() {
            (p, Int::one())
        } else if p.is_one() {
            (p, Int::zero())
        } else {
            let q = q.mod_floor(&p);
            (p, q)
        };
        Ok(LensSpace { p, q })
    }

    pub fn p(&self) -> &Int {
        &self.p
    }

    pub fn q(&self) -> &Int {
        &self.q
    }

    /// The least `q'` with `L(p, q') = L(p, q)`.
    pub fn canonical(&self) -> (Int, Int) {
        canonical_lens(&self.p, &self.q)
    }

    pub fn is_s2xs1(&self) -> bool {
        self.p.is_zero()
    }

    pub fn is_s3(&self) -> bool {
        self.p.is_one()
    }
}

impl PartialEq for LensSpace {
    fn eq(&self, other: &Self) -> bool {
        lens_homeo_equal(self, other)
    }
}

impl Eq for LensSpace {}

impl Hash for LensSpace {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.canonical().hash(state);
    }
}

impl fmt::Display for LensSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match () {
            _ if self.is_s2xs1() => write!(f, "S2xS1"),
            _ if self.is_s3() => write!(f, "S3"),
            _ => write!(f, "L({},{})", self.p, self.q),
        }
    }
}

pub fn double_branched_cover(l: &TwoBridgeLink) -> LensSpace {
    LensSpace::new(l.p.clone(), l.q.clone()).expect("two-bridge fractions are primitive")
}

pub fn lens_homeo_equal(a: &LensSpace, b: &LensSpace) -> bool {
    a.p == b.p && a.canonical() == b.canonical()
}
