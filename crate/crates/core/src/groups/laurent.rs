//! Integer Laurent polynomials in one variable.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::Int;

/// `Σ coeffs[i] · t^(low + i)`, kept trimmed so the first and last
/// coefficients are non-zero. The zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LaurentPolynomial {
    low: i64,
    coeffs: Vec<Int>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Int::one(), 0)
    }

    pub fn monomial(c: Int, exponent: i64) -> Self {
        Self::new(exponent, vec![c])
    }

    pub fn new(low: i64, coeffs: Vec<Int>) -> Self {
        let mut p = LaurentPolynomial { low, coeffs };
        p.trim();
        p
    }

    pub fn from_i64(low: i64, coeffs: &[i64]) -> Self {
        Self::new(low, coeffs.iter().map(|&c| Int::from(c)).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        self.coeffs.drain(..lead);
        self.low = if self.coeffs.is_empty() { 0 } else { self.low + lead as i64 };
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent with a non-zero coefficient (0 for the zero polynomial).
    pub fn low(&self) -> i64 {
        self.low
    }

    pub fn high(&self) -> i64 {
        self.low + self.coeffs.len() as i64 - 1
    }

    pub fn coefficients(&self) -> &[Int] {
        &self.coeffs
    }

    pub fn coefficient(&self, exponent: i64) -> Int {
        usize::try_from(exponent - self.low)
            .ok()
            .and_then(|i| self.coeffs.get(i).cloned())
            .unwrap_or_default()
    }

    /// Width of the exponent range, `high - low`.
    pub fn span(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn shift(&self, k: i64) -> Self {
        LaurentPolynomial {
            low: if self.is_zero() { 0 } else { self.low + k },
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scale(&self, k: &Int) -> Self {
        Self::new(self.low, self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Value at `t = 1`.
    pub fn augmentation(&self) -> Int {
        self.coeffs.iter().sum()
    }

    /// `p(t⁻¹)`.
    pub fn invert_variable(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Self::new(-self.high(), coeffs)
    }

    /// gcd of the coefficients.
    pub fn content(&self) -> Int {
        self.coeffs.iter().fold(Int::zero(), |g, c| g.gcd(c))
    }

    /// Multiplies by the unit `±t^k` that makes the lowest exponent 0 and the
    /// lowest coefficient positive.
    pub fn normalized(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let sign = if self.coeffs[0].is_negative() { -Int::one() } else { Int::one() };
        Self::new(0, self.coeffs.iter().map(|c| c * &sign).collect())
    }

    pub fn is_normalized(&self) -> bool {
        self.is_zero() || (self.low == 0 && self.coeffs[0].is_positive())
    }

    /// Equality up to multiplication by `±t^k`.
    pub fn associated(&self, other: &Self) -> bool {
        self.normalized() == other.normalized()
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self` in
    /// `Z[t, t⁻¹]`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let q = poly_div_exact(&self.coeffs, &d.coeffs)?;
        Some(Self::new(self.low - d.low, q))
    }

    /// gcd in `Z[t, t⁻¹]`, content included, in normal form.
    pub fn gcd(&self, other: &Self) -> Self {
        LaurentPolynomial::new(0, poly_gcd(&self.coeffs, &other.coeffs)).normalized()
    }
}

/// Quotient of ordinary polynomials (ascending coefficients), if exact.
fn poly_div_exact(a: &[Int], b: &[Int]) -> Option<Vec<Int>> {
    if a.len() < b.len() {
        return a.iter().all(Zero::is_zero).then(Vec::new);
    }
    let mut rem = a.to_vec();
    let lead = b.last().expect("divisor is non-zero");
    let mut q = vec![Int::zero(); a.len() - b.len() + 1];
    for k in (0..q.len()).rev() {
        let top = &rem[k + b.len() - 1];
        if top.is_zero() {
            continue;
        }
        let (c, r) = top.div_rem(lead);
        if !r.is_zero() {
            return None;
        }
        for (i, bi) in b.iter().enumerate() {
            rem[k + i] -= &c * bi;
        }
        q[k] = c;
    }
    rem.iter().all(Zero::is_zero).then_some(q)
}

fn trimmed(mut a: Vec<Int>) -> Vec<Int> {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    a
}

fn content(a: &[Int]) -> Int {
    a.iter().fold(Int::zero(), |g, c| g.gcd(c))
}

fn primitive_part(a: &[Int]) -> Vec<Int> {
    let c = content(a);
    if c.is_zero() {
        return a.to_vec();
    }
    a.iter().map(|x| x / &c).collect()
}

/// Pseudo-remainder of `a` by `b`: `lc(b)^(deg a - deg b + 1) · a mod b`.
fn pseudo_remainder(a: &[Int], b: &[Int]) -> Vec<Int> {
    let mut r = a.to_vec();
    let lead = b.last().expect("divisor is non-zero");
    while r.len() >= b.len() {
        let top = r.last().cloned().expect("non-empty");
        let shift = r.len() - b.len();
        for x in r.iter_mut() {
            *x *= lead;
        }
        for (i, bi) in b.iter().enumerate() {
            r[shift + i] -= &top * bi;
        }
        r = trimmed(r);
    }
    r
}

/// gcd in `Z[t]` by the primitive polynomial remainder sequence; the result
/// carries the gcd of the contents.
fn poly_gcd(a: &[Int], b: &[Int]) -> Vec<Int> {
    let (a, b) = (trimmed(a.to_vec()), trimmed(b.to_vec()));
    if a.is_empty() {
        return b;
    }
    if b.is_empty() {
        return a;
    }
    let c = content(&a).gcd(&content(&b));
    let (mut x, mut y) = (primitive_part(&a), primitive_part(&b));
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let r = pseudo_remainder(&x, &y);
        x = y;
        y = primitive_part(&r);
    }
    // strip the unit factor t^k introduced by working in Z[t]
    let lead = x.iter().take_while(|c| c.is_zero()).count();
    x.drain(..lead);
    x.into_iter().map(|v| v * &c).collect()
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let low = self.low.min(rhs.low);
        let high = self.high().max(rhs.high());
        let coeffs = (low..=high)
            .map(|e| self.coefficient(e) + rhs.coefficient(e))
            .collect();
        LaurentPolynomial::new(low, coeffs)
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial::new(self.low, self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        self + &(-rhs)
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPolynomial::zero();
        }
        let mut coeffs = vec![Int::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        LaurentPolynomial::new(self.low + rhs.low, coeffs)
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let e = self.low + i as i64;
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            let mono = match e {
                0 => String::new(),
                1 => "t".to_string(),
                e => format!("t^{e}"),
            };
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{a}{mono}")?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct LaurentJson {
    low: i64,
    #[serde(with = "crate::json::int_vec")]
    coefficients: Vec<Int>,
}

/// `{"low": k, "coefficients": [...]}` with coefficients in ascending order.
impl Serialize for LaurentPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LaurentJson {
            low: self.low,
            coefficients: self.coeffs.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = LaurentJson::deserialize(d)?;
        Ok(LaurentPolynomial::new(j.low, j.coefficients))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lp(low: i64, c: &[i64]) -> LaurentPolynomial {
        LaurentPolynomial::from_i64(low, c)
    }

    #[test]
    fn arithmetic_and_display() {
        let a = lp(-1, &[1, 0, 1]);
        let b = lp(0, &[1, -1]);
        assert_eq!((&a * &b).to_string(), "-t^2 + t - 1 + t^-1");
        assert_eq!(&(&a - &a), &LaurentPolynomial::zero());
        assert_eq!(lp(3, &[0, 2, 0]), lp(4, &[2]));
        assert_eq!(lp(-2, &[-3, 1]).normalized(), lp(0, &[3, -1]));
        assert_eq!(lp(0, &[1, -1, 1]).to_string(), "t^2 - t + 1");
        assert_eq!(lp(0, &[2, 3]).invert_variable(), lp(-1, &[3, 2]));
        assert_eq!(lp(0, &[1, 1, 1]).augmentation(), Int::from(3));
    }

    #[test]
    fn gcd_examples() {
        // (1+t)(1-t+t²) and (1+t)·2
        let x = lp(0, &[1, 0, 0, 1]);
        let y = lp(0, &[2, 2]);
        assert_eq!(x.gcd(&y), lp(0, &[1, 1]));
        assert_eq!(lp(0, &[4, 4]).gcd(&lp(0, &[6, 6])), lp(0, &[2, 2]));
        assert_eq!(lp(3, &[2]).gcd(&LaurentPolynomial::zero()), lp(0, &[2]));
        assert_eq!(lp(0, &[1, -1, 1]).gcd(&lp(0, &[1, 1])), lp(0, &[1]));
    }

    #[test]
    fn exact_division() {
        let a = lp(0, &[1, 1]);
        let b = lp(-2, &[1, -1, 1]);
        let p = &a * &b;
        assert_eq!(p.div_exact(&b), Some(a.clone()));
        assert_eq!(p.div_exact(&a), Some(b));
        assert_eq!(lp(0, &[1, 2]).div_exact(&lp(0, &[2])), None);
    }

    fn poly() -> impl Strategy<Value = LaurentPolynomial> {
        (-3i64..=3, proptest::collection::vec(-6i64..=6, 0..5))
            .prop_map(|(low, c)| LaurentPolynomial::from_i64(low, &c))
    }

    proptest! {
        #[test]
        fn gcd_divides_both(a in poly(), b in poly(), c in poly()) {
            let x = &a * &c;
            let y = &b * &c;
            let g = x.gcd(&y);
            prop_assert!(g.is_normalized());
            if !g.is_zero() {
                prop_assert!(x.div_exact(&g).is_some());
                prop_assert!(y.div_exact(&g).is_some());
                if !c.is_zero() {
                    prop_assert!(g.div_exact(&c.normalized()).is_some());
                }
            }
        }

        #[test]
        fn normalization_is_a_unit_multiple(a in poly(), k in -4i64..=4, neg in any::<bool>()) {
            let u = if neg { lp(k, &[-1]) } else { lp(k, &[1]) };
            prop_assert_eq!((&a * &u).normalized(), a.normalized());
        }
    }
}
