//! Fox calculus and the one-variable Alexander polynomial.

use num_traits::{Signed, ToPrimitive, Zero};

use super::laurent::LaurentPolynomial;
use super::presentation::{FreeQuotient, Presentation};
use super::word::Word;
use crate::{Error, Int, Result};

/// The augmentation `generator ↦ t^e`: exponents `e` of each generator in
/// H1 modulo torsion, which must be infinite cyclic.
///
/// The generator of the free quotient is oriented so that the first
/// non-zero exponent is positive.
pub fn augmentation(p: &Presentation) -> Result<Vec<i64>> {
    let q = FreeQuotient::new(p);
    if q.free_rank() != 1 {
        return Err(Error::RankNotOne(q.free_rank()));
    }
    let mut e: Vec<Int> = (0..p.generator_count())
        .map(|g| q.generator_image(g)[0].clone())
        .collect();
    if e.iter().find(|x| !x.is_zero()).is_some_and(Signed::is_negative) {
        e.iter_mut().for_each(|x| *x = -&*x);
    }
    e.iter()
        .map(|x| x.to_i64().ok_or_else(|| Error::ExponentTooLarge(x.clone())))
        .collect()
}

/// Image of the Fox derivative `∂w/∂x_j` under the augmentation.
pub fn fox_derivative(w: &Word, j: usize, exponents: &[i64]) -> LaurentPolynomial {
    let mut out = LaurentPolynomial::zero();
    let mut s = 0i64;
    for &l in w.letters() {
        let g = l.unsigned_abs() as usize - 1;
        if l > 0 {
            if g == j {
                out = &out + &LaurentPolynomial::monomial(Int::from(1), s);
            }
            s += exponents[g];
        } else {
            s -= exponents[g];
            if g == j {
                out = &out - &LaurentPolynomial::monomial(Int::from(1), s);
            }
        }
    }
    out
}

/// Rows are relators, columns generators.
pub fn alexander_matrix(p: &Presentation, exponents: &[i64]) -> Vec<Vec<LaurentPolynomial>> {
    p.relators()
        .iter()
        .map(|r| {
            (0..p.generator_count())
                .map(|j| fox_derivative(r, j, exponents))
                .collect()
        })
        .collect()
}

/// gcd of the `(n-1)`-minors of the Alexander matrix, in normal form.
pub fn alexander_polynomial(p: &Presentation) -> Result<LaurentPolynomial> {
    let exponents = augmentation(p)?;
    let a = alexander_matrix(p, &exponents);
    let n = p.generator_count();
    let k = n - 1;
    if k == 0 {
        return Ok(LaurentPolynomial::one());
    }
    let mut g = LaurentPolynomial::zero();
    for cols in combinations(n, k) {
        for rows in combinations(a.len(), k) {
            let sub: Vec<Vec<LaurentPolynomial>> = rows
                .iter()
                .map(|&i| cols.iter().map(|&j| a[i][j].clone()).collect())
                .collect();
            let d = determinant(sub);
            if !d.is_zero() {
                g = g.gcd(&d);
                if g == LaurentPolynomial::one() {
                    return Ok(g);
                }
            }
        }
    }
    Ok(g.normalized())
}

/// Fraction-free (Bareiss) determinant over `Z[t, t⁻¹]`.
pub fn determinant(mut m: Vec<Vec<LaurentPolynomial>>) -> LaurentPolynomial {
    let n = m.len();
    if n == 0 {
        return LaurentPolynomial::one();
    }
    let mut negate = false;
    let mut prev = LaurentPolynomial::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return LaurentPolynomial::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        -&d
    } else {
        d
    }
}

/// All `k`-subsets of `0..n` in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![];
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}
