//! Smith normal form over the integers.

use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::matrix::IntMatrix;
use crate::Int;

/// `u · a · v = d` with `u`, `v` unimodular and `d` diagonal, its diagonal
/// entries non-negative and each dividing the next.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    pub fn diagonal(&self) -> Vec<Int> {
        let n = self.d.rows().min(self.d.cols());
        (0..n).map(|i| self.d[(i, i)].clone()).collect()
    }

    /// Number of non-zero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diagonal().iter().take_while(|x| !x.is_zero()).count()
    }

    /// Checks every defining property against the input matrix.
    pub fn verify(&self, a: &IntMatrix) -> bool {
        let diag = self.diagonal();
        let chain = diag.windows(2).all(|w| {
            if w[0].is_zero() {
                w[1].is_zero()
            } else {
                w[1].is_multiple_of(&w[0])
            }
        });
        self.u.is_unimodular()
            && self.v.is_unimodular()
            && self.d.is_diagonal()
            && diag.iter().all(|x| !x.is_negative())
            && chain
            && &(&self.u * a) * &self.v == self.d
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);

    for t in 0..m.min(n) {
        let Some((pi, pj)) = smallest_entry(&d, t..m, t..n) else {
            break;
        };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            // bring the smallest entry of row t / column t to the pivot
            let (ci, _) = smallest_entry(&d, t..m, t..t + 1).expect("pivot column is non-zero");
            let (_, rj) = smallest_entry(&d, t..t + 1, t..n).expect("pivot row is non-zero");
            if d[(ci, t)].abs() <= d[(t, rj)].abs() {
                d.swap_rows(t, ci);
                u.swap_rows(t, ci);
            } else {
                d.swap_cols(t, rj);
                v.swap_cols(t, rj);
            }

            let pivot = d[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..m {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = -d[(i, t)].div_floor(&pivot);
                d.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                clean &= d[(i, t)].is_zero();
            }
            for j in t + 1..n {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = -d[(t, j)].div_floor(&pivot);
                d.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                clean &= d[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }

            // the pivot must divide the whole remaining block
            let bad = (t + 1..m).find(|&i| {
                (t + 1..n).any(|j| !d[(i, j)].is_multiple_of(&pivot))
            });
            match bad {
                Some(i) => {
                    let one = Int::from(1);
                    d.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }

        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }

    SmithForm { u, d, v }
}

/// Position of the non-zero entry of least absolute value in the block
/// `rows × cols` (first in row-major order on ties).
fn smallest_entry(
    d: &IntMatrix,
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in rows {
        for j in cols.clone() {
            let x = &d[(i, j)];
            if x.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| x.abs() < d[(bi, bj)].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn diag(a: &IntMatrix) -> Vec<i64> {
        let s = smith_normal_form(a);
        assert!(s.verify(a), "SNF identities fail for {a}");
        s.diagonal().iter().map(|x| x.try_into().unwrap()).collect()
    }

    #[test]
    fn hand_reductions() {
        // [[2,2]]: column op c2 -= c1 gives [[2,0]]
        assert_eq!(diag(&IntMatrix::from_i64(&[&[2, 2]])), vec![2]);
        // [[2,0],[1,2]]: gcd of entries 1, |det| = 4
        assert_eq!(diag(&IntMatrix::from_i64(&[&[2, 0], &[1, 2]])), vec![1, 4]);
        assert_eq!(diag(&IntMatrix::identity(3)), vec![1, 1, 1]);
        assert_eq!(smith_normal_form(&IntMatrix::identity(3)).d, IntMatrix::identity(3));
        assert_eq!(diag(&IntMatrix::from_i64(&[&[2, 2, 0], &[1, 1, 2]])), vec![1, 4]);
        assert_eq!(diag(&IntMatrix::from_i64(&[&[6, 0], &[0, 4]])), vec![2, 12]);
        assert_eq!(diag(&IntMatrix::from_i64(&[&[0, 0], &[0, 0]])), vec![0, 0]);
    }

    #[test]
    fn empty_shapes() {
        let a = IntMatrix::zeros(0, 3);
        let s = smith_normal_form(&a);
        assert!(s.verify(&a));
        assert_eq!(s.v, IntMatrix::identity(3));
        let b = IntMatrix::zeros(2, 0);
        assert!(smith_normal_form(&b).verify(&b));
    }

    fn matrix_strategy() -> impl Strategy<Value = IntMatrix> {
        (1usize..=8, 1usize..=8).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-20i64..=20, r * c).prop_map(move |v| {
                IntMatrix::from_rows(
                    v.chunks(c).map(|row| row.iter().map(|&x| Int::from(x)).collect()).collect(),
                    c,
                )
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn snf_identities(a in matrix_strategy()) {
            let s = smith_normal_form(&a);
            prop_assert!(s.verify(&a));
            if a.rows() == a.cols() {
                let prod: Int = s.diagonal().iter().product();
                prop_assert_eq!(prod, a.determinant().abs());
            }
        }
    }
}
