//! L-space certificates for closed Seifert fibered rational homology
//! spheres.
//!
//! Over a non-orientable base every rational homology sphere is an L-space.
//! Over `S²` the manifold is an L-space exactly when neither orientation
//! carries a transverse foliation, which is decided by the realizability
//! test of [`foliation_realizable`] on the normalized invariants
//! `M(e0; r1, ..., rk)`, `0 < ri < 1`.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::json::{int, int_vec, opt_int_pair, rational_vec};
use crate::seifert::{canonical_lens, Recognition, SeifertClosed};
use crate::{Error, Int, Rational, Result};

pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    LSpace,
    NotLSpace,
    Undetermined,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Rule {
    NonOrientableBase,
    LensSpace,
    Elliptic,
    SphereBaseCriterion,
}

/// Data backing a verdict, checkable without the original manifold.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Base {
        genus: usize,
        orientable: bool,
        #[serde(with = "int_vec")]
        cones: Vec<Int>,
        /// Order of H1, which must be finite.
        #[serde(with = "int")]
        h1_order: Int,
    },
    Lens {
        #[serde(with = "int_vec")]
        cones: Vec<Int>,
        #[serde(with = "int")]
        p: Int,
        #[serde(with = "int")]
        q: Int,
    },
    Triple {
        #[serde(with = "int_vec")]
        cones: Vec<Int>,
    },
    Foliation {
        #[serde(with = "int")]
        e0: Int,
        #[serde(with = "rational_vec")]
        r: Vec<Rational>,
        /// The invariants on which realizability was tested (the original
        /// ones, or `1 - ri` for the reversed orientation), if any.
        #[serde(with = "rational_vec")]
        tested: Vec<Rational>,
        /// A realizing `(a, m)`, when one exists.
        #[serde(with = "opt_int_pair")]
        realization: Option<(Int, Int)>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LSpaceCertificate {
    pub verdict: Verdict,
    pub rule: Rule,
    pub witness: Witness,
}

impl fmt::Display for LSpaceCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} by {:?}", self.verdict, self.rule)?;
        match &self.witness {
            Witness::Base { genus, cones, h1_order, .. } => {
                write!(f, ": non-orientable base of genus {genus}, cones {}, |H1| = {h1_order}", list(cones))
            }
            Witness::Lens { p, q, .. } => write!(f, ": L({p},{q})"),
            Witness::Triple { cones } => write!(f, ": spherical triple {}", list(cones)),
            Witness::Foliation { e0, r, realization, .. } => {
                let r: Vec<String> = r.iter().map(Rational::to_string).collect();
                write!(f, ": e0 = {e0}, r = [{}]", r.join(", "))?;
                match realization {
                    Some((a, m)) => write!(f, ", realized by {a}/{m}"),
                    None => write!(f, ", no transverse foliation"),
                }
            }
        }
    }
}

fn list(v: &[Int]) -> String {
    let s: Vec<String> = v.iter().map(Int::to_string).collect();
    format!("({})", s.join(","))
}

impl LSpaceCertificate {
    /// Checks that the witness supports the verdict under the stated rule.
    pub fn revalidate(&self) -> bool {
        match (&self.rule, &self.witness) {
            (Rule::NonOrientableBase, Witness::Base { orientable, h1_order, .. }) => {
                !orientable && h1_order.is_positive() && self.verdict == Verdict::LSpace
            }
            (Rule::LensSpace, Witness::Lens { cones, p, q }) => {
                cones.len() <= 2
                    && p.is_positive()
                    && p.gcd(q).is_one()
                    && self.verdict == Verdict::LSpace
            }
            (Rule::Elliptic, Witness::Triple { cones }) => {
                cones.len() == 3
                    && cones.iter().all(|a| *a >= Int::from(2))
                    && spherical(cones)
                    && self.verdict == Verdict::LSpace
            }
            (Rule::SphereBaseCriterion, Witness::Foliation { e0, r, tested, realization }) => {
                let in_range = r.iter().all(|x| x.is_positive() && *x < Rational::one());
                if !in_range {
                    return false;
                }
                let expected = match sphere_dispatch(e0, r) {
                    Dispatch::NoFoliation => Some(Verdict::LSpace),
                    Dispatch::Foliation => Some(Verdict::NotLSpace),
                    Dispatch::Test(t) if &t != tested => None,
                    Dispatch::Test(t) => match realization {
                        Some((a, m)) => is_realization(&t, a, m).then_some(Verdict::NotLSpace),
                        None => match find_realization(&t, DEFAULT_BUDGET) {
                            Ok(None) => Some(Verdict::LSpace),
                            _ => None,
                        },
                    },
                };
                expected == Some(self.verdict)
            }
            _ => false,
        }
    }
}

fn spherical(cones: &[Int]) -> bool {
    let s: Rational = cones.iter().map(|a| Rational::new(Int::one(), a.clone())).sum();
    s > Rational::one()
}

pub fn is_qhs(m: &SeifertClosed) -> bool {
    m.h1().is_finite()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifyOptions {
    /// Use the lens-space and elliptic rules before the general criterion.
    pub shortcuts: bool,
    /// Candidate budget for the realizability search.
    pub budget: u64,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions {
            shortcuts: true,
            budget: DEFAULT_BUDGET,
        }
    }
}

pub fn certify(m: &SeifertClosed) -> Result<LSpaceCertificate> {
    certify_with(m, &CertifyOptions::default())
}

pub fn certify_with(m: &SeifertClosed, options: &CertifyOptions) -> Result<LSpaceCertificate> {
    let h1 = m.h1();
    let Some(order) = h1.order() else {
        return Err(Error::NotQhs);
    };
    let m = m.normalized();
    let base = m.base();
    let cones = base.cone_points().to_vec();
    if !base.is_orientable() {
        return Ok(LSpaceCertificate {
            verdict: Verdict::LSpace,
            rule: Rule::NonOrientableBase,
            witness: Witness::Base {
                genus: base.genus(),
                orientable: false,
                cones,
                h1_order: order,
            },
        });
    }
    // a QHS with orientable base has base S²
    debug_assert_eq!(base.genus(), 0);
    if options.shortcuts {
        match m.recognize()? {
            Recognition::Lens { p, q } => {
                return Ok(LSpaceCertificate {
                    verdict: Verdict::LSpace,
                    rule: Rule::LensSpace,
                    witness: Witness::Lens { cones, p, q },
                });
            }
            Recognition::Elliptic { .. } if cones.len() == 3 => {
                return Ok(LSpaceCertificate {
                    verdict: Verdict::LSpace,
                    rule: Rule::Elliptic,
                    witness: Witness::Triple { cones },
                });
            }
            _ => {}
        }
    }
    let e0 = m.b0().clone();
    let r: Vec<Rational> = m.fibers().iter().map(|f| f.rational()).collect();
    let (verdict, tested, realization) = match sphere_dispatch(&e0, &r) {
        Dispatch::NoFoliation => (Verdict::LSpace, vec![], None),
        Dispatch::Foliation => (Verdict::NotLSpace, vec![], None),
        Dispatch::Test(t) => {
            let found = find_realization(&t, options.budget)?;
            let verdict = if found.is_some() { Verdict::NotLSpace } else { Verdict::LSpace };
            (verdict, t, found)
        }
    };
    Ok(LSpaceCertificate {
        verdict,
        rule: Rule::SphereBaseCriterion,
        witness: Witness::Foliation {
            e0,
            r,
            tested,
            realization,
        },
    })
}

enum Dispatch {
    NoFoliation,
    Foliation,
    Test(Vec<Rational>),
}

/// Which case of the transverse-foliation criterion applies to
/// `M(e0; r1, ..., rk)`, for either orientation. Reversal sends `e0` to
/// `-k - e0` and each `ri` to `1 - ri`.
fn sphere_dispatch(e0: &Int, r: &[Rational]) -> Dispatch {
    let k = Int::from(r.len());
    if !e0.is_negative() || *e0 <= -&k {
        return Dispatch::NoFoliation;
    }
    if *e0 == Int::from(-1) {
        return Dispatch::Test(r.to_vec());
    }
    if *e0 == Int::one() - &k {
        return Dispatch::Test(r.iter().map(|x| Rational::one() - x).collect());
    }
    Dispatch::Foliation
}

/// Whether coprime `0 < a < m` exist with, after reordering,
/// `r1 < a/m`, `r2 < (m-a)/m` and `ri < 1/m` for `i ≥ 3`.
pub fn foliation_realizable(r: &[Rational]) -> Result<bool> {
    Ok(find_realization(r, DEFAULT_BUDGET)?.is_some())
}

/// The least `(a, m)` (by `m`, then `a`) realizing `r`.
pub fn find_realization(r: &[Rational], budget: u64) -> Result<Option<(Int, Int)>> {
    if r.len() < 3 {
        return Ok(None);
    }
    let mut r = r.to_vec();
    r.sort_by(|a, b| b.cmp(a));
    // m·r3 < 1 bounds the search; realizing denominators never exceed the
    // product of the denominators of the ri
    let r3 = &r[2];
    if !r3.is_positive() {
        return Err(Error::InvalidSeifert("realizability needs 0 < ri < 1".into()));
    }
    let by_r3 = (r3.denom() + r3.numer() - Int::one()) / r3.numer();
    let cap: Int = r.iter().map(|x| x.denom().clone()).product::<Int>().min(by_r3);
    let Some(cap) = cap.to_u64() else {
        return Err(Error::BudgetExceeded { budget });
    };
    let mut steps = 0u64;
    for m in 2..=cap {
        let mm = Int::from(m);
        let scaled = |x: &Rational| x * Rational::from_integer(mm.clone());
        if scaled(r3) >= Rational::one() {
            continue;
        }
        // r1 < a/m  and  r2 < (m-a)/m: a in (m·r1, m - m·r2)
        let lo: Int = scaled(&r[0]).floor().to_integer() + 1;
        let hi: Int = &mm - scaled(&r[1]).floor().to_integer() - 1;
        let mut a = lo.max(Int::one());
        while a <= hi && a < mm {
            steps += 1;
            if steps > budget {
                return Err(Error::BudgetExceeded { budget });
            }
            if a.gcd(&mm).is_one() && is_realization(&r, &a, &mm) {
                return Ok(Some((a, mm)));
            }
            a += 1;
        }
    }
    Ok(None)
}

/// Checks `(a, m)` against the sorted pattern.
fn is_realization(r: &[Rational], a: &Int, m: &Int) -> bool {
    if r.len() < 3 || !a.is_positive() || a >= m || !a.gcd(m).is_one() {
        return false;
    }
    let mut r = r.to_vec();
    r.sort_by(|a, b| b.cmp(a));
    let frac = |n: Int| Rational::new(n, m.clone());
    r[0] < frac(a.clone())
        && r[1] < frac(m - a)
        && r[2..].iter().all(|x| *x < frac(Int::one()))
}

/// Lens parameters `(p, q)` when the certificate came from the lens rule.
pub fn lens_witness(c: &LSpaceCertificate) -> Option<(Int, Int)> {
    match &c.witness {
        Witness::Lens { p, q, .. } => Some(canonical_lens(p, q)),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn closed(genus: usize, orientable: bool, b0: i64, fibers: &[(i64, i64)]) -> SeifertClosed {
        SeifertClosed::from_i64(genus, orientable, b0, fibers).unwrap()
    }

    fn rat(v: &[(i64, i64)]) -> Vec<Rational> {
        v.iter().map(|&(n, d)| Rational::new(n.into(), d.into())).collect()
    }

    #[test]
    fn qhs_examples() {
        assert!(is_qhs(&SeifertClosed::lens_space(7, 2).unwrap()));
        assert!(!is_qhs(&SeifertClosed::lens_space(0, 1).unwrap()));
        assert!(is_qhs(&closed(1, false, 0, &[(3, 1), (5, 2)])));
        assert!(!is_qhs(&closed(2, false, 0, &[(3, 1)])));
        assert!(!is_qhs(&closed(1, true, 1, &[(3, 1)])));
        assert_eq!(certify(&closed(0, true, 0, &[])), Err(Error::NotQhs));
    }

    #[test]
    fn certify_examples() {
        let c = certify(&closed(1, false, 0, &[(2, 1), (3, 1)])).unwrap();
        assert_eq!((c.verdict, c.rule), (Verdict::LSpace, Rule::NonOrientableBase));
        assert!(c.revalidate());

        for n in 2..10 {
            let c = certify(&closed(0, true, -1, &[(2, 1), (2, 1), (n, 1)])).unwrap();
            assert_eq!((c.verdict, c.rule), (Verdict::LSpace, Rule::Elliptic));
            assert!(c.revalidate());
        }

        let c = certify(&closed(0, true, 0, &[(5, 2)])).unwrap();
        assert_eq!((c.verdict, c.rule), (Verdict::LSpace, Rule::LensSpace));
        assert_eq!(lens_witness(&c), Some((Int::from(2), Int::one())));
        assert!(c.revalidate());

        let m = closed(0, true, -1, &[(2, 1), (3, 1), (7, 1)]);
        let c = certify(&m).unwrap();
        assert_eq!((c.verdict, c.rule), (Verdict::NotLSpace, Rule::SphereBaseCriterion));
        match &c.witness {
            Witness::Foliation { realization, .. } => {
                assert_eq!(realization, &Some((Int::from(3), Int::from(5))))
            }
            w => panic!("{w:?}"),
        }
        assert!(c.revalidate());
        let r = certify(&m.reverse_orientation()).unwrap();
        assert_eq!(r.verdict, Verdict::NotLSpace);
        assert!(r.revalidate());
    }

    #[test]
    fn realizability_examples() {
        assert!(!foliation_realizable(&[]).unwrap());
        assert!(foliation_realizable(&rat(&[(1, 2), (1, 3), (1, 7)])).unwrap());
        assert!(!foliation_realizable(&rat(&[(1, 2), (1, 3), (1, 5)])).unwrap());
        for n in 2..30 {
            assert!(!foliation_realizable(&rat(&[(1, 2), (1, 2), (1, n)])).unwrap());
        }
        assert_eq!(
            find_realization(&rat(&[(1, 2), (1, 3), (1, 7)]), 0),
            Err(Error::BudgetExceeded { budget: 0 })
        );
        assert_eq!(
            find_realization(&rat(&[(1, 7), (1, 2), (1, 3)]), 1),
            Ok(Some((Int::from(3), Int::from(5))))
        );
    }

    #[test]
    fn dispatch_ranges() {
        // four cone points: e0 = -2 always foliates, e0 = 0 never does
        let four = [(2, 1), (3, 1), (5, 1), (7, 1)];
        let c = certify(&closed(0, true, -2, &four)).unwrap();
        assert_eq!(c.verdict, Verdict::NotLSpace);
        assert!(c.revalidate());
        let c = certify(&closed(0, true, 0, &four)).unwrap();
        assert_eq!(c.verdict, Verdict::LSpace);
        assert!(c.revalidate());
        let c = certify(&closed(0, true, -4, &four)).unwrap();
        assert_eq!(c.verdict, Verdict::LSpace);
    }

    #[test]
    fn shortcuts_agree_with_criterion() {
        let off = CertifyOptions {
            shortcuts: false,
            ..Default::default()
        };
        for (b0, f) in [
            (-1, vec![(2, 1), (3, 1), (5, 1)]),
            (-1, vec![(2, 1), (3, 1), (4, 1)]),
            (-2, vec![(2, 1), (3, 2), (5, 4)]),
            (0, vec![(7, 3)]),
            (-1, vec![(2, 1), (2, 1), (9, 2)]),
        ] {
            let m = closed(0, true, b0, &f);
            let c = certify_with(&m, &off).unwrap();
            assert_eq!(c.rule, Rule::SphereBaseCriterion);
            assert_eq!(c.verdict, Verdict::LSpace, "{m}");
            assert!(c.revalidate());
        }
    }

    #[test]
    fn tampered_certificates_fail() {
        let m = closed(0, true, -1, &[(2, 1), (3, 1), (7, 1)]);
        let mut c = certify(&m).unwrap();
        c.verdict = Verdict::LSpace;
        assert!(!c.revalidate());
        let mut c = certify(&closed(1, false, 0, &[(2, 1)])).unwrap();
        c.witness = Witness::Triple { cones: vec![Int::from(2); 3] };
        assert!(!c.revalidate());
        let c = LSpaceCertificate {
            verdict: Verdict::LSpace,
            rule: Rule::Elliptic,
            witness: Witness::Triple { cones: [2, 3, 7].map(Int::from).to_vec() },
        };
        assert!(!c.revalidate());
    }

    #[test]
    fn json_shape() {
        let c = certify(&closed(1, false, 0, &[(2, 1), (3, 1)])).unwrap();
        let text = serde_json::to_string(&c).unwrap();
        assert_eq!(
            text,
            r#"{"verdict":"LSpace","rule":"NonOrientableBase","witness":{"kind":"base","genus":1,"orientable":false,"cones":[2,3],"h1_order":24}}"#
        );
        let back: LSpaceCertificate = serde_json::from_str(&text).unwrap();
        assert_eq!(back, c);
    }
}
