use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::SeifertClosed;
use crate::json::{int, int_vec};
use crate::{Error, Int, Rational, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ReducibleKind {
    #[serde(rename = "S2xS1")]
    S2xS1,
    #[serde(rename = "RP3#RP3")]
    RP3RP3,
}

/// The most specific of the recognized descriptions that applies.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Recognition {
    /// `L(p, q)` with `q` in the canonical form of [`canonical_lens`].
    Lens {
        #[serde(with = "int")]
        p: Int,
        #[serde(with = "int")]
        q: Int,
    },
    /// Finite fundamental group; `cones` are the cone multiplicities.
    Elliptic {
        base: String,
        #[serde(with = "int_vec")]
        cones: Vec<Int>,
    },
    Reducible { manifold: ReducibleKind },
    Other,
}

impl Recognition {
    pub fn is_irreducible(&self) -> bool {
        !matches!(self, Recognition::Reducible { .. })
    }

    pub fn is_lens(&self) -> bool {
        matches!(self, Recognition::Lens { .. })
    }

    pub fn is_elliptic(&self) -> bool {
        matches!(self, Recognition::Elliptic { .. })
    }
}

impl fmt::Display for ReducibleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReducibleKind::S2xS1 => write!(f, "S2xS1"),
            ReducibleKind::RP3RP3 => write!(f, "RP3#RP3"),
        }
    }
}

impl fmt::Display for Recognition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Recognition::Lens { p, q } => write!(f, "L({p},{q})"),
            Recognition::Elliptic { base, cones } => {
                let cones: Vec<String> = cones.iter().map(Int::to_string).collect();
                write!(f, "elliptic, base {base}({})", cones.join(","))
            }
            Recognition::Reducible { manifold } => write!(f, "reducible, {manifold}"),
            Recognition::Other => write!(f, "not recognized"),
        }
    }
}

/// Canonical representative of the homeomorphism class of `L(p, q)`: the
/// least residue among `±q^{±1} mod p`. `L(0, 1)` and `L(1, 0)` are fixed.
pub fn canonical_lens(p: &Int, q: &Int) -> (Int, Int) {
    let p = p.abs();
    if p.is_zero() {
        return (p, Int::one());
    }
    if p.is_one() {
        return (p, Int::zero());
    }
    let q = q.mod_floor(&p);
    let inv = mod_inverse(&q, &p).expect("q is a unit mod p");
    let best = [q.clone(), (-&q).mod_floor(&p), inv.clone(), (-inv).mod_floor(&p)]
        .into_iter()
        .min()
        .expect("non-empty");
    (p, best)
}

/// Inverse of `a` modulo `m`, if it exists.
pub(crate) fn mod_inverse(a: &Int, m: &Int) -> Option<Int> {
    let e = a.extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

/// `(p, q)` of the lens space `S²(b0; (a1, b1), (a2, b2))`, uncanonicalized.
fn lens_parameters(m: &SeifertClosed) -> (Int, Int) {
    let mut fibers: Vec<(Int, Int)> = m.fibers().iter().map(|f| (f.a.clone(), f.b.clone())).collect();
    while fibers.len() < 2 {
        fibers.push((Int::one(), Int::zero()));
    }
    let (a1, b1) = &fibers[0];
    let (a2, b2) = &fibers[1];
    // solid torus around the first fiber, with b0 absorbed; meridian (a1, -b1')
    let b1 = b1 + m.b0() * a1;
    let e = a1.extended_gcd(&b1);
    debug_assert!(e.gcd.is_one());
    // λ = (l1, l2) with a1·l2 + b1·l1 = 1, so det[μ; λ] = 1
    let (l1, l2) = (e.y, e.x);
    let s = a2 * &l2 - b2 * &l1;
    let t = a1 * b2 + a2 * &b1;
    let p = t.abs();
    if p.is_zero() {
        return (p, Int::one());
    }
    let q = if t.is_negative() { -s } else { s };
    (p.clone(), q.mod_floor(&p))
}

pub fn recognize(m: &SeifertClosed) -> Result<Recognition> {
    if !m.is_normalized() {
        return Err(Error::NotNormalized);
    }
    let base = m.base();
    let cones = base.cone_points().to_vec();
    let orientable_sphere = base.is_orientable() && base.genus() == 0;
    if orientable_sphere && cones.len() <= 2 {
        let (p, q) = lens_parameters(m);
        if p.is_zero() {
            return Ok(Recognition::Reducible {
                manifold: ReducibleKind::S2xS1,
            });
        }
        let (p, q) = canonical_lens(&p, &q);
        return Ok(Recognition::Lens { p, q });
    }
    if base.is_projective_plane() && cones.is_empty() && m.b0().is_zero() {
        return Ok(Recognition::Reducible {
            manifold: ReducibleKind::RP3RP3,
        });
    }
    let spherical_triple = orientable_sphere && cones.len() == 3 && {
        let sum: Rational = cones.iter().map(|a| Rational::new(Int::one(), a.clone())).sum();
        sum > Rational::one()
    };
    if spherical_triple || (base.is_projective_plane() && cones.len() <= 1) {
        return Ok(Recognition::Elliptic {
            base: base.surface_name(),
            cones,
        });
    }
    Ok(Recognition::Other)
}
