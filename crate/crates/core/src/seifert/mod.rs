//! Seifert fibered manifolds as data, Dehn filling, homology and
//! recognition of small closed pieces.
//!
//! Conventions. An exceptional fiber with invariants `(a, b)` contributes a
//! relation `c^a h^b = 1`, where `c` is the boundary of a disk around the cone
//! point and `h` the regular fiber. The integer `b0` behaves like an extra
//! fiber `(1, b0)`. The product of all boundary words of the base (cone
//! circles, then boundary circles) times `h^-b0` is the surface relator, so
//! the Euler number is `b0 + Σ b/a`.
//!
//! On a boundary torus the section curve `d` and the fiber `h` are the
//! framing basis. Filling along `α = pσ + qφ` adds the fiber `(p, q)`.

mod recognize;

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::groups::{AbelianGroup, PeripheralPair, Presentation, Word};
use crate::json::{int, int_pair, int_vec};
use crate::matrix::IntMatrix;
use crate::slopes::{self, Slope};
use crate::{Error, Int, Rational, Result};

pub use recognize::{canonical_lens, recognize, Recognition, ReducibleKind};

/// Leaf space of a Seifert fibration. For non-orientable bases `genus`
/// counts cross-caps.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BaseOrbifold {
    genus: usize,
    orientable: bool,
    boundary_count: usize,
    cone_points: Vec<Int>,
}

impl BaseOrbifold {
    /// Multiplicity-1 points are dropped; the rest are sorted.
    pub fn new(genus: usize, orientable: bool, boundary_count: usize, cones: Vec<Int>) -> Result<Self> {
        if !orientable && genus == 0 {
            return Err(Error::InvalidSeifert(
                "a non-orientable base needs at least one cross-cap".into(),
            ));
        }
        if let Some(c) = cones.iter().find(|c| !c.is_positive()) {
            return Err(Error::InvalidSeifert(format!("cone multiplicity {c} is not positive")));
        }
        let mut cone_points: Vec<Int> = cones.into_iter().filter(|c| !c.is_one()).collect();
        cone_points.sort();
        Ok(BaseOrbifold {
            genus,
            orientable,
            boundary_count,
            cone_points,
        })
    }

    pub fn sphere(cones: Vec<Int>) -> Self {
        Self::new(0, true, 0, cones).expect("valid base")
    }

    pub fn projective_plane(cones: Vec<Int>) -> Self {
        Self::new(1, false, 0, cones).expect("valid base")
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn is_orientable(&self) -> bool {
        self.orientable
    }

    pub fn boundary_count(&self) -> usize {
        self.boundary_count
    }

    pub fn cone_points(&self) -> &[Int] {
        &self.cone_points
    }

    pub fn is_sphere(&self) -> bool {
        self.orientable && self.genus == 0 && self.boundary_count == 0
    }

    pub fn is_projective_plane(&self) -> bool {
        !self.orientable && self.genus == 1 && self.boundary_count == 0
    }

    /// Orbifold Euler characteristic `χ(surface) - Σ (1 - 1/a)`.
    pub fn euler_characteristic(&self) -> Rational {
        let g = self.genus as i64;
        let chi = if self.orientable { 2 - 2 * g } else { 2 - g } - self.boundary_count as i64;
        self.cone_points.iter().fold(Rational::from_integer(chi.into()), |acc, a| {
            acc - (Rational::one() - Rational::new(Int::one(), a.clone()))
        })
    }

    fn surface_name(&self) -> String {
        match (self.orientable, self.genus, self.boundary_count) {
            (true, 0, 0) => "S2".into(),
            (true, 0, 1) => "D2".into(),
            (true, 0, 2) => "annulus".into(),
            (false, 1, 0) => "RP2".into(),
            (false, 1, 1) => "Mobius".into(),
            (true, g, 0) => format!("F{g}"),
            (false, g, 0) => format!("N{g}"),
            (true, g, k) => format!("F{g}-{k}"),
            (false, g, k) => format!("N{g}-{k}"),
        }
    }
}

impl fmt::Display for BaseOrbifold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.surface_name())?;
        if !self.cone_points.is_empty() {
            let c: Vec<String> = self.cone_points.iter().map(Int::to_string).collect();
            write!(f, "({})", c.join(","))?;
        }
        Ok(())
    }
}

/// Unnormalized Seifert invariants `(a, b)` of an exceptional fiber,
/// `a ≥ 1` and `gcd(a, b) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SeifertPair {
    pub a: Int,
    pub b: Int,
}

impl SeifertPair {
    /// Flips signs so that `a > 0`.
    pub fn new(a: impl Into<Int>, b: impl Into<Int>) -> Result<Self> {
        let (mut a, mut b) = (a.into(), b.into());
        if a.is_zero() {
            return Err(Error::InvalidSeifert("fiber multiplicity 0".into()));
        }
        if !a.gcd(&b).is_one() {
            return Err(Error::InvalidSeifert(format!("fiber ({a}, {b}) is not primitive")));
        }
        if a.is_negative() {
            a = -a;
            b = -b;
        }
        Ok(SeifertPair { a, b })
    }

    pub fn rational(&self) -> Rational {
        Rational::new(self.b.clone(), self.a.clone())
    }
}

impl fmt::Display for SeifertPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

impl Serialize for SeifertPair {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        int_pair::serialize(&[self.a.clone(), self.b.clone()], s)
    }
}

impl<'de> Deserialize<'de> for SeifertPair {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [a, b] = int_pair::deserialize(d)?;
        SeifertPair::new(a, b).map_err(serde::de::Error::custom)
    }
}

/// Section and fiber curves of a boundary torus, as integer vectors in a
/// reference basis of its first homology (for instance the `(mu, lambda)`
/// basis of a peripheral pair). Slopes given to [`SeifertBounded::fill`] are
/// read in the reference basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Framing {
    #[serde(with = "int_pair")]
    pub section: [Int; 2],
    #[serde(with = "int_pair")]
    pub fiber: [Int; 2],
}

impl Framing {
    /// Requires `det[section fiber] = ±1`.
    pub fn new(section: [Int; 2], fiber: [Int; 2]) -> Result<Self> {
        let f = Framing { section, fiber };
        let d = f.determinant();
        if !d.abs().is_one() {
            return Err(Error::NotUnimodular(d));
        }
        Ok(f)
    }

    pub fn from_i64(section: [i64; 2], fiber: [i64; 2]) -> Result<Self> {
        Self::new(section.map(Int::from), fiber.map(Int::from))
    }

    /// The reference basis itself: section `(1, 0)`, fiber `(0, 1)`.
    pub fn identity() -> Self {
        Self::from_i64([1, 0], [0, 1]).expect("unimodular")
    }

    pub fn determinant(&self) -> Int {
        &self.section[0] * &self.fiber[1] - &self.section[1] * &self.fiber[0]
    }

    pub fn fiber_slope(&self) -> Slope {
        slopes::normalize(self.fiber[0].clone(), self.fiber[1].clone()).expect("unimodular framing")
    }

    pub fn section_slope(&self) -> Slope {
        slopes::normalize(self.section[0].clone(), self.section[1].clone()).expect("unimodular framing")
    }

    /// `(p, q)` with `α = pσ + qφ`, signed so that `p ≥ 0` (and `q > 0` when
    /// `p = 0`).
    pub fn coordinates(&self, alpha: &Slope) -> (Int, Int) {
        let [x, y] = alpha.vector();
        let d = self.determinant();
        let (s, f) = (&self.section, &self.fiber);
        let mut p = &d * (&f[1] * &x - &f[0] * &y);
        let mut q = &d * (&s[0] * &y - &s[1] * &x);
        if p.is_negative() || (p.is_zero() && q.is_negative()) {
            p = -p;
            q = -q;
        }
        (p, q)
    }

    /// The same torus with section `σ + kφ`.
    pub fn twisted(&self, k: &Int) -> Self {
        Framing {
            section: [
                &self.section[0] + k * &self.fiber[0],
                &self.section[1] + k * &self.fiber[1],
            ],
            fiber: self.fiber.clone(),
        }
    }

    /// Reference basis vectors written in `(σ, φ)` coordinates.
    fn reference_in_framing(&self) -> [(Int, Int); 2] {
        let d = self.determinant();
        let (s, f) = (&self.section, &self.fiber);
        [
            (&d * &f[1], -&d * &s[1]),
            (-&d * &f[0], &d * &s[0]),
        ]
    }
}

/// Seifert data shared by closed and bounded manifolds.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Invariants {
    base: BaseOrbifold,
    b0: Int,
    fibers: Vec<SeifertPair>,
}

impl Invariants {
    /// Absorbs multiplicity-1 fibers into `b0` and syncs the cone list.
    fn new(genus: usize, orientable: bool, boundaries: usize, b0: Int, fibers: Vec<SeifertPair>) -> Result<Self> {
        let mut b0 = b0;
        let mut kept = Vec::with_capacity(fibers.len());
        for f in fibers {
            if f.a.is_one() {
                b0 += &f.b;
            } else {
                kept.push(f);
            }
        }
        let base = BaseOrbifold::new(genus, orientable, boundaries, kept.iter().map(|f| f.a.clone()).collect())?;
        Ok(Invariants { base, b0, fibers: kept })
    }

    fn euler_number(&self) -> Rational {
        self.fibers
            .iter()
            .fold(Rational::from_integer(self.b0.clone()), |e, f| e + f.rational())
    }

    /// Generators: surface generators (`a_i, b_i` or `v_i`), then `c_j`, then
    /// boundary `d_i`, then `h`.
    fn generator_names(&self) -> Vec<String> {
        let b = &self.base;
        let mut names = vec![];
        if b.orientable {
            for i in 1..=b.genus {
                names.push(format!("a{i}"));
                names.push(format!("b{i}"));
            }
        } else {
            names.extend((1..=b.genus).map(|i| format!("v{i}")));
        }
        names.extend((1..=self.fibers.len()).map(|j| format!("c{j}")));
        names.extend((1..=b.boundary_count).map(|i| format!("d{i}")));
        names.push("h".into());
        names
    }

    fn surface_gens(&self) -> usize {
        if self.base.orientable {
            2 * self.base.genus
        } else {
            self.base.genus
        }
    }

    fn fiber_gen(&self, j: usize) -> usize {
        self.surface_gens() + j
    }

    fn boundary_gen(&self, i: usize) -> usize {
        self.surface_gens() + self.fibers.len() + i
    }

    fn h(&self) -> usize {
        self.surface_gens() + self.fibers.len() + self.base.boundary_count
    }

    fn relation_matrix(&self) -> IntMatrix {
        let n = self.h() + 1;
        let h = self.h();
        let mut rows = vec![];
        if !self.base.orientable {
            for _ in 0..self.base.genus {
                let mut r = vec![Int::zero(); n];
                r[h] = Int::from(2);
                rows.push(r);
            }
        }
        for (j, f) in self.fibers.iter().enumerate() {
            let mut r = vec![Int::zero(); n];
            r[self.fiber_gen(j)] = f.a.clone();
            r[h] = f.b.clone();
            rows.push(r);
        }
        let mut r = vec![Int::zero(); n];
        if !self.base.orientable {
            for x in r.iter_mut().take(self.base.genus) {
                *x = Int::from(2);
            }
        }
        for j in 0..self.fibers.len() {
            r[self.fiber_gen(j)] = Int::one();
        }
        for i in 0..self.base.boundary_count {
            r[self.boundary_gen(i)] = Int::one();
        }
        r[h] = -&self.b0;
        rows.push(r);
        IntMatrix::from_rows(rows, n)
    }

    fn h1(&self) -> AbelianGroup {
        let m = self.relation_matrix();
        let s = crate::groups::smith_normal_form(&m);
        AbelianGroup::from_smith_diagonal(&s.diagonal(), m.cols())
    }

    fn presentation(&self, framings: &[Framing]) -> Result<Presentation> {
        let names = self.generator_names();
        let h = Word::generator(self.h());
        let mut relators = vec![];
        let mut product = Word::identity();
        if self.base.orientable {
            for i in 0..self.base.genus {
                let (a, b) = (Word::generator(2 * i), Word::generator(2 * i + 1));
                relators.push(Word::commutator(&a, &h));
                relators.push(Word::commutator(&b, &h));
                product = product * Word::commutator(&a, &b);
            }
        } else {
            for i in 0..self.base.genus {
                let v = Word::generator(i);
                relators.push(&(&(&v * &h) * &v.inverse()) * &h);
                product = product * v.pow(2);
            }
        }
        for (j, f) in self.fibers.iter().enumerate() {
            let c = Word::generator(self.fiber_gen(j));
            relators.push(Word::commutator(&c, &h));
            relators.push(c.pow_int(&f.a)? * h.pow_int(&f.b)?);
            product = product * c;
        }
        let mut peripherals = vec![];
        for (i, fr) in framings.iter().enumerate() {
            let d = Word::generator(self.boundary_gen(i));
            relators.push(Word::commutator(&d, &h));
            product = &product * &d;
            let word = |(p, q): &(Int, Int)| -> Result<Word> { Ok(d.pow_int(p)? * h.pow_int(q)?) };
            let [e1, e2] = fr.reference_in_framing();
            peripherals.push(PeripheralPair::new(word(&e1)?, word(&e2)?));
        }
        relators.push(product * h.pow_int(&-&self.b0)?);
        Presentation::new(names, relators, peripherals)
    }

    fn fibers_display(&self) -> String {
        let parts: Vec<String> = self.fibers.iter().map(SeifertPair::to_string).collect();
        format!("b0={}; {}", self.b0, parts.join(", "))
    }
}

/// A closed Seifert fibered manifold.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SeifertClosed {
    inv: Invariants,
}

impl SeifertClosed {
    /// Fibers with `a = 1` are absorbed into `b0`; nothing else is
    /// normalized.
    pub fn new(genus: usize, orientable: bool, b0: impl Into<Int>, fibers: Vec<SeifertPair>) -> Result<Self> {
        Ok(SeifertClosed {
            inv: Invariants::new(genus, orientable, 0, b0.into(), fibers)?,
        })
    }

    /// `(a, b)` pairs from machine integers.
    pub fn from_i64(genus: usize, orientable: bool, b0: i64, fibers: &[(i64, i64)]) -> Result<Self> {
        let fibers = fibers
            .iter()
            .map(|&(a, b)| SeifertPair::new(a, b))
            .collect::<Result<_>>()?;
        Self::new(genus, orientable, b0, fibers)
    }

    /// `L(p, q)` as the Seifert manifold over `S²` with one fiber `(q, p)`.
    /// `L(0, 1) = S² × S¹` and `L(1, 0) = S³`.
    pub fn lens_space(p: impl Into<Int>, q: impl Into<Int>) -> Result<Self> {
        let (p, q) = (p.into(), q.into());
        if p.is_negative() || !p.gcd(&q).is_one() {
            return Err(Error::InvalidSeifert(format!("L({p}, {q}) is not a lens space")));
        }
        if p.is_zero() {
            return Self::new(0, true, 0, vec![]);
        }
        let q = q.mod_floor(&p);
        if p.is_one() {
            return Self::new(0, true, 1, vec![]);
        }
        Ok(Self::new(0, true, 0, vec![SeifertPair::new(q, p)?])?.normalized())
    }

    pub fn base(&self) -> &BaseOrbifold {
        &self.inv.base
    }

    pub fn b0(&self) -> &Int {
        &self.inv.b0
    }

    pub fn fibers(&self) -> &[SeifertPair] {
        &self.inv.fibers
    }

    /// `b0 + Σ bᵢ/aᵢ`.
    pub fn euler_number(&self) -> Rational {
        self.inv.euler_number()
    }

    pub fn is_normalized(&self) -> bool {
        self.inv.fibers.iter().all(|f| f.b.is_positive() && f.b < f.a)
            && self.inv.fibers.windows(2).all(|w| w[0] <= w[1])
    }

    /// The unique form with `0 < bᵢ < aᵢ`, fibers sorted, the carries moved
    /// into `b0`.
    pub fn normalized(&self) -> Self {
        let mut b0 = self.inv.b0.clone();
        let mut fibers: Vec<SeifertPair> = self
            .inv
            .fibers
            .iter()
            .map(|f| {
                let (k, r) = f.b.div_mod_floor(&f.a);
                b0 += k;
                SeifertPair { a: f.a.clone(), b: r }
            })
            .collect();
        fibers.sort();
        let mut out = self.clone();
        out.inv.b0 = b0;
        out.inv.fibers = fibers;
        out
    }

    /// The same manifold with the opposite orientation, normalized.
    pub fn reverse_orientation(&self) -> Self {
        let mut out = self.clone();
        out.inv.b0 = -&out.inv.b0;
        for f in &mut out.inv.fibers {
            f.b = -&f.b;
        }
        out.normalized()
    }

    /// Relation matrix of the abelianized fundamental group (rows are
    /// relations, columns the generators of [`Self::presentation`]).
    pub fn relation_matrix(&self) -> IntMatrix {
        self.inv.relation_matrix()
    }

    pub fn h1(&self) -> AbelianGroup {
        self.inv.h1()
    }

    /// The standard presentation of the fundamental group.
    pub fn presentation(&self) -> Result<Presentation> {
        self.inv.presentation(&[])
    }

    pub fn recognize(&self) -> Result<Recognition> {
        recognize(self)
    }
}

impl fmt::Display for SeifertClosed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}]", self.inv.base, self.inv.fibers_display())
    }
}

/// A Seifert fibered manifold with torus boundary components, each carrying
/// a [`Framing`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SeifertBounded {
    inv: Invariants,
    framings: Vec<Framing>,
}

/// Result of a Dehn filling.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum FillOutcome {
    Closed { manifold: SeifertClosed },
    StillBounded { manifold: SeifertBounded },
    FiberFilling(FiberFilling),
}

/// Filling along the fiber slope: the result is not Seifert fibered over the
/// filled base, so the data is handed back unchanged.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberFilling {
    pub manifold: SeifertBounded,
    pub boundary: usize,
}

impl FillOutcome {
    pub fn closed(&self) -> Option<&SeifertClosed> {
        match self {
            FillOutcome::Closed { manifold } => Some(manifold),
            _ => None,
        }
    }

    pub fn bounded(&self) -> Option<&SeifertBounded> {
        match self {
            FillOutcome::StillBounded { manifold } => Some(manifold),
            _ => None,
        }
    }

    pub fn is_fiber_filling(&self) -> bool {
        matches!(self, FillOutcome::FiberFilling(_))
    }
}

impl fmt::Display for FillOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FillOutcome::Closed { manifold } => write!(f, "closed: {manifold}"),
            FillOutcome::StillBounded { manifold } => write!(f, "bounded: {manifold}"),
            FillOutcome::FiberFilling(_) => {
                write!(f, "fiber slope: the result is not Seifert fibered over the filled base")
            }
        }
    }
}

impl SeifertBounded {
    /// One framing per boundary torus.
    pub fn new(
        genus: usize,
        orientable: bool,
        b0: impl Into<Int>,
        fibers: Vec<SeifertPair>,
        framings: Vec<Framing>,
    ) -> Result<Self> {
        if framings.is_empty() {
            return Err(Error::InvalidSeifert("a bounded manifold needs a boundary torus".into()));
        }
        let inv = Invariants::new(genus, orientable, framings.len(), b0.into(), fibers)?;
        Ok(SeifertBounded { inv, framings })
    }

    pub fn base(&self) -> &BaseOrbifold {
        &self.inv.base
    }

    pub fn b0(&self) -> &Int {
        &self.inv.b0
    }

    pub fn fibers(&self) -> &[SeifertPair] {
        &self.inv.fibers
    }

    pub fn framings(&self) -> &[Framing] {
        &self.framings
    }

    pub fn framing(&self, boundary: usize) -> Result<&Framing> {
        self.framings.get(boundary).ok_or(Error::BadBoundaryIndex {
            index: boundary,
            count: self.framings.len(),
        })
    }

    pub fn fiber_slope(&self, boundary: usize) -> Result<Slope> {
        Ok(self.framing(boundary)?.fiber_slope())
    }

    pub fn h1(&self) -> AbelianGroup {
        self.inv.h1()
    }

    pub fn relation_matrix(&self) -> IntMatrix {
        self.inv.relation_matrix()
    }

    /// The standard presentation, with one peripheral pair per boundary
    /// written in that boundary's reference basis.
    pub fn presentation(&self) -> Result<Presentation> {
        self.inv.presentation(&self.framings)
    }

    /// Replaces the section on one boundary by `σ + kφ` and `b0` by `b0 + k`,
    /// which describes the same manifold.
    pub fn reframed(&self, boundary: usize, k: &Int) -> Result<Self> {
        let mut out = self.clone();
        out.framings[boundary] = self.framing(boundary)?.twisted(k);
        out.inv.b0 += k;
        Ok(out)
    }

    /// Dehn filling of one boundary torus along `alpha`, given in that
    /// boundary's reference basis.
    pub fn fill(&self, boundary: usize, alpha: &Slope) -> Result<FillOutcome> {
        let framing = self.framing(boundary)?;
        let (p, q) = framing.coordinates(alpha);
        if p.is_zero() {
            return Ok(FillOutcome::FiberFilling(FiberFilling {
                manifold: self.clone(),
                boundary,
            }));
        }
        let mut fibers = self.inv.fibers.clone();
        fibers.push(SeifertPair::new(p, q)?);
        let mut framings = self.framings.clone();
        framings.remove(boundary);
        let base = &self.inv.base;
        let b0 = self.inv.b0.clone();
        if framings.is_empty() {
            let m = SeifertClosed::new(base.genus, base.orientable, b0, fibers)?;
            Ok(FillOutcome::Closed { manifold: m.normalized() })
        } else {
            let m = SeifertBounded::new(base.genus, base.orientable, b0, fibers, framings)?;
            Ok(FillOutcome::StillBounded { manifold: m })
        }
    }
}

impl fmt::Display for SeifertBounded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}]", self.inv.base, self.inv.fibers_display())
    }
}

/// `{"genus", "orientable", "boundaries", "cones"}`
#[derive(Clone, Debug, Serialize, Deserialize)]
struct BaseJson {
    #[serde(default)]
    genus: usize,
    #[serde(default = "default_true")]
    orientable: bool,
    #[serde(default)]
    boundaries: usize,
    #[serde(default, with = "int_vec")]
    cones: Vec<Int>,
}

fn default_true() -> bool {
    true
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct SeifertJson {
    base: BaseJson,
    #[serde(default, with = "int")]
    b0: Int,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    fibers: Option<Vec<SeifertPair>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    framings: Option<Vec<Framing>>,
}

impl SeifertJson {
    fn of(inv: &Invariants, framings: Option<&[Framing]>) -> Self {
        SeifertJson {
            base: BaseJson {
                genus: inv.base.genus,
                orientable: inv.base.orientable,
                boundaries: inv.base.boundary_count,
                cones: inv.base.cone_points.clone(),
            },
            b0: inv.b0.clone(),
            fibers: Some(inv.fibers.clone()),
            framings: framings.map(<[Framing]>::to_vec),
        }
    }

    /// Missing fibers default to `(a, 1)` for each cone point; when both are
    /// given they must agree.
    fn fibers(&self) -> Result<Vec<SeifertPair>> {
        let cones: Vec<Int> = {
            let mut c: Vec<Int> = self.base.cones.iter().filter(|c| !c.is_one()).cloned().collect();
            c.sort();
            c
        };
        match &self.fibers {
            None => cones.iter().map(|a| SeifertPair::new(a.clone(), 1)).collect(),
            Some(f) => {
                let mut from_fibers: Vec<Int> = f.iter().filter(|p| !p.a.is_one()).map(|p| p.a.clone()).collect();
                from_fibers.sort();
                if !self.base.cones.is_empty() && from_fibers != cones {
                    return Err(Error::InvalidSeifert(format!(
                        "cone points {:?} do not match fiber multiplicities {:?}",
                        cones.iter().map(Int::to_string).collect::<Vec<_>>(),
                        from_fibers.iter().map(Int::to_string).collect::<Vec<_>>()
                    )));
                }
                Ok(f.clone())
            }
        }
    }

    fn into_manifold(self) -> Result<SeifertManifold> {
        let fibers = self.fibers()?;
        let b = &self.base;
        if b.boundaries == 0 {
            if self.framings.as_ref().is_some_and(|f| !f.is_empty()) {
                return Err(Error::InvalidSeifert("framings given for a closed manifold".into()));
            }
            return Ok(SeifertManifold::Closed(SeifertClosed::new(
                b.genus,
                b.orientable,
                self.b0,
                fibers,
            )?));
        }
        let framings = self
            .framings
            .clone()
            .unwrap_or_else(|| vec![Framing::identity(); b.boundaries]);
        if framings.len() != b.boundaries {
            return Err(Error::InvalidSeifert(format!(
                "{} framings for {} boundary tori",
                framings.len(),
                b.boundaries
            )));
        }
        for f in &framings {
            Framing::new(f.section.clone(), f.fiber.clone())?;
        }
        Ok(SeifertManifold::Bounded(SeifertBounded::new(
            b.genus,
            b.orientable,
            self.b0,
            fibers,
            framings,
        )?))
    }
}

/// Either kind of Seifert manifold, as read from JSON.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeifertManifold {
    Closed(SeifertClosed),
    Bounded(SeifertBounded),
}

impl SeifertManifold {
    pub fn h1(&self) -> AbelianGroup {
        match self {
            SeifertManifold::Closed(m) => m.h1(),
            SeifertManifold::Bounded(m) => m.h1(),
        }
    }

    pub fn presentation(&self) -> Result<Presentation> {
        match self {
            SeifertManifold::Closed(m) => m.presentation(),
            SeifertManifold::Bounded(m) => m.presentation(),
        }
    }
}

impl fmt::Display for SeifertManifold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeifertManifold::Closed(m) => m.fmt(f),
            SeifertManifold::Bounded(m) => m.fmt(f),
        }
    }
}

macro_rules! json_via {
    ($ty:ty, $to:expr, $from:expr) => {
        impl Serialize for $ty {
            fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let j: SeifertJson = $to(self);
                j.serialize(s)
            }
        }

        impl<'de> Deserialize<'de> for $ty {
            fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
                let j = SeifertJson::deserialize(d)?;
                let m = j.into_manifold().map_err(serde::de::Error::custom)?;
                $from(m).map_err(serde::de::Error::custom)
            }
        }
    };
}

json_via!(
    SeifertClosed,
    |m: &SeifertClosed| SeifertJson::of(&m.inv, None),
    |m| match m {
        SeifertManifold::Closed(c) => Ok(c),
        SeifertManifold::Bounded(_) => Err("expected a closed manifold (boundaries = 0)"),
    }
);

json_via!(
    SeifertBounded,
    |m: &SeifertBounded| SeifertJson::of(&m.inv, Some(&m.framings)),
    |m| match m {
        SeifertManifold::Bounded(b) => Ok(b),
        SeifertManifold::Closed(_) => Err("expected a manifold with boundary"),
    }
);

json_via!(
    SeifertManifold,
    |m: &SeifertManifold| match m {
        SeifertManifold::Closed(c) => SeifertJson::of(&c.inv, None),
        SeifertManifold::Bounded(b) => SeifertJson::of(&b.inv, Some(&b.framings)),
    },
    Ok::<_, Error>
);

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn slope(p: i64, q: i64) -> Slope {
        Slope::new(p, q).unwrap()
    }

    fn closed(genus: usize, orientable: bool, b0: i64, fibers: &[(i64, i64)]) -> SeifertClosed {
        SeifertClosed::from_i64(genus, orientable, b0, fibers).unwrap()
    }

    /// Möbius band times a circle, twice punctured.
    fn m_seifert() -> SeifertBounded {
        SeifertBounded::new(1, false, 0, vec![], vec![Framing::identity(); 2]).unwrap()
    }

    fn n_mobius() -> SeifertBounded {
        SeifertBounded::new(1, false, 0, vec![], vec![Framing::identity()]).unwrap()
    }

    #[test]
    fn normalization_examples() {
        let m = closed(0, true, 0, &[(2, 3)]).normalized();
        assert_eq!(m, closed(0, true, 1, &[(2, 1)]));
        let m = closed(0, true, -1, &[(2, 1), (2, 1)]);
        assert!(m.is_normalized());
        assert_eq!(m.normalized(), m);
        let m = closed(0, true, 0, &[(5, -7), (3, 1)]);
        assert_eq!(m.normalized().euler_number(), m.euler_number());
        assert!(m.normalized().is_normalized());
    }

    #[test]
    fn h1_examples() {
        for n in 2..12 {
            let m = closed(0, true, -1, &[(2, 1), (2, 1), (n, 1)]);
            assert_eq!(m.h1().order(), Some(Int::from(4)), "n = {n}");
        }
        // one fiber (a, b) over S² is L(b, ·), so H1 = Z/|b|
        for (a, b) in [(3, 7), (5, 2), (4, 1), (7, -3)] {
            let m = closed(0, true, 0, &[(a, b)]);
            assert_eq!(m.h1(), AbelianGroup::free_plus_cyclic(0, Int::from(b).abs()));
        }
        assert_eq!(closed(0, true, 0, &[]).h1(), AbelianGroup::free(1));
        assert_eq!(
            closed(1, false, 0, &[]).h1(),
            AbelianGroup::new(0, vec![Int::from(2), Int::from(2)]).unwrap()
        );
        // torus bundle with monodromy id over T²: T³
        assert_eq!(closed(1, true, 0, &[]).h1(), AbelianGroup::free(3));
    }

    #[test]
    fn lens_space_constructor() {
        for (p, q) in [(5, 2), (7, 3), (2, 1), (9, 4), (12, 5)] {
            let m = SeifertClosed::lens_space(p, q).unwrap();
            assert_eq!(m.h1(), AbelianGroup::free_plus_cyclic(0, p));
        }
        assert_eq!(SeifertClosed::lens_space(0, 1).unwrap().h1(), AbelianGroup::free(1));
        assert_eq!(SeifertClosed::lens_space(1, 0).unwrap().h1(), AbelianGroup::free(0));
        assert!(SeifertClosed::lens_space(4, 2).is_err());
    }

    #[test]
    fn fill_examples() {
        let m = m_seifert();
        // Δ(μ, φ0) = 1 gives back the single-boundary structure
        let n = m.fill(1, &slope(1, 0)).unwrap();
        assert_eq!(n.bounded(), Some(&n_mobius()));
        for q in [-3, -1, 2, 5] {
            let n = m.fill(1, &slope(1, q)).unwrap();
            let n = n.bounded().unwrap();
            assert!(n.base().cone_points().is_empty());
            assert_eq!(n.b0(), &Int::from(q));
        }
        // Δ(α, φ0) = n adds one cone point of order n
        let a = m.fill(1, &slope(5, 2)).unwrap();
        let a = a.bounded().unwrap();
        assert_eq!(a.base().cone_points(), &[Int::from(5)]);
        assert_eq!(a.base().boundary_count(), 1);
        assert!(!a.base().is_orientable());
        // second filling: RP² with cone points {5, m}
        let c = a.fill(0, &slope(3, 1)).unwrap();
        let c = c.closed().unwrap();
        assert!(c.base().is_projective_plane());
        assert_eq!(c.base().cone_points(), &[Int::from(3), Int::from(5)]);
        let c = a.fill(0, &slope(1, 4)).unwrap();
        assert_eq!(c.closed().unwrap().base().cone_points(), &[Int::from(5)]);
        // fiber slope
        let f = m.fill(0, &slope(0, 1)).unwrap();
        assert!(f.is_fiber_filling());
        assert!(m.fill(1, &slope(0, 1)).unwrap().is_fiber_filling());
        assert_eq!(
            m.fill(2, &slope(1, 0)),
            Err(Error::BadBoundaryIndex { index: 2, count: 2 })
        );
    }

    #[test]
    fn fill_reads_slopes_through_the_framing() {
        // framing with determinant -1
        let fr = Framing::from_i64([0, -1], [-1, 0]).unwrap();
        assert_eq!(fr.fiber_slope(), slope(1, 0));
        assert_eq!(fr.coordinates(&slope(3, 2)), (Int::from(2), Int::from(3)));
        let disk = SeifertBounded::new(
            0,
            true,
            0,
            vec![SeifertPair::new(2, -1).unwrap(), SeifertPair::new(2, 1).unwrap()],
            vec![fr],
        )
        .unwrap();
        let c = disk.fill(0, &slope(3, 2)).unwrap();
        assert_eq!(c.closed().unwrap().base().cone_points(), &[2, 2, 2].map(Int::from));
        assert!(disk.fill(0, &slope(1, 0)).unwrap().is_fiber_filling());
    }

    #[test]
    fn presentation_matches_relation_matrix() {
        let cases = [
            closed(0, true, -1, &[(2, 1), (3, 1), (5, 1)]),
            closed(1, false, 2, &[(3, 1), (4, 3)]),
            closed(2, true, 1, &[(2, 1)]),
            closed(3, false, 0, &[]),
        ];
        for m in cases {
            assert_eq!(m.presentation().unwrap().abelianization(), m.h1(), "{m}");
        }
        let b = m_seifert();
        let p = b.presentation().unwrap();
        assert_eq!(p.abelianization(), b.h1());
        assert_eq!(b.h1(), AbelianGroup::free_plus_cyclic(2, 2));
        // group-level filling agrees with Seifert filling
        let alpha = slope(3, 2);
        let filled = p.fill_quotient(1, &alpha).unwrap();
        let seifert = b.fill(1, &alpha).unwrap();
        assert_eq!(filled.abelianization(), seifert.bounded().unwrap().h1());
    }

    #[test]
    fn json_round_trip() {
        let m = closed(1, false, 0, &[(2, 1), (3, 1)]);
        let text = serde_json::to_string(&m).unwrap();
        assert_eq!(
            text,
            r#"{"base":{"genus":1,"orientable":false,"boundaries":0,"cones":[2,3]},"b0":0,"fibers":[[2,1],[3,1]]}"#
        );
        assert_eq!(serde_json::from_str::<SeifertClosed>(&text).unwrap(), m);
        let cones_only = r#"{"base":{"genus":1,"orientable":false,"boundaries":0,"cones":[2,3]}}"#;
        assert_eq!(serde_json::from_str::<SeifertClosed>(cones_only).unwrap(), m);
        let mismatch = r#"{"base":{"genus":0,"orientable":true,"boundaries":0,"cones":[2]},"fibers":[[3,1]]}"#;
        assert!(serde_json::from_str::<SeifertClosed>(mismatch).is_err());

        let b = m_seifert();
        let text = serde_json::to_string(&b).unwrap();
        assert_eq!(serde_json::from_str::<SeifertBounded>(&text).unwrap(), b);
        assert!(serde_json::from_str::<SeifertClosed>(&text).is_err());
        let bad = r#"{"base":{"genus":0,"boundaries":1},"framings":[{"section":[2,0],"fiber":[0,1]}]}"#;
        assert!(serde_json::from_str::<SeifertManifold>(bad).is_err());
    }

    fn pair() -> impl Strategy<Value = (i64, i64)> {
        (2i64..12, -30i64..30).prop_filter("primitive", |(a, b)| a.gcd(b) == 1)
    }

    proptest! {
        #[test]
        fn normalization_preserves_euler_number(
            b0 in -5i64..5,
            fibers in proptest::collection::vec(pair(), 0..5),
        ) {
            let m = closed(0, true, b0, &fibers);
            let n = m.normalized();
            prop_assert_eq!(n.euler_number(), m.euler_number());
            prop_assert!(n.is_normalized());
            prop_assert_eq!(n.normalized(), n.clone());
            prop_assert_eq!(n.h1(), m.h1());
            prop_assert_eq!(n.reverse_orientation().reverse_orientation(), n.clone());
            prop_assert_eq!(n.reverse_orientation().euler_number(), -m.euler_number());
        }

        #[test]
        fn reframing_gives_the_same_fillings(
            k in -4i64..4,
            fibers in proptest::collection::vec(pair(), 0..3),
            (p, q) in (1i64..9, -9i64..9).prop_filter("primitive", |(p, q)| p.gcd(q) == 1),
        ) {
            let fibers: Vec<SeifertPair> =
                fibers.iter().map(|&(a, b)| SeifertPair::new(a, b).unwrap()).collect();
            let m = SeifertBounded::new(0, true, 0, fibers, vec![Framing::identity()]).unwrap();
            let r = m.reframed(0, &Int::from(k)).unwrap();
            let alpha = slope(p, q);
            prop_assert_eq!(m.fill(0, &alpha).unwrap(), r.fill(0, &alpha).unwrap());
        }

        #[test]
        fn filling_depends_only_on_the_slope(
            (p, q) in (-9i64..9, -9i64..9).prop_filter("primitive", |(p, q)| p.gcd(q) == 1),
        ) {
            let m = m_seifert();
            let a = m.fill(1, &slope(p, q)).unwrap();
            let b = m.fill(1, &slope(-p, -q)).unwrap();
            prop_assert_eq!(a.clone(), b);
            if p.abs() == 1 {
                prop_assert!(a.bounded().unwrap().base().cone_points().is_empty());
            }
        }
    }
}
