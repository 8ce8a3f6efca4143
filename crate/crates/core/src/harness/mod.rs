//! Concrete manifolds and groups for the twisted I-bundle over the Klein
//! bottle, and scan-style verification over ranges of slopes.
//!
//! `N` is the twisted I-bundle over the Klein bottle, with fundamental group
//! `⟨a, b | a²b²⟩`. It has two Seifert structures: over the Möbius band with
//! no cone points (fiber `φ0 = ab`) and over the disk with two cone points
//! of order 2 (fiber `φ1 = a²`). `M` is `N` with a regular fiber of the
//! Möbius-band structure removed; its second boundary torus `T2` has
//! meridian `t`.

mod report;
mod scans;

use num_traits::One;
use serde::Serialize;

use crate::groups::{peripheral_commutes_in_h1, AbelianGroup, PeripheralPair, Presentation, Word};
use crate::seifert::{Framing, SeifertBounded, SeifertClosed, SeifertPair};
use crate::{Error, Int, Result, Slope};

pub use report::{Case, ScanReport, SummaryRow};
pub use scans::{
    fibration_obstruction_check, fibration_scan, generalized_scan, lemma1_scan, remark_scan,
    theorem_scan, DEFAULT_ALPHA_BOUND, DEFAULT_BETA_BOUND, DEFAULT_FIBRATION_BOUND,
    DEFAULT_GENERALIZED_BOUND, DEFAULT_LEMMA1_BOUND, DEFAULT_REMARK_BOUND,
};

/// The fixed objects every scan is built from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PaperObjects {
    /// `N` over the Möbius band, framed by `(a⁻², ab)`.
    pub n_mobius: SeifertBounded,
    /// `N` over the disk with cone points `(2, 2)`; its fiber is `a⁻²`.
    pub n_disk: SeifertBounded,
    /// `⟨a, b | a²b²⟩` with peripheral pair `(a⁻², ab)`.
    pub n_group: Presentation,
    /// `M` over the twice-punctured projective plane.
    pub m_seifert: SeifertBounded,
    /// `⟨a, b, t | a²b², [t, ab]⟩`; `T1` framed by `(a⁻²t⁻¹, ab)`, `T2` by
    /// `(t, ab)`.
    pub m_group: Presentation,
}

impl PaperObjects {
    /// The fiber slope of the Möbius-band structure on `∂N`.
    pub fn phi0(&self) -> Slope {
        self.n_mobius.fiber_slope(0).expect("one boundary")
    }

    /// The fiber slope of the disk structure on `∂N`.
    pub fn phi1(&self) -> Slope {
        self.n_disk.fiber_slope(0).expect("one boundary")
    }

    /// Descriptions of every defining property that fails (empty when all
    /// hold).
    pub fn check(&self) -> Vec<String> {
        let mut bad = vec![];
        let mut expect = |ok: bool, what: &str| {
            if !ok {
                bad.push(what.to_string());
            }
        };
        let (phi0, phi1) = (self.phi0(), self.phi1());
        expect(phi0.distance(&phi1).is_one(), "distance(phi0, phi1) = 1");
        expect(
            self.n_group.abelianization() == AbelianGroup::free_plus_cyclic(1, 2),
            "H1(N) = Z + Z/2",
        );
        expect(
            self.m_group.abelianization() == AbelianGroup::free_plus_cyclic(2, 2),
            "H1(M) = Z^2 + Z/2",
        );
        expect(self.n_mobius.h1() == self.n_group.abelianization(), "H1(N) by the Mobius structure");
        expect(self.n_disk.h1() == self.n_group.abelianization(), "H1(N) by the disk structure");
        expect(self.m_seifert.h1() == self.m_group.abelianization(), "H1(M) by the Seifert structure");
        expect(
            self.n_group.rational_longitude(0).as_ref() == Ok(&phi0),
            "rational longitude of N is phi0",
        );
        expect(
            self.m_group.rational_longitude(0).as_ref() == Ok(&phi0),
            "rational longitude of M on T1 is phi0",
        );
        let mu = Slope::new(1, 0).expect("slope");
        expect(
            self.m_seifert.fill(1, &mu).ok().and_then(|o| o.bounded().cloned()).as_ref()
                == Some(&self.n_mobius),
            "M(-, mu) = N",
        );
        let commute = |p: &Presentation, i| peripheral_commutes_in_h1(p, i).unwrap_or(false);
        expect(
            commute(&self.n_group, 0) && commute(&self.m_group, 0) && commute(&self.m_group, 1),
            "peripheral pairs commute in H1",
        );
        bad
    }
}

pub fn build_paper_objects() -> PaperObjects {
    let identity = Framing::identity();
    let n_mobius = SeifertBounded::new(1, false, 0, vec![], vec![identity.clone()]).expect("valid");
    let n_disk = SeifertBounded::new(
        0,
        true,
        0,
        vec![SeifertPair::new(2, -1).expect("pair"), SeifertPair::new(2, 1).expect("pair")],
        vec![Framing::from_i64([0, -1], [-1, 0]).expect("unimodular")],
    )
    .expect("valid");
    let n_group = Presentation::parse(&["a", "b"], &["aabb"], &[("AA", "ab")]).expect("valid");
    let m_seifert = SeifertBounded::new(1, false, 0, vec![], vec![identity; 2]).expect("valid");
    let m_group = Presentation::parse(
        &["a", "b", "t"],
        &["aabb", "[t,ab]"],
        &[("AAT", "ab"), ("t", "ab")],
    )
    .expect("valid");
    PaperObjects {
        n_mobius,
        n_disk,
        n_group,
        m_seifert,
        m_group,
    }
}

/// The complement of a regular fiber in the Seifert manifold over `RP²`
/// with the given cone points, with fiber invariants `(aᵢ, 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralizedObjects {
    pub cones: Vec<Int>,
    /// Möbius-band base with the cone points, one boundary torus framed by
    /// `(section, fiber)`.
    pub seifert: SeifertBounded,
    /// `⟨a, b, t1..tk | a²b², [tᵢ, ab], tᵢ^aᵢ ab⟩`, peripheral pair
    /// `(tk⁻¹…t1⁻¹ a⁻², ab)`.
    pub group: Presentation,
    /// The closed manifold before the fiber was removed.
    pub closed: SeifertClosed,
}

pub fn build_generalized(cones: &[Int]) -> Result<GeneralizedObjects> {
    if cones.is_empty() {
        return Err(Error::EmptyCones);
    }
    if let Some(a) = cones.iter().find(|a| **a < Int::from(2)) {
        return Err(Error::InvalidSeifert(format!("cone multiplicity {a} is below 2")));
    }
    let fibers: Vec<SeifertPair> = cones
        .iter()
        .map(|a| SeifertPair::new(a.clone(), 1))
        .collect::<Result<_>>()?;
    let seifert = SeifertBounded::new(1, false, 0, fibers.clone(), vec![Framing::identity()])?;
    let closed = SeifertClosed::new(1, false, 0, fibers)?.normalized();

    let k = cones.len();
    let mut names = vec!["a".to_string(), "b".to_string()];
    names.extend((1..=k).map(|i| format!("t{i}")));
    let (a, b) = (Word::generator(0), Word::generator(1));
    let h = &a * &b;
    let mut relators = vec![a.pow(2) * b.pow(2)];
    let mut mu = Word::identity();
    for (i, m) in cones.iter().enumerate() {
        let t = Word::generator(2 + i);
        relators.push(Word::commutator(&t, &h));
        relators.push(t.pow_int(m)? * &h);
        mu = t.inverse() * mu;
    }
    mu = mu * a.pow(-2);
    let group = Presentation::new(names, relators, vec![PeripheralPair::new(mu, h)])?;
    Ok(GeneralizedObjects {
        cones: cones.to_vec(),
        seifert,
        group,
        closed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_objects_hold_together() {
        let o = build_paper_objects();
        assert_eq!(o.check(), Vec::<String>::new());
        assert_eq!(o.phi0(), Slope::new(0, 1).unwrap());
        assert_eq!(o.phi1(), Slope::new(1, 0).unwrap());
    }

    #[test]
    fn generalized_builder() {
        assert_eq!(build_generalized(&[]).unwrap_err(), Error::EmptyCones);
        assert!(build_generalized(&[Int::from(1)]).is_err());
        let g = build_generalized(&[Int::from(3)]).unwrap();
        let mu = Slope::new(1, 0).unwrap();
        let y = g.seifert.fill(0, &mu).unwrap();
        assert_eq!(y.closed(), Some(&g.closed));
        assert_eq!(g.group.fill_quotient(0, &mu).unwrap().abelianization(), g.closed.h1());
        assert_eq!(g.group.abelianization(), g.seifert.h1());
        assert_eq!(g.group.rational_longitude(0).unwrap(), Slope::new(0, 1).unwrap());
    }
}
