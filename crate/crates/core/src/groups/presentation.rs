use std::collections::HashSet;

use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::abelian::AbelianGroup;
use super::snf::{smith_normal_form, SmithForm};
use super::word::{parse_word, Word};
use crate::matrix::IntMatrix;
use crate::slopes::{self, Slope};
use crate::{Error, Int, Result};

/// Two words framing a boundary torus. A slope `(p, q)` on that torus is the
/// class `mu^p · lambda^q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PeripheralPair {
    pub mu: Word,
    pub lambda: Word,
}

impl PeripheralPair {
    pub fn new(mu: Word, lambda: Word) -> Self {
        PeripheralPair { mu, lambda }
    }

    /// The word `mu^p lambda^q` representing a slope.
    pub fn slope_word(&self, slope: &Slope) -> Result<Word> {
        Ok(self.mu.pow_int(slope.p())? * self.lambda.pow_int(slope.q())?)
    }
}

/// A finitely presented group, optionally with peripheral pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<Word>,
    peripherals: Vec<PeripheralPair>,
}

impl Presentation {
    /// Relators are cyclically reduced; trivial ones are dropped.
    pub fn new(
        generators: Vec<String>,
        relators: Vec<Word>,
        peripherals: Vec<PeripheralPair>,
    ) -> Result<Self> {
        let mut seen = HashSet::new();
        for g in &generators {
            if g.is_empty() || !seen.insert(g.as_str()) {
                return Err(Error::Parse(format!("bad or repeated generator name `{g}`")));
            }
        }
        let n = generators.len();
        let in_range = |w: &Word| w.max_generator().is_none_or(|m| m < n);
        let all_words = relators
            .iter()
            .chain(peripherals.iter().flat_map(|p| [&p.mu, &p.lambda]));
        for w in all_words {
            if !in_range(w) {
                return Err(Error::Parse(format!("word {w:?} uses an undeclared generator")));
            }
        }
        let relators = relators
            .iter()
            .map(Word::cyclically_reduced)
            .filter(|w| !w.is_identity())
            .collect();
        Ok(Presentation {
            generators,
            relators,
            peripherals,
        })
    }

    /// Builds a presentation from textual words (see [`parse_word`]).
    pub fn parse(generators: &[&str], relators: &[&str], peripherals: &[(&str, &str)]) -> Result<Self> {
        let gens: Vec<String> = generators.iter().map(|s| s.to_string()).collect();
        let rels = relators
            .iter()
            .map(|r| parse_word(r, &gens))
            .collect::<Result<Vec<_>>>()?;
        let pers = peripherals
            .iter()
            .map(|(m, l)| Ok(PeripheralPair::new(parse_word(m, &gens)?, parse_word(l, &gens)?)))
            .collect::<Result<Vec<_>>>()?;
        Presentation::new(gens, rels, pers)
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn peripherals(&self) -> &[PeripheralPair] {
        &self.peripherals
    }

    pub fn peripheral(&self, boundary: usize) -> Result<&PeripheralPair> {
        self.peripherals.get(boundary).ok_or(Error::BadBoundaryIndex {
            index: boundary,
            count: self.peripherals.len(),
        })
    }

    pub fn with_relator(&self, w: Word) -> Self {
        let mut p = self.clone();
        let w = w.cyclically_reduced();
        if !w.is_identity() {
            p.relators.push(w);
        }
        p
    }

    /// Rows are the exponent-sum vectors of the relators.
    pub fn relation_matrix(&self) -> IntMatrix {
        let n = self.generator_count();
        IntMatrix::from_rows(self.relators.iter().map(|r| r.exponent_sums(n)).collect(), n)
    }

    pub fn abelianization(&self) -> AbelianGroup {
        let s = smith_normal_form(&self.relation_matrix());
        AbelianGroup::from_smith_diagonal(&s.diagonal(), self.generator_count())
    }

    /// Adds the relator `mu^p lambda^q` of the chosen boundary and forgets
    /// that peripheral pair.
    pub fn fill_quotient(&self, boundary: usize, slope: &Slope) -> Result<Self> {
        let pair = self.peripheral(boundary)?;
        let relator = pair.slope_word(slope)?;
        let mut out = self.with_relator(relator);
        out.peripherals.remove(boundary);
        Ok(out)
    }

    /// The unique slope of the chosen boundary whose class is torsion in H1.
    pub fn rational_longitude(&self, boundary: usize) -> Result<Slope> {
        let pair = self.peripheral(boundary)?;
        let h1 = FreeQuotient::new(self);
        let fm = h1.image(&pair.mu);
        let fl = h1.image(&pair.lambda);
        let Some(i) = (0..fm.len()).find(|&i| !fm[i].is_zero() || !fl[i].is_zero()) else {
            return Err(Error::NotUnique);
        };
        let dependent = (0..fm.len()).all(|j| (&fm[i] * &fl[j] - &fm[j] * &fl[i]).is_zero());
        if !dependent {
            return Err(Error::NoTorsionSlope);
        }
        let g = fl[i].gcd(&fm[i]);
        slopes::normalize(&fl[i] / &g, -&fm[i] / &g)
    }

    /// Serialisable form; fails when a generator name is not a single
    /// lowercase letter, which the textual word syntax requires.
    pub fn to_json(&self) -> Result<PresentationJson> {
        for g in &self.generators {
            let mut chars = g.chars();
            let ok = matches!((chars.next(), chars.next()), (Some(c), None) if c.is_ascii_lowercase());
            if !ok {
                return Err(Error::Parse(format!(
                    "generator `{g}` cannot be written in the word syntax"
                )));
            }
        }
        let show = |w: &Word| w.display(&self.generators).to_string();
        Ok(PresentationJson {
            generators: self.generators.clone(),
            relators: self.relators.iter().map(show).collect(),
            peripherals: self
                .peripherals
                .iter()
                .map(|p| PeripheralJson {
                    mu: show(&p.mu),
                    lambda: show(&p.lambda),
                })
                .collect(),
        })
    }

    pub fn from_json(json: &PresentationJson) -> Result<Self> {
        let rels: Vec<&str> = json.relators.iter().map(String::as_str).collect();
        let pers: Vec<(&str, &str)> = json
            .peripherals
            .iter()
            .map(|p| (p.mu.as_str(), p.lambda.as_str()))
            .collect();
        let gens: Vec<&str> = json.generators.iter().map(String::as_str).collect();
        for g in &gens {
            let mut chars = g.chars();
            let ok = matches!((chars.next(), chars.next()), (Some(c), None) if c.is_ascii_lowercase());
            if !ok {
                return Err(Error::Parse(format!(
                    "generator names must be single lowercase letters, got `{g}`"
                )));
            }
        }
        Presentation::parse(&gens, &rels, &pers)
    }
}

/// Free part of H1 in coordinates given by a Smith form of the relation
/// matrix.
pub(crate) struct FreeQuotient {
    smith: SmithForm,
    rank: usize,
    generators: usize,
}

impl FreeQuotient {
    pub(crate) fn new(p: &Presentation) -> Self {
        let smith = smith_normal_form(&p.relation_matrix());
        let rank = smith.rank();
        FreeQuotient {
            smith,
            rank,
            generators: p.generator_count(),
        }
    }

    pub(crate) fn free_rank(&self) -> usize {
        self.generators - self.rank
    }

    /// Image of a generator in the free quotient.
    pub(crate) fn generator_image(&self, g: usize) -> Vec<Int> {
        (self.rank..self.generators)
            .map(|j| self.smith.v[(g, j)].clone())
            .collect()
    }

    pub(crate) fn image(&self, w: &Word) -> Vec<Int> {
        let x = w.exponent_sums(self.generators);
        (self.rank..self.generators)
            .map(|j| {
                (0..self.generators)
                    .map(|i| &x[i] * &self.smith.v[(i, j)])
                    .sum()
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeripheralJson {
    pub mu: String,
    pub lambda: String,
}

/// `{"generators": [...], "relators": [...], "peripherals": [{"mu", "lambda"}]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationJson {
    pub generators: Vec<String>,
    #[serde(default)]
    pub relators: Vec<String>,
    #[serde(default)]
    pub peripherals: Vec<PeripheralJson>,
}

impl Serialize for Presentation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().map_err(serde::ser::Error::custom)?.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Presentation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let json = PresentationJson::deserialize(d)?;
        Presentation::from_json(&json).map_err(serde::de::Error::custom)
    }
}

/// Peripheral commutativity as far as it can be checked: the commutator of
/// the two words must vanish in H1.
pub fn peripheral_commutes_in_h1(p: &Presentation, boundary: usize) -> Result<bool> {
    let pair = p.peripheral(boundary)?;
    let c = Word::commutator(&pair.mu, &pair.lambda);
    Ok(FreeQuotient::new(p).image(&c).iter().all(Zero::is_zero))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn klein() -> Presentation {
        Presentation::parse(&["a", "b"], &["aabb"], &[("AA", "ab")]).unwrap()
    }

    fn m_group() -> Presentation {
        Presentation::parse(
            &["a", "b", "t"],
            &["aabb", "[t,ab]"],
            &[("AAT", "ab"), ("t", "ab")],
        )
        .unwrap()
    }

    #[test]
    fn abelianization_examples() {
        assert_eq!(klein().abelianization(), AbelianGroup::free_plus_cyclic(1, 2));
        assert_eq!(m_group().abelianization(), AbelianGroup::free_plus_cyclic(2, 2));
        for p in 2..8 {
            let g = Presentation::parse(&["a", "b", "t"], &["ab", &format!("t^{p}(ab)^3")], &[])
                .unwrap();
            assert_eq!(g.abelianization(), AbelianGroup::free_plus_cyclic(1, p));
        }
        let free = Presentation::parse(&["x", "y"], &[], &[]).unwrap();
        assert_eq!(free.abelianization(), AbelianGroup::free(2));
    }

    #[test]
    fn fill_quotient_examples() {
        let m = m_group();
        let phi0 = Slope::new(0, 1).unwrap();
        let f = m.fill_quotient(0, &phi0).unwrap();
        assert_eq!(f.relators().len(), 3);
        assert_eq!(f.peripherals().len(), 1);
        assert_eq!(f.abelianization(), AbelianGroup::free(2));

        let f = m.fill_quotient(1, &Slope::new(2, 1).unwrap()).unwrap();
        assert_eq!(
            f.relators()[2].display(f.generators()).to_string(),
            "ttab"
        );
        assert_eq!(f.abelianization(), AbelianGroup::free_plus_cyclic(1, 4));

        let n = m.fill_quotient(1, &Slope::new(1, 0).unwrap()).unwrap();
        assert_eq!(n.abelianization(), AbelianGroup::free_plus_cyclic(1, 2));

        assert_eq!(
            m.fill_quotient(2, &phi0),
            Err(Error::BadBoundaryIndex { index: 2, count: 2 })
        );
    }

    #[test]
    fn longitude_examples() {
        let phi0 = Slope::new(0, 1).unwrap();
        assert_eq!(klein().rational_longitude(0).unwrap(), phi0);
        let m = m_group();
        for (p, q) in [(2, 1), (3, -1), (5, 2), (7, 3)] {
            let filled = m.fill_quotient(1, &Slope::new(p, q).unwrap()).unwrap();
            assert_eq!(filled.rational_longitude(0).unwrap(), phi0);
        }
        let unknot = Presentation::parse(&["t"], &[], &[("t", "1")]).unwrap();
        assert_eq!(unknot.rational_longitude(0).unwrap(), phi0);
        // both peripheral classes torsion
        let lens = Presentation::parse(&["t"], &["ttttt"], &[("t", "tt")]).unwrap();
        assert_eq!(lens.rational_longitude(0), Err(Error::NotUnique));
        // independent peripheral classes
        let torus = Presentation::parse(&["x", "y"], &["[x,y]"], &[("x", "y")]).unwrap();
        assert_eq!(torus.rational_longitude(0), Err(Error::NoTorsionSlope));
    }

    #[test]
    fn longitude_slope_of_trefoil_exterior() {
        // meridian x, longitude of the trefoil is null-homologous
        let g = Presentation::parse(&["x", "y"], &["xyxYXY"], &[("x", "(xy)^3x^-6")]).unwrap();
        assert_eq!(g.rational_longitude(0).unwrap(), Slope::new(0, 1).unwrap());
    }

    #[test]
    fn json_round_trip() {
        let m = m_group();
        let text = serde_json::to_string(&m).unwrap();
        assert_eq!(
            text,
            r#"{"generators":["a","b","t"],"relators":["aabb","tabTBA"],"peripherals":[{"mu":"AAT","lambda":"ab"},{"mu":"t","lambda":"ab"}]}"#
        );
        let back: Presentation = serde_json::from_str(&text).unwrap();
        assert_eq!(back, m);
        let bad = serde_json::from_str::<Presentation>(r#"{"generators":["ab"],"relators":[]}"#);
        assert!(bad.is_err());
        assert!(peripheral_commutes_in_h1(&m, 1).unwrap());
    }

    #[test]
    fn relators_cyclically_reduced_on_construction() {
        let g = Presentation::parse(&["a", "b"], &["BaabbbB", "aA"], &[]).unwrap();
        assert_eq!(g.relators().len(), 1);
        assert_eq!(g.relators()[0].display(g.generators()).to_string(), "aab");
    }
}
