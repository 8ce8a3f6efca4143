//! Small finite groups given by multiplication tables, and brute-force
//! counting of homomorphisms out of a finitely presented group.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use super::presentation::Presentation;
use super::word::Word;
use crate::{Error, Result};

pub const DEFAULT_HOM_BUDGET: u64 = 100_000_000;

/// A finite group with elements `0..order` and a multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    /// Validates closure, identity, inverses and associativity.
    pub fn from_table(name: impl Into<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        let bad = |msg: &str| Err(Error::InvalidGroup(msg.to_string()));
        if n == 0 {
            return bad("empty table");
        }
        if table.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return bad("table is not an n×n array over 0..n");
        }
        let Some(identity) = (0..n).find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
        else {
            return bad("no identity element");
        };
        let mut inverses = Vec::with_capacity(n);
        for x in 0..n {
            match (0..n).find(|&y| table[x][y] == identity && table[y][x] == identity) {
                Some(y) => inverses.push(y),
                None => return bad("element without inverse"),
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return bad("multiplication is not associative");
                    }
                }
            }
        }
        Ok(FiniteGroup {
            name: name.into(),
            table,
            identity,
            inverses,
        })
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::from_table(format!("Z{n}"), table).expect("cyclic table is a group")
    }

    /// The group generated by the given permutations of `0..degree`,
    /// elements ordered lexicographically as permutations.
    pub fn from_permutations(name: impl Into<String>, generators: &[Vec<usize>]) -> Result<Self> {
        let degree = generators.first().map_or(0, Vec::len);
        for g in generators {
            let set: BTreeSet<_> = g.iter().copied().collect();
            if g.len() != degree || set.len() != degree || set.iter().any(|&x| x >= degree) {
                return Err(Error::InvalidGroup(format!("{g:?} is not a permutation")));
            }
        }
        let compose = |a: &[usize], b: &[usize]| -> Vec<usize> { b.iter().map(|&i| a[i]).collect() };
        let mut elements: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut frontier = vec![(0..degree).collect::<Vec<_>>()];
        while let Some(x) = frontier.pop() {
            if !elements.insert(x.clone()) {
                continue;
            }
            for g in generators {
                let y = compose(g, &x);
                if !elements.contains(&y) {
                    frontier.push(y);
                }
            }
        }
        let elements: Vec<Vec<usize>> = elements.into_iter().collect();
        let index: HashMap<&Vec<usize>, usize> =
            elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let table = elements
            .iter()
            .map(|a| elements.iter().map(|b| index[&compose(a, b)]).collect())
            .collect();
        Self::from_table(name, table)
    }

    /// Symmetric group on `n` letters.
    pub fn symmetric(n: usize) -> Self {
        assert!(n >= 1);
        let mut gens = vec![];
        if n >= 2 {
            let mut transposition: Vec<usize> = (0..n).collect();
            transposition.swap(0, 1);
            let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
            gens.push(transposition);
            gens.push(cycle);
        } else {
            gens.push(vec![0]);
        }
        Self::from_permutations(format!("S{n}"), &gens).expect("valid permutations")
    }

    /// Dihedral group of order `2n`, the symmetries of an `n`-gon.
    pub fn dihedral(n: usize) -> Self {
        assert!(n >= 3, "dihedral groups need n >= 3");
        let rotation: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let reflection: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
        Self::from_permutations(format!("D{n}"), &[rotation, reflection]).expect("valid permutations")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn pow(&self, g: usize, k: i64) -> usize {
        let base = if k < 0 { self.inverse(g) } else { g };
        (0..k.unsigned_abs()).fold(self.identity, |acc, _| self.mul(acc, base))
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// `#{g : g^k = e}`.
    pub fn count_roots_of_unity(&self, k: i64) -> usize {
        (0..self.order()).filter(|&g| self.pow(g, k) == self.identity).count()
    }

    fn evaluate(&self, w: &Word, images: &[usize]) -> usize {
        w.letters().iter().fold(self.identity, |acc, &l| {
            let g = images[l.unsigned_abs() as usize - 1];
            self.mul(acc, if l > 0 { g } else { self.inverse(g) })
        })
    }
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (order {})", self.name, self.order())
    }
}

/// Accepts `trivial`, `Zn`, `Sn` and `Dn` (dihedral of order `2n`).
impl FromStr for FiniteGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("trivial") || s == "1" {
            return Ok(Self::trivial());
        }
        let bad = || Error::Parse(format!("unknown group `{s}` (use trivial, Zn, Sn or Dn)"));
        let (kind, n) = s.split_at(1.min(s.len()));
        let n: usize = n.parse().map_err(|_| bad())?;
        match kind {
            "Z" | "z" | "C" | "c" if n >= 1 => Ok(Self::cyclic(n)),
            "S" | "s" if (1..=6).contains(&n) => Ok(Self::symmetric(n)),
            "D" | "d" if n >= 3 => Ok(Self::dihedral(n)),
            _ => Err(bad()),
        }
    }
}

/// Number of homomorphisms `P → G` with the default budget.
pub fn hom_count(p: &Presentation, g: &FiniteGroup) -> Result<u64> {
    hom_count_with_budget(p, g, DEFAULT_HOM_BUDGET)
}

/// Counts homomorphisms by enumerating generator images in lexicographic
/// order, checking each relator as soon as its generators are assigned.
///
/// Generators that occur in no relator contribute a factor `|G|` each and
/// are not enumerated. The budget bounds search nodes plus relator
/// evaluations.
pub fn hom_count_with_budget(p: &Presentation, g: &FiniteGroup, budget: u64) -> Result<u64> {
    let n = p.generator_count();
    let mut used = vec![false; n];
    for r in p.relators() {
        for &l in r.letters() {
            used[l.unsigned_abs() as usize - 1] = true;
        }
    }
    let active: Vec<usize> = (0..n).filter(|&i| used[i]).collect();
    let free = (n - active.len()) as u32;

    // relators grouped by the enumeration depth at which they become checkable
    let position: HashMap<usize, usize> = active.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let mut checks: Vec<Vec<&Word>> = vec![vec![]; active.len()];
    for r in p.relators() {
        let depth = r
            .letters()
            .iter()
            .map(|l| position[&(l.unsigned_abs() as usize - 1)])
            .max()
            .expect("relators are non-trivial");
        checks[depth].push(r);
    }

    let mut search = Search {
        group: g,
        active: &active,
        checks: &checks,
        images: vec![g.identity(); n],
        steps: 0,
        budget,
    };
    let count = search.run(0)?;
    let factor = (g.order() as u64)
        .checked_pow(free)
        .ok_or(Error::TooLarge { budget })?;
    count.checked_mul(factor).ok_or(Error::TooLarge { budget })
}

struct Search<'a> {
    group: &'a FiniteGroup,
    active: &'a [usize],
    checks: &'a [Vec<&'a Word>],
    images: Vec<usize>,
    steps: u64,
    budget: u64,
}

impl Search<'_> {
    fn tick(&mut self) -> Result<()> {
        self.steps += 1;
        if self.steps > self.budget {
            Err(Error::TooLarge { budget: self.budget })
        } else {
            Ok(())
        }
    }

    fn run(&mut self, depth: usize) -> Result<u64> {
        if depth == self.active.len() {
            return Ok(1);
        }
        let mut total = 0u64;
        for x in 0..self.group.order() {
            self.tick()?;
            self.images[self.active[depth]] = x;
            let mut ok = true;
            for r in &self.checks[depth] {
                self.tick()?;
                if self.group.evaluate(r, &self.images) != self.group.identity() {
                    ok = false;
                    break;
                }
            }
            if ok {
                total += self.run(depth + 1)?;
            }
        }
        Ok(total)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Plain enumeration over all tuples, no pruning.
    fn naive_count(p: &Presentation, g: &FiniteGroup) -> u64 {
        let n = p.generator_count();
        let mut images = vec![0usize; n];
        let mut count = 0;
        loop {
            if p.relators().iter().all(|r| g.evaluate(r, &images) == g.identity()) {
                count += 1;
            }
            let mut k = 0;
            loop {
                if k == n {
                    return count;
                }
                images[k] += 1;
                if images[k] < g.order() {
                    break;
                }
                images[k] = 0;
                k += 1;
            }
        }
    }

    #[test]
    fn standard_groups() {
        assert_eq!(FiniteGroup::symmetric(3).order(), 6);
        assert_eq!(FiniteGroup::dihedral(4).order(), 8);
        assert!(!FiniteGroup::symmetric(3).is_abelian());
        assert!(FiniteGroup::cyclic(5).is_abelian());
        assert_eq!(FiniteGroup::symmetric(3).count_roots_of_unity(2), 4);
        assert_eq!(FiniteGroup::dihedral(4).count_roots_of_unity(2), 6);
        assert_eq!("S3".parse::<FiniteGroup>().unwrap().order(), 6);
        assert_eq!("D4".parse::<FiniteGroup>().unwrap().order(), 8);
        assert_eq!("Z7".parse::<FiniteGroup>().unwrap().order(), 7);
        assert!("Q8".parse::<FiniteGroup>().is_err());
        assert!(FiniteGroup::from_table("bad", vec![vec![0, 0], vec![0, 0]]).is_err());
    }

    #[test]
    fn hom_count_examples() {
        let s3 = FiniteGroup::symmetric(3);
        // Z * Z/2 with a redundant generator: 6 · #{g : g² = e} = 6 · 4
        let free_product = Presentation::parse(&["a", "b", "t"], &["ab", "tt"], &[]).unwrap();
        assert_eq!(naive_count(&free_product, &s3), 24);
        assert_eq!(hom_count(&free_product, &s3).unwrap(), 24);
        // Z × Z/2: commuting pairs (x, y) with y² = e
        let direct = Presentation::parse(&["x", "y"], &["[x,y]", "yy"], &[]).unwrap();
        assert_eq!(naive_count(&direct, &s3), 12);
        assert_eq!(hom_count(&direct, &s3).unwrap(), 12);
        assert_eq!(hom_count(&direct, &FiniteGroup::trivial()).unwrap(), 1);
        assert_eq!(hom_count(&free_product, &FiniteGroup::trivial()).unwrap(), 1);
    }

    #[test]
    fn pruned_search_agrees_with_naive_enumeration() {
        let groups = [FiniteGroup::symmetric(3), FiniteGroup::dihedral(4), FiniteGroup::cyclic(6)];
        let presentations = [
            Presentation::parse(&["a", "b"], &["aabb"], &[]).unwrap(),
            Presentation::parse(&["a", "b", "t"], &["aabb", "[t,ab]", "ttab"], &[]).unwrap(),
            Presentation::parse(&["x", "y", "z"], &["xyxYXY", "zzz"], &[]).unwrap(),
        ];
        for p in &presentations {
            for g in &groups {
                assert_eq!(hom_count(p, g).unwrap(), naive_count(p, g), "{g}");
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let p = Presentation::parse(&["a", "b", "c"], &["abc", "aab"], &[]).unwrap();
        let s4 = FiniteGroup::symmetric(4);
        assert_eq!(
            hom_count_with_budget(&p, &s4, 10),
            Err(Error::TooLarge { budget: 10 })
        );
        assert!(hom_count_with_budget(&p, &s4, 1_000_000).is_ok());
    }
}
