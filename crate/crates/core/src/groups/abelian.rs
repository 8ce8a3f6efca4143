use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::{Error, Int, Result};

/// A finitely generated abelian group `Z^r ⊕ Z/d₁ ⊕ … ⊕ Z/dₖ` in
/// invariant-factor form (`dᵢ ≥ 2`, `dᵢ | dᵢ₊₁`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroup {
    pub free_rank: usize,
    #[serde(with = "crate::json::int_vec")]
    pub torsion: Vec<Int>,
}

impl AbelianGroup {
    /// Validates the divisibility chain.
    pub fn new(free_rank: usize, torsion: Vec<Int>) -> Result<Self> {
        let ok = torsion.iter().all(|d| *d >= Int::from(2))
            && torsion.windows(2).all(|w| (&w[1] % &w[0]).is_zero());
        if !ok {
            return Err(Error::Parse(format!("{torsion:?} is not an invariant-factor chain")));
        }
        Ok(AbelianGroup { free_rank, torsion })
    }

    /// Builds the group from diagonal entries of a Smith form over `n`
    /// generators: zeros and missing entries are free, ones vanish.
    pub fn from_smith_diagonal(diagonal: &[Int], generators: usize) -> Self {
        let nonzero = diagonal.iter().filter(|d| !d.is_zero()).count();
        AbelianGroup {
            free_rank: generators - nonzero,
            torsion: diagonal
                .iter()
                .filter(|d| !d.is_zero() && !d.is_one())
                .cloned()
                .collect(),
        }
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup { free_rank: rank, torsion: vec![] }
    }

    /// `Z^rank ⊕ Z/n` (nothing added for `n = 1`).
    pub fn free_plus_cyclic(rank: usize, n: impl Into<Int>) -> Self {
        let n = n.into();
        let torsion = if n.is_one() { vec![] } else { vec![n] };
        AbelianGroup { free_rank: rank, torsion }
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Order of the group, `None` when infinite.
    pub fn order(&self) -> Option<Int> {
        self.is_finite().then(|| self.torsion_order())
    }

    pub fn torsion_order(&self) -> Int {
        self.torsion.iter().product()
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}
