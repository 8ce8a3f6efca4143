//! Finitely presented groups with peripheral structure.

mod abelian;
mod alexander;
mod finite;
mod laurent;
mod presentation;
mod snf;
mod word;

pub use abelian::AbelianGroup;
pub use alexander::{alexander_matrix, alexander_polynomial, augmentation, determinant, fox_derivative};
pub use finite::{hom_count, hom_count_with_budget, FiniteGroup, DEFAULT_HOM_BUDGET};
pub use laurent::LaurentPolynomial;
pub use presentation::{
    peripheral_commutes_in_h1, PeripheralJson, PeripheralPair, Presentation, PresentationJson,
};
pub use snf::{smith_normal_form, SmithForm};
pub use word::{parse_word, Word, WordDisplay};

use crate::{Result, Slope};

pub fn abelianization(p: &Presentation) -> AbelianGroup {
    p.abelianization()
}

pub fn fill_quotient(p: &Presentation, boundary: usize, slope: &Slope) -> Result<Presentation> {
    p.fill_quotient(boundary, slope)
}

pub fn rational_longitude(p: &Presentation, boundary: usize) -> Result<Slope> {
    p.rational_longitude(boundary)
}
