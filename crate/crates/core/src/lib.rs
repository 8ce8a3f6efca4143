//! Exact Dehn-filling calculus for Seifert fibered 3-manifolds with torus
//! boundary.
//!
//! The crate is organised by subject:
//!
//! - [`slopes`]: primitive classes on a boundary torus and their distance.
//! - [`seifert`]: Seifert data, the filling rule, homology and recognition of
//!   small closed manifolds.
//! - [`groups`]: finitely presented groups with peripheral structure, Smith
//!   normal form, homomorphism counting and Alexander polynomials.
//! - [`lspace`]: L-space certificates for closed Seifert rational homology
//!   spheres.
//! - [`tangles`]: rational tangles, two-bridge links and lens spaces.
//! - [`harness`]: builders for the twisted I-bundle over the Klein bottle and
//!   its fiber complement, plus the verification scans.
//!
//! All integers are arbitrary precision ([`Int`]).

pub mod error;
pub mod groups;
pub mod harness;
pub mod json;
pub mod lspace;
pub mod matrix;
pub mod seifert;
pub mod slopes;
pub mod tangles;

pub use error::{Error, Result};
pub use slopes::{BasisChange, Slope};

/// Arbitrary-precision integer used throughout the crate.
pub type Int = num_bigint::BigInt;
/// Arbitrary-precision rational.
pub type Rational = num_rational::BigRational;

/// Shorthand for building an [`Int`] from a machine integer.
pub fn int(n: i64) -> Int {
    Int::from(n)
}
