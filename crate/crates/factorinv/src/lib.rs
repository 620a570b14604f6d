//! Exact-arithmetic invariants of non-unique factorization theory.
//!
//! The crate computes the classical arithmetical invariants of atomic,
//! finitely generated, reduced commutative monoids: ω-invariants, the
//! catenary degree and its monotone/equal/adjacent refinements, tame
//! degrees, elasticity, Δ-sets, unions of sets of lengths, Betti elements
//! and minimal (and generic) presentations.
//!
//! Three families of monoids are supported:
//!
//! * [`NumericalMonoid`]: co-finite submonoids of `(ℕ₀, +)` given by their
//!   minimal generators, e.g. `⟨4, 10, 21⟩`;
//! * [`AffineMonoid`]: the non-negative integer solutions of a homogeneous
//!   system of linear congruences and equations (these are exactly the
//!   reduced finitely generated Krull monoids);
//! * [`ZeroSumMonoid`]: monoids of zero-sum sequences over a subset of a
//!   finite abelian group, bridged onto [`AffineMonoid`] so that every
//!   invariant applies to them as well.
//!
//! All arithmetic is carried out in checked 64-bit integers; overflow is
//! reported as [`Error::Overflow`], never wrapped silently. Rational
//! quantities (elasticity, densities) use exact integer ratios.

pub mod affine;
pub mod blockmonoids;
pub mod corpus;
pub mod diophantine;
pub mod factorizations;
pub mod invariants;
pub mod monoid;
pub mod numerical;
pub mod presentations;

pub use affine::AffineMonoid;
pub use blockmonoids::{FiniteAbelianGroup, ZeroSumMonoid};
pub use diophantine::{Constraint, DiophantineSystem};
pub use factorizations::{LengthProfile, RClasses};
pub use invariants::InvariantReport;
pub use monoid::{distance, set_distance, AtomicMonoid, Factorization, RelationPair};
pub use numerical::NumericalMonoid;
pub use presentations::Presentation;

use std::fmt;

/// Errors surfaced by the library. Arithmetic is checked throughout, so
/// overflowing inputs fail loudly instead of wrapping.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A checked 64-bit operation overflowed.
    Overflow,
    /// A vector had the wrong number of coordinates.
    DimensionMismatch { expected: usize, found: usize },
    /// An operation required membership in the monoid.
    NotInMonoid(String),
    /// The generator list is not a valid minimal generating system.
    InvalidGenerators(String),
    /// A constraint system was malformed.
    InvalidSystem(String),
    /// A precondition of a closed formula was violated.
    HypothesisViolation(String),
    /// The input is too large for exhaustive computation.
    ResourceLimit(String),
    /// A literal could not be parsed.
    Parse(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Overflow => write!(f, "integer overflow in checked arithmetic"),
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::NotInMonoid(what) => write!(f, "{what} is not an element of the monoid"),
            Error::InvalidGenerators(why) => write!(f, "invalid generators: {why}"),
            Error::InvalidSystem(why) => write!(f, "invalid system: {why}"),
            Error::HypothesisViolation(why) => write!(f, "hypothesis violated: {why}"),
            Error::ResourceLimit(why) => write!(f, "resource limit: {why}"),
            Error::Parse(why) => write!(f, "parse error: {why}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn checked_add(a: i64, b: i64) -> Result<i64> {
    a.checked_add(b).ok_or(Error::Overflow)
}

pub(crate) fn checked_mul(a: i64, b: i64) -> Result<i64> {
    a.checked_mul(b).ok_or(Error::Overflow)
}
