//! Directions not determined by affine point sets over finite fields.
//!
//! Given `U ⊂ AG(n,q)` with `|U| = q^{n-1} - ε`, this crate computes the set
//! `N` of directions at infinity that `U` does not determine, the Rédei
//! polynomial of `U`, the degree-ε surface `f` that completes it to
//! `(X0^q - X0)^{q^{n-2}}`, and the geometry of `f` that constrains `N`.
//! The [`pgeo`] module applies this to partial ovoids of the partial
//! geometries `T2*(K)` built from maximal arcs.
//!
//! The crate is `no_std` and only needs `alloc`. Long searches take a
//! caller-supplied budget closure instead of reading a clock.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod bitset;
pub mod classify;
pub mod directions;
pub mod gf;
pub mod pgeo;
pub mod projgeom;
pub mod redei;

pub use directions::{AffineSet, DirectionReport};
pub use gf::{Elem, Gf};
pub use projgeom::{Hyperplane, Point, Subspace};
pub use redei::{FSurface, MPoly, UniPoly};

/// Errors reported by this crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("extension degree must be at least 1, got {0}")]
    BadExtensionDegree(u32),
    #[error("field order {p}^{h} exceeds 2^16")]
    FieldTooLarge { p: u32, h: u32 },
    #[error("code {code} is not an element of a field of order {q}")]
    NotInField { code: u32, q: u32 },
    #[error("malformed coefficient vector")]
    BadRepresentation,
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero vector has no projective representative")]
    ZeroVector,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("the two points coincide")]
    EqualPoints,
    #[error("{what} out of range")]
    OutOfRange { what: &'static str },
    #[error("point is not affine (first coordinate must be 1)")]
    NotAffine,
    #[error("point occurs twice in the set")]
    DuplicatePoint,
    #[error("subspace is not contained in the hyperplane at infinity")]
    NotAtInfinity,
    #[error("direction is determined by the point set")]
    DirectionDetermined,
    #[error("subspace contains no non-determined direction")]
    NoNonDeterminedDirection,
    #[error("deficiency {eps} is outside the supported range")]
    EpsOutOfRange { eps: i64 },
    #[error("polynomial expansion guard exceeded (eps <= 4, n <= 4)")]
    ExpansionGuard,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("hyperplane is not deficient")]
    NotDeficient,
    #[error("point is not on the surface")]
    NotOnSurface,
    #[error("degree {degree} is not below q = {q}")]
    DegreeTooLarge { degree: usize, q: u32 },
    #[error("brute-force guard exceeded")]
    GuardExceeded,
    #[error("arc construction requires even q")]
    OddOrder,
    #[error("arc degree {d} does not divide q = {q}")]
    DegreeDoesNotDivide { d: u32, q: u32 },
    #[error("arc is not maximal")]
    NotMaximal,
    #[error("point set is not a partial ovoid")]
    NotPartialOvoid,
    #[error("plane is not an ovoid: line {line} meets it in {count} points")]
    NotOvoid { line: usize, count: usize },
    #[error("invariant violated: {0}")]
    InvariantViolated(&'static str),
}
