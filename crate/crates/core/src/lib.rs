//! Exact computational kernel for F₁-geometry.
//!
//! The crate provides, with arbitrary-precision arithmetic throughout:
//!
//! * sparse uni- and multivariate polynomials over a generic exact scalar,
//!   rational functions in a counting parameter, and integer matrix normal
//!   forms ([`poly`], [`ratfun`], [`matrix`]);
//! * Gröbner bases over ℚ with ideal membership and Krull dimension
//!   ([`groebner`]);
//! * finitely presented pointed monoids: word problem, prime spectra,
//!   localization and unit lattices ([`monoid`]);
//! * blueprints (monoids with additive congruences): congruence decision,
//!   prime k-ideals, tensor products, morphisms, base extension to ℕ/ℤ/ℚ,
//!   cancellativity and cyclotomic extensions ([`blueprint`]);
//! * glued schemes, specialization posets and their DOT/JSON rendering
//!   ([`scheme`]);
//! * point ranks, rank spaces, Weyl extensions and component groups
//!   ([`titsweyl`]);
//! * Gauss binomials, #GL(n,F_q), subspace incidence geometries, places and
//!   the zeta function of F_q(T) ([`qincidence`]);
//! * Boolean/tropical semifields, group completion and the tropical-curve
//!   balancing validator ([`tropical`]).
//!
//! All values are immutable after construction and all operations are pure
//! and deterministic, so everything is safe to share across threads.

pub mod blueprint;
pub mod fp;
pub mod groebner;
pub mod matrix;
pub mod monoid;
pub mod multipoly;
pub mod poly;
pub mod qincidence;
pub mod ratfun;
pub mod scalar;
pub mod scheme;
pub mod titsweyl;
pub mod tropical;
pub mod wordcheck;

/// Arbitrary-precision integer scalar.
pub type Int = num::BigInt;
/// Arbitrary-precision rational scalar.
pub type Rat = num::BigRational;

/// Univariate polynomial in the counting parameter q with integer coefficients.
pub type QPolynomial = poly::Poly<Int>;
/// Univariate polynomial with rational coefficients (results of division).
pub type RationalPoly = poly::Poly<Rat>;
/// Reduced quotient of two integer polynomials.
pub type RationalFunction = ratfun::RationalFunction;

/// Sparse multivariate polynomial with rational coefficients.
pub type MultiPolynomial = multipoly::MultiPoly<Rat>;
/// Sparse multivariate polynomial with integer coefficients.
pub type IntMultiPolynomial = multipoly::MultiPoly<Int>;

pub use matrix::IntegerMatrix;
