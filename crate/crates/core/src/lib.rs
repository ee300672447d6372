//! Exact algebra of semi-algebraic sets, queried by relational algebra
//! expressions, with certified interval arithmetic and counterexample
//! pipelines for connectivity sampling.
//!
//! The crate is organized around a handful of layers:
//!
//! * [`poly`], [`geom`], [`set`] — exact rational polynomials, open boxes,
//!   affine maps, and semi-algebraic sets in disjunctive form.
//! * [`interval`], [`certify`] — rational-endpoint interval arithmetic and
//!   branch-and-bound sign/containment certification on boxes.
//! * [`rae`], [`oracle`] — the query language (union, intersection,
//!   difference, cartesian product, projection over an input symbol `S`),
//!   closed-form evaluation for projection-free expressions, and three-valued
//!   membership oracles that handle projection by exact fiber analysis.
//! * [`findset`], [`rewrite`], [`onepass`] — the normalizers: uniform-box
//!   search, the four-form normalization of product-free expressions, and the
//!   one-pass positive normal form.
//! * [`witness`], [`harness`] — pipelines that build a connected set `A` and
//!   a disconnected set `B` indistinguishable by a given list of queries, and
//!   the instruments (sampled equality, grid connectivity, extreme-value
//!   checks) used to verify them.
//!
//! All correctness-bearing arithmetic is exact rational; floating point is
//! never used. Every sampling procedure is deterministic given its seed.

pub mod alg1d;
pub mod certify;
pub mod findset;
pub mod geom;
pub mod harness;
pub mod interval;
pub mod onepass;
pub mod oracle;
pub mod parallel;
pub mod poly;
pub mod rae;
pub mod rat;
pub mod rewrite;
pub mod sample;
pub mod set;
pub mod testkit;
pub mod textform;
pub mod witness;

pub use geom::{AffineMap, OpenBox};
pub use poly::Polynomial;
pub use rat::{Point, Rat};
pub use set::{BasicSet, SemiAlgebraicSet, SetAlgebra};
