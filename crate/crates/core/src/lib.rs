//! Exact computation of the integer sequence `d(n)` that encodes the Taylor
//! expansion of `theta_3` around `tau = i`, together with the auxiliary
//! sequences `u(n)`, `v(n)`, the matrices `R` and `R^{-1}`, and checkers for
//! their congruence properties modulo prime powers.
//!
//! Arithmetic is exact throughout. Series and polynomial code is generic over
//! a [`num_traits::Num`] scalar; the integer recurrences are generic over an
//! [`IntRing`] so the same code runs over `Z` and over `Z/mZ`.

pub mod congruence;
pub mod dseq;
mod error;
pub mod padic;
pub mod recur;
pub mod ring;
pub mod rmatrix;
pub mod seqcore;
pub mod series;

pub use error::{Error, Result};
pub use ring::{IntRing, Integers, Zmod};

/// Arbitrary precision integer, the universal scalar of the exact pipelines.
pub type ExactInt = num_bigint::BigInt;
/// Arbitrary precision rational.
pub type ExactRat = num_rational::BigRational;
/// Truncated power series with exact rational coefficients.
pub type RatSeries = series::TruncSeries<ExactRat>;
/// Polynomial with exact rational coefficients.
pub type RatPoly = seqcore::Poly<ExactRat>;
/// Truncated power series over `f64`, for quick numerical experiments.
pub type FloatSeries = series::TruncSeries<f64>;
