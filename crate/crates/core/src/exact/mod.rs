//! Exact scalars and dense matrices.
//!
//! Everything in this crate is computed over arbitrary-precision integers
//! ([`BigInt`]) or canonical rationals ([`Rational`]); there is no floating
//! point anywhere. Rationals are always stored reduced with a positive
//! denominator, so structural equality and hashing coincide with numeric
//! equality.

mod matrix;
mod number;
mod scalar;

pub use matrix::{IntMatrix, Matrix, RatMatrix};
pub use number::{ceil_sqrt, four_square_decompose, isqrt, lcm_of_denominators};
pub use scalar::{format_ratio, parse_rational, Scalar};

pub use num_bigint::BigInt;

/// Canonical arbitrary-precision rational.
pub type Rational = num_rational::BigRational;
