//! Exact χ_y-genus machinery: the genus as a Chern polynomial, its expansion
//! at `y = -1`, Chern number inequalities, circle-action localization and
//! Betti/signature restrictions.
//!
//! The algebra is generic over an exact [`Field`]; the aliases below fix it to
//! arbitrary-precision rationals, which is what the rest of the crate uses.

#![allow(clippy::needless_range_loop)]

pub mod betti;
pub mod catalog;
pub mod chern;
pub mod cohomology;
pub mod error;
pub mod fixedpoint;
pub mod genus;
pub mod inequality;
pub mod kexp;
pub mod manifold;
pub mod partition;
pub mod poly;
pub mod rational;
pub mod scalar;
pub mod series;
pub mod verify;
pub mod wire;

pub use error::{GenusError, Result};
pub use partition::{partitions_of, Partition};
pub use scalar::Field;

/// Arbitrary-precision rational, reduced, with positive denominator.
pub type Rational = num_rational::BigRational;
/// Polynomial in `y` over [`Rational`].
pub type YPolynomial = poly::Poly<Rational>;
/// Truncated power series in `x` over `ℚ[y]`.
pub type TruncatedSeries = series::Series<Rational>;
/// Homogeneous Chern polynomial over `ℚ[y]`.
pub type ChernPolynomial = chern::ChernPoly<Rational>;
