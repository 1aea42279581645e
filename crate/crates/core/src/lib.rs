//! Exact-arithmetic toolkit for multiplier sequences over simple sets of
//! polynomials: real-rootedness certification via Sturm chains, basis
//! conversion, deformed interpolating bases, sequence-property laws, and a
//! deterministic counterexample falsifier.
//!
//! All certified code paths run on arbitrary-precision rationals; the
//! polynomial and basis layers are generic over any ordered-field scalar
//! (see [`scalar::Scalar`]), with the rational instantiations aliased at
//! the crate root.

pub mod bases;
pub mod basischange;
pub mod experiments;
pub mod facts;
pub mod mstest;
pub mod poly;
pub mod realroots;
pub mod scalar;

pub use bases::{BasisDescriptor, BasisError, RationalSimpleSet, SimpleSet};
pub use poly::{Degree, Poly, PolyError, RationalPoly};
pub use scalar::{Rational, Scalar};
