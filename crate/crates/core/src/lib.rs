//! Exact invariants of an irreducible plane-curve singularity, computed from
//! its essential Puiseux exponents.
//!
//! Everything starts from a list of essential exponents such as
//! `3/2, 7/4, 11/6`. The [`puiseux`] module validates the list and unwinds
//! the truncation recursion into a tower of derived curves. From the tower,
//! [`motive`] assembles the motivic Milnor fiber as a formal sum of named
//! Grothendieck-ring classes, [`spectrum`] produces the Hodge spectrum by two
//! independent routes, and [`monodromy`] builds the characteristic polynomial
//! of the monodromy together with the Milnor number. The [`verify`] module
//! cross-checks all of these against each other.
//!
//! All arithmetic is exact: rationals and integers are arbitrary precision,
//! and every equality in the test suite is structural.

pub mod monodromy;
pub mod motive;
pub mod puiseux;
pub mod spectrum;
pub mod verify;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
