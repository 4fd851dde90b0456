//! Exact Jeffrey-Kirwan residue calculus for hyperplane arrangements over the rationals.

pub mod arrangement;
pub mod element;
pub mod error;
pub mod expr;
pub mod fourier;
pub mod geometry;
pub mod laplace;
pub mod linalg;
pub mod normalize;
pub mod oslomon;
pub mod plot;
pub mod poly;
pub mod problem;
pub mod random;
pub mod residue;

pub type Q = num_rational::BigRational;

pub use arrangement::Arrangement;
pub use element::{FractionTerm, RationalElement};
pub use error::{Error, Result};
pub use poly::Polynomial;
