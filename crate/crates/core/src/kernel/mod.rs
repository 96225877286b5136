//! Exact arithmetic: rationals, polynomials, resultants, real algebraic
//! numbers, number fields and truncated Puiseux series.

pub mod algebraic;
pub mod field;
pub mod poly;
pub mod rational;
pub mod resultant;
pub mod series;
pub mod upoly;

pub use algebraic::{isolate_real_roots, AlgebraicNumber, RealRoot};
pub use field::{FieldElem, NumberField};
pub use poly::Poly;
pub use rational::Rational;
pub use series::{PuiseuxSeries, ScaledCoeff};
pub use upoly::{Field, UPoly};
