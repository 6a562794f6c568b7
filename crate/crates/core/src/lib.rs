//! Canonical modules and canonical ideals of monomial curve singularities.
//!
//! The ring `R = k[[t^Γ]]` of a numerical semigroup `Γ` is studied through
//! value sets: every fractional ideal `I ⊂ k((t))` is described by
//! `V(I) = {val(f) : f ∈ I}`, and for a branch lengths are counts of values.

pub mod apolarity;
pub mod cli;
pub mod curvering;
pub mod error;
pub mod fracideal;
pub mod linalg;
pub mod pfaffian;
pub mod poly;
pub mod powerseries;
pub mod rational;
pub mod reference;
pub mod semigroup;
pub mod value_set;
pub mod verification;

#[cfg(test)]
mod strategies;

pub use curvering::{CurveInvariants, CurveRing, HilbertData};
pub use error::{Error, Result};
pub use powerseries::LaurentSeries;
pub use rational::Rational;
pub use semigroup::Semigroup;
pub use value_set::ValueSet;
