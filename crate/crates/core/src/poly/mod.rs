//! Polynomials, difference-denominator rational functions, permutations and
//! the skew group ring `ℚ(y)#S_n` restricted to those rational functions.

mod multipoly;
mod perm;
mod ratfn;
mod skew;

pub use multipoly::{Monomial, MultiPoly};
pub use perm::Perm;
pub use ratfn::DiffDenomFn;
pub use skew::SkewElement;
