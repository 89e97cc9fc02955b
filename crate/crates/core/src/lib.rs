//! Exact computation in weighted Khovanov-Lauda-Rouquier algebras.
//!
//! The crate is organised bottom-up:
//!
//! * [`poly`]: sparse polynomials over ℚ, rational functions whose
//!   denominators are products of difference forms `y_a - y_b`, and the
//!   skew group ring of the symmetric group acting on them.
//! * [`quiver`]: weighted quivers with multiplicities and edge polynomials.
//! * [`loading`]: loadings, ghosts, equivalence signatures and chamber
//!   enumeration.
//! * [`wklr`]: the algebra itself, realised through its faithful polynomial
//!   representation, with the `b_π` normal form.
//! * [`steady`]: charges and degree-truncated steadied quotients.
//! * [`hall`]: point counting over prime fields and the Hall algebra.
//! * [`io`]: document formats shared with the command line front end.

pub mod error;
pub mod hall;
pub mod io;
pub mod loading;
pub mod poly;
pub mod quiver;
pub mod rat;
pub mod steady;
pub mod wklr;

pub use error::{Error, Result};
pub use loading::{ChamberSet, Loading, Signature};
pub use poly::{DiffDenomFn, MultiPoly, Perm, SkewElement};
pub use quiver::{DimVector, Edge, EdgePoly, Quiver, VertexId};
pub use rat::Rat;
pub use wklr::{Product, Wklr, WklrElement};

/// Size bounds for the enumeration-heavy operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of points in a loading handed to chamber enumeration
    /// or to the algebra.
    pub max_points: usize,
    /// Maximum number of points of `E_ν(F_p)` the Hall module will visit.
    pub max_hall_points: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_points: 8,
            max_hall_points: 1 << 20,
        }
    }
}
