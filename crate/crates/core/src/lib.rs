//! Exact computation with incidence functions on finite posets.
//!
//! The crate has three layers:
//!
//! - classical machinery: finite posets ([`poset`]), the 2-variable
//!   incidence algebra with its Mobius function, Hall chain sums,
//!   cross-cuts and Weisner sums ([`incidence`]);
//! - the 3-variable layer: functions on weakly increasing triples with
//!   the staggered convolution, the diamond lift of pairs of 2-variable
//!   functions, and the J-function, a generalized Mobius function that is
//!   a two-sided convolution inverse of the constant function
//!   ([`trincidence`]);
//! - invariants built from J: the J-characteristic and J-Mobius
//!   polynomials of ranked lattices with exact Laurent-polynomial
//!   arithmetic ([`invariants`], [`poly`]), matroids and their lattices of
//!   flats together with subspace lattices over prime fields ([`matroid`]),
//!   and the q-series identities the subspace computations specialize
//!   ([`qseries`]).
//!
//! Everything is exact: coefficients are arbitrary-precision integers and
//! all identities are checked as equalities, never numerically.

pub mod error;
pub mod incidence;
pub mod invariants;
pub mod matroid;
pub mod poly;
pub mod poset;
pub mod qseries;
pub mod search;
pub mod trincidence;

pub use error::{Error, Result};
pub use incidence::IncFn2;
pub use invariants::RankedLattice;
pub use matroid::Matroid;
pub use poly::LaurentPoly;
pub use poset::{are_isomorphic, Flag2, Flag3, Poset};
pub use qseries::{BiPoly, QPoly};
pub use trincidence::IncFn3;
