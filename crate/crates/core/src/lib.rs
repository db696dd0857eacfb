//! Invariant functions on pairs of `SL(3, C)` matrices.
//!
//! The coordinate ring of the character variety of the free group on two
//! letters is generated by nine trace functions
//!
//! ```text
//! t(1) = tr a      t(-1) = tr A      t(2) = tr b      t(-2) = tr B
//! t(3) = tr ab     t(-3) = tr AB     t(4) = tr aB     t(-4) = tr Ab
//! t(5) = tr abAB
//! ```
//!
//! (upper case letters are inverses) subject to the single relation
//! `t(5)^2 - P t(5) + Q = 0`. This crate provides:
//!
//! * [`freegroup`]: words in the free group, parsing and reduction;
//! * [`linalg`]: exact `3x3` matrices over the Gaussian rationals (plus a
//!   floating point twin for representations that need cube roots);
//! * [`poly`]: polynomials in the nine coordinates, kept reduced modulo the
//!   defining relation;
//! * [`rewrite`]: the trace reduction engine turning `tr(w)` into a
//!   coordinate polynomial, and the catalogue of matrix trace identities it
//!   is built from;
//! * [`variety`]: the polynomials `P` and `Q`, the coordinate map, fibres,
//!   branching and singular loci;
//! * [`symmetry`]: the dihedral group of order eight acting on coordinates.

pub mod freegroup;
pub mod io;
pub mod linalg;
pub mod poly;
pub mod rewrite;
pub mod sample;
pub mod scalar;
pub mod symmetry;
pub mod variety;
pub mod verify;

pub use freegroup::{Letter, Word};
pub use linalg::{Matrix3, SL3Pair};
pub use poly::{Bigrade, CoordPolynomial, CoordVar, FreePolynomial};
pub use rewrite::{reduce_trace, TraceReducer};
pub use scalar::{ApproxComplex, ExactComplex, Scalar};
pub use variety::CharPoint;
