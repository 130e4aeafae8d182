//! Exact-arithmetic toolkit for order-preserving and orientation-preserving
//! transformations of dense chains.
//!
//! Chains are modeled as intervals of the extended rationals; every
//! transformation is a finite list of constant or increasing-Möbius pieces,
//! so composition, classification, images, and the generator and
//! factorization constructions are all computed symbolically with no
//! rounding. A brute-force oracle over finite chains backs the semigroup
//! machinery with ground truth at desk scale.

pub mod classify;
pub mod constructions;
pub mod error;
pub mod ext;
pub mod finite;
pub mod interval;
pub mod iso;
pub mod mobius;
pub mod piecewise;
pub mod random;
pub mod rat;
pub mod subset;
pub mod text;

pub use classify::{
    classify, extremum_audit, gap_bounds, member_of, Classification, ExtremumAudit, Family,
    GapBounds, Overlap,
};
pub use error::{Error, Result};
pub use ext::{ext_cmp, ExtRat};
pub use interval::{Bound, BoundKind, ChainKind, Interval, IntervalRelation};
pub use iso::canonical_iso;
pub use mobius::{MobiusMap, Monotonicity};
pub use piecewise::{Action, Piece, PiecewiseMap};
pub use rat::Rat;
pub use subset::SubsetModel;
