//! Exact lifting regions for maximal lattice-free simplicial polytopes.
//!
//! Given a polytope `B` and a point `f`, the crate builds the gauge function
//! of `B - f`, the lifting region `R(f)` as a union of parallelotopes, and its
//! exact volume on the torus `R^n / Z^n`. A volume of exactly one means the
//! minimal inequality has a unique minimal lifting.
//!
//! Linear algebra is generic over the scalar ([`scalar::Scalar`]); everything
//! on the decision path runs on the exact aliases below.

pub mod classify;
pub mod enumerate;
pub mod error;
pub mod generators;
pub mod io;
pub mod lattice;
pub mod lifting;
pub mod linalg;
pub mod polytope;
pub mod scalar;

use num_bigint::BigInt;
use num_rational::BigRational;

/// Arbitrary-precision rational scalar.
pub type Rat = BigRational;
/// Arbitrary-precision integer.
pub type Int = BigInt;
pub type RatVec = Vec<Rat>;
pub type IntVec = Vec<Int>;
pub type RatMat = linalg::Matrix<Rat>;
pub type IntMat = linalg::Matrix<Int>;
/// Approximate matrices, used only for drawing.
pub type FloatMat = linalg::Matrix<f64>;

pub use error::{Error, Result};
pub use lattice::IntLattice;
pub use lifting::{LiftingRegion, TermOrder, Verdict};
pub use polytope::{MaximalityReport, SimplicialPolytope};
