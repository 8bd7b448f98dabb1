//! Computations in the matroid-minor coalgebra and Hopf algebra.
//!
//! * [`matroid`]: labeled matroids, minors, duals, direct sums, free
//!   products, free separators, factorization and isomorphism classes.
//! * [`poset`]: finite posets, Möbius functions, closure operators.
//! * [`weak`]: matroid enumeration and the weak order.
//! * [`coalgebra`]: the coalgebra on labeled matroids, its dual algebra and
//!   the primitive bases `w_M`, `r_M`.
//! * [`hopf`]: the Hopf algebra on isomorphism classes, the chain-count
//!   matrix and the primitive basis `p_M`.

// Matroids cache their rank table and canonical form; neither affects ordering.
#![allow(clippy::mutable_key_type)]

pub mod coalgebra;
pub mod hopf;
pub mod linalg;
pub mod lincomb;
pub mod matroid;
pub mod poset;
pub mod weak;

pub use lincomb::{rat, ratio, LinComb, Rational};
pub use matroid::{GroundSet, IsoClass, Label, Mask, Matroid, MatroidError};
pub use poset::{ClosureMap, Poset, PosetError, Verdict};
pub use weak::{FilterTriple, WeakError};

use thiserror::Error;

/// Any error raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Weak(#[from] WeakError),
    #[error(transparent)]
    Coalgebra(#[from] coalgebra::CoalgebraError),
    #[error(transparent)]
    Hopf(#[from] hopf::HopfError),
}
