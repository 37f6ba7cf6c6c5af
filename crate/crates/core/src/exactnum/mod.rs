//! Exact arithmetic over `K = Q(i)`: scalars, dense matrices, subspaces, and
//! truncated Laurent series (scalar and matrix valued).

mod matrix;
mod matrix_series;
mod scalar;
mod series;
mod subspace;

pub use matrix::{Matrix, Rref};
pub use matrix_series::{series_invert, Elimination, TruncatedMatrixSeries};
pub use scalar::Scalar;
pub use series::TruncatedLaurentSeries;
pub use subspace::{nullspace, rref, subspace_contains, subspace_intersect, subspace_sum, SubspaceBasis};


