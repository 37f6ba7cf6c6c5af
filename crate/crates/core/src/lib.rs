//! Exact computations with matrix divisors on Riemann surfaces: truncated
//! Laurent series over the Gaussian rationals, classical root systems and
//! their matrix realizations, Z-gradings by coweights, Smith reduction of
//! germs and their flags, and genus-0 spaces of Lax and M-operators.

pub mod divisor;
pub mod error;
pub mod exactnum;
pub mod grading;
pub mod lax;
pub mod liecore;
pub mod random;

pub use divisor::{DivisorGerm, Flag, ReducedForm};
pub use error::{Error, Result};
pub use exactnum::{Matrix, Scalar, SubspaceBasis, TruncatedLaurentSeries, TruncatedMatrixSeries};
pub use grading::{DimensionReport, LieFiltration, LieGrading, ModuleGrading, ModuliMode};
pub use lax::{GlobalMatrixFunction, OperatorSpace, QuotientReport, SurfaceConfig};
pub use liecore::{CoweightH, Family, ModuleTag, Root, RootSystem, RootSystemRealization};
