//! Classical root systems, their matrix realizations, and Cartan elements.

mod coweight;
mod realization;
mod root_system;

pub use coweight::{dual_lattice_check, pair, CoweightH, WeightLattices};
pub use realization::{build_realization, parse_realization_tag, ModuleTag, RootSystemRealization};
pub use root_system::{build_root_system, Family, Root, RootSystem};

pub(crate) use realization::unit_vector;
