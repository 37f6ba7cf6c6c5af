//! Local germs `Ψ` of matrix divisors: reduced forms, the flags of their
//! section conditions, and the endomorphism filtrations of flags.

mod endo;
mod flag;
mod section;
mod smith;

pub use endo::{endomorphism_filtration, flags_equal_up_to_shift, ShiftVariant};
pub use flag::Flag;
pub use section::{flag_from_h, flag_from_system, is_section, satisfies_flag};
pub use smith::{reduced_form_left, smith_reduce, smith_reduce_with_guard, ReducedForm, DEFAULT_GUARD};

use crate::error::{Error, Result};
use crate::exactnum::{Scalar, TruncatedMatrixSeries};
use crate::liecore::{dual_lattice_check, CoweightH, Family, RootSystemRealization};

/// A germ `Ψ(z) = Σ Ψ_i z^i` at a point, with `z` the local coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorGerm {
    family: Family,
    point: Scalar,
    psi: TruncatedMatrixSeries,
}

impl DivisorGerm {
    pub fn new(family: Family, psi: TruncatedMatrixSeries) -> Result<Self> {
        if !psi.is_square() {
            return Err(Error::DimensionMismatch {
                expected: psi.rows(),
                found: psi.cols(),
            });
        }
        if psi.is_zero_within_precision() {
            return Err(Error::SingularWithinPrecision);
        }
        Ok(DivisorGerm {
            family,
            point: Scalar::from(0),
            psi,
        })
    }

    pub fn at(mut self, point: Scalar) -> Self {
        self.point = point;
        self
    }

    /// `Ψ = z^h`, i.e. `diag(z^{μ_b(h)})` on the weight basis.
    pub fn from_h(r: &RootSystemRealization, h: &CoweightH) -> Result<Self> {
        if !dual_lattice_check(h, r) {
            return Err(Error::Domain(format!("z^h needs integral weights, h = {h:?}")));
        }
        let exps: Vec<i64> = h
            .module_values(r)
            .iter()
            .map(|v| i64::try_from(v.to_integer()).expect("small exponents"))
            .collect();
        DivisorGerm::new(r.family(), TruncatedMatrixSeries::diag_monomials(&exps))
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn point(&self) -> &Scalar {
        &self.point
    }

    pub fn psi(&self) -> &TruncatedMatrixSeries {
        &self.psi
    }

    pub fn module_dim(&self) -> usize {
        self.psi.rows()
    }

    pub fn valuation(&self) -> i64 {
        self.psi.valuation().expect("nonzero germ")
    }

    /// `m` with `Ψ = Σ_{i ≥ -m} Ψ_i z^i`; zero for holomorphic germs.
    pub fn pole_order(&self) -> i64 {
        (-self.valuation()).max(0)
    }
}
