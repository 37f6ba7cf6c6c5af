//! Genus-0 spaces of global operators: Lax operators `L`, M-operators, the
//! sections of a matrix divisor, and the localization at the marked points.

mod global;
mod quotient;
mod space;

pub use global::{bracket_global, localize, GlobalMatrixFunction};
pub use quotient::{quotient_report, QuotientReport};
pub use space::{
    ambient_basis, build_l_space, build_m_space, build_section_space, l_jet_violations, section_dim_by_weights,
    OperatorSpace, SpaceKind,
};

use crate::error::{Error, Result};
use crate::exactnum::Scalar;
use crate::liecore::{dual_lattice_check, CoweightH, RootSystemRealization};

/// Marked points `Γ` carrying grading elements `h_γ` and the divisor
/// `D = Σ mult·π` on the sphere, with infinity an ordinary point.
#[derive(Clone, Debug)]
pub struct SurfaceConfig {
    realization: RootSystemRealization,
    gammas: Vec<(Scalar, CoweightH)>,
    pis: Vec<(Scalar, usize)>,
}

impl SurfaceConfig {
    pub fn new(
        realization: RootSystemRealization,
        gammas: Vec<(Scalar, CoweightH)>,
        pis: Vec<(Scalar, usize)>,
    ) -> Result<Self> {
        let points: Vec<&Scalar> = gammas.iter().map(|(p, _)| p).chain(pis.iter().map(|(p, _)| p)).collect();
        for (i, p) in points.iter().enumerate() {
            if points[..i].contains(p) {
                return Err(Error::Config(format!("marked point {p} appears twice")));
            }
        }
        for (p, h) in &gammas {
            if h.eps().len() != realization.root_system().eps_dim() {
                return Err(Error::DimensionMismatch {
                    expected: realization.root_system().eps_dim(),
                    found: h.eps().len(),
                });
            }
            h.module_matrix(&realization)?;
            if !dual_lattice_check(h, &realization) {
                return Err(Error::Domain(format!(
                    "h = {h:?} at {p} has non-integral weights on the module"
                )));
            }
        }
        Ok(SurfaceConfig {
            realization,
            gammas,
            pis,
        })
    }

    pub fn realization(&self) -> &RootSystemRealization {
        &self.realization
    }

    pub fn gammas(&self) -> &[(Scalar, CoweightH)] {
        &self.gammas
    }

    pub fn pis(&self) -> &[(Scalar, usize)] {
        &self.pis
    }

    pub fn deg_d(&self) -> usize {
        self.pis.iter().map(|(_, m)| m).sum()
    }
}
