use std::fmt;

use super::space::build_lm;
use super::SurfaceConfig;
use crate::error::Result;
use crate::exactnum::Matrix;

/// Dimensions around the localization of `M^D/L^D` at the marked points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientReport {
    pub gamma_count: usize,
    pub deg_d: usize,
    pub ambient_dim: usize,
    pub dim_l: usize,
    pub dim_m: usize,
    pub dim_quotient: usize,
    /// `Σ_γ Σ_{α > 0} α(h_γ)`.
    pub tangent_formula: usize,
    /// Kernel of `M^D → ⊕_γ` jets in degrees `-order_γ..=max(k_γ - 1, 0)`.
    pub localization_kernel_dim: usize,
    pub l_in_m: bool,
    /// `deg D < |Γ|`, the range where the kernel must vanish.
    pub injectivity_applies: bool,
    /// `dim_quotient − tangent_formula`.
    pub excess: i64,
}

impl QuotientReport {
    /// Kernel zero (when it applies), `L ⊆ M` and the tangent bound.
    pub fn holds(&self) -> bool {
        (!self.injectivity_applies || self.localization_kernel_dim == 0)
            && self.l_in_m
            && self.dim_quotient >= self.tangent_formula
    }
}

pub fn quotient_report(config: &SurfaceConfig) -> Result<QuotientReport> {
    let (l, m, data) = build_lm(config)?;
    let l_in_m = m.coords().contains(l.coords())?;

    let mut jet_rows: Option<Matrix> = None;
    for d in &data {
        let hi = (d.depth - 1).max(0);
        let j = m.jet_matrix(&d.point, -(d.order as i64), hi);
        jet_rows = Some(match jet_rows {
            None => j,
            Some(acc) => acc.vstack(&j),
        });
    }
    let kernel = match jet_rows {
        None => m.dim(),
        Some(j) => {
            let images: Vec<Vec<_>> = m.coords().vectors().map(|v| j.mul_vec(v)).collect();
            m.dim() - Matrix::from_rows(j.rows(), images).rank()
        }
    };
    let tangent: i64 = data.iter().map(|d| d.positive_sum).sum();
    let dim_quotient = m.dim() - l.dim().min(m.dim());
    Ok(QuotientReport {
        gamma_count: data.len(),
        deg_d: config.deg_d(),
        ambient_dim: m.ambient_dim(),
        dim_l: l.dim(),
        dim_m: m.dim(),
        dim_quotient,
        tangent_formula: tangent as usize,
        localization_kernel_dim: kernel,
        l_in_m,
        injectivity_applies: config.deg_d() < data.len(),
        excess: dim_quotient as i64 - tangent,
    })
}

impl fmt::Display for QuotientReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "|Γ| = {}, deg D = {}, ambient = {}", self.gamma_count, self.deg_d, self.ambient_dim)?;
        writeln!(f, "dim L = {}, dim M = {}, dim M/L = {}", self.dim_l, self.dim_m, self.dim_quotient)?;
        writeln!(f, "Σ α(h_γ) = {}, excess = {}", self.tangent_formula, self.excess)?;
        let kernel = if self.injectivity_applies {
            format!("{}", self.localization_kernel_dim)
        } else {
            format!("{} (deg D ≥ |Γ|, not asserted)", self.localization_kernel_dim)
        };
        writeln!(f, "localization kernel = {kernel}")?;
        write!(f, "L ⊆ M: {}", self.l_in_m)
    }
}
