use super::{DivisorGerm, Flag};
use crate::error::{Error, Result};
use crate::exactnum::{nullspace, series_invert, Matrix, Scalar, SubspaceBasis, TruncatedMatrixSeries};
use crate::grading::compute_module_grading;
use crate::liecore::{CoweightH, RootSystemRealization};

/// The flag `F_i = {f_i : f a section}` read off the linear system
/// `Σ_b Ψ_{j-b} f_b = 0` for `j < 0`, with unknowns `f_{-k}, …, f_{m-1}` where
/// `-k` is the valuation of `Ψ⁻¹`. Each `F_i` is the projection of the joint
/// solution space onto the block of `f_i`.
pub fn flag_from_system(germ: &DivisorGerm) -> Result<Flag> {
    let n = germ.module_dim();
    let psi = germ.psi();
    let val = germ.valuation();
    let m = germ.pole_order();
    let inv = series_invert(psi)?;
    let k = -inv.valuation().ok_or(Error::SingularWithinPrecision)?;
    if let Some(end) = psi.end() {
        if end < k {
            return Err(Error::InsufficientPrecision {
                available: end - val,
                required: k - val,
            });
        }
    }
    let blocks = m + k;
    if blocks <= 0 {
        return Ok(Flag::trivial(n, -k));
    }
    let nb = blocks as usize;
    let mut system = Matrix::zeros(nb * n, nb * n);
    // equation block for degree j = -m-k+r, unknown block for f_b, b = -k+c
    for r in 0..nb {
        let j = -m - k + r as i64;
        for c in 0..nb {
            let b = -k + c as i64;
            let Some(coeff) = psi.coeff(j - b) else {
                unreachable!("precision was checked above");
            };
            for x in 0..n {
                for y in 0..n {
                    system[(r * n + x, c * n + y)] = coeff[(x, y)].clone();
                }
            }
        }
    }
    let solutions = nullspace(&system);
    let pieces = (0..nb)
        .map(|c| {
            SubspaceBasis::span(
                n,
                solutions.vectors().map(|v| v[c * n..(c + 1) * n].to_vec()),
            )
        })
        .collect();
    Flag::new(n, -k, pieces)
}

/// The flag `F_j = ⊕_{s ≤ j} V_s` of the grading `V_s = {v : hv = -s·v}`.
pub fn flag_from_h(r: &RootSystemRealization, h: &CoweightH) -> Result<Flag> {
    Ok(compute_module_grading(r, h)?.flag().clone())
}

/// Whether `Ψ·f` is holomorphic, for a column series `f`.
pub fn is_section(f: &TruncatedMatrixSeries, germ: &DivisorGerm) -> Result<bool> {
    if f.rows() != germ.module_dim() || f.cols() != 1 {
        return Err(Error::DimensionMismatch {
            expected: germ.module_dim(),
            found: f.rows(),
        });
    }
    let prod = germ.psi().mul(f);
    let Some(v) = prod.valuation() else {
        return if prod.end().is_none_or(|e| e >= 0) {
            Ok(true)
        } else {
            Err(undecided(prod.end()))
        };
    };
    if v < 0 {
        return Ok(false);
    }
    if prod.end().is_some_and(|e| e < 0) {
        return Err(undecided(prod.end()));
    }
    Ok(true)
}

fn undecided(end: Option<i64>) -> Error {
    Error::Indeterminate(format!(
        "Ψ·f is only known below degree {}, so its principal part is undetermined",
        end.unwrap_or(0)
    ))
}

/// Whether every Laurent coefficient `f_i` lies in `F_i`.
pub fn satisfies_flag(f: &TruncatedMatrixSeries, flag: &Flag) -> Result<bool> {
    if f.rows() != flag.ambient_dim() || f.cols() != 1 {
        return Err(Error::DimensionMismatch {
            expected: flag.ambient_dim(),
            found: f.rows(),
        });
    }
    let Some(low) = f.valuation() else {
        return Ok(true);
    };
    for i in low..flag.hi() {
        let Some(c) = f.coeff(i) else {
            return Err(Error::Indeterminate(format!(
                "coefficient f_{i} is needed but f is only known below degree {i}"
            )));
        };
        let v: Vec<Scalar> = c.col(0);
        if !flag.get(i).contains_vector(&v)? {
            return Ok(false);
        }
    }
    Ok(true)
}
