use super::DivisorGerm;
use crate::error::{Error, Result};
use crate::exactnum::TruncatedMatrixSeries;
use crate::liecore::Family;

/// Extra terms demanded beyond the spread of the exponents.
pub const DEFAULT_GUARD: i64 = 4;

/// `left·Ψ·right = diag(z^{d_1}, …, z^{d_n})` with `d` descending, and the
/// residual `k = right⁻¹`, so that `left·Ψ = z^d·k`.
#[derive(Clone, Debug)]
pub struct ReducedForm {
    pub d: Vec<i64>,
    pub left: TruncatedMatrixSeries,
    pub right: TruncatedMatrixSeries,
    pub residual: TruncatedMatrixSeries,
}

pub fn smith_reduce(germ: &DivisorGerm) -> Result<ReducedForm> {
    smith_reduce_with_guard(germ, DEFAULT_GUARD)
}

pub fn smith_reduce_with_guard(germ: &DivisorGerm, guard: i64) -> Result<ReducedForm> {
    if germ.family() != Family::A {
        return Err(Error::Domain(format!(
            "unsupported family for reduction: {} (only type A germs are reduced)",
            germ.family()
        )));
    }
    let psi = germ.psi();
    match psi.eliminate() {
        Err(Error::Indeterminate(_)) if psi.is_exact() => {
            // exact non-monomial pivots: continue with a finite window wide
            // enough for every exponent the degree span allows
            let val = germ.valuation();
            let span = psi.last_degree().unwrap_or(val) - val;
            let window = (span + 1) * psi.rows() as i64 * 2 + guard;
            reduce_finite(&psi.truncate(val + window), guard)
        }
        Err(e) => Err(e),
        Ok(_) => reduce_finite(psi, guard),
    }
}

fn reduce_finite(psi: &TruncatedMatrixSeries, guard: i64) -> Result<ReducedForm> {
    let e = psi.eliminate()?;
    let spread = e.exponents.first().copied().unwrap_or(0) - e.exponents.last().copied().unwrap_or(0);
    if let Some(available) = psi.precision() {
        let required = spread + guard;
        if available < required {
            return Err(Error::InsufficientPrecision { available, required });
        }
    }
    let target = TruncatedMatrixSeries::diag_monomials(&e.exponents);
    let back = e.left.mul(psi).mul(&e.right);
    if !back.sub(&target).vanishes_within_precision() {
        return Err(Error::Indeterminate(
            "left·Ψ·right differs from diag(z^d) inside the precision window".into(),
        ));
    }
    let residual = e.right.inverse()?;
    let lhs = target.mul(&residual);
    let rhs = e.left.mul(psi);
    if !lhs.sub(&rhs).vanishes_within_precision() {
        return Err(Error::Indeterminate("z^d·k differs from left·Ψ inside the precision window".into()));
    }
    Ok(ReducedForm {
        d: e.exponents,
        left: e.left,
        right: e.right,
        residual,
    })
}

/// `Ψ = U⁻¹·z^d·k` with `k ∈ K`: returns the exponents `d` and `k`.
pub fn reduced_form_left(germ: &DivisorGerm) -> Result<(Vec<i64>, TruncatedMatrixSeries)> {
    let r = smith_reduce(germ)?;
    Ok((r.d, r.residual))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{Matrix, Scalar};

    fn germ(coeffs: Vec<Matrix>) -> DivisorGerm {
        DivisorGerm::new(Family::A, TruncatedMatrixSeries::from_coeffs(0, coeffs)).unwrap()
    }

    fn zeros(k: usize) -> Vec<Matrix> {
        vec![Matrix::zeros(2, 2); k]
    }

    #[test]
    fn diagonal_monomials_are_already_reduced() {
        let g = DivisorGerm::new(Family::A, TruncatedMatrixSeries::diag_monomials(&[1, 3])).unwrap();
        let r = smith_reduce(&g).unwrap();
        assert_eq!(r.d, vec![3, 1]);
        // the factors are permutations
        for f in [&r.left, &r.right] {
            let c = f.coeff(0).unwrap();
            assert!(c.is_invertible());
            assert_eq!(f.valuation(), Some(0));
        }
    }

    #[test]
    fn jordan_block_has_exponents_two_and_zero() {
        let mut c = vec![Matrix::from_i64(&[&[0, 1], &[0, 0]]), Matrix::identity(2)];
        c.extend(zeros(8));
        let r = smith_reduce(&germ(c)).unwrap();
        assert_eq!(r.d, vec![2, 0]);
        assert!(r.residual.coeff(0).unwrap().is_invertible());
    }

    #[test]
    fn exact_jordan_block_reduces_too() {
        let psi = TruncatedMatrixSeries::exact(
            0,
            vec![Matrix::from_i64(&[&[0, 1], &[0, 0]]), Matrix::identity(2)],
        );
        let r = smith_reduce(&DivisorGerm::new(Family::A, psi).unwrap()).unwrap();
        assert_eq!(r.d, vec![2, 0]);
    }

    #[test]
    fn z_to_h_has_identity_residual() {
        let g = DivisorGerm::new(Family::A, TruncatedMatrixSeries::diag_monomials(&[2, -1])).unwrap();
        let (d, k) = reduced_form_left(&g).unwrap();
        assert_eq!(d, vec![2, -1]);
        assert_eq!(k, TruncatedMatrixSeries::identity(2));
    }

    #[test]
    fn short_germs_report_missing_terms() {
        // diag(1, z^3) known to two terms cannot certify the exponent spread
        let g = germ(vec![Matrix::from_i64(&[&[1, 0], &[0, 0]]), Matrix::zeros(2, 2)]);
        let err = smith_reduce(&g).unwrap_err();
        assert!(matches!(err, Error::InsufficientPrecision { .. } | Error::SingularWithinPrecision));
        let mut ok = vec![Matrix::from_i64(&[&[1, 0], &[0, 0]]), Matrix::zeros(2, 2), Matrix::zeros(2, 2)];
        ok.push(Matrix::from_i64(&[&[0, 0], &[0, 1]]));
        ok.extend(zeros(4));
        assert_eq!(smith_reduce(&germ(ok)).unwrap().d, vec![3, 0]);
    }

    #[test]
    fn other_families_are_refused() {
        let g = DivisorGerm::new(Family::C, TruncatedMatrixSeries::identity(2)).unwrap();
        let err = smith_reduce(&g).unwrap_err();
        assert!(err.to_string().contains("unsupported family for reduction"));
    }

    #[test]
    fn residual_has_unit_constant_term() {
        let mut c = vec![
            Matrix::from_i64(&[&[0, 1], &[0, 0]]),
            Matrix::from_rows(2, vec![vec![Scalar::from(1), Scalar::from(0)], vec![Scalar::i(), Scalar::from(1)]]),
        ];
        c.extend(zeros(8));
        let r = smith_reduce(&germ(c)).unwrap();
        assert_eq!(r.residual.valuation(), Some(0));
        assert!(r.residual.coeff(0).unwrap().is_invertible());
    }
}
