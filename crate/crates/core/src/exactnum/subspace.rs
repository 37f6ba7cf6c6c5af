//! Subspaces of `K^n` held in reduced row-echelon form.
//!
//! Because the RREF basis of a subspace is unique, two subspaces are equal
//! exactly when their stored bases are equal, so `==` is subspace equality.

use num_traits::Zero;

use super::matrix::Matrix;
use super::scalar::Scalar;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SubspaceBasis {
    ambient_dim: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl SubspaceBasis {
    /// Row space of `rows`.
    pub fn row_space(rows: &Matrix) -> Self {
        let r = rows.rref();
        SubspaceBasis {
            ambient_dim: rows.cols(),
            basis: r.reduced.submatrix(0..r.rank, 0..rows.cols()),
            pivots: r.pivots,
        }
    }

    pub fn span<I>(ambient_dim: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = Vec<Scalar>>,
    {
        let rows: Vec<Vec<Scalar>> = vectors.into_iter().collect();
        SubspaceBasis::row_space(&Matrix::from_rows(ambient_dim, rows))
    }

    pub fn zero(ambient_dim: usize) -> Self {
        SubspaceBasis {
            ambient_dim,
            basis: Matrix::zeros(0, ambient_dim),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        SubspaceBasis {
            ambient_dim,
            basis: Matrix::identity(ambient_dim),
            pivots: (0..ambient_dim).collect(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn codim(&self) -> usize {
        self.ambient_dim - self.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    /// RREF basis, one vector per row.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn vectors(&self) -> impl Iterator<Item = &[Scalar]> {
        self.basis.row_vecs()
    }

    fn check_ambient(&self, other: &SubspaceBasis) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            });
        }
        Ok(())
    }

    pub fn contains_vector(&self, v: &[Scalar]) -> Result<bool> {
        if v.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: v.len(),
            });
        }
        // reduce against the echelon basis; the residual vanishes iff v is in the span
        let mut residual = v.to_vec();
        for (row, &p) in self.basis.row_vecs().zip(&self.pivots) {
            let c = residual[p].clone();
            if c.is_zero() {
                continue;
            }
            for (r, b) in residual.iter_mut().zip(row) {
                if !b.is_zero() {
                    *r -= &(&c * b);
                }
            }
        }
        Ok(residual.iter().all(Zero::is_zero))
    }

    /// True iff `other ⊆ self`.
    pub fn contains(&self, other: &SubspaceBasis) -> Result<bool> {
        self.check_ambient(other)?;
        for v in other.vectors() {
            if !self.contains_vector(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &SubspaceBasis) -> Result<SubspaceBasis> {
        self.check_ambient(other)?;
        Ok(SubspaceBasis::row_space(&self.basis.vstack(&other.basis)))
    }

    /// Intersection through the nullspace of the stacked bases: pairs
    /// `(a, b)` with `a·A = b·B` give the common vectors `a·A`.
    pub fn intersect(&self, other: &SubspaceBasis) -> Result<SubspaceBasis> {
        self.check_ambient(other)?;
        let (ra, rb) = (self.dim(), other.dim());
        if ra == 0 || rb == 0 {
            return Ok(SubspaceBasis::zero(self.ambient_dim));
        }
        let stacked = self.basis.vstack(&(-&other.basis)).transpose();
        let kernel = stacked.kernel_rows();
        let coeffs = kernel.submatrix(0..kernel.rows(), 0..ra);
        Ok(SubspaceBasis::row_space(&(&coeffs * &self.basis)))
    }

    /// Rows `w` with `w·v = 0` for all `v` in the subspace, so that
    /// `v ∈ self ⇔ annihilator·v = 0`.
    pub fn annihilator(&self) -> Matrix {
        if self.dim() == 0 {
            return Matrix::identity(self.ambient_dim);
        }
        self.basis.kernel_rows()
    }

    /// Image under the linear map `v ↦ map·v`.
    pub fn image(&self, map: &Matrix) -> Result<SubspaceBasis> {
        if map.cols() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: map.cols(),
            });
        }
        let rows: Vec<Vec<Scalar>> = self.vectors().map(|v| map.mul_vec(v)).collect();
        Ok(SubspaceBasis::span(map.rows(), rows))
    }
}

/// Reduced row-echelon form with rank and pivot columns.
pub fn rref(matrix: &Matrix) -> (Matrix, usize, Vec<usize>) {
    let r = matrix.rref();
    (r.reduced, r.rank, r.pivots)
}

/// `{x : A·x = 0}`.
pub fn nullspace(matrix: &Matrix) -> SubspaceBasis {
    SubspaceBasis::row_space(&matrix.kernel_rows())
}

pub fn subspace_sum(a: &SubspaceBasis, b: &SubspaceBasis) -> Result<SubspaceBasis> {
    a.sum(b)
}

pub fn subspace_intersect(a: &SubspaceBasis, b: &SubspaceBasis) -> Result<SubspaceBasis> {
    a.intersect(b)
}

pub fn subspace_contains(a: &SubspaceBasis, b: &SubspaceBasis) -> Result<bool> {
    a.contains(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| Scalar::from(x)).collect()
    }

    #[test]
    fn nullspace_of_identity_is_zero() {
        assert!(nullspace(&Matrix::identity(4)).is_zero());
    }

    #[test]
    fn nullspace_of_zero_is_everything() {
        assert!(nullspace(&Matrix::zeros(2, 3)).is_full());
    }

    #[test]
    fn nullspace_single_equation() {
        let n = nullspace(&Matrix::from_i64(&[&[1, 1, 0]]));
        assert_eq!(n.dim(), 2);
        // direct substitution: x + y = 0
        assert!(n.contains_vector(&v(&[1, -1, 0])).unwrap());
        assert!(n.contains_vector(&v(&[0, 0, 1])).unwrap());
        assert!(!n.contains_vector(&v(&[1, 0, 0])).unwrap());
    }

    #[test]
    fn sum_with_zero() {
        let a = SubspaceBasis::span(3, [v(&[1, 2, 3]), v(&[0, 1, 1])]);
        assert_eq!(a.sum(&SubspaceBasis::zero(3)).unwrap(), a);
    }

    #[test]
    fn intersect_coordinate_planes() {
        let a = SubspaceBasis::span(3, [v(&[1, 0, 0]), v(&[0, 1, 0])]);
        let b = SubspaceBasis::span(3, [v(&[0, 1, 0]), v(&[0, 0, 1])]);
        let c = a.intersect(&b).unwrap();
        assert_eq!(c, SubspaceBasis::span(3, [v(&[0, 1, 0])]));
    }

    #[test]
    fn contains_subspaces() {
        let a = SubspaceBasis::span(3, [v(&[1, 1, 0]), v(&[0, 0, 1])]);
        let sub = SubspaceBasis::span(3, [v(&[2, 2, 5])]);
        assert!(a.contains(&sub).unwrap());
        assert!(a.contains(&SubspaceBasis::zero(3)).unwrap());
        assert!(!sub.contains(&a).unwrap());
    }

    #[test]
    fn mismatched_ambient_is_an_error() {
        let a = SubspaceBasis::full(2);
        let b = SubspaceBasis::full(3);
        assert!(matches!(a.sum(&b), Err(Error::DimensionMismatch { .. })));
        assert!(a.intersect(&b).is_err());
        assert!(a.contains(&b).is_err());
    }

    #[test]
    fn annihilator_characterises_membership() {
        let a = SubspaceBasis::span(3, [v(&[1, 1, 0])]);
        let ann = a.annihilator();
        assert_eq!(ann.rows(), 2);
        assert!(ann.mul_vec(&v(&[3, 3, 0])).iter().all(Zero::is_zero));
        assert!(!ann.mul_vec(&v(&[1, 0, 0])).iter().all(Zero::is_zero));
    }
}
