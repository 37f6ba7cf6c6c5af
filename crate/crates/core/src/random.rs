//! Seeded generators for random exact instances: scalars, invertible
//! matrices, elements of `K = GL_n(C[[z]])` and germs `k_1·z^d·k_2`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactnum::{Matrix, Scalar, TruncatedMatrixSeries};

/// The generator used for every randomized instance, so a seed replays a run.
pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A Gaussian integer with both parts in `-bound..=bound`; purely real when
/// `complex` is false.
pub fn random_scalar<R: Rng>(rng: &mut R, bound: i64, complex: bool) -> Scalar {
    let re = Scalar::from(rng.gen_range(-bound..=bound));
    if complex {
        &re + &(&Scalar::i() * &Scalar::from(rng.gen_range(-bound..=bound)))
    } else {
        re
    }
}

pub fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, bound: i64) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| random_scalar(rng, bound, false))
}

/// Rejection-sampled invertible integer matrix.
pub fn random_invertible<R: Rng>(rng: &mut R, n: usize, bound: i64) -> Matrix {
    loop {
        let m = random_matrix(rng, n, n, bound);
        if m.is_invertible() {
            return m;
        }
    }
}

/// An element of `K` known to `precision` terms: invertible constant term
/// and random higher coefficients.
pub fn random_k<R: Rng>(rng: &mut R, n: usize, precision: usize) -> TruncatedMatrixSeries {
    let mut coeffs = vec![random_invertible(rng, n, 2)];
    coeffs.extend((1..precision).map(|_| random_matrix(rng, n, n, 2)));
    TruncatedMatrixSeries::new(n, n, 0, coeffs, precision as i64)
}

/// `k_1·z^d·k_2` with random `k_1, k_2 ∈ K`, known to `precision` terms past
/// its valuation `min d`.
pub fn random_germ<R: Rng>(rng: &mut R, d: &[i64], precision: usize) -> TruncatedMatrixSeries {
    let n = d.len();
    let k1 = random_k(rng, n, precision);
    let k2 = random_k(rng, n, precision);
    k1.mul(&TruncatedMatrixSeries::diag_monomials(d)).mul(&k2)
}

/// Random exponents in `-max_pole..=max_pole` with at least one entry equal
/// to `-max_pole`, so the germ has a pole of exactly that order.
pub fn random_exponents<R: Rng>(rng: &mut R, n: usize, max_pole: i64) -> Vec<i64> {
    let mut d: Vec<i64> = (0..n).map(|_| rng.gen_range(-max_pole..=max_pole)).collect();
    let i = rng.gen_range(0..n);
    d[i] = -max_pole;
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_germ() {
        let a = random_germ(&mut seeded(7), &[2, 0, -1], 6);
        let b = random_germ(&mut seeded(7), &[2, 0, -1], 6);
        assert_eq!(a, b);
        assert_eq!(a.valuation(), Some(-1));
    }

    #[test]
    fn k_elements_have_unit_constant_term() {
        let mut rng = seeded(1);
        for _ in 0..5 {
            let k = random_k(&mut rng, 3, 4);
            assert!(k.coeff(0).unwrap().is_invertible());
            assert_eq!(k.precision(), Some(4));
        }
    }
}
