//! Matrix-valued truncated Laurent series with a common degree window, and
//! elimination over the valuation ring `K[[z]]`.

use std::fmt;

use num_traits::One;

use super::matrix::Matrix;
use super::scalar::Scalar;
use super::series::{clamp_end, TruncatedLaurentSeries, EXACT_END};
use crate::error::{Error, Result};

/// `Σ_{d ≥ start} coeffs[d - start]·z^d + O(z^end)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruncatedMatrixSeries {
    rows: usize,
    cols: usize,
    start: i64,
    coeffs: Vec<Matrix>,
    end: i64,
}

type Entries = Vec<Vec<TruncatedLaurentSeries>>;

impl TruncatedMatrixSeries {
    pub fn new(rows: usize, cols: usize, start: i64, coeffs: Vec<Matrix>, end: i64) -> Self {
        for c in &coeffs {
            assert_eq!((c.rows(), c.cols()), (rows, cols), "coefficient shape mismatch");
        }
        assert!(
            start + coeffs.len() as i64 <= end.max(start),
            "coefficients extend past the precision window"
        );
        let mut s = TruncatedMatrixSeries {
            rows,
            cols,
            start,
            coeffs,
            end: clamp_end(end),
        };
        s.normalize();
        s
    }

    /// Coefficient matrices for degrees `start..start + coeffs.len()`, with
    /// relative precision equal to the number of matrices given.
    pub fn from_coeffs(start: i64, coeffs: Vec<Matrix>) -> Self {
        let (rows, cols) = coeffs
            .first()
            .map(|c| (c.rows(), c.cols()))
            .expect("at least one coefficient matrix");
        let end = start + coeffs.len() as i64;
        TruncatedMatrixSeries::new(rows, cols, start, coeffs, end)
    }

    pub fn exact(start: i64, coeffs: Vec<Matrix>) -> Self {
        let (rows, cols) = coeffs
            .first()
            .map(|c| (c.rows(), c.cols()))
            .expect("at least one coefficient matrix");
        TruncatedMatrixSeries::new(rows, cols, start, coeffs, EXACT_END)
    }

    pub fn constant(m: Matrix) -> Self {
        TruncatedMatrixSeries::exact(0, vec![m])
    }

    pub fn identity(n: usize) -> Self {
        TruncatedMatrixSeries::constant(Matrix::identity(n))
    }

    pub fn zero_to(rows: usize, cols: usize, end: i64) -> Self {
        TruncatedMatrixSeries::new(rows, cols, end, Vec::new(), end)
    }

    /// `diag(z^{d_1}, …, z^{d_n})`, exact.
    pub fn diag_monomials(exponents: &[i64]) -> Self {
        let n = exponents.len();
        let entries: Entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            TruncatedLaurentSeries::monomial(Scalar::one(), exponents[i])
                        } else {
                            TruncatedLaurentSeries::exact_zero()
                        }
                    })
                    .collect()
            })
            .collect();
        TruncatedMatrixSeries::from_entries(n, n, &entries)
    }

    fn normalize(&mut self) {
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == self.coeffs.len() {
            self.coeffs.clear();
            self.start = self.end;
            return;
        }
        self.coeffs.drain(..lead);
        self.start += lead as i64;
        while self.coeffs.last().is_some_and(Matrix::is_zero) {
            self.coeffs.pop();
        }
    }

    /// Common window of a matrix of scalar series: the smallest end wins.
    pub fn from_entries(rows: usize, cols: usize, entries: &[Vec<TruncatedLaurentSeries>]) -> Self {
        assert_eq!(entries.len(), rows);
        let end = entries
            .iter()
            .flatten()
            .map(|e| e.raw_end())
            .min()
            .unwrap_or(EXACT_END);
        let lo = entries
            .iter()
            .flatten()
            .filter_map(|e| e.valuation())
            .min()
            .unwrap_or(end)
            .min(end);
        let hi = entries
            .iter()
            .flatten()
            .filter_map(|e| e.valuation().map(|v| v + e.raw_coeff_len() as i64))
            .max()
            .unwrap_or(lo)
            .min(end)
            .max(lo);
        let coeffs = (lo..hi)
            .map(|d| {
                Matrix::from_fn(rows, cols, |i, j| {
                    entries[i][j].coeff(d).expect("degree inside common window")
                })
            })
            .collect();
        TruncatedMatrixSeries::new(rows, cols, lo, coeffs, end)
    }

    pub fn entry(&self, i: usize, j: usize) -> TruncatedLaurentSeries {
        TruncatedLaurentSeries::new(
            self.start,
            self.coeffs.iter().map(|c| c[(i, j)].clone()).collect(),
            self.end,
        )
    }

    pub fn entries(&self) -> Entries {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.entry(i, j)).collect())
            .collect()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Smallest degree with a nonzero coefficient matrix.
    pub fn valuation(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then_some(self.start)
    }

    /// Largest degree with a nonzero coefficient matrix.
    pub fn last_degree(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then(|| self.start + self.coeffs.len() as i64 - 1)
    }

    pub(crate) fn low(&self) -> i64 {
        self.start
    }

    /// First undetermined degree; `None` for exact series.
    pub fn end(&self) -> Option<i64> {
        (self.end < EXACT_END).then_some(self.end)
    }

    pub fn precision(&self) -> Option<i64> {
        let v = self.valuation()?;
        self.end().map(|e| e - v)
    }

    pub fn is_exact(&self) -> bool {
        self.end >= EXACT_END
    }

    pub fn is_zero_within_precision(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient matrix at `degree`, or `None` past the window.
    pub fn coeff(&self, degree: i64) -> Option<Matrix> {
        if degree >= self.end {
            return None;
        }
        let idx = degree - self.start;
        if idx < 0 || idx >= self.coeffs.len() as i64 {
            Some(Matrix::zeros(self.rows, self.cols))
        } else {
            Some(self.coeffs[idx as usize].clone())
        }
    }

    pub fn truncate(&self, end: i64) -> Self {
        let end = end.min(self.end);
        if end <= self.start {
            return TruncatedMatrixSeries::zero_to(self.rows, self.cols, end);
        }
        let keep = ((end - self.start) as usize).min(self.coeffs.len());
        TruncatedMatrixSeries::new(self.rows, self.cols, self.start, self.coeffs[..keep].to_vec(), end)
    }

    pub fn shift(&self, k: i64) -> Self {
        let end = if self.is_exact() { EXACT_END } else { self.end + k };
        TruncatedMatrixSeries::new(self.rows, self.cols, self.start + k, self.coeffs.clone(), end)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        TruncatedMatrixSeries::new(
            self.rows,
            self.cols,
            self.start,
            self.coeffs.iter().map(|m| m.scale(c)).collect(),
            self.end,
        )
    }

    /// Left multiplication by a constant matrix.
    pub fn left_mul_constant(&self, m: &Matrix) -> Self {
        TruncatedMatrixSeries::new(
            m.rows(),
            self.cols,
            self.start,
            self.coeffs.iter().map(|c| m * c).collect(),
            self.end,
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, true)
    }

    fn combine(&self, other: &Self, subtract: bool) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let end = self.end.min(other.end);
        let lo = self.start.min(other.start).min(end);
        let hi = [self, other]
            .iter()
            .filter(|s| !s.coeffs.is_empty())
            .map(|s| s.start + s.coeffs.len() as i64)
            .max()
            .unwrap_or(lo)
            .min(end)
            .max(lo);
        let coeffs = (lo..hi)
            .map(|d| {
                let a = self.coeff(d).expect("inside window");
                let b = other.coeff(d).expect("inside window");
                if subtract {
                    &a - &b
                } else {
                    &a + &b
                }
            })
            .collect();
        TruncatedMatrixSeries::new(self.rows, self.cols, lo, coeffs, end)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "incompatible series product");
        let end = clamp_end((self.low() + other.end).min(other.low() + self.end));
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return TruncatedMatrixSeries::zero_to(self.rows, other.cols, end);
        }
        let start = self.start + other.start;
        let len = ((self.coeffs.len() + other.coeffs.len() - 1) as i64)
            .min(end - start)
            .max(0) as usize;
        let mut coeffs = vec![Matrix::zeros(self.rows, other.cols); len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                if !b.is_zero() {
                    coeffs[i + j] = &coeffs[i + j] + &(a * b);
                }
            }
        }
        TruncatedMatrixSeries::new(self.rows, other.cols, start, coeffs, end)
    }

    /// Determines every coefficient inside the window as a known zero.
    pub fn vanishes_within_precision(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Valuation-pivoted elimination over `K[[z]]`; see [`Elimination`].
    pub fn eliminate(&self) -> Result<Elimination> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        eliminate(self)
    }

    /// Inverse over the Laurent series field. The result carries only the
    /// coefficients forced by the known terms of `self`.
    pub fn inverse(&self) -> Result<Self> {
        let e = self.eliminate()?;
        let n = self.rows;
        let reduced = e.reduced.entries();
        let d = &e.exponents;
        // (D + E)^{-1} = D^{-1} - D^{-1} E D^{-1} + …; E is zero in its
        // window, so off-diagonal entries only bound the precision.
        let mut dinv: Entries = Vec::with_capacity(n);
        for i in 0..n {
            let mut row = Vec::with_capacity(n);
            for j in 0..n {
                if i == j {
                    row.push(reduced[i][i].inv()?);
                } else {
                    let end = reduced[i][j].low();
                    let bound = if end >= EXACT_END { EXACT_END } else { end - d[i] - d[j] };
                    row.push(TruncatedLaurentSeries::zero_to(bound));
                }
            }
            dinv.push(row);
        }
        let dinv = TruncatedMatrixSeries::from_entries(n, n, &dinv);
        Ok(e.right.mul(&dinv).mul(&e.left))
    }
}

/// `left · m · right = reduced`, where `reduced` is diagonal with entries
/// `z^{exponents[i]}` inside its window, `left`/`right` have valuation ≥ 0 and
/// invertible constant terms, and `exponents` is sorted descending.
#[derive(Clone, Debug)]
pub struct Elimination {
    pub exponents: Vec<i64>,
    pub left: TruncatedMatrixSeries,
    pub right: TruncatedMatrixSeries,
    pub reduced: TruncatedMatrixSeries,
}

fn identity_entries(n: usize) -> Entries {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        TruncatedLaurentSeries::one()
                    } else {
                        TruncatedLaurentSeries::exact_zero()
                    }
                })
                .collect()
        })
        .collect()
}

fn swap_cols(m: &mut Entries, a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

fn eliminate(m: &TruncatedMatrixSeries) -> Result<Elimination> {
    let n = m.rows;
    let mut a = m.entries();
    let mut u = identity_entries(n);
    let mut v = identity_entries(n);
    let mut exponents = Vec::with_capacity(n);

    for t in 0..n {
        // pivot of minimal valuation, ties broken row-major
        let mut best: Option<(i64, usize, usize)> = None;
        let mut undetermined_low = i64::MAX;
        for i in t..n {
            for j in t..n {
                match a[i][j].valuation() {
                    Some(val) if best.is_none_or(|(b, _, _)| val < b) => best = Some((val, i, j)),
                    Some(_) => {}
                    None => undetermined_low = undetermined_low.min(a[i][j].low()),
                }
            }
        }
        let Some((val, pi, pj)) = best else {
            return Err(Error::SingularWithinPrecision);
        };
        // an entry known only to be O(z^e) with e < val might hide a smaller valuation
        if undetermined_low < val {
            return Err(Error::InsufficientPrecision {
                available: undetermined_low - m.low(),
                required: val - m.low() + 1,
            });
        }
        a.swap(t, pi);
        u.swap(t, pi);
        swap_cols(&mut a, t, pj);
        swap_cols(&mut v, t, pj);

        let pivot_inv = a[t][t].inv()?;
        for r in t + 1..n {
            if a[r][t].is_zero_within_precision() && a[r][t].is_exact() {
                continue;
            }
            let q = a[r][t].mul(&pivot_inv);
            for j in t..n {
                let delta = q.mul(&a[t][j]);
                a[r][j] = a[r][j].sub(&delta);
            }
            for j in 0..n {
                let delta = q.mul(&u[t][j]);
                u[r][j] = u[r][j].sub(&delta);
            }
        }
        for c in t + 1..n {
            if a[t][c].is_zero_within_precision() && a[t][c].is_exact() {
                continue;
            }
            let q = pivot_inv.mul(&a[t][c]);
            for i in t..n {
                let delta = a[i][t].mul(&q);
                a[i][c] = a[i][c].sub(&delta);
            }
            for i in 0..n {
                let delta = v[i][t].mul(&q);
                v[i][c] = v[i][c].sub(&delta);
            }
        }
        // scale the pivot row so the pivot becomes z^val
        let unit_inv = pivot_inv.shift(val);
        for j in 0..n {
            a[t][j] = unit_inv.mul(&a[t][j]);
            u[t][j] = unit_inv.mul(&u[t][j]);
        }
        exponents.push(val);
    }

    // descending exponents via a constant permutation on both sides
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| exponents[y].cmp(&exponents[x]).then(x.cmp(&y)));
    let permute = |m: &Entries, rows: bool| -> Entries {
        if rows {
            order.iter().map(|&i| m[i].clone()).collect()
        } else {
            m.iter()
                .map(|row| order.iter().map(|&j| row[j].clone()).collect())
                .collect()
        }
    };
    let a = permute(&permute(&a, true), false);
    let u = permute(&u, true);
    let v = permute(&v, false);
    let exponents = order.iter().map(|&i| exponents[i]).collect();

    Ok(Elimination {
        exponents,
        left: TruncatedMatrixSeries::from_entries(n, n, &u),
        right: TruncatedMatrixSeries::from_entries(n, n, &v),
        reduced: TruncatedMatrixSeries::from_entries(n, n, &a),
    })
}

/// Inverse of a square matrix series; see [`TruncatedMatrixSeries::inverse`].
pub fn series_invert(m: &TruncatedMatrixSeries) -> Result<TruncatedMatrixSeries> {
    m.inverse()
}

impl fmt::Debug for TruncatedMatrixSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            write!(f, "{c:?}·z^{} + ", self.start + i as i64)?;
        }
        match self.end() {
            Some(e) => write!(f, "O(z^{e})"),
            None => f.write_str("(exact)"),
        }
    }
}
