use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactnum::{Matrix, Scalar, TruncatedMatrixSeries};

/// A rational matrix function of the global coordinate `w` on the sphere,
/// regular at infinity, in partial-fraction form
/// `C + Σ_p Σ_{s ≥ 1} A_{p,s} (w − p)^{-s}`.
#[derive(Clone)]
pub struct GlobalMatrixFunction {
    rows: usize,
    cols: usize,
    constant: Matrix,
    /// `(p, [A_{p,1}, A_{p,2}, …])`, trailing zero coefficients removed.
    poles: Vec<(Scalar, Vec<Matrix>)>,
}

impl GlobalMatrixFunction {
    pub fn zero(rows: usize, cols: usize) -> Self {
        GlobalMatrixFunction::constant(Matrix::zeros(rows, cols))
    }

    pub fn constant(m: Matrix) -> Self {
        GlobalMatrixFunction {
            rows: m.rows(),
            cols: m.cols(),
            constant: m,
            poles: Vec::new(),
        }
    }

    /// `x·(w − p)^{-order}`.
    pub fn pole(p: Scalar, order: usize, x: Matrix) -> Self {
        assert!(order >= 1, "pole order starts at 1");
        let (rows, cols) = (x.rows(), x.cols());
        let mut coeffs = vec![Matrix::zeros(rows, cols); order];
        coeffs[order - 1] = x;
        let mut f = GlobalMatrixFunction {
            rows,
            cols,
            constant: Matrix::zeros(rows, cols),
            poles: vec![(p, coeffs)],
        };
        f.normalize();
        f
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Value at infinity.
    pub fn constant_term(&self) -> &Matrix {
        &self.constant
    }

    pub fn principal_parts(&self) -> &[(Scalar, Vec<Matrix>)] {
        &self.poles
    }

    pub fn pole_order_at(&self, p: &Scalar) -> usize {
        self.poles
            .iter()
            .find(|(q, _)| q == p)
            .map_or(0, |(_, c)| c.len())
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.poles.is_empty()
    }

    fn normalize(&mut self) {
        for (_, c) in &mut self.poles {
            while c.last().is_some_and(Matrix::is_zero) {
                c.pop();
            }
        }
        self.poles.retain(|(_, c)| !c.is_empty());
    }

    fn check_shape(&self, other: &Self) -> Result<()> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let mut out = self.clone();
        out.constant = &out.constant + &other.constant;
        for (p, cs) in &other.poles {
            match out.poles.iter_mut().find(|(q, _)| q == p) {
                Some((_, mine)) => {
                    if mine.len() < cs.len() {
                        mine.resize(cs.len(), Matrix::zeros(self.rows, self.cols));
                    }
                    for (m, c) in mine.iter_mut().zip(cs) {
                        *m = &*m + c;
                    }
                }
                None => out.poles.push((p.clone(), cs.clone())),
            }
        }
        out.normalize();
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = GlobalMatrixFunction {
            rows: self.rows,
            cols: self.cols,
            constant: self.constant.scale(c),
            poles: self
                .poles
                .iter()
                .map(|(p, cs)| (p.clone(), cs.iter().map(|m| m.scale(c)).collect()))
                .collect(),
        };
        out.normalize();
        out
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-Scalar::from(1)))
    }

    /// Exact Laurent coefficients at `gamma` in `z = w − gamma`, degrees
    /// `lo..=hi`.
    pub fn localize(&self, gamma: &Scalar, lo: i64, hi: i64) -> TruncatedMatrixSeries {
        let len = (hi - lo + 1).max(0) as usize;
        let mut coeffs = vec![Matrix::zeros(self.rows, self.cols); len];
        if lo <= 0 && 0 <= hi {
            coeffs[(-lo) as usize] = self.constant.clone();
        }
        for (p, cs) in &self.poles {
            for (s, a) in cs.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (k, c) in pole_expansion(p, s + 1, gamma, lo, hi).iter().enumerate() {
                    if !c.is_zero() {
                        coeffs[k] = &coeffs[k] + &a.scale(c);
                    }
                }
            }
        }
        TruncatedMatrixSeries::new(self.rows, self.cols, lo, coeffs, hi + 1)
    }

    /// `self·other`, rebuilt from its value at infinity and its principal
    /// parts, both read off exact local expansions.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut points: Vec<Scalar> = self.poles.iter().map(|(p, _)| p.clone()).collect();
        for (p, _) in &other.poles {
            if !points.contains(p) {
                points.push(p.clone());
            }
        }
        let mut out = GlobalMatrixFunction::constant(&self.constant * &other.constant);
        for p in points {
            let (a, b) = (self.pole_order_at(&p) as i64, other.pole_order_at(&p) as i64);
            let reach = a + b;
            let prod = self.localize(&p, -reach, reach).mul(&other.localize(&p, -reach, reach));
            let coeffs: Vec<Matrix> = (1..=reach)
                .map(|s| prod.coeff(-s).expect("inside the window"))
                .collect();
            out.poles.push((p, coeffs));
        }
        out.normalize();
        Ok(out)
    }
}

impl PartialEq for GlobalMatrixFunction {
    fn eq(&self, other: &Self) -> bool {
        (self.rows, self.cols) == (other.rows, other.cols)
            && self.constant == other.constant
            && self.poles.len() == other.poles.len()
            && self
                .poles
                .iter()
                .all(|(p, cs)| other.poles.iter().any(|(q, ds)| p == q && cs == ds))
    }
}

impl Eq for GlobalMatrixFunction {}

/// Coefficients of `(w − p)^{-s}` at `gamma` for degrees `lo..=hi` of
/// `z = w − gamma`.
pub(crate) fn pole_expansion(p: &Scalar, s: usize, gamma: &Scalar, lo: i64, hi: i64) -> Vec<Scalar> {
    let len = (hi - lo + 1).max(0) as usize;
    let mut out = vec![Scalar::zero(); len];
    if p == gamma {
        let d = -(s as i64);
        if lo <= d && d <= hi {
            out[(d - lo) as usize] = Scalar::from(1);
        }
        return out;
    }
    // (z + c)^{-s} = Σ_j (-1)^j C(s+j-1, j) c^{-s-j} z^j with c = gamma - p
    let c = gamma - p;
    let cinv = c.inv().expect("distinct points");
    let mut term = cinv.pow(s as u32);
    for j in 0..=hi.max(-1) {
        if j >= lo {
            out[(j - lo) as usize] = term.clone();
        }
        let ratio = Scalar::from_ratio(-(s as i64 + j), j + 1);
        term = &(&term * &ratio) * &cinv;
    }
    out
}

/// `[f, g] = f·g − g·f`.
pub fn bracket_global(f: &GlobalMatrixFunction, g: &GlobalMatrixFunction) -> Result<GlobalMatrixFunction> {
    f.mul(g)?.sub(&g.mul(f)?)
}

/// Free-function form of [`GlobalMatrixFunction::localize`].
pub fn localize(f: &GlobalMatrixFunction, gamma: &Scalar, lo: i64, hi: i64) -> TruncatedMatrixSeries {
    f.localize(gamma, lo, hi)
}

impl fmt::Debug for GlobalMatrixFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.constant)?;
        for (p, cs) in &self.poles {
            for (s, a) in cs.iter().enumerate() {
                if !a.is_zero() {
                    write!(f, " + {a:?}·(w - {p})^-{}", s + 1)?;
                }
            }
        }
        Ok(())
    }
}
