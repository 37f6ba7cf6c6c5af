//! Truncated Laurent series in one variable `z`.
//!
//! A series knows its coefficients on a window of degrees and is `O(z^end)`
//! past it. Exact series (finite Laurent polynomials) use an unbounded end.
//! Arithmetic propagates the end pessimistically: a result never claims a
//! coefficient its operands did not determine.

use std::fmt;

use num_traits::{One, Zero};

use super::scalar::Scalar;
use crate::error::{Error, Result};

/// End marker of exact series. Far enough from `i64::MAX` that sums of two
/// ends cannot overflow.
pub(crate) const EXACT_END: i64 = i64::MAX / 4;

/// Ends this large only arise from arithmetic on exact operands.
pub(crate) fn clamp_end(end: i64) -> i64 {
    if end >= EXACT_END / 2 {
        EXACT_END
    } else {
        end
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruncatedLaurentSeries {
    /// Degree of `coeffs[0]`; equals `end` for a series that is zero within precision.
    start: i64,
    /// Nonzero first and last entry, or empty.
    coeffs: Vec<Scalar>,
    end: i64,
}

impl TruncatedLaurentSeries {
    /// Coefficients for degrees `start..`, known up to (excluding) degree `end`.
    pub fn new(start: i64, coeffs: Vec<Scalar>, end: i64) -> Self {
        assert!(
            start + coeffs.len() as i64 <= end.max(start),
            "coefficients extend past the precision window"
        );
        let mut s = TruncatedLaurentSeries {
            start,
            coeffs,
            end: clamp_end(end),
        };
        s.normalize();
        s
    }

    /// Coefficients for degrees `start .. start + precision`.
    pub fn with_precision(start: i64, mut coeffs: Vec<Scalar>, precision: usize) -> Self {
        coeffs.resize(precision.max(coeffs.len()), Scalar::zero());
        coeffs.truncate(precision);
        TruncatedLaurentSeries::new(start, coeffs, start + precision as i64)
    }

    /// A Laurent polynomial, known exactly.
    pub fn exact(start: i64, coeffs: Vec<Scalar>) -> Self {
        TruncatedLaurentSeries::new(start, coeffs, EXACT_END)
    }

    pub fn monomial(c: Scalar, degree: i64) -> Self {
        TruncatedLaurentSeries::exact(degree, vec![c])
    }

    pub fn exact_zero() -> Self {
        TruncatedLaurentSeries::new(EXACT_END, Vec::new(), EXACT_END)
    }

    /// `O(z^end)`.
    pub fn zero_to(end: i64) -> Self {
        TruncatedLaurentSeries::new(end, Vec::new(), end)
    }

    pub fn one() -> Self {
        TruncatedLaurentSeries::monomial(Scalar::one(), 0)
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
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    /// Lowest degree whose coefficient could be nonzero: the valuation, or
    /// the end of the window for a series that vanishes within precision.
    pub(crate) fn low(&self) -> i64 {
        self.start
    }

    /// Degree of the first nonzero coefficient; `None` if the series is zero
    /// within its precision.
    pub fn valuation(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then_some(self.start)
    }

    /// First undetermined degree; `None` for exact series.
    pub fn end(&self) -> Option<i64> {
        (self.end < EXACT_END).then_some(self.end)
    }

    pub(crate) fn raw_end(&self) -> i64 {
        self.end
    }

    pub(crate) fn raw_coeff_len(&self) -> usize {
        self.coeffs.len()
    }

    /// Number of known coefficients counted from the valuation.
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

    /// Coefficient at `degree`, or `None` past the precision window.
    pub fn coeff(&self, degree: i64) -> Option<Scalar> {
        if degree >= self.end {
            return None;
        }
        let idx = degree - self.start;
        if idx < 0 || idx >= self.coeffs.len() as i64 {
            Some(Scalar::zero())
        } else {
            Some(self.coeffs[idx as usize].clone())
        }
    }

    pub fn leading_coeff(&self) -> Option<&Scalar> {
        self.coeffs.first()
    }

    /// Forget everything from degree `end` on.
    pub fn truncate(&self, end: i64) -> Self {
        let end = end.min(self.end);
        if end <= self.start {
            return TruncatedLaurentSeries::zero_to(end);
        }
        let keep = ((end - self.start) as usize).min(self.coeffs.len());
        TruncatedLaurentSeries::new(self.start, self.coeffs[..keep].to_vec(), end)
    }

    /// Multiplication by `z^k`.
    pub fn shift(&self, k: i64) -> Self {
        let end = if self.is_exact() { EXACT_END } else { self.end + k };
        TruncatedLaurentSeries::new(self.start + k, self.coeffs.clone(), end)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return TruncatedLaurentSeries::zero_to(self.end);
        }
        TruncatedLaurentSeries::new(
            self.start,
            self.coeffs.iter().map(|x| x * c).collect(),
            self.end,
        )
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Scalar::one())
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, true)
    }

    fn combine(&self, other: &Self, subtract: bool) -> Self {
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
        let mut coeffs = vec![Scalar::zero(); (hi - lo) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            let d = self.start + i as i64;
            if d < hi {
                coeffs[(d - lo) as usize] += c;
            }
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            let d = other.start + i as i64;
            if d < hi {
                if subtract {
                    coeffs[(d - lo) as usize] -= c;
                } else {
                    coeffs[(d - lo) as usize] += c;
                }
            }
        }
        TruncatedLaurentSeries::new(lo, coeffs, end)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let end = clamp_end((self.low() + other.end).min(other.low() + self.end));
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return TruncatedLaurentSeries::zero_to(end);
        }
        let start = self.start + other.start;
        let len = ((self.coeffs.len() + other.coeffs.len() - 1) as i64).min(end - start).max(0) as usize;
        let mut coeffs = vec![Scalar::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() || i >= len {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                if !b.is_zero() {
                    coeffs[i + j] += &(a * b);
                }
            }
        }
        TruncatedLaurentSeries::new(start, coeffs, end)
    }

    /// Multiplicative inverse. Fails when the series vanishes within its
    /// precision, or when it is an exact non-monomial (whose inverse has no
    /// finite window to report).
    pub fn inv(&self) -> Result<Self> {
        let Some(v) = self.valuation() else {
            return Err(Error::InsufficientPrecision {
                available: 0,
                required: 1,
            });
        };
        let a0_inv = self.coeffs[0].inv().expect("leading coefficient is nonzero");
        if self.is_exact() {
            if self.coeffs.len() == 1 {
                return Ok(TruncatedLaurentSeries::monomial(a0_inv, -v));
            }
            return Err(Error::Indeterminate(
                "inverse of an exact non-monomial series needs a precision bound".into(),
            ));
        }
        let p = (self.end - v) as usize;
        let mut b: Vec<Scalar> = Vec::with_capacity(p);
        b.push(a0_inv.clone());
        for j in 1..p {
            let mut acc = Scalar::zero();
            for i in 1..=j.min(self.coeffs.len() - 1) {
                let a = &self.coeffs[i];
                if !a.is_zero() && !b[j - i].is_zero() {
                    acc += &(a * &b[j - i]);
                }
            }
            b.push(-(&acc * &a0_inv));
        }
        Ok(TruncatedLaurentSeries::new(-v, b, -v + p as i64))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }
}

impl fmt::Debug for TruncatedLaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({c})z^{}", self.start + i as i64)?;
        }
        if first {
            f.write_str("0")?;
        }
        match self.end() {
            Some(e) => write!(f, " + O(z^{e})"),
            None => Ok(()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| Scalar::from(x)).collect()
    }

    #[test]
    fn normalizes_leading_zeros() {
        let s = TruncatedLaurentSeries::new(-2, ints(&[0, 0, 3, 1]), 5);
        assert_eq!(s.valuation(), Some(0));
        assert_eq!(s.precision(), Some(5));
        assert_eq!(s.coeff(4), Some(Scalar::zero()));
        assert_eq!(s.coeff(5), None);
    }

    #[test]
    fn product_precision_is_pessimistic() {
        // (z^-1 + 1 + O(z^2)) * (z + O(z^3)) = 1 + z + O(z^2)
        let a = TruncatedLaurentSeries::new(-1, ints(&[1, 1]), 2);
        let b = TruncatedLaurentSeries::new(1, ints(&[1]), 3);
        let c = a.mul(&b);
        assert_eq!(c.end(), Some(2));
        assert_eq!(c.coeff(0), Some(Scalar::one()));
        assert_eq!(c.coeff(1), Some(Scalar::one()));
    }

    #[test]
    fn geometric_inverse() {
        // 1/(1 - z) = 1 + z + z^2 + ...
        let s = TruncatedLaurentSeries::new(0, ints(&[1, -1]), 6);
        let inv = s.inv().unwrap();
        for d in 0..6 {
            assert_eq!(inv.coeff(d), Some(Scalar::one()));
        }
        let prod = s.mul(&inv);
        assert_eq!(prod.truncate(6), TruncatedLaurentSeries::new(0, ints(&[1]), 6));
    }

    #[test]
    fn exact_monomial_inverse_is_exact() {
        let s = TruncatedLaurentSeries::monomial(Scalar::from(2), 3);
        let inv = s.inv().unwrap();
        assert!(inv.is_exact());
        assert_eq!(inv.valuation(), Some(-3));
        assert_eq!(inv.coeff(-3), Some(Scalar::from_ratio(1, 2)));
    }

    #[test]
    fn inverse_of_zero_fails() {
        assert!(TruncatedLaurentSeries::zero_to(4).inv().is_err());
        assert!(TruncatedLaurentSeries::exact(0, ints(&[1, 1])).inv().is_err());
    }

    #[test]
    fn cancellation_keeps_window() {
        let a = TruncatedLaurentSeries::new(0, ints(&[1, 2]), 4);
        let d = a.sub(&a);
        assert!(d.is_zero_within_precision());
        assert_eq!(d.end(), Some(4));
    }
}
