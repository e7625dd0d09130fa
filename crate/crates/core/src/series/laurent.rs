use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::scalar::Scalar;
use crate::error::{Error, Result};
use crate::field::Field;

/// Truncated Laurent series `sum_{e >= val} c_e z^e + O(z^prec)`.
///
/// `coeffs[i]` is the coefficient of `z^(val + i)` and there are exactly
/// `prec - val` of them. A nonzero series has `coeffs[0] != 0`; a series
/// that vanishes to its known precision has `val == prec` and no
/// coefficients. Every operation propagates the pessimistic precision of
/// its operands.
#[derive(Clone)]
pub struct LaurentSeries<C: Scalar> {
    val: i64,
    coeffs: Vec<C>,
    prec: i64,
}

impl<C: Scalar> LaurentSeries<C> {
    /// Series with `coeffs[i]` at `z^(start + i)`, known modulo `z^prec`.
    /// Coefficients at or beyond `prec` are discarded.
    pub fn from_coeffs(start: i64, coeffs: Vec<C>, prec: i64) -> Self {
        let mut coeffs = coeffs;
        let keep = (prec - start).max(0) as usize;
        coeffs.truncate(keep);
        coeffs.resize(keep, C::zero());
        let lead = coeffs.iter().position(|c| !c.is_zero());
        match lead {
            None => Self::zero(prec),
            Some(i) => {
                coeffs.drain(..i);
                Self { val: start + i as i64, coeffs, prec }
            }
        }
    }

    pub fn zero(prec: i64) -> Self {
        Self { val: prec, coeffs: Vec::new(), prec }
    }

    pub fn constant(c: C, prec: i64) -> Self {
        Self::from_coeffs(0, vec![c], prec)
    }

    pub fn one(prec: i64) -> Self {
        Self::constant(C::one(), prec)
    }

    /// `c * z^e + O(z^prec)`.
    pub fn monomial(c: C, e: i64, prec: i64) -> Self {
        Self::from_coeffs(e, vec![c], prec)
    }

    /// The variable `z`.
    pub fn var(prec: i64) -> Self {
        Self::monomial(C::one(), 1, prec)
    }

    /// Valuation, or `None` if the series is zero to its precision.
    pub fn valuation(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.val)
        }
    }

    /// The series is known modulo `z^precision()`.
    pub fn precision(&self) -> i64 {
        self.prec
    }

    /// Number of known coefficients from the valuation on.
    pub fn relative_precision(&self) -> i64 {
        self.prec - self.val
    }

    /// Coefficient of `z^e`, or `None` when `e` is beyond the known precision.
    pub fn coeff(&self, e: i64) -> Option<C> {
        if e >= self.prec {
            None
        } else if e < self.val {
            Some(C::zero())
        } else {
            Some(self.coeffs[(e - self.val) as usize].clone())
        }
    }

    pub fn leading_coefficient(&self) -> Option<&C> {
        self.coeffs.first()
    }

    /// Drop information at and beyond `z^prec` (no-op if already coarser).
    pub fn truncate(&self, prec: i64) -> Self {
        if prec >= self.prec {
            return self.clone();
        }
        Self::from_coeffs(self.val, self.coeffs.clone(), prec)
    }

    /// Error unless the series is known at least modulo `z^prec`.
    pub fn require_precision(&self, prec: i64) -> Result<()> {
        if self.prec < prec {
            Err(Error::PrecisionExhausted(format!("known to O(z^{}), need O(z^{prec})", self.prec)))
        } else {
            Ok(())
        }
    }

    fn add_ref(&self, other: &Self) -> Self {
        let prec = self.prec.min(other.prec);
        let start = self.val.min(other.val);
        if start >= prec {
            return Self::zero(prec);
        }
        let mut out = vec![C::zero(); (prec - start) as usize];
        for src in [self, other] {
            for (i, c) in src.coeffs.iter().enumerate() {
                let e = src.val + i as i64;
                if e >= prec {
                    break;
                }
                let slot = &mut out[(e - start) as usize];
                *slot = slot.clone() + c.clone();
            }
        }
        Self::from_coeffs(start, out, prec)
    }

    fn neg_ref(&self) -> Self {
        Self { val: self.val, coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(), prec: self.prec }
    }

    fn mul_ref(&self, other: &Self) -> Self {
        let prec = (self.prec.saturating_add(other.val)).min(other.prec.saturating_add(self.val));
        let start = self.val + other.val;
        if self.coeffs.is_empty() || other.coeffs.is_empty() || start >= prec {
            return Self::zero(prec);
        }
        let len = (prec - start) as usize;
        let mut out = vec![C::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(len - i) {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::from_coeffs(start, out, prec)
    }

    /// Multiplicative inverse; errors if the series is zero to its precision.
    pub fn checked_inv(&self) -> Result<Self> {
        let lead = self
            .coeffs
            .first()
            .ok_or_else(|| Error::PrecisionExhausted("inverse of a series that is zero to working precision".into()))?;
        let lead_inv = lead.inv().ok_or(Error::DivisionByZero)?;
        let n = self.coeffs.len();
        let mut out: Vec<C> = Vec::with_capacity(n);
        out.push(lead_inv.clone());
        for k in 1..n {
            let mut acc = C::zero();
            for j in 1..=k {
                acc = acc + self.coeffs[j].clone() * out[k - j].clone();
            }
            out.push(-(acc * lead_inv.clone()));
        }
        Ok(Self::from_coeffs(-self.val, out, -self.val + n as i64))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul_ref(&other.checked_inv()?))
    }

    /// Integer power; negative exponents need an invertible base.
    pub fn checked_pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.checked_inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc: Option<Self> = None;
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => b.clone(),
                    Some(a) => a.mul_ref(&b),
                });
            }
            e >>= 1;
            if e > 0 {
                b = b.mul_ref(&b);
            }
        }
        Ok(acc.unwrap_or_else(|| Self::one(self.prec)))
    }

    /// Scale every coefficient.
    pub fn scale(&self, c: &C) -> Self {
        Self::from_coeffs(self.val, self.coeffs.iter().map(|x| x.clone() * c.clone()).collect(), self.prec)
    }

    /// Substitute `z -> z^k` (k >= 1).
    pub fn substitute_power(&self, k: i64) -> Self {
        assert!(k >= 1);
        if self.coeffs.is_empty() {
            return Self::zero(self.prec * k);
        }
        let mut out = vec![C::zero(); ((self.coeffs.len() - 1) as i64 * k + 1) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i * k as usize] = c.clone();
        }
        Self::from_coeffs(self.val * k, out, self.prec * k)
    }

    /// Apply a coefficient map (e.g. base change `Q -> Q(zeta)`).
    pub fn map<D: Scalar>(&self, f: impl Fn(&C) -> D) -> LaurentSeries<D> {
        LaurentSeries::from_coeffs(self.val, self.coeffs.iter().map(f).collect(), self.prec)
    }
}

impl<C: Scalar> PartialEq for LaurentSeries<C> {
    /// Equality to the common known precision.
    fn eq(&self, other: &Self) -> bool {
        self.sub_ref(other).coeffs.is_empty()
    }
}

impl<C: Scalar> LaurentSeries<C> {
    fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }
}

impl<C: Scalar> fmt::Display for LaurentSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let e = self.val + i as i64;
            match e {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*z")?,
                _ => write!(f, "{c}*z^{e}")?,
            }
        }
        if first {
            write!(f, "O(z^{})", self.prec)
        } else {
            write!(f, " + O(z^{})", self.prec)
        }
    }
}

impl<C: Scalar> fmt::Debug for LaurentSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<C: Scalar> Add for LaurentSeries<C> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        self.add_ref(&o)
    }
}
impl<C: Scalar> Sub for LaurentSeries<C> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self.sub_ref(&o)
    }
}
impl<C: Scalar> Mul for LaurentSeries<C> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        self.mul_ref(&o)
    }
}
impl<C: Scalar> Div for LaurentSeries<C> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        self.checked_div(&o).expect("series division by zero to working precision")
    }
}
impl<C: Scalar> Neg for LaurentSeries<C> {
    type Output = Self;
    fn neg(self) -> Self {
        self.neg_ref()
    }
}
impl<'a, C: Scalar> Add<&'a LaurentSeries<C>> for &'a LaurentSeries<C> {
    type Output = LaurentSeries<C>;
    fn add(self, o: Self) -> LaurentSeries<C> {
        self.add_ref(o)
    }
}
impl<'a, C: Scalar> Sub<&'a LaurentSeries<C>> for &'a LaurentSeries<C> {
    type Output = LaurentSeries<C>;
    fn sub(self, o: Self) -> LaurentSeries<C> {
        self.sub_ref(o)
    }
}
impl<'a, C: Scalar> Mul<&'a LaurentSeries<C>> for &'a LaurentSeries<C> {
    type Output = LaurentSeries<C>;
    fn mul(self, o: Self) -> LaurentSeries<C> {
        self.mul_ref(o)
    }
}

impl<C: Scalar> Field for LaurentSeries<C> {
    fn zero_like(&self) -> Self {
        Self::zero(self.prec)
    }
    fn one_like(&self) -> Self {
        Self::one(self.prec)
    }
    fn int_like(&self, n: i64) -> Self {
        Self::constant(C::from_i64(n), self.prec)
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn inv(&self) -> Option<Self> {
        self.checked_inv().ok()
    }
}

/// Elementwise series arithmetic named by an operation tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesOp {
    Add,
    Mul,
    Div,
    /// Inverse of the first operand; the second is ignored.
    Invert,
    /// First operand to the given integer power; the second is ignored.
    Pow(i64),
}

pub fn series_arith<C: Scalar>(a: &LaurentSeries<C>, b: &LaurentSeries<C>, op: SeriesOp) -> Result<LaurentSeries<C>> {
    match op {
        SeriesOp::Add => Ok(a.add_ref(b)),
        SeriesOp::Mul => Ok(a.mul_ref(b)),
        SeriesOp::Div => a.checked_div(b),
        SeriesOp::Invert => a.checked_inv(),
        SeriesOp::Pow(e) => a.checked_pow(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::Rational;

    type S = LaurentSeries<Rational>;

    fn s(start: i64, c: &[i64], prec: i64) -> S {
        S::from_coeffs(start, c.iter().map(|&v| Rational::from_i64(v)).collect(), prec)
    }

    #[test]
    fn geometric_series() {
        let one_minus_z = s(0, &[1, -1], 4);
        let inv = series_arith(&one_minus_z, &one_minus_z, SeriesOp::Invert).unwrap();
        assert_eq!(inv, s(0, &[1, 1, 1, 1], 4));
        assert_eq!(inv.precision(), 4);
    }

    #[test]
    fn monomial_inverse_and_products() {
        let z = S::var(10);
        let zinv = z.checked_inv().unwrap();
        assert_eq!(zinv.valuation(), Some(-1));
        assert_eq!(&z * &zinv, S::one(10));
        let a = s(0, &[1, 1], 10);
        let b = s(0, &[1, -1], 10);
        assert_eq!(&a * &b, s(0, &[1, 0, -1], 10));
    }

    #[test]
    fn precision_propagation() {
        let a = s(2, &[1, 5, 7], 5);
        let b = s(-1, &[2, 3], 8);
        let prod = &a * &b;
        // min(5 + (-1), 8 + 2)
        assert_eq!(prod.precision(), 4);
        assert_eq!(prod.valuation(), Some(1));
        assert_eq!((&a + &b).precision(), 5);
    }

    #[test]
    fn inverting_zero_is_an_error() {
        let z = S::zero(5);
        assert!(matches!(z.checked_inv(), Err(Error::PrecisionExhausted(_))));
        let x = s(0, &[1, 2], 5);
        let cancelled = &x - &x;
        assert!(cancelled.checked_inv().is_err());
        assert!(cancelled.require_precision(6).is_err());
    }

    #[test]
    fn powers() {
        let a = s(0, &[1, 1], 6);
        assert_eq!(a.checked_pow(3).unwrap(), s(0, &[1, 3, 3, 1], 6));
        let inv3 = a.checked_pow(-3).unwrap();
        assert_eq!(&inv3 * &a.checked_pow(3).unwrap(), S::one(6));
        assert_eq!(a.checked_pow(0).unwrap(), S::one(6));
    }
}
