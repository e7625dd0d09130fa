//! Exact arithmetic: the [`Field`] abstraction, finite fields `F_{p^k}`,
//! univariate polynomials, and root extraction.

mod finite;
mod poly;
mod roots;

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

pub use finite::{field_arith, find_irreducible, ArithOp, FieldEmbedding, FiniteField, Fq, MAX_DEGREE};
pub use poly::Polynomial;
pub use roots::{distinct_roots, nth_power_class, poly_roots, roots_by_evaluation, EXHAUSTIVE_LIMIT};

/// A commutative field (or a truncated Laurent-series "field" whose
/// elements carry their own precision).
///
/// Elements carry whatever context they need (the parent finite field, the
/// series precision), so constants are manufactured from an existing element
/// via the `*_like` constructors.
///
/// The `Div` operator panics on a zero divisor; use [`Field::inv`] when the
/// divisor may vanish.
pub trait Field:
    Clone
    + PartialEq
    + Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn int_like(&self, n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn inv(&self) -> Option<Self>;

    fn is_one(&self) -> bool {
        (self.clone() - self.one_like()).is_zero()
    }

    fn square(&self) -> Self {
        self.clone() * self.clone()
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.square();
            e >>= 1;
        }
        acc
    }

    /// Signed power; `None` when a negative exponent meets a zero base.
    fn powi(&self, e: i64) -> Option<Self> {
        if e >= 0 {
            Some(self.pow(e as u64))
        } else {
            self.inv().map(|x| x.pow(e.unsigned_abs()))
        }
    }
}
