use std::fmt::{self, Debug, Display};
use std::marker::PhantomData;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::field::Field;

/// Exact rational number.
pub type Rational = BigRational;

/// Exact coefficient ring for [`LaurentSeries`](super::LaurentSeries).
pub trait Scalar:
    Clone + PartialEq + Debug + Display + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_rational(r: Rational) -> Self;
    fn is_zero(&self) -> bool;
    fn inv(&self) -> Option<Self>;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }
}

impl Scalar for Rational {
    fn zero() -> Self {
        <Rational as Zero>::zero()
    }
    fn one() -> Self {
        <Rational as One>::one()
    }
    fn from_rational(r: Rational) -> Self {
        r
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

/// A quadratic cyclotomic field `Q(zeta)`, described by the relation
/// `zeta^2 = C1 * zeta + C0`.
pub trait Cyclotomic: Clone + Copy + PartialEq + Debug + 'static {
    /// Order of `zeta` as a root of unity.
    const ORDER: u32;
    const C1: i64;
    const C0: i64;
    const SYMBOL: &'static str;
}

/// `Q(i)`: `i^2 = -1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Gaussian;
impl Cyclotomic for Gaussian {
    const ORDER: u32 = 4;
    const C1: i64 = 0;
    const C0: i64 = -1;
    const SYMBOL: &'static str = "i";
}

/// `Q(w)` with `w` a primitive cube root of unity: `w^2 = -w - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Eisenstein;
impl Cyclotomic for Eisenstein {
    const ORDER: u32 = 3;
    const C1: i64 = -1;
    const C0: i64 = -1;
    const SYMBOL: &'static str = "w";
}

/// `a + b*zeta` with rational `a, b`; products are reduced eagerly.
#[derive(Clone, PartialEq)]
pub struct CyclotomicElement<K: Cyclotomic> {
    pub a: Rational,
    pub b: Rational,
    _kind: PhantomData<K>,
}

fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

impl<K: Cyclotomic> CyclotomicElement<K> {
    pub fn new(a: Rational, b: Rational) -> Self {
        Self { a, b, _kind: PhantomData }
    }

    pub fn from_ints(a: i64, b: i64) -> Self {
        Self::new(rat(a), rat(b))
    }

    /// The distinguished primitive root of unity `zeta`.
    pub fn zeta() -> Self {
        Self::from_ints(0, 1)
    }

    /// `zeta^e` for any integer `e`.
    pub fn zeta_pow(e: i64) -> Self {
        let e = e.rem_euclid(K::ORDER as i64);
        let mut acc = <Self as Scalar>::one();
        for _ in 0..e {
            acc = acc * Self::zeta();
        }
        acc
    }

    /// Field norm `a^2 + a b C1 - b^2 C0`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a + &self.a * &self.b * rat(K::C1) - &self.b * &self.b * rat(K::C0)
    }

    /// Galois conjugate `a + b C1 - b zeta`.
    pub fn conjugate(&self) -> Self {
        Self::new(&self.a + &self.b * rat(K::C1), -self.b.clone())
    }
}

impl<K: Cyclotomic> Add for CyclotomicElement<K> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.a + o.a, self.b + o.b)
    }
}
impl<K: Cyclotomic> Sub for CyclotomicElement<K> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.a - o.a, self.b - o.b)
    }
}
impl<K: Cyclotomic> Neg for CyclotomicElement<K> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.a, -self.b)
    }
}
impl<K: Cyclotomic> Mul for CyclotomicElement<K> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let bd = &self.b * &o.b;
        let a = &self.a * &o.a + &bd * rat(K::C0);
        let b = &self.a * &o.b + &self.b * &o.a + &bd * rat(K::C1);
        Self::new(a, b)
    }
}

impl<K: Cyclotomic> Scalar for CyclotomicElement<K> {
    fn zero() -> Self {
        Self::from_ints(0, 0)
    }
    fn one() -> Self {
        Self::from_ints(1, 0)
    }
    fn from_rational(r: Rational) -> Self {
        Self::new(r, <Rational as Zero>::zero())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.a) && Zero::is_zero(&self.b)
    }
    fn inv(&self) -> Option<Self> {
        let n = self.norm();
        if Zero::is_zero(&n) {
            return None;
        }
        let c = self.conjugate();
        Some(Self::new(c.a / &n, c.b / n))
    }
}

impl<K: Cyclotomic> Div for CyclotomicElement<K> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        self * Scalar::inv(&o).expect("division by zero")
    }
}

macro_rules! scalar_field {
    ($($gen:ident)? ; $t:ty) => {
        impl$(<$gen: Cyclotomic>)? Field for $t {
            fn zero_like(&self) -> Self {
                <Self as Scalar>::zero()
            }
            fn one_like(&self) -> Self {
                <Self as Scalar>::one()
            }
            fn int_like(&self, n: i64) -> Self {
                <Self as Scalar>::from_i64(n)
            }
            fn is_zero(&self) -> bool {
                Scalar::is_zero(self)
            }
            fn inv(&self) -> Option<Self> {
                Scalar::inv(self)
            }
        }
    };
}

scalar_field!(; Rational);
scalar_field!(K; CyclotomicElement<K>);

impl<K: Cyclotomic> Display for CyclotomicElement<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (Zero::is_zero(&self.a), Zero::is_zero(&self.b)) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "({})*{}", self.b, K::SYMBOL),
            (false, false) => write!(f, "({} + ({})*{})", self.a, self.b, K::SYMBOL),
        }
    }
}

impl<K: Cyclotomic> Debug for CyclotomicElement<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type Gi = CyclotomicElement<Gaussian>;
    type Ew = CyclotomicElement<Eisenstein>;

    #[test]
    fn roots_of_unity_have_the_right_order() {
        assert_eq!(Gi::zeta() * Gi::zeta(), Gi::from_ints(-1, 0));
        assert_eq!(Gi::zeta_pow(4), Gi::one());
        let w = Ew::zeta();
        assert_eq!(w.clone() * w.clone() * w.clone(), Ew::one());
        assert_eq!(w.clone() * w.clone() + w + Ew::one(), Ew::zero());
    }

    #[test]
    fn inverse_via_norm() {
        let x = Ew::from_ints(3, -7);
        assert_eq!(x.clone() * Scalar::inv(&x).unwrap(), Ew::one());
        let y = Gi::from_ints(2, 5);
        assert_eq!(y.clone() * Scalar::inv(&y).unwrap(), Gi::one());
        assert!(Scalar::inv(&Gi::zero()).is_none());
    }
}
