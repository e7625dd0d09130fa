use std::fmt;

use num_bigint::BigUint;

use super::Field;

/// Dense univariate polynomial, coefficients in ascending degree.
///
/// The representation is normalized: no trailing zero coefficients, so the
/// zero polynomial is the empty vector.
#[derive(Clone, PartialEq)]
pub struct Polynomial<F: Field> {
    coeffs: Vec<F>,
}

impl<F: Field> Polynomial<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: F) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `x`, over the parent of `template`.
    pub fn x(template: &F) -> Self {
        Self::new(vec![template.zero_like(), template.one_like()])
    }

    /// `prod (x - r)` over the given roots.
    pub fn from_roots(roots: &[F], template: &F) -> Self {
        let mut acc = Self::constant(template.one_like());
        for r in roots {
            acc = acc.mul(&Self::new(vec![-r.clone(), r.one_like()]));
        }
        acc
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the degree), given a template for zero.
    pub fn coeff(&self, i: usize, template: &F) -> F {
        self.coeffs.get(i).cloned().unwrap_or_else(|| template.zero_like())
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn lead(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &F) -> F {
        let mut acc = x.zero_like();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => a.clone() + b.clone(),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Self::new(out)
    }

    pub fn neg(&self) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &F) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let zero = self.coeffs[0].zero_like();
        let mut out = vec![zero; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(out)
    }

    /// Euclidean division; panics if `divisor` is zero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let d = divisor.degree().expect("polynomial division by zero");
        let lead_inv = divisor.coeffs[d].inv().expect("leading coefficient not invertible");
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return (Self::zero(), self.clone());
        }
        let zero = rem[0].zero_like();
        let mut quot = vec![zero; rem.len() - d];
        for i in (d..rem.len()).rev() {
            let c = rem[i].clone() * lead_inv.clone();
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[i - d + j] = rem[i - d + j].clone() - c.clone() * dc.clone();
            }
            quot[i - d] = c;
        }
        rem.truncate(d);
        (Self::new(quot), Self::new(rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            None => Self::zero(),
            Some(l) => self.scale(&l.inv().expect("leading coefficient not invertible")),
        }
    }

    /// Monic gcd (zero if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self^e mod modulus`.
    pub fn pow_mod(&self, e: &BigUint, modulus: &Self) -> Self {
        let one = match modulus.lead() {
            Some(l) => Self::constant(l.one_like()),
            None => panic!("zero modulus"),
        };
        let base = self.rem(modulus);
        let mut acc = one.rem(modulus);
        for i in (0..e.bits()).rev() {
            acc = acc.mul(&acc).rem(modulus);
            if e.bit(i) {
                acc = acc.mul(&base).rem(modulus);
            }
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * c.int_like(i as i64))
                .collect(),
        )
    }

    /// Apply a coefficient map (e.g. Frobenius or a field embedding).
    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Polynomial<G> {
        Polynomial::new(self.coeffs.iter().map(f).collect())
    }
}

impl<F: Field + fmt::Display> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coeffs.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FiniteField;

    #[test]
    fn division_identity() {
        let f = FiniteField::prime(11).unwrap();
        let a = Polynomial::new([3, 0, 5, 1, 7].iter().map(|&c| f.from_u64(c)).collect());
        let b = Polynomial::new([2, 1, 4].iter().map(|&c| f.from_u64(c)).collect());
        let (q, r) = a.div_rem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn gcd_of_products() {
        let f = FiniteField::prime(13).unwrap();
        let roots_a: Vec<_> = [1, 2, 3].iter().map(|&c| f.from_u64(c)).collect();
        let roots_b: Vec<_> = [2, 3, 9].iter().map(|&c| f.from_u64(c)).collect();
        let a = Polynomial::from_roots(&roots_a, &f.one()).scale(&f.from_u64(5));
        let b = Polynomial::from_roots(&roots_b, &f.one());
        let expected = Polynomial::from_roots(&roots_a[1..], &f.one());
        assert_eq!(a.gcd(&b), expected);
    }

    #[test]
    fn derivative_and_eval() {
        let f = FiniteField::prime(7).unwrap();
        // x^3 + 2x + 1 -> 3x^2 + 2
        let a = Polynomial::new([1, 2, 0, 1].iter().map(|&c| f.from_u64(c)).collect());
        let d = a.derivative();
        assert_eq!(d.coeffs().iter().map(|c| c.residue()).collect::<Vec<_>>(), vec![2, 0, 3]);
        assert_eq!(a.eval(&f.from_u64(2)), f.from_u64(13));
    }
}
