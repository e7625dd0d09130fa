use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::Rng;

use super::poly::Polynomial;
use super::roots::distinct_roots;
use super::Field;
use crate::error::{Error, Result};

/// Largest supported extension degree.
pub const MAX_DEGREE: usize = 16;

/// Characteristic bound: coefficients are `u32` and products are accumulated
/// in `u64` without intermediate reduction.
const MAX_CHARACTERISTIC: u64 = 1 << 16;

struct Inner {
    p: u64,
    k: usize,
    /// Low coefficients of the monic modulus `x^k + m_{k-1} x^{k-1} + ... + m_0`.
    modulus: [u32; MAX_DEGREE],
    order: BigUint,
    nonresidue: OnceLock<[u32; MAX_DEGREE]>,
}

/// The finite field `F_p[x]/(m(x))` for a monic irreducible `m` of degree `k`.
///
/// Cloning is cheap (shared handle). Two handles compare equal iff they have
/// the same characteristic and the same defining modulus.
#[derive(Clone)]
pub struct FiniteField(Arc<Inner>);

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.k == other.0.k && self.0.modulus == other.0.modulus)
    }
}
impl Eq for FiniteField {}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.k == 1 {
            write!(f, "F_{}", self.0.p)
        } else {
            write!(f, "F_{}^{} mod {:?}", self.0.p, self.0.k, self.modulus_coeffs())
        }
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FiniteField {
    /// The prime field `F_p`, represented as `F_p[x]/(x)`.
    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) || p >= MAX_CHARACTERISTIC {
            return Err(Error::InvalidField(format!("{p} is not a prime below 2^16")));
        }
        Ok(Self::from_parts(p, 1, [0; MAX_DEGREE]))
    }

    /// `F_{p^k}` defined by [`find_irreducible`]`(p, k)`. Handles are cached
    /// per `(p, k)`, so repeated calls share one field.
    pub fn extension(p: u64, k: usize) -> Result<Self> {
        static CACHE: OnceLock<Mutex<HashMap<(u64, usize), FiniteField>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(f) = cache.lock().expect("field cache poisoned").get(&(p, k)) {
            return Ok(f.clone());
        }
        let field = if k == 1 {
            Self::prime(p)?
        } else {
            let modulus = find_irreducible(p, k)?;
            let coeffs: Vec<u64> = modulus.coeffs().iter().map(|c| c.residue()).collect();
            Self::with_modulus(p, &coeffs)?
        };
        cache.lock().expect("field cache poisoned").insert((p, k), field.clone());
        Ok(field)
    }

    /// `F_p[x]/(m)` for the given monic modulus (ascending coefficients).
    pub fn with_modulus(p: u64, monic: &[u64]) -> Result<Self> {
        let base = Self::prime(p)?;
        let k = monic.len().saturating_sub(1);
        if k == 0 || k > MAX_DEGREE || monic[k] % p != 1 {
            return Err(Error::InvalidField(format!("modulus must be monic of degree 1..={MAX_DEGREE}")));
        }
        let f = Polynomial::new(monic.iter().map(|&c| base.from_u64(c)).collect());
        if !is_irreducible(&f, &base) {
            return Err(Error::InvalidField(format!("modulus {monic:?} is reducible mod {p}")));
        }
        let mut m = [0u32; MAX_DEGREE];
        for (slot, &c) in m.iter_mut().zip(monic.iter()) {
            *slot = (c % p) as u32;
        }
        Ok(Self::from_parts(p, k, m))
    }

    fn from_parts(p: u64, k: usize, modulus: [u32; MAX_DEGREE]) -> Self {
        FiniteField(Arc::new(Inner {
            p,
            k,
            modulus,
            order: BigUint::from(p).pow(k as u32),
            nonresidue: OnceLock::new(),
        }))
    }

    pub fn characteristic(&self) -> u64 {
        self.0.p
    }

    pub fn degree(&self) -> usize {
        self.0.k
    }

    /// `q = p^k`.
    pub fn order(&self) -> &BigUint {
        &self.0.order
    }

    /// `q` as a machine integer, when it fits.
    pub fn order_u64(&self) -> Option<u64> {
        self.0.order.to_u64()
    }

    /// Ascending coefficients of the monic modulus (including the leading 1).
    pub fn modulus_coeffs(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self.0.modulus[..self.0.k].iter().map(|&c| c as u64).collect();
        v.push(1);
        v
    }

    pub fn zero(&self) -> Fq {
        Fq { field: self.clone(), c: [0; MAX_DEGREE] }
    }

    pub fn one(&self) -> Fq {
        self.from_u64(1)
    }

    pub fn from_u64(&self, n: u64) -> Fq {
        let mut c = [0; MAX_DEGREE];
        c[0] = (n % self.0.p) as u32;
        Fq { field: self.clone(), c }
    }

    pub fn from_i64(&self, n: i64) -> Fq {
        let p = self.0.p as i64;
        self.from_u64(n.rem_euclid(p) as u64)
    }

    /// Element with the given coefficient vector in the power basis
    /// `1, x, ..., x^{k-1}`; missing entries are zero, extra entries error.
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<Fq> {
        if coeffs.len() > self.0.k {
            return Err(Error::InvalidArgument(format!(
                "{} coefficients for a degree-{} field",
                coeffs.len(),
                self.0.k
            )));
        }
        let mut c = [0; MAX_DEGREE];
        for (slot, &v) in c.iter_mut().zip(coeffs) {
            *slot = (v % self.0.p) as u32;
        }
        Ok(Fq { field: self.clone(), c })
    }

    /// The class of `x`; equal to `0` in the prime field `F_p[x]/(x)`.
    pub fn generator(&self) -> Fq {
        if self.0.k == 1 {
            return self.zero();
        }
        let mut c = [0; MAX_DEGREE];
        c[1] = 1;
        Fq { field: self.clone(), c }
    }

    /// All `q` elements in canonical order. Intended for small fields.
    pub fn elements(&self) -> impl Iterator<Item = Fq> + '_ {
        let total = self.order_u64().expect("field too large to enumerate");
        (0..total).map(move |mut idx| {
            let mut c = [0; MAX_DEGREE];
            for slot in c.iter_mut().take(self.0.k) {
                *slot = (idx % self.0.p) as u32;
                idx /= self.0.p;
            }
            Fq { field: self.clone(), c }
        })
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Fq {
        let mut c = [0; MAX_DEGREE];
        for slot in c.iter_mut().take(self.0.k) {
            *slot = rng.gen_range(0..self.0.p) as u32;
        }
        Fq { field: self.clone(), c }
    }

    /// The smallest non-square in canonical order (cached).
    pub fn nonresidue(&self) -> Fq {
        let c = *self.0.nonresidue.get_or_init(|| {
            let exp = (self.order() - 1u32) >> 1;
            let mut c = [0u32; MAX_DEGREE];
            // Enumerate in canonical order without materializing the field.
            loop {
                let x = Fq { field: self.clone(), c };
                if !x.is_zero() && !x.pow_big(&exp).is_one() {
                    return c;
                }
                let mut i = 0;
                loop {
                    c[i] += 1;
                    if (c[i] as u64) < self.0.p {
                        break;
                    }
                    c[i] = 0;
                    i += 1;
                }
            }
        });
        Fq { field: self.clone(), c }
    }
}

/// An element of a [`FiniteField`].
///
/// Ordering is the canonical one: lexicographic on the coefficient vector
/// `(c_0, c_1, ..., c_{k-1})`, which for `k = 1` is the order of the integer
/// representatives `0..p`.
#[derive(Clone)]
pub struct Fq {
    field: FiniteField,
    c: [u32; MAX_DEGREE],
}

impl Fq {
    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.c[..self.field.0.k]
    }

    /// Integer representative of the constant coefficient.
    pub fn residue(&self) -> u64 {
        self.c[0] as u64
    }

    /// True if the element lies in the prime subfield.
    pub fn is_prime_field_element(&self) -> bool {
        self.c[1..].iter().all(|&c| c == 0)
    }

    fn same_field(&self, other: &Fq) -> bool {
        self.field == other.field
    }

    fn assert_same(&self, other: &Fq) {
        assert!(self.same_field(other), "field mismatch: {:?} vs {:?}", self.field, other.field);
    }

    fn add_ref(&self, o: &Fq) -> Fq {
        self.assert_same(o);
        let p = self.field.0.p as u32;
        let mut c = self.c;
        for (a, b) in c.iter_mut().zip(o.c.iter()).take(self.field.0.k) {
            let s = *a + *b;
            *a = if s >= p { s - p } else { s };
        }
        Fq { field: self.field.clone(), c }
    }

    fn sub_ref(&self, o: &Fq) -> Fq {
        self.assert_same(o);
        let p = self.field.0.p as u32;
        let mut c = self.c;
        for (a, b) in c.iter_mut().zip(o.c.iter()).take(self.field.0.k) {
            *a = if *a >= *b { *a - *b } else { *a + p - *b };
        }
        Fq { field: self.field.clone(), c }
    }

    fn neg_ref(&self) -> Fq {
        let p = self.field.0.p as u32;
        let mut c = self.c;
        for a in c.iter_mut().take(self.field.0.k) {
            if *a != 0 {
                *a = p - *a;
            }
        }
        Fq { field: self.field.clone(), c }
    }

    fn mul_ref(&self, o: &Fq) -> Fq {
        self.assert_same(o);
        let k = self.field.0.k;
        let p = self.field.0.p;
        if k == 1 {
            let mut c = [0; MAX_DEGREE];
            c[0] = ((self.c[0] as u64 * o.c[0] as u64) % p) as u32;
            return Fq { field: self.field.clone(), c };
        }
        let mut t = [0u64; 2 * MAX_DEGREE - 1];
        for i in 0..k {
            let a = self.c[i] as u64;
            if a == 0 {
                continue;
            }
            for j in 0..k {
                t[i + j] += a * o.c[j] as u64;
            }
        }
        for v in t.iter_mut().take(2 * k - 1) {
            *v %= p;
        }
        let m = &self.field.0.modulus;
        for d in (k..2 * k - 1).rev() {
            let top = t[d];
            if top == 0 {
                continue;
            }
            t[d] = 0;
            // x^k = -(m_0 + ... + m_{k-1} x^{k-1})
            for (i, &mi) in m.iter().enumerate().take(k) {
                let idx = d - k + i;
                t[idx] = (t[idx] + (p - mi as u64) * top) % p;
            }
        }
        let mut c = [0; MAX_DEGREE];
        for i in 0..k {
            c[i] = t[i] as u32;
        }
        Fq { field: self.field.clone(), c }
    }

    pub fn pow_big(&self, e: &BigUint) -> Fq {
        let mut acc = self.field.one();
        for i in (0..e.bits()).rev() {
            acc = acc.mul_ref(&acc);
            if e.bit(i) {
                acc = acc.mul_ref(self);
            }
        }
        acc
    }

    /// Frobenius `x -> x^p`.
    pub fn frobenius(&self) -> Fq {
        self.pow(self.field.0.p)
    }

    pub fn checked_inv(&self) -> Result<Fq> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.field.0.k == 1 {
            let p = self.field.0.p as i64;
            let g = (self.c[0] as i64).extended_gcd(&p);
            debug_assert_eq!(g.gcd, 1);
            return Ok(self.field.from_i64(g.x));
        }
        Ok(self.pow_big(&(self.field.order() - 2u32)))
    }

    /// A square root, if one exists (Tonelli-Shanks over `F_q`). The root
    /// returned is the canonically smaller of `{r, -r}`.
    pub fn sqrt(&self) -> Option<Fq> {
        if self.is_zero() {
            return Some(self.clone());
        }
        let q = self.field.order();
        let qm1: BigUint = q - 1u32;
        if !self.pow_big(&(&qm1 >> 1)).is_one() {
            return None;
        }
        let s = qm1.trailing_zeros().unwrap_or(0);
        let t = &qm1 >> s;
        let z = self.field.nonresidue();
        let mut m = s;
        let mut c = z.pow_big(&t);
        let mut x = self.pow_big(&((&t + 1u32) >> 1));
        let mut b = self.pow_big(&t);
        while !b.is_one() {
            let mut i = 0;
            let mut b2 = b.clone();
            while !b2.is_one() {
                b2 = b2.square();
                i += 1;
            }
            let mut f = c.clone();
            for _ in 0..(m - i - 1) {
                f = f.square();
            }
            x = x * f.clone();
            c = f.square();
            b = b * c.clone();
            m = i;
        }
        let neg = -x.clone();
        Some(if neg < x { neg } else { x })
    }
}

impl PartialEq for Fq {
    fn eq(&self, other: &Self) -> bool {
        self.c == other.c && self.same_field(other)
    }
}
impl Eq for Fq {}

impl Hash for Fq {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs().hash(state);
    }
}

impl PartialOrd for Fq {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Fq {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs().cmp(other.coeffs())
    }
}

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.0.k == 1 {
            return write!(f, "{}", self.c[0]);
        }
        let terms: Vec<String> = self
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match i {
                0 => format!("{c}"),
                1 if c == 1 => "t".to_string(),
                1 => format!("{c}*t"),
                _ if c == 1 => format!("t^{i}"),
                _ => format!("{c}*t^{i}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $imp:ident) => {
        impl $tr for Fq {
            type Output = Fq;
            fn $m(self, rhs: Fq) -> Fq {
                self.$imp(&rhs)
            }
        }
        impl<'a> $tr<&'a Fq> for &'a Fq {
            type Output = Fq;
            fn $m(self, rhs: &'a Fq) -> Fq {
                self.$imp(rhs)
            }
        }
    };
}
forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl Div for Fq {
    type Output = Fq;
    fn div(self, rhs: Fq) -> Fq {
        let inv = rhs.checked_inv().expect("division by zero in F_q");
        self.mul_ref(&inv)
    }
}
impl<'a> Div<&'a Fq> for &'a Fq {
    type Output = Fq;
    fn div(self, rhs: &'a Fq) -> Fq {
        let inv = rhs.checked_inv().expect("division by zero in F_q");
        self.mul_ref(&inv)
    }
}

impl Neg for Fq {
    type Output = Fq;
    fn neg(self) -> Fq {
        self.neg_ref()
    }
}
impl Neg for &Fq {
    type Output = Fq;
    fn neg(self) -> Fq {
        self.neg_ref()
    }
}

impl Field for Fq {
    fn zero_like(&self) -> Self {
        self.field.zero()
    }
    fn one_like(&self) -> Self {
        self.field.one()
    }
    fn int_like(&self, n: i64) -> Self {
        self.field.from_i64(n)
    }
    fn is_zero(&self) -> bool {
        self.c.iter().all(|&c| c == 0)
    }
    fn is_one(&self) -> bool {
        self.c[0] == 1 && self.c[1..].iter().all(|&c| c == 0)
    }
    fn inv(&self) -> Option<Self> {
        self.checked_inv().ok()
    }
    fn square(&self) -> Self {
        self.mul_ref(self)
    }
}

/// Field operations named by [`field_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    /// `a^n` with `n` the integer representative of `b` (prime-field `b`).
    Pow,
    /// `a^{-1}`; `b` is ignored.
    Inv,
}

/// Checked arithmetic: reports mismatched parents and zero divisors as
/// errors instead of panicking.
pub fn field_arith(a: &Fq, b: &Fq, op: ArithOp) -> Result<Fq> {
    if !a.same_field(b) {
        return Err(Error::FieldMismatch);
    }
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::Div => a * &b.checked_inv()?,
        ArithOp::Pow => {
            if !b.is_prime_field_element() {
                return Err(Error::InvalidArgument("exponent must be a prime-field element".into()));
            }
            a.pow(b.residue())
        }
        ArithOp::Inv => a.checked_inv()?,
    })
}

/// Whether `f` (over the finite field `base`) is irreducible, by Rabin's
/// test: `x^{q^k} = x mod f` and `gcd(x^{q^{k/r}} - x, f) = 1` for every
/// prime `r | k`.
pub(crate) fn is_irreducible(f: &Polynomial<Fq>, base: &FiniteField) -> bool {
    let k = match f.degree() {
        None | Some(0) => return false,
        Some(1) => return true,
        Some(k) => k,
    };
    let x = Polynomial::new(vec![base.zero(), base.one()]);
    let q = base.order().clone();
    let frob_pow = |times: usize| -> Polynomial<Fq> {
        let mut acc = x.clone();
        for _ in 0..times {
            acc = acc.pow_mod(&q, f);
        }
        acc
    };
    if frob_pow(k).sub(&x).rem(f).degree().is_some() {
        return false;
    }
    let mut r = 2;
    let mut rest = k;
    while rest > 1 {
        if rest % r == 0 {
            let g = frob_pow(k / r).sub(&x).gcd(f);
            if g.degree() != Some(0) {
                return false;
            }
            while rest % r == 0 {
                rest /= r;
            }
        }
        r += 1;
    }
    true
}

/// The lexicographically smallest monic irreducible polynomial of degree `k`
/// over `F_p`, scanning `c_0 + c_1 p + ...` upward with `c_0` varying fastest.
pub fn find_irreducible(p: u64, k: usize) -> Result<Polynomial<Fq>> {
    if k == 0 || k > MAX_DEGREE {
        return Err(Error::InvalidField(format!("degree must be in 1..={MAX_DEGREE}")));
    }
    let base = FiniteField::prime(p)?;
    let mut c = vec![0u64; k];
    loop {
        let mut coeffs: Vec<Fq> = c.iter().map(|&v| base.from_u64(v)).collect();
        coeffs.push(base.one());
        let f = Polynomial::new(coeffs);
        if is_irreducible(&f, &base) {
            return Ok(f);
        }
        let mut i = 0;
        loop {
            c[i] += 1;
            if c[i] < p {
                break;
            }
            c[i] = 0;
            i += 1;
        }
    }
}

/// An explicit embedding `F_{p^a} -> F_{p^b}` (`a | b`), sending the
/// generator of the source to the canonically smallest root of its minimal
/// polynomial in the target.
#[derive(Clone, Debug)]
pub struct FieldEmbedding {
    source: FiniteField,
    target: FiniteField,
    image_of_generator: Fq,
}

impl FieldEmbedding {
    pub fn new(source: &FiniteField, target: &FiniteField) -> Result<Self> {
        if source.characteristic() != target.characteristic() || !target.degree().is_multiple_of(source.degree()) {
            return Err(Error::InvalidField(format!("{source:?} does not embed in {target:?}")));
        }
        type Key = (u64, Vec<u64>, Vec<u64>);
        static CACHE: OnceLock<Mutex<HashMap<Key, Fq>>> = OnceLock::new();
        let image_of_generator = if source.degree() == 1 {
            target.zero()
        } else {
            let key = (source.characteristic(), source.modulus_coeffs(), target.modulus_coeffs());
            let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
            let hit = cache.lock().expect("embedding cache poisoned").get(&key).cloned();
            match hit {
                Some(g) if g.field() == target => g,
                _ => {
                    let f = Polynomial::new(source.modulus_coeffs().into_iter().map(|c| target.from_u64(c)).collect());
                    let g = distinct_roots(&f, target)
                        .into_iter()
                        .next()
                        .ok_or_else(|| Error::InvalidField("minimal polynomial has no root in target".into()))?;
                    cache.lock().expect("embedding cache poisoned").insert(key, g.clone());
                    g
                }
            }
        };
        Ok(Self { source: source.clone(), target: target.clone(), image_of_generator })
    }

    pub fn apply(&self, x: &Fq) -> Fq {
        assert!(x.field() == &self.source, "element not in embedding source");
        let mut acc = self.target.zero();
        for &c in x.coeffs().iter().rev() {
            acc = acc * self.image_of_generator.clone() + self.target.from_u64(c as u64);
        }
        acc
    }

    pub fn target(&self) -> &FiniteField {
        &self.target
    }
}

impl fmt::Display for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_arithmetic_examples() {
        let f13 = FiniteField::prime(13).unwrap();
        assert_eq!(field_arith(&f13.from_u64(2), &f13.zero(), ArithOp::Inv).unwrap(), f13.from_u64(7));
        let f5 = FiniteField::prime(5).unwrap();
        assert_eq!(field_arith(&f5.from_u64(2), &f5.from_u64(4), ArithOp::Pow).unwrap(), f5.one());
        let f7 = FiniteField::prime(7).unwrap();
        assert!(field_arith(&f7.from_u64(3), &f7.from_u64(4), ArithOp::Add).unwrap().is_zero());
    }

    #[test]
    fn arithmetic_errors() {
        let f7 = FiniteField::prime(7).unwrap();
        let f11 = FiniteField::prime(11).unwrap();
        assert_eq!(field_arith(&f7.one(), &f7.zero(), ArithOp::Div), Err(Error::DivisionByZero));
        assert_eq!(field_arith(&f7.zero(), &f7.zero(), ArithOp::Inv), Err(Error::DivisionByZero));
        assert_eq!(field_arith(&f7.one(), &f11.one(), ArithOp::Add), Err(Error::FieldMismatch));
        assert!(FiniteField::prime(15).is_err());
        assert!(FiniteField::prime(65537).is_err());
    }

    #[test]
    fn irreducible_examples() {
        let f = find_irreducible(7, 2).unwrap();
        assert_eq!(f.coeffs().iter().map(|c| c.residue()).collect::<Vec<_>>(), vec![1, 0, 1]);
        let f = find_irreducible(5, 2).unwrap();
        assert_eq!(f.coeffs().iter().map(|c| c.residue()).collect::<Vec<_>>(), vec![2, 0, 1]);
        let f = find_irreducible(11, 1).unwrap();
        assert_eq!(f.coeffs().iter().map(|c| c.residue()).collect::<Vec<_>>(), vec![0, 1]);
    }

    #[test]
    fn extension_field_inverse_and_order() {
        let f = FiniteField::extension(5, 3).unwrap();
        assert_eq!(f.order_u64(), Some(125));
        for x in f.elements().skip(1) {
            assert!((x.clone() * x.checked_inv().unwrap()).is_one());
        }
        // multiplicative group is cyclic of order 124: x^124 = 1 for x != 0
        for x in f.elements().skip(1) {
            assert!(x.pow(124).is_one());
        }
    }

    #[test]
    fn reducible_modulus_rejected() {
        // x^2 + 1 has the root 2 mod 5
        assert!(FiniteField::with_modulus(5, &[1, 0, 1]).is_err());
        assert!(FiniteField::with_modulus(5, &[2, 0, 1]).is_ok());
    }

    #[test]
    fn sqrt_in_extension() {
        let f = FiniteField::extension(13, 4).unwrap();
        let mut rng = rand::thread_rng();
        for _ in 0..200 {
            let x = f.random(&mut rng);
            let sq = x.square();
            let r = sq.sqrt().unwrap();
            assert_eq!(r.square(), sq);
            assert!(r <= -r.clone());
        }
        assert!(f.nonresidue().sqrt().is_none());
    }

    #[test]
    fn frobenius_is_additive_and_has_order_k() {
        let f = FiniteField::extension(7, 3).unwrap();
        let mut rng = rand::thread_rng();
        for _ in 0..50 {
            let a = f.random(&mut rng);
            let b = f.random(&mut rng);
            assert_eq!((a.clone() + b.clone()).frobenius(), a.frobenius() + b.frobenius());
            assert_eq!(a.frobenius().frobenius().frobenius(), a);
        }
    }

    #[test]
    fn embedding_is_a_ring_homomorphism() {
        let small = FiniteField::extension(5, 2).unwrap();
        let big = FiniteField::extension(5, 4).unwrap();
        let emb = FieldEmbedding::new(&small, &big).unwrap();
        for a in small.elements() {
            for b in small.elements().step_by(3) {
                assert_eq!(emb.apply(&(a.clone() * b.clone())), emb.apply(&a) * emb.apply(&b));
                assert_eq!(emb.apply(&(a.clone() + b.clone())), emb.apply(&a) + emb.apply(&b));
            }
        }
        assert!(FieldEmbedding::new(&big, &small).is_err());
        assert!(FieldEmbedding::new(&FiniteField::extension(5, 3).unwrap(), &big).is_err());
    }
}
