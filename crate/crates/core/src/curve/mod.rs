//! Weierstrass curves over any [`Field`]: invariants, the chord-tangent
//! group law, and changes of variables.

mod spec;

use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;

pub use spec::CurveSpec;

/// `(b2, b4, b6, b8)` of `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6`.
pub fn b_invariants<F: Field>(a: &[F; 5]) -> [F; 4] {
    let [a1, a2, a3, a4, a6] = a.clone();
    let two = a1.int_like(2);
    let four = a1.int_like(4);
    let b2 = a1.square() + four.clone() * a2.clone();
    let b4 = two * a4.clone() + a1.clone() * a3.clone();
    let b6 = a3.square() + four.clone() * a6.clone();
    let b8 = a1.square() * a6.clone() + four * a2.clone() * a6 - a1 * a3.clone() * a4.clone() + a2 * a3.square()
        - a4.square();
    [b2, b4, b6, b8]
}

/// `9 b2 b4 b6 - b2^2 b8 - 8 b4^3 - 27 b6^2`.
pub fn discriminant<F: Field>(b: &[F; 4]) -> F {
    let [b2, b4, b6, b8] = b.clone();
    let k = |n| b2.int_like(n);
    k(9) * b2.clone() * b4.clone() * b6.clone() - b2.square() * b8 - k(8) * b4.pow(3) - k(27) * b6.square()
}

/// A point of a Weierstrass curve in affine coordinates, or the point at
/// infinity. `Infinity` sorts before every affine point.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CurvePoint<F> {
    Infinity,
    Affine(F, F),
}

impl<F> CurvePoint<F> {
    pub fn is_infinity(&self) -> bool {
        matches!(self, CurvePoint::Infinity)
    }

    pub fn x(&self) -> Option<&F> {
        match self {
            CurvePoint::Infinity => None,
            CurvePoint::Affine(x, _) => Some(x),
        }
    }

    pub fn y(&self) -> Option<&F> {
        match self {
            CurvePoint::Infinity => None,
            CurvePoint::Affine(_, y) => Some(y),
        }
    }

    pub fn map<G>(&self, f: impl Fn(&F) -> G) -> CurvePoint<G> {
        match self {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine(x, y) => CurvePoint::Affine(f(x), f(y)),
        }
    }
}

impl<F: fmt::Debug> fmt::Debug for CurvePoint<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurvePoint::Infinity => write!(f, "O"),
            CurvePoint::Affine(x, y) => write!(f, "({x:?}, {y:?})"),
        }
    }
}

/// `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6` with invertible
/// discriminant.
#[derive(Clone, PartialEq)]
pub struct WeierstrassCurve<F: Field> {
    a: [F; 5],
    b: [F; 4],
    disc: F,
}

impl<F: Field> fmt::Debug for WeierstrassCurve<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a1, a2, a3, a4, a6] = &self.a;
        write!(f, "E[{a1:?}, {a2:?}, {a3:?}, {a4:?}, {a6:?}]")
    }
}

impl<F: Field> WeierstrassCurve<F> {
    pub fn new(a1: F, a2: F, a3: F, a4: F, a6: F) -> Result<Self> {
        Self::from_array([a1, a2, a3, a4, a6])
    }

    /// `y^2 = x^3 + a4 x + a6`.
    pub fn short(a4: F, a6: F) -> Result<Self> {
        let z = a4.zero_like();
        Self::new(z.clone(), z.clone(), z, a4, a6)
    }

    pub fn from_array(a: [F; 5]) -> Result<Self> {
        let b = b_invariants(&a);
        let disc = discriminant(&b);
        if disc.inv().is_none() {
            return Err(Error::SingularCurve);
        }
        Ok(Self { a, b, disc })
    }

    pub fn coefficients(&self) -> &[F; 5] {
        &self.a
    }
    pub fn a1(&self) -> &F {
        &self.a[0]
    }
    pub fn a2(&self) -> &F {
        &self.a[1]
    }
    pub fn a3(&self) -> &F {
        &self.a[2]
    }
    pub fn a4(&self) -> &F {
        &self.a[3]
    }
    pub fn a6(&self) -> &F {
        &self.a[4]
    }

    pub fn b_invariants(&self) -> &[F; 4] {
        &self.b
    }
    pub fn b2(&self) -> &F {
        &self.b[0]
    }
    pub fn b4(&self) -> &F {
        &self.b[1]
    }
    pub fn b6(&self) -> &F {
        &self.b[2]
    }
    pub fn b8(&self) -> &F {
        &self.b[3]
    }

    pub fn discriminant(&self) -> &F {
        &self.disc
    }

    /// `c4^3 / Delta` with `c4 = b2^2 - 24 b4`.
    pub fn j_invariant(&self) -> F {
        let c4 = self.b2().square() - self.b2().int_like(24) * self.b4().clone();
        c4.pow(3) / self.disc.clone()
    }

    /// True for `a1 = a3 = 0`, i.e. `y^2 = x^3 + a2 x^2 + a4 x + a6`.
    pub fn is_y_squared_form(&self) -> bool {
        self.a1().is_zero() && self.a3().is_zero()
    }

    /// `x^3 + a2 x^2 + a4 x + a6` evaluated at `x`.
    pub fn cubic(&self, x: &F) -> F {
        ((x.clone() + self.a2().clone()) * x.clone() + self.a4().clone()) * x.clone() + self.a6().clone()
    }

    /// Left side minus right side of the curve equation.
    pub fn residual(&self, x: &F, y: &F) -> F {
        let [a1, _, a3, _, _] = &self.a;
        y.clone() * (y.clone() + a1.clone() * x.clone() + a3.clone()) - self.cubic(x)
    }

    pub fn contains(&self, p: &CurvePoint<F>) -> bool {
        match p {
            CurvePoint::Infinity => true,
            CurvePoint::Affine(x, y) => self.residual(x, y).is_zero(),
        }
    }

    pub fn point(&self, x: F, y: F) -> Result<CurvePoint<F>> {
        let p = CurvePoint::Affine(x, y);
        if self.contains(&p) {
            Ok(p)
        } else {
            Err(Error::NotOnCurve)
        }
    }

    pub fn neg(&self, p: &CurvePoint<F>) -> CurvePoint<F> {
        match p {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine(x, y) => {
                let y2 = -y.clone() - self.a1().clone() * x.clone() - self.a3().clone();
                CurvePoint::Affine(x.clone(), y2)
            }
        }
    }

    /// Chord-tangent addition. Inputs are assumed to lie on the curve.
    pub fn add(&self, p: &CurvePoint<F>, q: &CurvePoint<F>) -> CurvePoint<F> {
        let (x1, y1, x2, y2) = match (p, q) {
            (CurvePoint::Infinity, _) => return q.clone(),
            (_, CurvePoint::Infinity) => return p.clone(),
            (CurvePoint::Affine(x1, y1), CurvePoint::Affine(x2, y2)) => (x1, y1, x2, y2),
        };
        let [a1, a2, a3, a4, _] = &self.a;
        let lambda = if x1 == x2 {
            let denom = y1.clone() + y2.clone() + a1.clone() * x2.clone() + a3.clone();
            if denom.is_zero() {
                return CurvePoint::Infinity;
            }
            let num = x1.int_like(3) * x1.square() + x1.int_like(2) * a2.clone() * x1.clone() + a4.clone()
                - a1.clone() * y1.clone();
            num / denom
        } else {
            (y2.clone() - y1.clone()) / (x2.clone() - x1.clone())
        };
        let nu = y1.clone() - lambda.clone() * x1.clone();
        let x3 = lambda.square() + a1.clone() * lambda.clone() - a2.clone() - x1.clone() - x2.clone();
        let y3 = -(lambda + a1.clone()) * x3.clone() - nu - a3.clone();
        CurvePoint::Affine(x3, y3)
    }

    pub fn sub(&self, p: &CurvePoint<F>, q: &CurvePoint<F>) -> CurvePoint<F> {
        self.add(p, &self.neg(q))
    }

    pub fn double(&self, p: &CurvePoint<F>) -> CurvePoint<F> {
        self.add(p, p)
    }

    /// `k * P` by double-and-add.
    pub fn mul(&self, k: i64, p: &CurvePoint<F>) -> CurvePoint<F> {
        let base = if k < 0 { self.neg(p) } else { p.clone() };
        let mut k = k.unsigned_abs();
        let mut acc = CurvePoint::Infinity;
        let mut b = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &b);
            }
            k >>= 1;
            if k > 0 {
                b = self.double(&b);
            }
        }
        acc
    }

    pub fn checked_add(&self, p: &CurvePoint<F>, q: &CurvePoint<F>) -> Result<CurvePoint<F>> {
        self.require(p)?;
        self.require(q)?;
        Ok(self.add(p, q))
    }

    pub fn checked_mul(&self, k: i64, p: &CurvePoint<F>) -> Result<CurvePoint<F>> {
        self.require(p)?;
        Ok(self.mul(k, p))
    }

    fn require(&self, p: &CurvePoint<F>) -> Result<()> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(Error::NotOnCurve)
        }
    }

    /// Smallest `m >= 1` with `mP = O`, searching up to `bound`.
    pub fn order_up_to(&self, p: &CurvePoint<F>, bound: u64) -> Option<u64> {
        let mut acc = p.clone();
        for m in 1..=bound {
            if acc.is_infinity() {
                return Some(m);
            }
            acc = self.add(&acc, p);
        }
        None
    }

    /// `x(2P)` from `x(P)` alone; errors when `P` is 2-torsion.
    pub fn duplication_x(&self, x: &F) -> Result<F> {
        let [b2, b4, b6, b8] = self.b.clone();
        let k = |n| x.int_like(n);
        let num = x.pow(4) - b4.clone() * x.square() - k(2) * b6.clone() * x.clone() - b8;
        let den = k(4) * x.pow(3) + b2 * x.square() + k(2) * b4 * x.clone() + b6;
        let inv = den.inv().ok_or(Error::DivisionByZero)?;
        Ok(num * inv)
    }

    /// Apply a coefficient map, e.g. a field embedding.
    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Result<WeierstrassCurve<G>> {
        WeierstrassCurve::from_array([f(&self.a[0]), f(&self.a[1]), f(&self.a[2]), f(&self.a[3]), f(&self.a[4])])
    }

    /// The change `(1, 0, -a1/2, -a3/2)` taking the curve to
    /// `y^2 = x^3 + (b2/4) x^2 + (b4/2) x + b6/4`.
    pub fn complete_square(&self) -> Result<(VariableChange<F>, WeierstrassCurve<F>)> {
        let half = self.a1().int_like(2).inv().ok_or(Error::DivisionByZero)?;
        let z = self.a1().zero_like();
        let ch = VariableChange::new(
            z.one_like(),
            z.clone(),
            -(self.a1().clone() * half.clone()),
            -(self.a3().clone() * half),
        )?;
        let e = ch.apply(self)?;
        Ok((ch, e))
    }
}

/// `x = u^2 X + r`, `y = u^3 Y + s u^2 X + t`.
#[derive(Clone, Debug, PartialEq)]
pub struct VariableChange<F: Field> {
    pub u: F,
    pub r: F,
    pub s: F,
    pub t: F,
}

impl<F: Field> VariableChange<F> {
    pub fn new(u: F, r: F, s: F, t: F) -> Result<Self> {
        if u.inv().is_none() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self { u, r, s, t })
    }

    pub fn identity(template: &F) -> Self {
        let z = template.zero_like();
        Self { u: z.one_like(), r: z.clone(), s: z.clone(), t: z }
    }

    /// The curve in the new coordinates `(X, Y)`.
    pub fn apply(&self, e: &WeierstrassCurve<F>) -> Result<WeierstrassCurve<F>> {
        let [a1, a2, a3, a4, a6] = e.coefficients().clone();
        let Self { u, r, s, t } = self.clone();
        let k = |n| u.int_like(n);
        let ui = u.inv().ok_or(Error::DivisionByZero)?;
        let n1 = a1.clone() + k(2) * s.clone();
        let n2 = a2.clone() - s.clone() * a1.clone() + k(3) * r.clone() - s.square();
        let n3 = a3.clone() + r.clone() * a1.clone() + k(2) * t.clone();
        let n4 = a4.clone() - s.clone() * a3.clone() + k(2) * r.clone() * a2.clone()
            - (t.clone() + r.clone() * s.clone()) * a1.clone()
            + k(3) * r.square()
            - k(2) * s.clone() * t.clone();
        let n6 = a6 + r.clone() * a4 + r.square() * a2 + r.pow(3) - t.clone() * a3 - t.square() - r * t * a1;
        WeierstrassCurve::from_array([
            n1 * ui.clone(),
            n2 * ui.pow(2),
            n3 * ui.pow(3),
            n4 * ui.pow(4),
            n6 * ui.pow(6),
        ])
    }

    /// Old coordinates to new: `X = (x - r)/u^2`, `Y = (y - s(x - r) - t)/u^3`.
    pub fn forward(&self, p: &CurvePoint<F>) -> CurvePoint<F> {
        match p {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine(x, y) => {
                let ui = self.u.inv().expect("unit u");
                let dx = x.clone() - self.r.clone();
                let ny = (y.clone() - self.s.clone() * dx.clone() - self.t.clone()) * ui.pow(3);
                CurvePoint::Affine(dx * ui.square(), ny)
            }
        }
    }

    /// New coordinates back to old.
    pub fn backward(&self, p: &CurvePoint<F>) -> CurvePoint<F> {
        match p {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine(x, y) => {
                let u2x = self.u.square() * x.clone();
                let nx = u2x.clone() + self.r.clone();
                let ny = self.u.pow(3) * y.clone() + self.s.clone() * u2x + self.t.clone();
                CurvePoint::Affine(nx, ny)
            }
        }
    }

    /// `self` followed by `next`, as a single change.
    pub fn compose(&self, next: &Self) -> Self {
        let (u1, r1, s1, t1) = (&self.u, &self.r, &self.s, &self.t);
        let (u2, r2, s2, t2) = (&next.u, &next.r, &next.s, &next.t);
        let u1sq = u1.square();
        Self {
            u: u1.clone() * u2.clone(),
            r: r1.clone() + u1sq.clone() * r2.clone(),
            s: s1.clone() + u1.clone() * s2.clone(),
            t: t1.clone() + u1sq * s1.clone() * r2.clone() + u1.pow(3) * t2.clone(),
        }
    }

    pub fn inverse(&self) -> Self {
        let ui = self.u.inv().expect("unit u");
        Self {
            u: ui.clone(),
            r: -(self.r.clone() * ui.square()),
            s: -(self.s.clone() * ui.clone()),
            t: (self.r.clone() * self.s.clone() - self.t.clone()) * ui.pow(3),
        }
    }
}

/// `(E', ch)` for the change `ch` applied to `e`; points move with
/// [`VariableChange::forward`] and back with [`VariableChange::backward`].
pub fn change_variables<F: Field>(
    e: &WeierstrassCurve<F>,
    ch: &VariableChange<F>,
) -> Result<WeierstrassCurve<F>> {
    ch.apply(e)
}
