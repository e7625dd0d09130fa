//! The Weil pairing `e_n` on `E[n]` by Miller's algorithm, and the sign
//! calibration that matches it to the torsor maps `w_n`.

mod calibrate;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::curve::{CurvePoint, WeierstrassCurve};
use crate::error::{Error, Result};
use crate::field::{Field, Fq};
use crate::torsion::{base_field, lift_x};

pub use calibrate::{calibrate_sign, valid_signs};

const MAX_ATTEMPTS: usize = 64;

/// An element `zeta` of the field with `zeta^n = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RootOfUnity {
    pub value: Fq,
    pub n: u32,
}

impl RootOfUnity {
    pub fn new(value: Fq, n: u32) -> Result<Self> {
        if !value.pow(n as u64).is_one() {
            return Err(Error::InvalidArgument(format!("{value} is not an {n}-th root of unity")));
        }
        Ok(Self { value, n })
    }

    /// Multiplicative order (a divisor of `n`).
    pub fn order(&self) -> u32 {
        (1..=self.n).find(|&k| self.value.pow(k as u64).is_one()).expect("zeta^n = 1")
    }

    /// `k` in `0..n` with `base^k = self`, if any.
    pub fn log_base(&self, base: &RootOfUnity) -> Option<u32> {
        (0..self.n).find(|&k| base.value.pow(k as u64) == self.value)
    }
}

/// Selects `e` (`sign = 1`) or `e^{-1}` (`sign = -1`) from the raw Miller
/// pairing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PairingCalibration {
    pub sign: i8,
}

/// `y_X - y_T - lambda (x_X - x_T)` for the line through `t` and `r`
/// (tangent if equal), or `x_X - x_T` if that line is vertical. Also
/// returns `t + r`.
fn line_value(
    e: &WeierstrassCurve<Fq>,
    t: &CurvePoint<Fq>,
    r: &CurvePoint<Fq>,
    x: &Fq,
    y: &Fq,
) -> (Fq, CurvePoint<Fq>) {
    let sum = e.add(t, r);
    let (CurvePoint::Affine(xt, yt), CurvePoint::Affine(xr, yr)) = (t, r) else {
        return (x.one_like(), sum);
    };
    if sum.is_infinity() {
        return (x.clone() - xt.clone(), sum);
    }
    let lambda = if xt == xr {
        let num = xt.int_like(3) * xt.square() + xt.int_like(2) * e.a2().clone() * xt.clone() + e.a4().clone()
            - e.a1().clone() * yt.clone();
        let den = yt.int_like(2) * yt.clone() + e.a1().clone() * xt.clone() + e.a3().clone();
        num / den
    } else {
        (yr.clone() - yt.clone()) / (xr.clone() - xt.clone())
    };
    (y.clone() - yt.clone() - lambda * (x.clone() - xt.clone()), sum)
}

fn vertical_value(at: &CurvePoint<Fq>, x: &Fq) -> Fq {
    match at {
        CurvePoint::Infinity => x.one_like(),
        CurvePoint::Affine(xa, _) => x.clone() - xa.clone(),
    }
}

/// `f_{n,P}(X)` with `div f = n(P) - n(O)`, normalized by the Miller
/// recursion `f_{i+j} = f_i f_j l_{iP,jP} / v_{(i+j)P}`. Errors when `X`
/// meets a zero or pole of some intermediate line.
pub fn miller_function(e: &WeierstrassCurve<Fq>, n: u64, p: &CurvePoint<Fq>, x: &CurvePoint<Fq>) -> Result<Fq> {
    let CurvePoint::Affine(xx, xy) = x else {
        return Err(Error::MillerDegenerate);
    };
    let mut f = xx.one_like();
    let mut t = p.clone();
    let bits = 64 - n.leading_zeros();
    for i in (0..bits - 1).rev() {
        let (l, t2) = line_value(e, &t, &t, xx, xy);
        let v = vertical_value(&t2, xx);
        f = f.square() * l;
        f = f * v.inv().ok_or(Error::MillerDegenerate)?;
        t = t2;
        if (n >> i) & 1 == 1 {
            let (l, t2) = line_value(e, &t, p, xx, xy);
            let v = vertical_value(&t2, xx);
            f = f * l * v.inv().ok_or(Error::MillerDegenerate)?;
            t = t2;
        }
        if f.is_zero() {
            return Err(Error::MillerDegenerate);
        }
    }
    Ok(f)
}

fn random_point<R: Rng>(e: &WeierstrassCurve<Fq>, rng: &mut R) -> CurvePoint<Fq> {
    let field = base_field(e);
    loop {
        let pts = lift_x(e, &field.random(rng));
        if let Some(p) = pts.first() {
            return if rng.gen_bool(0.5) { p.clone() } else { e.neg(p) };
        }
    }
}

/// The uncalibrated pairing
/// `[f_P(Q + S) / f_P(S)] / [f_Q(P - S) / f_Q(-S)]` for an auxiliary point
/// `S`, retried with fresh `S` on degenerate evaluations.
pub fn raw_pairing(e: &WeierstrassCurve<Fq>, p: &CurvePoint<Fq>, q: &CurvePoint<Fq>, n: u32) -> Result<Fq> {
    for pt in [p, q] {
        if !e.contains(pt) {
            return Err(Error::NotOnCurve);
        }
        if !e.mul(n as i64, pt).is_infinity() {
            return Err(Error::WrongOrder(format!("{pt:?} is not {n}-torsion")));
        }
    }
    let one = base_field(e).one();
    if p.is_infinity() || q.is_infinity() || p == q {
        return Ok(one);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5e_ed0f_5a1e);
    for _ in 0..MAX_ATTEMPTS {
        let s = random_point(e, &mut rng);
        let attempt = (|| -> Result<Fq> {
            let a = miller_function(e, n as u64, p, &e.add(q, &s))?;
            let b = miller_function(e, n as u64, p, &s)?;
            let c = miller_function(e, n as u64, q, &e.sub(p, &s))?;
            let d = miller_function(e, n as u64, q, &e.neg(&s))?;
            let den = b * c;
            let inv = den.inv().ok_or(Error::MillerDegenerate)?;
            let num = a * d;
            if num.is_zero() {
                return Err(Error::MillerDegenerate);
            }
            Ok(num * inv)
        })();
        match attempt {
            Ok(v) => return Ok(v),
            Err(Error::MillerDegenerate) => continue,
            Err(err) => return Err(err),
        }
    }
    Err(Error::MillerDegenerate)
}

/// `e_n(P, Q)` with the calibrated sign applied.
pub fn weil_pairing(
    e: &WeierstrassCurve<Fq>,
    p: &CurvePoint<Fq>,
    q: &CurvePoint<Fq>,
    n: u32,
    cal: PairingCalibration,
) -> Result<RootOfUnity> {
    let raw = raw_pairing(e, p, q, n)?;
    let value = if cal.sign < 0 { raw.inv().expect("roots of unity are units") } else { raw };
    RootOfUnity::new(value, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::CurveSpec;
    use crate::torsion::torsion_basis;

    #[test]
    fn pairing_basics() {
        for (spec, n) in [(CurveSpec::short(13, 2, 1), 3u32), (CurveSpec::short(13, -1, 0), 4)] {
            let b = torsion_basis(&spec.curve().unwrap(), n).unwrap();
            let e = &b.curve;
            let cal = PairingCalibration { sign: 1 };
            let epq = weil_pairing(e, &b.p, &b.q, n, cal).unwrap();
            assert_eq!(epq.order(), n);
            let eqp = weil_pairing(e, &b.q, &b.p, n, cal).unwrap();
            assert!((epq.value.clone() * eqp.value).is_one());
            assert!(weil_pairing(e, &b.p, &b.p, n, cal).unwrap().value.is_one());
            let e2 = weil_pairing(e, &e.mul(2, &b.p), &b.q, n, cal).unwrap();
            assert_eq!(e2.value, epq.value.pow(2));
            let sum = weil_pairing(e, &e.add(&b.p, &b.q), &b.q, n, cal).unwrap();
            assert_eq!(sum.value, epq.value);
        }
    }

    #[test]
    fn calibration_is_unique_and_uniform() {
        let mut mods = Vec::new();
        for (spec, n) in [(CurveSpec::short(13, 2, 1), 3u32), (CurveSpec::short(13, -1, 0), 4), (CurveSpec::short(37, 1, 3), 3)] {
            let b = torsion_basis(&spec.curve().unwrap(), n).unwrap();
            let m = crate::torsion::TorsionModule::new(&b).unwrap();
            assert_eq!(valid_signs(&m).unwrap().len(), 1, "{spec}");
            mods.push(m);
        }
        let cal = calibrate_sign(&mods).unwrap();
        assert!(cal.sign == 1 || cal.sign == -1);
    }

    #[test]
    fn miller_trivial_divisor_and_errors() {
        let b = torsion_basis(&CurveSpec::short(13, 2, 1).curve().unwrap(), 3).unwrap();
        let e = &b.curve;
        let s = e.add(&b.q, &b.q);
        let v = miller_function(e, 3, &b.p, &s).unwrap();
        assert!((v.clone() / v).is_one());
        assert!(miller_function(e, 3, &b.p, &CurvePoint::Infinity).is_err());
        let f = base_field(e);
        let bad = lift_x(e, &f.one()).into_iter().find(|p| !e.mul(3, p).is_infinity());
        if let Some(bad) = bad {
            assert!(raw_pairing(e, &bad, &b.q, 3).is_err());
        }
    }
}
