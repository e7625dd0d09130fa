//! The formal Tate curve `y^2 + xy = x^3 + a4(q) x + a6(q)` over exact
//! truncated Laurent series, its base change to `Q(zeta_n)((z))` with
//! `q = z^n`, the torsion parametrization `u -> (x(u,q), y(u,q))`, the map
//! `delta`, and the comparison `w_n(tau(z)) = delta(z)`.

use serde_json::json;

use crate::check::Check;
use crate::curve::{CurvePoint, VariableChange, WeierstrassCurve};
use crate::disc_roots::{w3_formula, w4_tilde_points};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::series::{eta_power_product, Cyclotomic, CyclotomicElement, Eisenstein, Gaussian, LaurentSeries, Rational, Scalar};
use crate::torsion::three_torsion_quartic;

/// Series in `z` over `Q(zeta)`.
pub type ZSeries<K> = LaurentSeries<CyclotomicElement<K>>;

/// Extra working precision used internally to absorb losses in divisions.
const MARGIN: i64 = 8;

fn divisor_power_sum(m: i64, k: u32) -> i64 {
    (1..=m).filter(|d| m % d == 0).map(|d| d.pow(k)).sum()
}

/// The Tate coefficients as series in `q`, known modulo `q^prec`.
#[derive(Clone, Debug)]
pub struct TateModel {
    pub prec: i64,
    pub a4: LaurentSeries<Rational>,
    pub a6: LaurentSeries<Rational>,
    pub curve: WeierstrassCurve<LaurentSeries<Rational>>,
}

/// `a4 = -5 sum sigma_3(m) q^m`, `a6 = -(1/12) sum (7 sigma_5(m) + 5 sigma_3(m)) q^m`,
/// both modulo `q^prec`.
pub fn tate_coefficients(prec: i64) -> Result<TateModel> {
    if prec < 2 {
        return Err(Error::InvalidArgument(format!("precision must be at least 2, got {prec}")));
    }
    let mut a4 = vec![Rational::from_i64(0)];
    let mut a6 = vec![Rational::from_i64(0)];
    for m in 1..prec {
        let (s3, s5) = (divisor_power_sum(m, 3), divisor_power_sum(m, 5));
        a4.push(Rational::from_i64(-5 * s3));
        a6.push(Rational::new((-(7 * s5 + 5 * s3)).into(), 12.into()));
    }
    let a4 = LaurentSeries::from_coeffs(0, a4, prec);
    let a6 = LaurentSeries::from_coeffs(0, a6, prec);
    let zero = LaurentSeries::zero(prec);
    let curve = WeierstrassCurve::new(LaurentSeries::one(prec), zero.clone(), zero, a4.clone(), a6.clone())?;
    Ok(TateModel { prec, a4, a6, curve })
}

impl TateModel {
    /// The curve over `Q(zeta)((z))` with `q = z^n`, known modulo `z^(n prec)`.
    pub fn over<K: Cyclotomic>(&self, n: i64) -> Result<WeierstrassCurve<ZSeries<K>>> {
        let lift = |s: &LaurentSeries<Rational>| s.map(|c| CyclotomicElement::<K>::from_rational(c.clone())).substitute_power(n);
        self.curve.map(lift)
    }
}

/// `q prod (1 - q^m)^24` modulo `q^prec`.
pub fn delta_eta(prec: i64) -> Result<LaurentSeries<Rational>> {
    let p = eta_power_product::<Rational>(1, 24, prec - 1)?;
    Ok(&LaurentSeries::var(prec) * &p)
}

/// A point `u = zeta^a z^b` of `G_m / q^Z`, `q = z^n`, with `0 <= b < n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TateParameter {
    pub zeta_pow: i64,
    pub z_pow: i64,
}

impl TateParameter {
    /// `zeta^a z^b`, reduced modulo `q^Z` and the order of `zeta`.
    pub fn new<K: Cyclotomic>(a: i64, b: i64, n: i64) -> Self {
        Self { zeta_pow: a.rem_euclid(K::ORDER as i64), z_pow: b.rem_euclid(n) }
    }

    pub fn mul<K: Cyclotomic>(&self, o: &Self, n: i64) -> Self {
        Self::new::<K>(self.zeta_pow + o.zeta_pow, self.z_pow + o.z_pow, n)
    }

    pub fn inv<K: Cyclotomic>(&self, n: i64) -> Self {
        Self::new::<K>(-self.zeta_pow, -self.z_pow, n)
    }

    pub fn pow<K: Cyclotomic>(&self, k: i64, n: i64) -> Self {
        Self::new::<K>(self.zeta_pow * k, self.z_pow * k, n)
    }

    pub fn is_identity(&self) -> bool {
        self.zeta_pow == 0 && self.z_pow == 0
    }
}

/// `sum_{k >= kmin} coef(k) w^k` for `w = c z^e`, `e >= 1`, modulo `z^prec`.
fn monomial_series<K: Cyclotomic>(
    c: &CyclotomicElement<K>,
    e: i64,
    prec: i64,
    kmin: i64,
    coef: impl Fn(i64) -> i64,
) -> ZSeries<K> {
    assert!(e >= 1);
    let mut coeffs = vec![CyclotomicElement::<K>::zero(); prec.max(0) as usize];
    let mut k = kmin;
    while e * k < prec {
        let ck = (0..k).fold(CyclotomicElement::<K>::one(), |acc, _| acc * c.clone());
        coeffs[(e * k) as usize] = ck * CyclotomicElement::from_i64(coef(k));
        k += 1;
    }
    LaurentSeries::from_coeffs(0, coeffs, prec)
}

/// `f(w) = w / (1 - w)^2 = sum k w^k`.
fn f_of<K: Cyclotomic>(c: &CyclotomicElement<K>, e: i64, prec: i64) -> Result<ZSeries<K>> {
    if e == 0 {
        let one = CyclotomicElement::<K>::one();
        let d = one.clone() - c.clone();
        let inv = Scalar::inv(&(d.clone() * d)).ok_or(Error::DivisionByZero)?;
        return Ok(LaurentSeries::constant(c.clone() * inv, prec));
    }
    Ok(monomial_series(c, e, prec, 1, |k| k))
}

/// `h(w) = w^2 / (1 - w)^3 = sum k(k-1)/2 w^k`.
fn h_of<K: Cyclotomic>(c: &CyclotomicElement<K>, e: i64, prec: i64) -> Result<ZSeries<K>> {
    if e == 0 {
        let one = CyclotomicElement::<K>::one();
        let d = one.clone() - c.clone();
        let inv = Scalar::inv(&(d.clone() * d.clone() * d)).ok_or(Error::DivisionByZero)?;
        return Ok(LaurentSeries::constant(c.clone() * c.clone() * inv, prec));
    }
    Ok(monomial_series(c, e, prec, 2, |k| k * (k - 1) / 2))
}

/// `w / (1 - w)^3 = sum k(k+1)/2 w^k`, for `e >= 1`.
fn g_of<K: Cyclotomic>(c: &CyclotomicElement<K>, e: i64, prec: i64) -> ZSeries<K> {
    monomial_series(c, e, prec, 1, |k| k * (k + 1) / 2)
}

/// `(x(u, q), y(u, q))` on the Tate model with `q = z^n`, modulo `z^prec`:
///
/// `x = f(u) + sum_{m>=1} [f(q^m u) + f(q^m/u) - 2 m q^m/(1 - q^m)]`,
/// `y = h(u) + sum_{m>=1} [h(q^m u) - (q^m/u)/(1 - q^m/u)^3 + m q^m/(1 - q^m)]`.
pub fn tate_xy<K: Cyclotomic>(u: TateParameter, n: i64, prec: i64) -> Result<(ZSeries<K>, ZSeries<K>)> {
    if n != K::ORDER as i64 {
        return Err(Error::UnsupportedLevel(n as u32));
    }
    if u.is_identity() {
        return Err(Error::InvalidArgument("u lies in q^Z".into()));
    }
    let c = CyclotomicElement::<K>::zeta_pow(u.zeta_pow);
    let c_inv = CyclotomicElement::<K>::zeta_pow(-u.zeta_pow);
    let b = u.z_pow;
    let mut x = f_of(&c, b, prec)?;
    let mut y = h_of(&c, b, prec)?;
    let one = CyclotomicElement::<K>::one();
    let mut m = 1;
    while n * m - b < prec {
        x = x + f_of(&c, n * m + b, prec)? + f_of(&c_inv, n * m - b, prec)?;
        y = y + h_of(&c, n * m + b, prec)? - g_of(&c_inv, n * m - b, prec);
        // m q^m / (1 - q^m) = m sum_{k >= 1} q^{mk}
        let lam = monomial_series(&one, n * m, prec, 1, |_| m);
        x = x - lam.scale(&CyclotomicElement::from_i64(2));
        y = y + lam;
        m += 1;
    }
    Ok((x, y))
}

/// The Tate point with parameter `u`.
pub fn tate_point<K: Cyclotomic>(u: TateParameter, n: i64, prec: i64) -> Result<CurvePoint<ZSeries<K>>> {
    let (x, y) = tate_xy::<K>(u, n, prec)?;
    Ok(CurvePoint::Affine(x, y))
}

/// `delta(zeta^a z) = zeta^a z prod (1 - z^{n m})^{24/n}` modulo `z^prec`.
pub fn delta_map<K: Cyclotomic>(zeta_pow: i64, n: i64, prec: i64) -> Result<ZSeries<K>> {
    if n != 3 && n != 4 {
        return Err(Error::UnsupportedLevel(n as u32));
    }
    let p = eta_power_product::<CyclotomicElement<K>>(n, (24 / n) as u32, prec - 1)?;
    let lead = LaurentSeries::monomial(CyclotomicElement::<K>::zeta_pow(zeta_pow), 1, prec);
    Ok(&lead * &p)
}

fn known_to(s: &ZSeries<impl Cyclotomic>, prec: i64) -> bool {
    s.precision() >= prec
}

/// Evaluate `w_n(tau(z))` on the Tate curve over `Q(zeta_n)((z))` with
/// `q = z^n`, modulo `z^prec`.
///
/// For `n = 4`: `tau(z) = [z, i, (iz)^{-1}]` with
/// `(P', Q', R') = (-z, -i z^2, -i z)`, on the model `Y = y + x/2`.
/// For `n = 3`: `tau(z) = [zeta_3, z] = {{zeta, z}, {zeta z, zeta^2 z}}`.
pub fn w_of_tau(n: i64, prec: i64) -> Result<Check> {
    match n {
        4 => w4_of_tau(prec),
        3 => w3_of_tau(prec),
        _ => Err(Error::UnsupportedLevel(n as u32)),
    }
}

fn w4_of_tau(prec: i64) -> Result<Check> {
    let work = prec + MARGIN;
    let model = tate_coefficients((work + 3) / 4)?;
    let e = model.over::<Gaussian>(4)?;
    let half = LaurentSeries::constant(CyclotomicElement::<Gaussian>::from_rational(Rational::new(1.into(), 2.into())), work);
    let ch = VariableChange::new(half.one_like(), half.zero_like(), -half.clone(), half.zero_like())?;
    let en = ch.apply(&e)?;
    let par = |a, b| TateParameter::new::<Gaussian>(a, b, 4);
    // P = z, Q = i, R = (iz)^{-1} = -i z^3 (mod q)
    let (p, q, r) = (par(0, 1), par(1, 0), par(1, 0).mul::<Gaussian>(&par(0, 1), 4).inv::<Gaussian>(4));
    let pts = [p, q, r].map(|u| tate_point::<Gaussian>(u, 4, work).map(|pt| ch.forward(&pt)));
    let [pp, qq, rr] = pts;
    let triple = [pp?, qq?, rr?];
    let w = w4_tilde_points(&en, &triple)?;
    let expected = delta_map::<Gaussian>(0, 4, prec)?;
    let ok = known_to(&w, prec) && w.truncate(prec) == expected;
    let low = w.truncate(2) == LaurentSeries::var(2);
    Ok(Check::new(
        "w4_tau_equals_delta",
        ok && low,
        json!({ "precision": prec, "w4": w.truncate(prec).to_string(), "delta": expected.to_string(), "leading_is_z": low }),
    ))
}

fn w3_of_tau(prec: i64) -> Result<Check> {
    let work = prec + MARGIN;
    let model = tate_coefficients((work + 2) / 3)?;
    let e = model.over::<Eisenstein>(3)?;
    let par = |a, b| TateParameter::new::<Eisenstein>(a, b, 3);
    // {{omega, z}, {omega z, omega^2 z}}
    let xs: Vec<ZSeries<Eisenstein>> =
        [par(1, 0), par(0, 1), par(1, 1), par(2, 1)].iter().map(|u| tate_xy::<Eisenstein>(*u, 3, work).map(|(x, _)| x)).collect::<Result<_>>()?;
    let w = w3_formula(e.b4(), [&xs[0], &xs[1]], [&xs[2], &xs[3]]);
    let expected = delta_map::<Eisenstein>(0, 3, prec)?;
    let ok = known_to(&w, prec) && w.truncate(prec) == expected;
    Ok(Check::new(
        "w3_tau_equals_delta",
        ok,
        json!({ "precision": prec, "w3": w.truncate(prec).to_string(), "delta": expected.to_string() }),
    ))
}

/// All Tate-curve checks at precision `prec` (in `z`) for level `n`.
pub fn tate_checks(n: i64, prec: i64) -> Result<Vec<Check>> {
    if prec < 2 {
        return Err(Error::InvalidArgument("precision must be at least 2 to separate +-delta".into()));
    }
    let mut out = Vec::new();
    let model = tate_coefficients(prec)?;
    let disc = model.curve.discriminant().clone();
    let eta = delta_eta(prec)?;
    out.push(Check::new(
        "discriminant_is_eta_product",
        disc.precision() >= prec && disc == eta,
        json!({ "precision": prec, "delta": disc.to_string() }),
    ));
    match n {
        4 => out.extend(series_checks::<Gaussian>(prec)?),
        3 => out.extend(series_checks::<Eisenstein>(prec)?),
        _ => return Err(Error::UnsupportedLevel(n as u32)),
    }
    out.push(w_of_tau(n, prec)?);
    Ok(out)
}

fn series_checks<K: Cyclotomic>(prec: i64) -> Result<Vec<Check>> {
    let n = K::ORDER as i64;
    let work = prec + MARGIN;
    let model = tate_coefficients((work + n - 1) / n)?;
    let e = model.over::<K>(n)?;
    let mut out = Vec::new();
    let params: Vec<TateParameter> = (0..K::ORDER as i64)
        .flat_map(|a| (0..n).map(move |b| TateParameter::new::<K>(a, b, n)))
        .filter(|u| !u.is_identity())
        .collect();

    let mut eq_ok = true;
    let mut sym_ok = true;
    for u in &params {
        let (x, y) = tate_xy::<K>(*u, n, work)?;
        let res = e.residual(&x, &y);
        eq_ok &= res.precision() >= prec && res.truncate(prec).is_zero();
        let (xi, yi) = tate_xy::<K>(u.inv::<K>(n), n, work)?;
        // -P = (x, -y - x) on y^2 + xy = ...
        sym_ok &= xi == x && yi == -y - x;
    }
    out.push(Check::new("tate_xy_on_curve", eq_ok, json!({ "points": params.len(), "precision": prec })));
    out.push(Check::new("tate_xy_inversion_symmetry", sym_ok, json!({})));

    let mut add_ok = true;
    let mut min_prec = i64::MAX;
    for u1 in &params {
        for u2 in &params {
            let prod = u1.mul::<K>(u2, n);
            if prod.is_identity() {
                continue;
            }
            let s = e.add(&tate_point::<K>(*u1, n, work)?, &tate_point::<K>(*u2, n, work)?);
            let (x, y) = tate_xy::<K>(prod, n, work)?;
            match s {
                CurvePoint::Affine(sx, sy) => {
                    min_prec = min_prec.min(sx.precision().min(sy.precision()));
                    add_ok &= sx == x && sy == y;
                }
                CurvePoint::Infinity => add_ok = false,
            }
        }
    }
    out.push(Check::new(
        "tate_parametrization_is_homomorphism",
        add_ok && min_prec >= prec,
        json!({ "min_precision": min_prec }),
    ));

    if n == 3 {
        let quartic = three_torsion_quartic(&e);
        let mut ok = true;
        for u in &params {
            let (x, _) = tate_xy::<K>(*u, n, work)?;
            let v = quartic.eval(&x);
            ok &= v.precision() >= prec && v.truncate(prec).is_zero();
        }
        out.push(Check::new("three_torsion_x_are_quartic_roots", ok, json!({})));
    } else {
        // 2P, 2Q, 2R for (z, i, (iz)^{-1}) are the parameters z^2, -1, -z^2:
        // exactly the points with Y = y + x/2 = 0.
        let mut ok = true;
        let par = |a, b| TateParameter::new::<K>(a, b, n);
        let triple = [par(0, 1), par(1, 0), par(1, 0).mul::<K>(&par(0, 1), n).inv::<K>(n)];
        let mut doubled: Vec<_> = triple.iter().map(|u| u.pow::<K>(2, n)).collect();
        doubled.sort_by_key(|u| (u.zeta_pow, u.z_pow));
        ok &= doubled == vec![par(0, 2), par(2, 0), par(2, 2)];
        for u in &doubled {
            let (x, y) = tate_xy::<K>(*u, n, work)?;
            let big_y = y + x.scale(&CyclotomicElement::from_rational(Rational::new(1.into(), 2.into())));
            ok &= big_y.precision() >= prec && big_y.truncate(prec).is_zero();
        }
        out.push(Check::new("tau_doubles_are_two_torsion", ok, json!({})));
    }

    let delta = delta_map::<K>(1, n, prec)?;
    let disc_z = model.curve.discriminant().map(|c| CyclotomicElement::<K>::from_rational(c.clone())).substitute_power(n);
    let pow = delta.checked_pow(n)?;
    out.push(Check::new("delta_power_is_discriminant", pow == disc_z.truncate(pow.precision()) && pow.precision() >= prec, json!({})));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &LaurentSeries<Rational>, upto: i64) -> Vec<Rational> {
        (0..upto).map(|e| s.coeff(e).unwrap()).collect()
    }

    #[test]
    fn coefficient_examples() {
        let m = tate_coefficients(4).unwrap();
        let r = |n: i64| Rational::from_i64(n);
        assert_eq!(ints(&m.a4, 4), vec![r(0), r(-5), r(-45), r(-140)]);
        assert_eq!(m.a6.coeff(1).unwrap(), r(-1));
        let d = m.curve.discriminant();
        assert_eq!(ints(d, 4), vec![r(0), r(1), r(-24), r(252)]);
    }

    #[test]
    fn leading_terms_of_x() {
        let (x, _) = tate_xy::<Gaussian>(TateParameter::new::<Gaussian>(0, 1, 4), 4, 3).unwrap();
        let expected = LaurentSeries::from_coeffs(1, vec![CyclotomicElement::from_ints(1, 0), CyclotomicElement::from_ints(2, 0)], 3);
        assert_eq!(x, expected);
        let (x, _) = tate_xy::<Eisenstein>(TateParameter::new::<Eisenstein>(1, 0, 3), 3, 2).unwrap();
        assert_eq!(x.coeff(0).unwrap(), CyclotomicElement::from_rational(Rational::new((-1).into(), 3.into())));
        assert!(tate_xy::<Gaussian>(TateParameter::new::<Gaussian>(0, 4, 4), 4, 3).is_err());
    }

    #[test]
    fn delta_examples() {
        let d = delta_map::<Gaussian>(0, 4, 9).unwrap();
        let mut c = vec![CyclotomicElement::<Gaussian>::zero(); 9];
        c[1] = CyclotomicElement::one();
        c[5] = CyclotomicElement::from_ints(-6, 0);
        assert_eq!(d, LaurentSeries::from_coeffs(0, c, 9));
    }

    #[test]
    fn tate_checks_at_small_precision() {
        for n in [3, 4] {
            for c in tate_checks(n, 6).unwrap() {
                assert!(c.passed, "n={n}: {c:?}");
            }
        }
    }
}
