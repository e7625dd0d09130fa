//! Vélu isogenies over finite fields and the discriminant class relation
//! `Delta_E = Delta_E'^d` modulo 12th powers for isogenies of degree prime
//! to 12.
//!
//! Isogenies are computed on models `y^2 = x^3 + a2 x^2 + a4 x + a6`, where
//! the Vélu maps depend on the kernel only through its x-coordinates. A
//! kernel is therefore stored as its kernel polynomial over the base field,
//! and evaluated over whatever extension splits it.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::check::Check;
use crate::curve::{CurvePoint, VariableChange, WeierstrassCurve};
use crate::error::{Error, Result};
use crate::field::{distinct_roots, nth_power_class, Field, FiniteField, Fq, Polynomial};
use crate::torsion::{base_field, embed, lift_curve, lift_x, two_torsion_poly};

/// Seed for all sampling in this module unless the caller passes one.
pub const ISOGENY_SEED: u64 = 0x5e_ed0f_1509;

/// `f_n` with `psi_n = f_n` for odd `n` and `psi_n = psi_2 f_n` for even `n`,
/// where `psi_2^2 = 4x^3 + b2 x^2 + 2 b4 x + b6`.
pub fn division_polynomial<F: Field>(e: &WeierstrassCurve<F>, n: u32) -> Polynomial<F> {
    let one = e.discriminant().one_like();
    let [b2, b4, b6, b8] = e.b_invariants().clone();
    let c = |k: i64| one.int_like(k);
    let big_f = two_torsion_poly(e);
    let f_sq = big_f.mul(&big_f);
    let mut f: Vec<Polynomial<F>> = vec![
        Polynomial::zero(),
        Polynomial::constant(one.clone()),
        Polynomial::constant(one.clone()),
        Polynomial::new(vec![b8.clone(), c(3) * b6.clone(), c(3) * b4.clone(), b2.clone(), c(3)]),
        Polynomial::new(vec![
            b4.clone() * b8.clone() - b6.clone() * b6.clone(),
            b2.clone() * b8.clone() - b4.clone() * b6.clone(),
            c(10) * b8,
            c(10) * b6,
            c(5) * b4,
            b2,
            c(2),
        ]),
    ];
    for k in f.len() as u32..=n {
        let m = (k / 2) as usize;
        let next = if k % 2 == 1 {
            let (a, b) = (f[m + 2].mul(&f[m].mul(&f[m]).mul(&f[m])), f[m - 1].mul(&f[m + 1].mul(&f[m + 1]).mul(&f[m + 1])));
            if m.is_multiple_of(2) {
                f_sq.mul(&a).sub(&b)
            } else {
                a.sub(&f_sq.mul(&b))
            }
        } else {
            let t1 = f[m + 2].mul(&f[m - 1]).mul(&f[m - 1]);
            let t2 = f[m - 2].mul(&f[m + 1]).mul(&f[m + 1]);
            f[m].mul(&t1.sub(&t2))
        };
        f.push(next);
    }
    f.swap_remove(n as usize)
}

/// `#E(F_q)` by exhaustive count; the field must have at most `10^4` elements.
pub fn point_count(e: &WeierstrassCurve<Fq>) -> Result<u64> {
    let field = base_field(e);
    match field.order_u64() {
        Some(q) if q <= 10_000 => {}
        _ => return Err(Error::InvalidArgument("exhaustive point count needs q <= 10^4".into())),
    }
    Ok(1 + field.elements().map(|x| lift_x(e, &x).len() as u64).sum::<u64>())
}

/// A uniformly random affine point of `E(F)`.
pub fn random_point<R: Rng + ?Sized>(e: &WeierstrassCurve<Fq>, rng: &mut R) -> CurvePoint<Fq> {
    let field = base_field(e);
    loop {
        let pts = lift_x(e, &field.random(rng));
        if !pts.is_empty() {
            let i = rng.gen_range(0..pts.len());
            return pts[i].clone();
        }
    }
}

fn is_odd_prime(l: u32) -> bool {
    l > 2 && (2..l).take_while(|d| d * d <= l).all(|d| !l.is_multiple_of(d))
}

/// A rational point of exact order `l`: random points scaled by the cofactor
/// of the exhaustive group order. `None` when `l` does not divide `#E(F_q)`.
pub fn find_kernel_point(e: &WeierstrassCurve<Fq>, l: u32, seed: u64) -> Result<Option<CurvePoint<Fq>>> {
    let q = base_field(e).characteristic();
    if !is_odd_prime(l) || 12 % l == 0 || q as u32 == l {
        return Err(Error::InvalidArgument(format!("degree {l} must be an odd prime not dividing 12q")));
    }
    let n = point_count(e)?;
    if n % l as u64 != 0 {
        return Ok(None);
    }
    let mut cof = n;
    while cof % l as u64 == 0 {
        cof /= l as u64;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..256 {
        let mut p = e.mul(cof as i64, &random_point(e, &mut rng));
        if p.is_infinity() {
            continue;
        }
        loop {
            let next = e.mul(l as i64, &p);
            if next.is_infinity() {
                return Ok(Some(p));
            }
            p = next;
        }
    }
    Ok(None)
}

/// The Vélu map with kernel `{O} + {(x_Q, *)}`, evaluated over one field.
#[derive(Clone, Debug)]
pub struct VeluMap {
    pub domain: WeierstrassCurve<Fq>,
    pub codomain: WeierstrassCurve<Fq>,
    /// `(x_Q, v_Q, u_Q)` for one point of each pair `{Q, -Q}` of the kernel.
    terms: Vec<(Fq, Fq, Fq)>,
    degree: u32,
}

impl VeluMap {
    /// From the x-coordinates of the nonzero kernel points, one per `{Q, -Q}`.
    pub fn from_x(e: &WeierstrassCurve<Fq>, xs: &[Fq]) -> Result<Self> {
        if !e.is_y_squared_form() {
            return Err(Error::InvalidArgument("Vélu maps need a model y^2 = cubic".into()));
        }
        let cubic = two_torsion_poly(e).scale(&e.a4().int_like(4).inv().expect("odd characteristic"));
        let deriv = cubic.derivative();
        let mut terms = Vec::new();
        let mut degree = 1;
        let (mut v, mut w) = (e.a4().zero_like(), e.a4().zero_like());
        for x in xs {
            let fx = cubic.eval(x);
            let gx = deriv.eval(x);
            let (vq, uq) = if fx.is_zero() {
                degree += 1;
                (gx, fx.zero_like())
            } else {
                degree += 2;
                (gx.int_like(2) * gx, fx.int_like(4) * fx)
            };
            v = v + vq.clone();
            w = w + uq.clone() + x.clone() * vq.clone();
            terms.push((x.clone(), vq, uq));
        }
        let codomain = WeierstrassCurve::new(
            e.a1().clone(),
            e.a2().clone(),
            e.a3().clone(),
            e.a4().clone() - v.int_like(5) * v.clone(),
            e.a6().clone() - e.b2().clone() * v - w.int_like(7) * w,
        )?;
        Ok(Self { domain: e.clone(), codomain, terms, degree })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// `X = x + sum v/(x - xQ) + u/(x - xQ)^2`, `Y = y dX/dx`.
    pub fn eval(&self, p: &CurvePoint<Fq>) -> CurvePoint<Fq> {
        let CurvePoint::Affine(x, y) = p else { return CurvePoint::Infinity };
        let mut big_x = x.clone();
        let mut dx = x.one_like();
        for (xq, vq, uq) in &self.terms {
            let Some(inv) = (x.clone() - xq.clone()).inv() else { return CurvePoint::Infinity };
            let inv2 = inv.square();
            big_x = big_x + vq.clone() * inv.clone() + uq.clone() * inv2.clone();
            dx = dx - vq.clone() * inv2.clone() - uq.int_like(2) * uq.clone() * inv2 * inv;
        }
        CurvePoint::Affine(big_x, y.clone() * dx)
    }
}

/// An isogeny over the base field `F_q`, given by its kernel polynomial
/// `prod (x - x_Q)` over one point of each pair `{Q, -Q}` of nonzero kernel
/// points.
#[derive(Clone, Debug)]
pub struct IsogenyData {
    pub domain: WeierstrassCurve<Fq>,
    pub codomain: WeierstrassCurve<Fq>,
    pub degree: u32,
    pub kernel_poly: Polynomial<Fq>,
}

impl IsogenyData {
    /// The Vélu map over `target`, which must split the kernel polynomial.
    pub fn over(&self, target: &FiniteField) -> Result<VeluMap> {
        let e = lift_curve(&self.domain, target)?;
        let h = self.kernel_poly.map(|c| embed(c, target).expect("base field embeds"));
        let xs = distinct_roots(&h, target);
        if Some(xs.len()) != h.degree() {
            return Err(Error::InvalidArgument("kernel polynomial does not split over the target field".into()));
        }
        VeluMap::from_x(&e, &xs)
    }
}

fn descend(x: &Fq, base: &FiniteField) -> Option<Fq> {
    if base.degree() != 1 {
        return (x.field() == base).then(|| x.clone());
    }
    x.is_prime_field_element().then(|| base.from_u64(x.residue()))
}

fn descend_curve(e: &WeierstrassCurve<Fq>, base: &FiniteField) -> Result<WeierstrassCurve<Fq>> {
    let a = e.coefficients();
    let d: Option<Vec<Fq>> = a.iter().map(|c| descend(c, base)).collect();
    let d = d.ok_or_else(|| Error::InvalidArgument("curve is not defined over the base field".into()))?;
    WeierstrassCurve::from_array([d[0].clone(), d[1].clone(), d[2].clone(), d[3].clone(), d[4].clone()])
}

/// Vélu isogeny with kernel generated by the rational point `kernel`.
pub fn velu_isogeny(e: &WeierstrassCurve<Fq>, kernel: &CurvePoint<Fq>) -> Result<IsogenyData> {
    if !e.contains(kernel) || kernel.is_infinity() {
        return Err(Error::WrongOrder("kernel generator must be a nonzero point on the curve".into()));
    }
    let l = e.order_up_to(kernel, 10_000).ok_or_else(|| Error::WrongOrder("kernel point has no small order".into()))?;
    let xs: Vec<Fq> = (1..=l / 2).map(|i| e.mul(i as i64, kernel).x().expect("affine").clone()).collect();
    let map = VeluMap::from_x(e, &xs)?;
    let field = base_field(e);
    Ok(IsogenyData {
        domain: e.clone(),
        codomain: map.codomain,
        degree: l as u32,
        kernel_poly: Polynomial::from_roots(&xs, &field.one()),
    })
}

/// Every isogeny of prime degree `l` defined over the prime base field, one
/// per Galois-stable subgroup of order `l`, ordered by kernel polynomial.
///
/// A stable subgroup `<T>` has Frobenius acting by a scalar, so `x(T)` lies
/// in `F_{q^((l-1)/2)}` and `T` itself in `F_{q^(l-1)}`.
pub fn rational_isogenies(e: &WeierstrassCurve<Fq>, l: u32) -> Result<Vec<IsogenyData>> {
    let base = base_field(e);
    if base.degree() != 1 {
        return Err(Error::InvalidArgument("isogeny search needs a prime base field".into()));
    }
    if !e.is_y_squared_form() {
        return Err(Error::InvalidArgument("isogeny search needs a model y^2 = cubic".into()));
    }
    let p = base.characteristic();
    let mut out = Vec::new();
    let mut push = |curve: &WeierstrassCurve<Fq>, xs: Vec<Fq>| -> Result<()> {
        let h = Polynomial::from_roots(&xs, &curve.discriminant().one_like());
        let coeffs: Option<Vec<Fq>> = h.coeffs().iter().map(|c| descend(c, &base)).collect();
        if let Some(c) = coeffs {
            let map = VeluMap::from_x(curve, &xs)?;
            out.push(IsogenyData {
                domain: e.clone(),
                codomain: descend_curve(&map.codomain, &base)?,
                degree: l,
                kernel_poly: Polynomial::new(c),
            });
        }
        Ok(())
    };
    if l == 2 {
        for x in distinct_roots(&two_torsion_poly(e), &base) {
            push(e, vec![x])?;
        }
    } else {
        if !is_odd_prime(l) || p as u32 == l {
            return Err(Error::InvalidArgument(format!("unsupported isogeny degree {l}")));
        }
        let xfield = FiniteField::extension(p, ((l - 1) / 2) as usize)?;
        let yfield = FiniteField::extension(p, (l - 1) as usize)?;
        let ey = lift_curve(e, &yfield)?;
        let psi = division_polynomial(&lift_curve(e, &xfield)?, l);
        let mut seen: Vec<Fq> = Vec::new();
        for x0 in distinct_roots(&psi, &xfield) {
            let xy = embed(&x0, &yfield)?;
            if seen.contains(&xy) {
                continue;
            }
            let Some(t) = lift_x(&ey, &xy).into_iter().next() else { continue };
            let xs: Vec<Fq> = (1..=l / 2).map(|i| ey.mul(i as i64, &t).x().expect("affine").clone()).collect();
            seen.extend(xs.iter().cloned());
            push(&ey, xs)?;
        }
    }
    out.sort_by(|a, b| a.kernel_poly.coeffs().cmp(b.kernel_poly.coeffs()));
    Ok(out)
}

/// Whether `Delta_E / Delta_E'^d` is a 12th power in the common base field.
pub fn class_equality(e: &WeierstrassCurve<Fq>, e2: &WeierstrassCurve<Fq>, d: u64) -> Result<bool> {
    let ratio = e.discriminant().clone() * e2.discriminant().pow(d).checked_inv()?;
    nth_power_class(&ratio, 12)
}

/// Isomorphisms `(x, y) -> (u^2 x, u^3 y)` from `from` onto `to`, both short.
fn short_isomorphisms(from: &WeierstrassCurve<Fq>, to: &WeierstrassCurve<Fq>) -> Vec<VariableChange<Fq>> {
    let field = base_field(from);
    let one = field.one();
    // x = u^2 X gives a4(to) = a4(from) / u^4 and a6(to) = a6(from) / u^6.
    let target = |k: usize, a: &Fq, b: &Fq| -> Polynomial<Fq> {
        let mut c = vec![field.zero(); k + 1];
        c[0] = -a.clone();
        c[k] = b.clone();
        Polynomial::new(c)
    };
    let poly = if !from.a4().is_zero() && !to.a4().is_zero() {
        target(4, from.a4(), to.a4())
    } else {
        target(6, from.a6(), to.a6())
    };
    if poly.is_zero() {
        return Vec::new();
    }
    distinct_roots(&poly, &field)
        .into_iter()
        .filter_map(|u| VariableChange::new(u, one.zero_like(), one.zero_like(), one.zero_like()).ok())
        .filter(|ch| ch.apply(from).is_ok_and(|c| c == *to))
        .collect()
}

/// Checks that a dual `phi^ : E' -> E` exists with `phi^ phi = [l]` on
/// `samples` random points, where `phi^` is built by Vélu from the image of
/// `E[l]` and composed with an isomorphism back onto `E`.
pub fn dual_check(iso: &IsogenyData, samples: usize, seed: u64) -> Result<Check> {
    let l = iso.degree;
    let base = base_field(&iso.domain);
    if !iso.domain.a1().is_zero() || !iso.domain.a2().is_zero() || !iso.domain.a3().is_zero() {
        return Err(Error::InvalidArgument("dual check needs a short model".into()));
    }
    let psi = division_polynomial(&iso.domain, l);
    let want = (l as usize * l as usize - 1) / 2;
    let mut found = None;
    for k in 1..=crate::field::MAX_DEGREE / 2 {
        let w = FiniteField::extension(base.characteristic(), base.degree() * k)?;
        let roots = distinct_roots(&psi.map(|c| embed(c, &w).expect("embeds")), &w);
        if roots.len() == want {
            let wide = FiniteField::extension(base.characteristic(), base.degree() * 2 * k)?;
            found = Some((wide, roots));
            break;
        }
    }
    let Some((wide, roots)) = found else {
        return Ok(Check::new("dual_isogeny", false, json!({ "degree": l, "reason": "l-torsion does not split over degree <= 8" })));
    };
    let phi = iso.over(&wide)?;
    let roots: Vec<Fq> = roots.iter().map(|x| embed(x, &wide)).collect::<Result<_>>()?;
    let kernel_x: Vec<Fq> = iso.kernel_poly.map(|c| embed(c, &wide).expect("embeds")).coeffs().to_vec();
    let h = Polynomial::new(kernel_x);
    let mut images: Vec<Fq> = Vec::new();
    for x in &roots {
        if h.eval(x).is_zero() {
            continue;
        }
        if let Some(ix) = phi.eval(&CurvePoint::Affine(x.clone(), wide.zero())).x() {
            if !images.contains(ix) {
                images.push(ix.clone());
            }
        }
    }
    let psi_hat = VeluMap::from_x(&phi.codomain, &images)?;
    let e = lift_curve(&iso.domain, &wide)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pts: Vec<CurvePoint<Fq>> = (0..samples).map(|_| random_point(&e, &mut rng)).collect();
    let isos = short_isomorphisms(&psi_hat.codomain, &e);
    let ok = isos.iter().any(|ch| {
        pts.iter().all(|r| ch.forward(&psi_hat.eval(&phi.eval(r))) == e.mul(l as i64, r))
    });
    Ok(Check::new(
        "dual_isogeny",
        ok && psi_hat.degree() == l,
        json!({ "degree": l, "field_degree": wide.degree(), "samples": samples, "isomorphisms": isos.len() }),
    ))
}

/// For every degree-`l` isogeny out of `e` over its prime field, whether the
/// discriminant class relation holds; also checks that each codomain is a
/// curve and that kernel points map to `O`.
pub fn coates_check(e: &WeierstrassCurve<Fq>, l: u32) -> Result<Vec<Check>> {
    let isos = rational_isogenies(e, l)?;
    let mut out = Vec::new();
    for (i, iso) in isos.iter().enumerate() {
        let holds = class_equality(&iso.domain, &iso.codomain, l as u64)?;
        out.push(Check::new(
            format!("discriminant_class_degree_{l}"),
            holds,
            json!({
                "isogeny": i,
                "codomain": iso.codomain.coefficients().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                "kernel_poly": iso.kernel_poly.to_string(),
            }),
        ));
    }
    Ok(out)
}

/// `Delta_E = Delta_E''^(l1 l2)` along every two-step chain `E -> E' -> E''`.
pub fn chain_check(e: &WeierstrassCurve<Fq>, l1: u32, l2: u32) -> Result<Option<Check>> {
    let mut chains = 0;
    let mut ok = true;
    for first in rational_isogenies(e, l1)? {
        for second in rational_isogenies(&first.codomain, l2)? {
            chains += 1;
            ok &= class_equality(e, &second.codomain, (l1 * l2) as u64)?;
        }
    }
    Ok((chains > 0).then(|| Check::new(format!("discriminant_class_chain_{l1}_{l2}"), ok, json!({ "chains": chains }))))
}

/// `d^2 = 1 mod 12` for `d` prime to 12, the arithmetic fact behind the relation.
pub fn square_is_one_mod_12(d: u64) -> bool {
    d * d % 12 == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> FiniteField {
        FiniteField::prime(p).unwrap()
    }

    fn short(p: u64, a: i64, b: i64) -> WeierstrassCurve<Fq> {
        let k = f(p);
        WeierstrassCurve::short(k.from_i64(a), k.from_i64(b)).unwrap()
    }

    #[test]
    fn division_polynomial_roots_are_torsion_x() {
        let e = short(13, 2, 3);
        let psi3 = division_polynomial(&e, 3);
        assert_eq!(psi3.degree(), Some(4));
        let quartic = crate::torsion::three_torsion_quartic(&e);
        assert_eq!(psi3.monic(), quartic.monic());
        for l in [5u32, 7] {
            let psi = division_polynomial(&e, l);
            assert_eq!(psi.degree(), Some(((l * l - 1) / 2) as usize));
            assert_eq!(psi.lead().unwrap().residue(), l as u64 % 13);
        }
    }

    #[test]
    fn order_five_point_from_fifteen_points() {
        let k = f(13);
        let mut hit = false;
        for a in 0..13 {
            for b in 0..13 {
                let Ok(e) = WeierstrassCurve::short(k.from_u64(a), k.from_u64(b)) else { continue };
                let n = point_count(&e).unwrap();
                let found = find_kernel_point(&e, 5, ISOGENY_SEED).unwrap();
                assert_eq!(found.is_some(), n.is_multiple_of(5));
                if let Some(p) = found {
                    assert!(!p.is_infinity() && e.mul(5, &p).is_infinity());
                    hit |= n == 15;
                }
            }
        }
        assert!(hit);
    }

    #[test]
    fn velu_is_a_homomorphism_killing_the_kernel() {
        let k = f(13);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut tried = 0;
        for a in 0..13 {
            for b in 0..13 {
                let Ok(e) = WeierstrassCurve::short(k.from_u64(a), k.from_u64(b)) else { continue };
                let Some(p) = find_kernel_point(&e, 5, 1).unwrap() else { continue };
                let iso = velu_isogeny(&e, &p).unwrap();
                let map = iso.over(&k).unwrap();
                assert_eq!(map.degree(), 5);
                for i in 0..5 {
                    assert!(map.eval(&e.mul(i, &p)).is_infinity());
                }
                for _ in 0..10 {
                    let (r, s) = (random_point(&e, &mut rng), random_point(&e, &mut rng));
                    let (fr, fs) = (map.eval(&r), map.eval(&s));
                    assert!(iso.codomain.contains(&fr));
                    assert_eq!(map.eval(&e.add(&r, &s)), iso.codomain.add(&fr, &fs));
                }
                assert!(dual_check(&iso, 20, 9).unwrap().passed);
                tried += 1;
            }
        }
        assert!(tried > 0);
    }

    #[test]
    fn rational_isogenies_include_point_kernels() {
        let k = f(13);
        for a in 0..13 {
            for b in 0..13 {
                let Ok(e) = WeierstrassCurve::short(k.from_u64(a), k.from_u64(b)) else { continue };
                let isos = rational_isogenies(&e, 5).unwrap();
                if let Some(p) = find_kernel_point(&e, 5, 1).unwrap() {
                    let h = velu_isogeny(&e, &p).unwrap().kernel_poly;
                    assert!(isos.iter().any(|i| i.kernel_poly == h));
                }
                for c in coates_check(&e, 5).unwrap() {
                    assert!(c.passed, "{c:?}");
                }
            }
        }
    }

    #[test]
    fn isogeny_counts_match_genus_zero_modular_curves() {
        // X_0(l) has genus 0 and two cusps for l in {2, 3, 5, 7}, so summing
        // the rational l-isogenies over all (a, b) gives (p - 1)(p + 1 - 2).
        let k = f(13);
        let mut totals = [0usize; 4];
        for a in 0..13 {
            for b in 0..13 {
                let Ok(e) = WeierstrassCurve::short(k.from_u64(a), k.from_u64(b)) else { continue };
                for (i, l) in [2, 3, 5, 7].into_iter().enumerate() {
                    totals[i] += rational_isogenies(&e, l).unwrap().len();
                }
            }
        }
        assert_eq!(totals, [144; 4]);
    }

    #[test]
    fn identity_and_squares_mod_12() {
        let e = short(13, 2, 3);
        assert!(class_equality(&e, &e, 1).unwrap());
        for d in [5, 7, 11, 13] {
            assert!(square_is_one_mod_12(d));
        }
        assert!(!square_is_one_mod_12(2) && !square_is_one_mod_12(3));
    }
}
