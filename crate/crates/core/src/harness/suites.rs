//! Per-curve property checks behind each suite.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::check::Check;
use crate::curve::{CurvePoint, VariableChange, WeierstrassCurve};
use crate::disc_roots::{transformation_check, w12, w2_tilde, w3, w3_formula, w4, w4_tilde, w_n};
use crate::error::{Error, Result};
use crate::field::{distinct_roots, Field, Fq, Polynomial};
use crate::isogeny::{chain_check, class_equality, dual_check, rational_isogenies, ISOGENY_SEED};
use crate::pairing::{valid_signs, weil_pairing, PairingCalibration};
use crate::torsion::{base_field, frobenius_matrix, frobenius_point, torsion_basis, PointId, TorsionModule};
use crate::torsor::{
    gh_action, h_canonicalize, h_orbit, involution_sigma, s4_elements, t3_elements, t4_elements, torsor_elements,
    GhElement, RankTwoModule, Sym3, T3Element, TorsorElement,
};

fn strings(v: &[Fq]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

/// A model `y^2 = cubic` of the same curve (the curve itself when it already is one).
pub fn y_squared_model(e: &WeierstrassCurve<Fq>) -> Result<WeierstrassCurve<Fq>> {
    if e.is_y_squared_form() {
        Ok(e.clone())
    } else {
        Ok(e.complete_square()?.1)
    }
}

/// The module of `E[n]` over its minimal field; `n = 4` uses a `y^2 = cubic` model.
pub fn module(e: &WeierstrassCurve<Fq>, n: u32) -> Result<TorsionModule> {
    let model = if n == 4 { y_squared_model(e)? } else { e.clone() };
    TorsionModule::new(&torsion_basis(&model, n)?)
}

/// The three `w_3` values multiply out to `T^3 - Delta` and are distinct cube roots.
pub fn cube_root_checks(e: &WeierstrassCurve<Fq>) -> Result<Vec<Check>> {
    let m = module(e, 3)?;
    let field = base_field(m.curve());
    let delta = m.curve().discriminant().clone();
    let ts = t3_elements(&m)?;
    let vals: Vec<Fq> = ts.iter().map(|t| w3(&m, t).map(|r| r.value)).collect::<Result<_>>()?;
    let prod = Polynomial::from_roots(&vals, &field.one());
    let expected = Polynomial::new(vec![-delta.clone(), field.zero(), field.zero(), field.one()]);
    let distinct: BTreeSet<&Fq> = vals.iter().collect();
    let symmetric = ts.iter().all(|t| {
        let [[a, b], [c, d]] = t.parts();
        let x = |id: &PointId| m.xy(*id).0.clone();
        let b4 = m.curve().b4();
        w3_formula(b4, [&x(a), &x(b)], [&x(c), &x(d)]) == w3_formula(b4, [&x(c), &x(d)], [&x(a), &x(b)])
    });
    Ok(vec![
        Check::new(
            "cube_root_polynomial",
            vals.len() == 3 && prod == expected,
            json!({ "field_degree": field.degree(), "values": strings(&vals), "delta": delta.to_string() }),
        ),
        Check::new(
            "cube_roots_distinct",
            distinct.len() == 3 && vals.iter().all(|v| v.pow(3) == delta),
            json!({ "distinct": distinct.len() }),
        ),
        Check::new("w3_symmetric_in_parts", symmetric, json!({})),
    ])
}

/// Fourth-root properties of `w~_4` and `w_4` on all of `S_4(E[4])`.
/// H-orbit constancy is swept over all 96 representatives of every orbit
/// when `orbits` is set.
pub fn fourth_root_checks(e: &WeierstrassCurve<Fq>, orbits: bool) -> Result<Vec<Check>> {
    let m = module(e, 4)?;
    let c = m.curve();
    let field = base_field(c);
    let delta = c.discriminant().clone();
    let s4 = s4_elements(&m)?;
    let value = |t: &[PointId; 3]| w4_tilde(&m, t).map(|r| r.value);
    let mut out = Vec::new();

    let (mut fourth, mut square, mut neg, mut shift, mut sign) = (true, true, true, true, true);
    for t in &s4 {
        let v = value(t)?;
        fourth &= v.pow(4) == delta;
        let twice: Vec<Fq> = t.iter().map(|id| c.double(m.point(*id)).x().expect("order 2").clone()).collect();
        square &= v.square() == w2_tilde(&twice[0], &twice[1], &twice[2]);
        let [p, q, r] = *t;
        neg &= value(&[m.neg(&p), q, r])? == -v.clone();
        let p_shift = m.add(&p, &m.double(&q));
        shift &= value(&[p_shift, q, r])? == v;
        for sigma in Sym3::ALL {
            let moved = value(&involution_sigma(&m, sigma, t))?;
            sign &= moved == if sigma.is_even() { -v.clone() } else { v.clone() };
        }
    }
    let n = json!({ "triples": s4.len(), "field_degree": field.degree() });
    out.push(Check::new("w4_fourth_power_is_delta", fourth && s4.len() == 384, n.clone()));
    out.push(Check::new("squaring_matches_w2", square, n.clone()));
    out.push(Check::new("negating_p_negates", neg, json!({})));
    out.push(Check::new("shifting_p_by_2q_preserves", shift, json!({})));
    out.push(Check::new("sigma_sign_law", sign, json!({ "sigmas": 6 })));

    let t4 = t4_elements(&m)?;
    if orbits {
        let mut ok = true;
        let mut covered = BTreeSet::new();
        for t in &t4 {
            let orbit = h_orbit(&m, t.triple());
            let v = value(t.triple())?;
            ok &= orbit.len() == 96;
            for o in orbit {
                ok &= value(&o)? == v;
                covered.insert(o);
            }
        }
        out.push(Check::new("h_orbit_constancy", ok && covered.len() == 384, json!({ "representatives": covered.len() })));
    }

    let vals: Vec<Fq> = t4.iter().map(|t| w4(&m, t).map(|r| r.value)).collect::<Result<_>>()?;
    let mut sorted = vals.clone();
    sorted.sort();
    let mut roots = distinct_roots(
        &Polynomial::new(vec![-delta.clone(), field.zero(), field.zero(), field.zero(), field.one()]),
        &field,
    );
    roots.sort();
    out.push(Check::new("w4_bijective_onto_fourth_roots", sorted == roots && roots.len() == 4, json!({ "values": strings(&vals) })));

    let negate = GhElement { odd: false, negate: true };
    let mut ok = true;
    for t in &t4 {
        ok &= w4(&m, &gh_action(&m, negate, t)?)?.value == -w4(&m, t)?.value;
    }
    out.push(Check::new("w4_negation_compatible", ok, json!({})));
    Ok(out)
}

/// Pairing sanity on a module's basis: alternating, antisymmetric, bilinear,
/// nondegenerate.
pub fn pairing_checks(m: &TorsionModule, cal: PairingCalibration) -> Result<Check> {
    let n = m.order();
    let c = m.curve();
    let (p, q) = (m.basis_point(0).clone(), m.basis_point(1).clone());
    let e = |a: &CurvePoint<Fq>, b: &CurvePoint<Fq>| weil_pairing(c, a, b, n, cal).map(|r| r.value);
    let epq = e(&p, &q)?;
    let alternating = e(&p, &p)?.is_one() && e(&q, &q)?.is_one();
    let antisymmetric = e(&q, &p)? * epq.clone() == epq.one_like();
    let pq = c.add(&p, &q);
    let bilinear = e(&pq, &q)? == epq && e(&c.double(&p), &q)? == epq.square() && e(&p, &pq)? == epq;
    let order = (1..=n).find(|k| epq.pow(*k as u64).is_one());
    Ok(Check::new(
        format!("pairing_properties_n{n}"),
        alternating && antisymmetric && bilinear && order == Some(n),
        json!({ "order": order, "value": epq.to_string() }),
    ))
}

/// `r^12 = Delta` for every `r = w_3(t3) w_4(t4)^3 / Delta`.
pub fn twelfth_root_check(m3: &TorsionModule, m4: &TorsionModule) -> Result<Check> {
    let mut ok = true;
    let mut count = 0;
    for t3 in t3_elements(m3)? {
        for t4 in t4_elements(m4)? {
            let r = w12(m3, &t3, m4, &t4)?;
            ok &= r.is_root();
            count += 1;
        }
    }
    Ok(Check::new("w12_twelfth_roots", ok && count == 12, json!({ "pairs": count })))
}

/// `w_n(Frob t) = Frob(w_n(t))`, with `Frob t` computed both from points and
/// from the Frobenius matrix, and `e(FP, FQ) = e(P, Q)^det = e(P, Q)^p`.
pub fn frobenius_checks(m: &TorsionModule) -> Result<Vec<Check>> {
    let n = m.order();
    let p = base_field(m.curve()).characteristic();
    let frob = frobenius_matrix(m)?;
    let fid = |id: &PointId| m.id_of(&frobenius_point(m.point(*id))).ok_or(Error::NotOnCurve);
    let mut agree = true;
    let mut equivariant = true;
    for t in torsor_elements(m)? {
        let by_points = match &t {
            TorsorElement::T3(t3) => {
                let [[a, b], [c, d]] = t3.parts();
                TorsorElement::T3(T3Element::from_parts(m, [&fid(a)?, &fid(b)?], [&fid(c)?, &fid(d)?])?)
            }
            TorsorElement::T4(t4) => {
                let [a, b, c] = t4.triple();
                TorsorElement::T4(h_canonicalize(m, &[fid(a)?, fid(b)?, fid(c)?])?)
            }
        };
        agree &= by_points == t.apply_linear(m, &frob)?;
        equivariant &= w_n(m, &by_points)?.value == w_n(m, &t)?.value.frobenius();
    }
    let signs = valid_signs(m)?;
    let cal = PairingCalibration { sign: signs.first().copied().unwrap_or(1) };
    let (bp, bq) = (m.basis_point(0), m.basis_point(1));
    let e = |a: &CurvePoint<Fq>, b: &CurvePoint<Fq>| weil_pairing(m.curve(), a, b, n, cal).map(|r| r.value);
    let epq = e(bp, bq)?;
    let efrob = e(&frobenius_point(bp), &frobenius_point(bq))?;
    let det = frob.det() as u64;
    let pairing_ok = det == p % n as u64 && efrob == epq.pow(det) && efrob == epq.pow(p) && efrob == epq.frobenius();
    let degree = base_field(m.curve()).degree();
    Ok(vec![
        Check::new(format!("frobenius_torsor_action_n{n}"), agree, json!({ "field_degree": degree })),
        Check::new(format!("frobenius_equivariance_w{n}"), equivariant, json!({ "field_degree": degree })),
        Check::new(
            format!("frobenius_pairing_det_n{n}"),
            pairing_ok,
            json!({ "det": det, "matrix": frob.entries(), "field_degree": degree }),
        ),
    ])
}

/// A random change of variables over the curve's field: `(u, r, 0, 0)` when
/// `u_r_only`, otherwise `(u, r, s, t)`.
pub fn random_change<R: Rng + ?Sized>(e: &WeierstrassCurve<Fq>, u_r_only: bool, rng: &mut R) -> VariableChange<Fq> {
    let f = base_field(e);
    loop {
        let u = f.random(rng);
        if u.is_zero() {
            continue;
        }
        let (s, t) = if u_r_only { (f.zero(), f.zero()) } else { (f.random(rng), f.random(rng)) };
        if let Ok(ch) = VariableChange::new(u, f.random(rng), s, t) {
            return ch;
        }
    }
}

/// `transformation_check` on one random change; the `(u, r)` changes also
/// exercise `w~_4`.
pub fn transform_checks<R: Rng + ?Sized>(e: &WeierstrassCurve<Fq>, u_r_only: bool, rng: &mut R) -> Result<Vec<Check>> {
    let ch = random_change(e, u_r_only, rng);
    let mut checks = transformation_check(e, &ch)?;
    let label = json!([ch.u.to_string(), ch.r.to_string(), ch.s.to_string(), ch.t.to_string()]);
    for c in checks.iter_mut() {
        if let Some(obj) = c.detail.as_object_mut() {
            obj.insert("change".into(), label.clone());
        }
    }
    if u_r_only && !checks.iter().any(|c| c.name == "w4_u3") {
        checks.push(Check::new("w4_u3", false, json!({ "reason": "w4 covariance was not exercised" })));
    }
    Ok(checks)
}

/// Outcome of the isogeny sweep on one curve.
#[derive(Clone, Debug, Default)]
pub struct IsogenySweep {
    pub checks: Vec<Check>,
    /// `(degree, isogenies, class relation failures)` for each degree searched.
    pub counts: Vec<(u32, usize, usize)>,
}

/// Class relation `Delta_E = Delta_E'^l` mod 12th powers for every rational
/// `l`-isogeny, for each `l` in `degrees` (failures for `l` in {2, 3} are
/// expected and only counted).
pub fn isogeny_sweep(e: &WeierstrassCurve<Fq>, degrees: &[u32]) -> Result<IsogenySweep> {
    let mut out = IsogenySweep::default();
    for &l in degrees {
        let isos = rational_isogenies(e, l)?;
        let mut fails = 0;
        for iso in &isos {
            if !class_equality(&iso.domain, &iso.codomain, l as u64)? {
                fails += 1;
            }
        }
        out.counts.push((l, isos.len(), fails));
        if !isos.is_empty() && 12 % l != 0 {
            out.checks.push(Check::new(
                format!("discriminant_class_degree_{l}"),
                fails == 0,
                json!({ "isogenies": isos.len(), "codomains": isos.iter().map(|i| crate::curve::CurveSpec::from_curve(&i.codomain).map(|s| s.to_string()).unwrap_or_default()).collect::<Vec<_>>() }),
            ));
        }
    }
    Ok(out)
}

/// The dual-isogeny check on the first `limit` isogenies of degree `l`.
pub fn dual_checks(e: &WeierstrassCurve<Fq>, l: u32, limit: usize) -> Result<Vec<Check>> {
    rational_isogenies(e, l)?.iter().take(limit).map(|iso| dual_check(iso, 20, ISOGENY_SEED)).collect()
}

/// Class relation through two-step chains of degrees `(l1, l2)`.
pub fn chain_checks(e: &WeierstrassCurve<Fq>, l1: u32, l2: u32) -> Result<Option<Check>> {
    chain_check(e, l1, l2)
}

/// Seeded generator for a suite.
pub fn suite_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
