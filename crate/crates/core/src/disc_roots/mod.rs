//! The maps `w_2`, `w_3`, `w~_4`, `w_4` and `w_12` from torsion data to
//! roots of the discriminant.

use serde_json::json;

use crate::check::Check;
use crate::curve::{CurvePoint, VariableChange, WeierstrassCurve};
use crate::error::{Error, Result};
use crate::field::{Field, FieldEmbedding, FiniteField, Fq};
use crate::torsion::{base_field, lift_change, lift_curve, torsion_basis, PointId, TorsionBasis, TorsionModule};
use crate::torsor::{torsor_elements, RankTwoModule, T3Element, T4Element, TorsorElement};

/// An `n`-th root of the discriminant of `model`.
#[derive(Clone, Debug, PartialEq)]
pub struct RootValue {
    pub value: Fq,
    pub n: u32,
    pub model: WeierstrassCurve<Fq>,
}

impl RootValue {
    /// `value^n = Delta(model)`.
    pub fn is_root(&self) -> bool {
        self.value.pow(self.n as u64) == *self.model.discriminant()
    }
}

/// `b4 - 3 (x1 x2 + x3 x4)` for the partition `{{x1, x2}, {x3, x4}}`.
pub fn w3_formula<F: Field>(b4: &F, x: [&F; 2], y: [&F; 2]) -> F {
    b4.clone() - b4.int_like(3) * (x[0].clone() * x[1].clone() + y[0].clone() * y[1].clone())
}

/// `4 (xA - xB)(xB - xC)(xC - xA)`.
pub fn w2_tilde<F: Field>(xa: &F, xb: &F, xc: &F) -> F {
    xa.int_like(4) * (xa.clone() - xb.clone()) * (xb.clone() - xc.clone()) * (xc.clone() - xa.clone())
}

fn slope<F: Field>(p: &CurvePoint<F>, p2: &CurvePoint<F>) -> Result<F> {
    match (p, p2) {
        (CurvePoint::Affine(x1, y1), CurvePoint::Affine(x2, y2)) => {
            let dx = (x1.clone() - x2.clone()).inv().ok_or(Error::DivisionByZero)?;
            Ok((y1.clone() - y2.clone()) * dx)
        }
        _ => Err(Error::WrongOrder("slope through the identity".into())),
    }
}

/// `2 * prod` of the chord slopes through `(P, P+2Q)`, `(Q, Q+2R)`,
/// `(R, R+2P)`, on a model `y^2 = x^3 + a2 x^2 + a4 x + a6`.
pub fn w4_tilde_points<F: Field>(e: &WeierstrassCurve<F>, t: &[CurvePoint<F>; 3]) -> Result<F> {
    if !e.is_y_squared_form() {
        return Err(Error::InvalidArgument("w4 needs a model y^2 = cubic".into()));
    }
    let [p, q, r] = t;
    let shifted = |a: &CurvePoint<F>, b: &CurvePoint<F>| e.add(a, &e.double(b));
    let s = slope(p, &shifted(p, q))? * slope(q, &shifted(q, r))? * slope(r, &shifted(r, p))?;
    Ok(s.int_like(2) * s)
}

fn x_of(m: &TorsionModule, id: &PointId) -> Fq {
    m.xy(*id).0.clone()
}

/// `w_3` of a partition of `P(E[3])`.
pub fn w3(m: &TorsionModule, t: &T3Element<PointId>) -> Result<RootValue> {
    if m.order() != 3 {
        return Err(Error::UnsupportedLevel(m.order()));
    }
    let [[a, b], [c, d]] = t.parts();
    let value = w3_formula(m.curve().b4(), [&x_of(m, a), &x_of(m, b)], [&x_of(m, c), &x_of(m, d)]);
    Ok(RootValue { value, n: 3, model: m.curve().clone() })
}

/// `w~_2` of an ordering `(A, B, C)` of `E[2] - O`.
pub fn w2(e: &WeierstrassCurve<Fq>, t: &[CurvePoint<Fq>; 3]) -> Result<RootValue> {
    if !e.is_y_squared_form() {
        return Err(Error::InvalidArgument("w2 needs a model y^2 = cubic".into()));
    }
    let mut xs = Vec::new();
    for p in t {
        if p.is_infinity() || !e.contains(p) || !e.double(p).is_infinity() {
            return Err(Error::WrongOrder(format!("{p:?} is not a point of order 2")));
        }
        xs.push(p.x().expect("affine").clone());
    }
    if xs[0] == xs[1] || xs[1] == xs[2] || xs[0] == xs[2] {
        return Err(Error::InvalidArgument("repeated 2-torsion point".into()));
    }
    Ok(RootValue { value: w2_tilde(&xs[0], &xs[1], &xs[2]), n: 2, model: e.clone() })
}

/// `w~_4(P, Q, R)` for a triple of `S_4(E[4])`.
pub fn w4_tilde(m: &TorsionModule, t: &[PointId; 3]) -> Result<RootValue> {
    if !crate::torsor::in_s4(m, t) {
        return Err(Error::InvalidArgument(format!("{t:?} is not in S_4(E[4])")));
    }
    let pts = t.map(|id| m.point(id).clone());
    let value = w4_tilde_points(m.curve(), &pts)?;
    Ok(RootValue { value, n: 4, model: m.curve().clone() })
}

/// `w_4` of an `H`-orbit, evaluated on its canonical representative.
pub fn w4(m: &TorsionModule, t: &T4Element<PointId>) -> Result<RootValue> {
    w4_tilde(m, t.triple())
}

pub fn w_n(m: &TorsionModule, t: &TorsorElement<PointId>) -> Result<RootValue> {
    match t {
        TorsorElement::T3(t) => w3(m, t),
        TorsorElement::T4(t) => w4(m, t),
    }
}

/// `w_3(t3) * w_4(t4)^3 / Delta`, a twelfth root of `Delta`. `m4` must be
/// built on the completed-square model of the curve of `m3`; both values are
/// carried into the compositum of their fields.
pub fn w12(m3: &TorsionModule, t3: &T3Element<PointId>, m4: &TorsionModule, t4: &T4Element<PointId>) -> Result<RootValue> {
    let (r3, r4) = (w3(m3, t3)?, w4(m4, t4)?);
    if r3.model.discriminant().frobenius() != *r3.model.discriminant() {
        return Err(Error::InvalidArgument("w12 needs a curve over the prime field".into()));
    }
    let (f3, f4) = (base_field(m3.curve()), base_field(m4.curve()));
    let k = num_integer::lcm(f3.degree(), f4.degree());
    let target = FiniteField::extension(f3.characteristic(), k)?;
    let v3 = FieldEmbedding::new(&f3, &target)?.apply(&r3.value);
    let v4 = FieldEmbedding::new(&f4, &target)?.apply(&r4.value);
    let model = lift_curve(&r3.model, &target)?;
    let disc = model.discriminant().clone();
    if lift_curve(&r4.model, &target)?.discriminant() != &disc {
        return Err(Error::InvalidArgument("the two models have different discriminants".into()));
    }
    let value = v3 * v4.pow(3) / disc;
    Ok(RootValue { value, n: 12, model })
}

/// Move a point id between two modules over isomorphic torsion, by coordinates.
pub fn transport_id(from: &TorsionModule, to: &TorsionModule, id: &PointId) -> PointId {
    let (a, b) = from.coords(id);
    to.from_coords(a, b)
}

/// Move a torsor element to another module with corresponding bases.
pub fn transport(
    from: &TorsionModule,
    to: &TorsionModule,
    t: &TorsorElement<PointId>,
) -> Result<TorsorElement<PointId>> {
    let mv = |id: &PointId| transport_id(from, to, id);
    Ok(match t {
        TorsorElement::T3(t) => {
            let [[a, b], [c, d]] = t.parts();
            TorsorElement::T3(T3Element::from_parts(to, [&mv(a), &mv(b)], [&mv(c), &mv(d)])?)
        }
        TorsorElement::T4(t) => TorsorElement::T4(crate::torsor::h_canonicalize(to, &t.triple().map(|i| mv(&i)))?),
    })
}

/// The module for the transported basis on the changed model.
fn changed_module(b: &TorsionBasis, ch: &VariableChange<Fq>) -> Result<(TorsionModule, TorsionModule)> {
    let m = TorsionModule::new(b)?;
    let e2 = ch.apply(&b.curve)?;
    let b2 = TorsionBasis { n: b.n, curve: e2, p: ch.forward(&b.p), q: ch.forward(&b.q) };
    Ok((m, TorsionModule::new(&b2)?))
}

/// Covariance of the discriminant data and of `w_3`, `w~_4` under a change
/// of variables: `u^12 Delta' = Delta`, `u^2 b2' = b2 + 12 r`,
/// `u^4 b4' = b4 + r b2 + 6 r^2`, `w_3 = u^4 w_3'`, and, when both models
/// have the form `y^2 = cubic` (so `s = t = 0`), `w~_4 = u^3 w~_4'` on all
/// of `S_4(E[4])`.
pub fn transformation_check(e: &WeierstrassCurve<Fq>, ch: &VariableChange<Fq>) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let e2 = ch.apply(e)?;
    let VariableChange { u, r, .. } = ch;
    let k = |n| u.int_like(n);
    out.push(Check::new("delta_u12", u.pow(12) * e2.discriminant().clone() == *e.discriminant(), json!({})));
    out.push(Check::new(
        "b2_shift",
        u.pow(2) * e2.b2().clone() == e.b2().clone() + k(12) * r.clone(),
        json!({}),
    ));
    out.push(Check::new(
        "b4_shift",
        u.pow(4) * e2.b4().clone() == e.b4().clone() + r.clone() * e.b2().clone() + k(6) * r.square(),
        json!({}),
    ));

    let b3 = torsion_basis(e, 3)?;
    let ch3 = lift_change(ch, &b3.field())?;
    let (m, m2) = changed_module(&b3, &ch3)?;
    let mut ok = true;
    for t in torsor_elements(&m)? {
        let lhs = w_n(&m, &t)?.value;
        let rhs = w_n(&m2, &transport(&m, &m2, &t)?)?.value;
        ok &= lhs == ch3.u.pow(4) * rhs;
    }
    out.push(Check::new("w3_u4", ok, json!({ "field_degree": b3.field().degree() })));

    if e.is_y_squared_form() && e2.is_y_squared_form() {
        let b4 = torsion_basis(e, 4)?;
        let ch4 = lift_change(ch, &b4.field())?;
        let (m, m2) = changed_module(&b4, &ch4)?;
        let mut ok = true;
        for t in crate::torsor::s4_elements(&m)? {
            let lhs = w4_tilde(&m, &t)?.value;
            let rhs = w4_tilde(&m2, &t.map(|id| transport_id(&m, &m2, &id)))?.value;
            ok &= lhs == ch4.u.pow(3) * rhs;
        }
        out.push(Check::new("w4_u3", ok, json!({ "field_degree": b4.field().degree() })));
    }
    Ok(out)
}
