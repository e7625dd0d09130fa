//! `E[2]`, `E[3]` and `E[4]` over finite fields: the defining polynomials,
//! halving, the minimal field of rationality, deterministic bases and the
//! Frobenius matrix.

mod module;

use crate::curve::{CurvePoint, VariableChange, WeierstrassCurve};
use crate::error::{Error, Result};
use crate::field::{distinct_roots, Field, FieldEmbedding, FiniteField, Fq, Polynomial, MAX_DEGREE};
use crate::torsor::Mat2;

pub use module::{PointId, TorsionModule};

/// The field a curve is defined over.
pub fn base_field(e: &WeierstrassCurve<Fq>) -> FiniteField {
    e.a1().field().clone()
}

/// The same curve with coefficients pushed into `target`.
pub fn lift_curve(e: &WeierstrassCurve<Fq>, target: &FiniteField) -> Result<WeierstrassCurve<Fq>> {
    let source = base_field(e);
    if &source == target {
        return Ok(e.clone());
    }
    let emb = FieldEmbedding::new(&source, target)?;
    e.map(|c| emb.apply(c))
}

/// A field element pushed into `target` (which must contain its field).
pub fn embed(x: &Fq, target: &FiniteField) -> Result<Fq> {
    if x.field() == target {
        return Ok(x.clone());
    }
    if x.is_prime_field_element() && x.field().characteristic() == target.characteristic() {
        return Ok(target.from_u64(x.residue()));
    }
    Ok(FieldEmbedding::new(x.field(), target)?.apply(x))
}

/// A change of variables pushed into `target`.
pub fn lift_change(ch: &VariableChange<Fq>, target: &FiniteField) -> Result<VariableChange<Fq>> {
    VariableChange::new(embed(&ch.u, target)?, embed(&ch.r, target)?, embed(&ch.s, target)?, embed(&ch.t, target)?)
}

/// `4x^3 + b2 x^2 + 2 b4 x + b6`, whose roots are the `x(T)` for `T` of order 2.
pub fn two_torsion_poly<F: Field>(e: &WeierstrassCurve<F>) -> Polynomial<F> {
    let [b2, b4, b6, _] = e.b_invariants().clone();
    let k = |n| b2.int_like(n);
    Polynomial::new(vec![b6, k(2) * b4, b2.clone(), k(4)])
}

/// `x^4 + (b2/3) x^3 + b4 x^2 + b6 x + b8/3`: its roots are the
/// x-coordinates of the points of order 3.
pub fn three_torsion_quartic<F: Field>(e: &WeierstrassCurve<F>) -> Polynomial<F> {
    let [b2, b4, b6, b8] = e.b_invariants().clone();
    let third = b2.int_like(3).inv().expect("characteristic 3 is not supported");
    let one = b2.one_like();
    Polynomial::new(vec![b8 * third.clone(), b6, b4, b2 * third, one])
}

/// The points of `E(F)` with the given x-coordinate, ascending.
pub fn lift_x(e: &WeierstrassCurve<Fq>, x: &Fq) -> Vec<CurvePoint<Fq>> {
    let f = x.field();
    let h = e.a1().clone() * x.clone() + e.a3().clone();
    let d = h.square() + f.from_u64(4) * e.cubic(x);
    let Some(s) = d.sqrt() else { return Vec::new() };
    let half = f.from_u64(2).inv().expect("odd characteristic");
    let mut out = vec![CurvePoint::Affine(x.clone(), (s.clone() - h.clone()) * half.clone())];
    if !s.is_zero() {
        out.push(CurvePoint::Affine(x.clone(), (-s - h) * half));
    }
    out.sort();
    out
}

/// The 2-torsion points rational over the curve's field, ascending.
pub fn two_torsion_points(e: &WeierstrassCurve<Fq>) -> Vec<CurvePoint<Fq>> {
    let field = base_field(e);
    let mut out: Vec<_> = distinct_roots(&two_torsion_poly(e), &field).iter().flat_map(|x| lift_x(e, x)).collect();
    out.sort();
    out
}

/// Smallest `k` (a multiple of the curve's own degree, at most 16) such
/// that `pred` holds over `F_{p^k}`, skipping degrees with `p^k != 1 mod n`
/// when `n > 1`.
fn minimal_extension<T>(
    e: &WeierstrassCurve<Fq>,
    n: u64,
    mut pred: impl FnMut(&WeierstrassCurve<Fq>) -> Option<T>,
) -> Result<(WeierstrassCurve<Fq>, T)> {
    let base = base_field(e);
    let p = base.characteristic();
    let j = base.degree();
    for k in (j..=MAX_DEGREE).step_by(j) {
        if n > 1 && (0..k).fold(1u64, |acc, _| acc * p % n) != 1 {
            continue;
        }
        let field = FiniteField::extension(p, k)?;
        let lifted = lift_curve(e, &field)?;
        if let Some(t) = pred(&lifted) {
            return Ok((lifted, t));
        }
    }
    Err(Error::ExtensionTooLarge(MAX_DEGREE))
}

/// The three x-coordinates of `E[2] - O` (ascending), together with the
/// curve lifted to the smallest field containing them.
pub fn two_torsion(e: &WeierstrassCurve<Fq>) -> Result<(WeierstrassCurve<Fq>, [Fq; 3])> {
    minimal_extension(e, 1, |c| {
        let roots = distinct_roots(&two_torsion_poly(c), &base_field(c));
        <[Fq; 3]>::try_from(roots).ok()
    })
}

/// The rational points `P` with `2P = A`, ascending: four of them when
/// `E[2]` and the halvings are rational, otherwise fewer.
///
/// The x-coordinates are the roots of
/// `x^2 - (-a2 + xA - xB - xC) x - (xA^2 + a2 xA + xB xC)` on the model
/// `y^2 = x^3 + a2 x^2 + a4 x + a6`; other models are first brought to that
/// form by completing the square.
pub fn halve_point(e: &WeierstrassCurve<Fq>, a: &CurvePoint<Fq>) -> Result<Vec<CurvePoint<Fq>>> {
    if !e.contains(a) || a.is_infinity() || !e.double(a).is_infinity() {
        return Err(Error::WrongOrder(format!("{a:?} is not a point of order 2")));
    }
    if !e.is_y_squared_form() {
        let (ch, e2) = e.complete_square()?;
        let mut out: Vec<_> = halve_point(&e2, &ch.forward(a))?.iter().map(|p| ch.backward(p)).collect();
        out.sort();
        return Ok(out);
    }
    let field = base_field(e);
    let xa = a.x().expect("affine").clone();
    let others: Vec<Fq> =
        distinct_roots(&two_torsion_poly(e), &field).into_iter().filter(|x| *x != xa).collect();
    if others.len() != 2 {
        return Ok(Vec::new());
    }
    let (xb, xc) = (&others[0], &others[1]);
    let a2 = e.a2().clone();
    let lin = -(-a2.clone() + xa.clone() - xb.clone() - xc.clone());
    let cst = -(xa.square() + a2 * xa.clone() + xb.clone() * xc.clone());
    let quad = Polynomial::new(vec![cst, lin, field.one()]);
    let mut out: Vec<_> = distinct_roots(&quad, &field).iter().flat_map(|x| lift_x(e, x)).collect();
    out.retain(|p| e.double(p) == *a);
    out.sort();
    Ok(out)
}

/// All of `E[n]` (`n = 3, 4`) if it is rational over the curve's field,
/// ascending with `O` first.
pub fn full_torsion(e: &WeierstrassCurve<Fq>, n: u32) -> Result<Option<Vec<CurvePoint<Fq>>>> {
    let field = base_field(e);
    let mut pts = vec![CurvePoint::Infinity];
    match n {
        3 => {
            let xs = distinct_roots(&three_torsion_quartic(e), &field);
            if xs.len() != 4 {
                return Ok(None);
            }
            for x in &xs {
                let lifted = lift_x(e, x);
                if lifted.len() != 2 {
                    return Ok(None);
                }
                pts.extend(lifted);
            }
        }
        4 => {
            let two = two_torsion_points(e);
            if two.len() != 3 {
                return Ok(None);
            }
            for a in &two {
                let halves = halve_point(e, a)?;
                if halves.len() != 4 {
                    return Ok(None);
                }
                pts.extend(halves);
            }
            pts.extend(two);
        }
        _ => return Err(Error::UnsupportedLevel(n)),
    }
    pts.sort();
    Ok(Some(pts))
}

/// A basis `(P, Q)` of `E[n]` over the field of the stored curve.
#[derive(Clone, Debug)]
pub struct TorsionBasis {
    pub n: u32,
    pub curve: WeierstrassCurve<Fq>,
    pub p: CurvePoint<Fq>,
    pub q: CurvePoint<Fq>,
}

impl TorsionBasis {
    pub fn field(&self) -> FiniteField {
        base_field(&self.curve)
    }

    /// `a P + b Q`.
    pub fn combination(&self, a: i64, b: i64) -> CurvePoint<Fq> {
        self.curve.add(&self.curve.mul(a, &self.p), &self.curve.mul(b, &self.q))
    }

    /// Whether the `n^2` combinations `aP + bQ` are pairwise distinct.
    pub fn is_basis(&self) -> bool {
        let n = self.n as i64;
        let mut all: Vec<_> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).map(|(a, b)| self.combination(a, b)).collect();
        all.sort();
        all.dedup();
        all.len() == (n * n) as usize
    }
}

/// Smallest points `P < Q` of exact order `n` generating `E[n]`.
fn basis_from_points(e: &WeierstrassCurve<Fq>, n: u32, pts: &[CurvePoint<Fq>]) -> Result<TorsionBasis> {
    let exact: Vec<_> = pts.iter().filter(|p| e.order_up_to(p, n as u64) == Some(n as u64)).collect();
    let p = exact.first().ok_or_else(|| Error::NotABasis("no point of exact order n".into()))?;
    for q in &exact {
        let b = TorsionBasis { n, curve: e.clone(), p: (*p).clone(), q: (*q).clone() };
        if b.is_basis() {
            return Ok(b);
        }
    }
    Err(Error::NotABasis("torsion points do not span".into()))
}

/// A deterministic basis of `E[n]` over the smallest `F_{p^k}` (`k <= 16`)
/// where `E[n]` is rational.
pub fn torsion_basis(e: &WeierstrassCurve<Fq>, n: u32) -> Result<TorsionBasis> {
    if n != 3 && n != 4 {
        return Err(Error::UnsupportedLevel(n));
    }
    let mut failure = None;
    let found = minimal_extension(e, n as u64, |c| match full_torsion(c, n) {
        Ok(pts) => pts,
        Err(err) => {
            failure = Some(err);
            None
        }
    });
    if let Some(err) = failure {
        return Err(err);
    }
    let (curve, pts) = found?;
    basis_from_points(&curve, n, &pts)
}

/// Coordinatewise `x -> x^p`.
pub fn frobenius_point(p: &CurvePoint<Fq>) -> CurvePoint<Fq> {
    p.map(|c| c.frobenius())
}

/// The matrix of the `p`-power Frobenius on `E[n]` in the module's basis:
/// column `j` holds the coordinates of the image of the `j`-th basis vector.
/// The curve must be defined over the prime field.
pub fn frobenius_matrix(m: &TorsionModule) -> Result<Mat2> {
    let e = m.curve();
    if e.coefficients().iter().any(|c| c.frobenius() != *c) {
        return Err(Error::InvalidArgument("curve is not defined over the prime field".into()));
    }
    let fp = m.id_of(&frobenius_point(m.basis_point(0))).ok_or(Error::NotOnCurve)?;
    let fq = m.id_of(&frobenius_point(m.basis_point(1))).ok_or(Error::NotOnCurve)?;
    use crate::torsor::RankTwoModule;
    Ok(Mat2::from_columns(m.order(), m.coords(&fp), m.coords(&fq)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::CurveSpec;

    fn xs(v: &[Fq]) -> Vec<u64> {
        v.iter().map(|x| x.residue()).collect()
    }

    #[test]
    fn two_torsion_examples() {
        let e = CurveSpec::short(5, -1, 0).curve().unwrap();
        let (lifted, roots) = two_torsion(&e).unwrap();
        assert_eq!(base_field(&lifted).degree(), 1);
        assert_eq!(xs(&roots), vec![0, 1, 4]);
        let e = CurveSpec::short(7, 0, -1).curve().unwrap();
        let (_, roots) = two_torsion(&e).unwrap();
        assert_eq!(xs(&roots), vec![1, 2, 4]);
    }

    #[test]
    fn quartic_for_deuring_zero() {
        // y^2 + y = x^3 over F_7: quartic x^4 + x.
        let e = CurveSpec::new(7, 1, [0, 0, 1, 0, 0]).curve().unwrap();
        let q = three_torsion_quartic(&e);
        assert_eq!(xs(q.coeffs()), vec![0, 1, 0, 0, 1]);
    }

    #[test]
    fn halving_on_x3_minus_x() {
        let e = CurveSpec::short(13, -1, 0).curve().unwrap();
        let f = base_field(&e);
        let a = e.point(f.zero(), f.zero()).unwrap();
        let halves = halve_point(&e, &a).unwrap();
        assert_eq!(halves.len(), 4);
        for h in &halves {
            assert_eq!(e.double(h), a);
        }
        let mut x: Vec<_> = halves.iter().map(|p| p.x().unwrap().clone()).collect();
        x.dedup();
        assert_eq!(x.len(), 2);
        assert_eq!(x[0].clone() + x[1].clone(), f.zero());
        assert!(halve_point(&e, &CurvePoint::Infinity).is_err());
    }

    #[test]
    fn bases_have_full_span_and_rational_mu_n() {
        for (spec, n) in [
            (CurveSpec::short(13, -1, 0), 4),
            (CurveSpec::short(13, 2, 1), 3),
            (CurveSpec::short(37, 1, 3), 3),
            (CurveSpec::short(37, 1, 3), 4),
        ] {
            let b = torsion_basis(&spec.curve().unwrap(), n).unwrap();
            assert!(b.is_basis());
            let f = b.field();
            let q = f.order_u64().unwrap();
            assert_eq!(q % n as u64, 1, "{spec} n={n}");
            if n == 4 {
                let d = [b.curve.double(&b.p), b.curve.double(&b.q), b.curve.double(&b.combination(1, 1))];
                let mut two: Vec<_> = d.to_vec();
                two.sort();
                assert_eq!(two, two_torsion_points(&b.curve));
            }
        }
    }

    #[test]
    fn frobenius_matrix_det_is_p() {
        for (spec, n) in [(CurveSpec::short(13, 2, 1), 3u32), (CurveSpec::short(37, 1, 3), 4)] {
            let b = torsion_basis(&spec.curve().unwrap(), n).unwrap();
            let k = b.field().degree() as u64;
            let m = TorsionModule::new(&b).unwrap();
            let fr = frobenius_matrix(&m).unwrap();
            assert_eq!(fr.det() as u64, spec.p % n as u64);
            assert_eq!(k % fr.order(), 0);
        }
    }
}
