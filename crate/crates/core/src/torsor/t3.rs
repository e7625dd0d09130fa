use std::fmt::Debug;
use std::hash::Hash;

use super::{Mat2, RankTwoModule};
use crate::error::{Error, Result};

/// A 2-2 partition `{{X1, X2}, {Y1, Y2}}` of the four-point line `P(V)`,
/// each class stored by its smaller representative, each part sorted and
/// the parts sorted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct T3Element<E> {
    parts: [[E; 2]; 2],
}

/// Canonical representative `min(a, -a)` of the class of `a` in `P(V)`.
pub fn proj_class<M: RankTwoModule>(m: &M, a: &M::Elem) -> M::Elem {
    let b = m.neg(a);
    if b < *a {
        b
    } else {
        a.clone()
    }
}

fn require_three<M: RankTwoModule>(m: &M) -> Result<()> {
    if m.order() != 3 {
        return Err(Error::UnsupportedLevel(m.order()));
    }
    Ok(())
}

/// The four classes of `P(V) = (V - 0)/{+-1}`, ascending.
pub fn proj_line<M: RankTwoModule>(m: &M) -> Result<Vec<M::Elem>> {
    require_three(m)?;
    let zero = m.zero();
    let mut v: Vec<_> = m.elements().into_iter().filter(|a| *a != zero).map(|a| proj_class(m, &a)).collect();
    v.sort();
    v.dedup();
    Ok(v)
}

impl<E: Clone + Eq + Ord + Hash + Debug> T3Element<E> {
    /// Partition with parts `{a, b}` and `{c, d}` (any representatives).
    pub fn from_parts<M: RankTwoModule<Elem = E>>(m: &M, x: [&E; 2], y: [&E; 2]) -> Result<Self> {
        let mut x = [proj_class(m, x[0]), proj_class(m, x[1])];
        let mut y = [proj_class(m, y[0]), proj_class(m, y[1])];
        x.sort();
        y.sort();
        let mut all = vec![x[0].clone(), x[1].clone(), y[0].clone(), y[1].clone()];
        all.sort();
        all.dedup();
        if all.len() != 4 || all.contains(&m.zero()) {
            return Err(Error::InvalidArgument(format!("not a 2-2 partition of P(V): {x:?} | {y:?}")));
        }
        let parts = if x <= y { [x, y] } else { [y, x] };
        Ok(Self { parts })
    }

    pub fn parts(&self) -> &[[E; 2]; 2] {
        &self.parts
    }

    pub fn apply_linear<M: RankTwoModule<Elem = E>>(&self, m: &M, g: &Mat2) -> Self {
        let [[a, b], [c, d]] = &self.parts;
        let img = |e: &E| m.apply(g, e);
        Self::from_parts(m, [&img(a), &img(b)], [&img(c), &img(d)]).expect("automorphisms preserve partitions")
    }
}

/// `[P, Q] = {{P, Q}, {P+Q, P-Q}}` for a basis `(P, Q)`.
pub fn t3_from_basis<M: RankTwoModule>(m: &M, p: &M::Elem, q: &M::Elem) -> Result<T3Element<M::Elem>> {
    require_three(m)?;
    if !m.is_basis(p, q) {
        return Err(Error::NotABasis(format!("{p:?}, {q:?}")));
    }
    T3Element::from_parts(m, [p, q], [&m.add(p, q), &m.sub(p, q)])
}

/// The three elements of `T_3(V)`, ascending.
pub fn t3_elements<M: RankTwoModule>(m: &M) -> Result<Vec<T3Element<M::Elem>>> {
    let line = proj_line(m)?;
    let mut out = Vec::new();
    for j in 1..4 {
        let rest: Vec<&M::Elem> = (1..4).filter(|&k| k != j).map(|k| &line[k]).collect();
        out.push(T3Element::from_parts(m, [&line[0], &line[j]], [rest[0], rest[1]])?);
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torsor::ZnSquare;

    #[test]
    fn projective_line_and_partitions() {
        let v = ZnSquare::new(3).unwrap();
        let line = proj_line(&v).unwrap();
        assert_eq!(line, vec![(0, 1), (1, 0), (1, 1), (1, 2)]);
        let t = t3_elements(&v).unwrap();
        assert_eq!(t.len(), 3);
        let (p, q) = ((1, 0), (0, 1));
        let expected: Vec<_> =
            [q, v.add(&p, &q), v.sub(&q, &p)].iter().map(|q2| t3_from_basis(&v, &p, q2).unwrap()).collect();
        let mut sorted = expected.clone();
        sorted.sort();
        assert_eq!(sorted, t);
        assert_eq!(t3_from_basis(&v, &p, &q).unwrap(), t3_from_basis(&v, &q, &p).unwrap());
        assert_eq!(t3_from_basis(&v, &p, &q).unwrap(), t3_from_basis(&v, &p, &v.neg(&q)).unwrap());
        assert!(t3_from_basis(&v, &p, &v.neg(&p)).is_err());
        assert!(proj_line(&ZnSquare::new(4).unwrap()).is_err());
    }
}
