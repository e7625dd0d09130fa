//! Torsors of a free rank-two `Z/n`-module `V` (`n = 3, 4`): the three
//! 2-2 partitions of `P(V)`, the four `H`-orbits of halving triples, the
//! `G/H` action, the action of `wedge^2 V`, and the maps attached to an
//! extension `0 -> L -> V -> Z/n -> 0`.
//!
//! Everything is generic over [`RankTwoModule`], so the same code runs on
//! `(Z/n)^2` and on the torsion points of an elliptic curve.

mod ext;
mod linear;
mod selftest;
mod t3;
mod t4;

use std::fmt::Debug;
use std::hash::Hash;

pub use ext::ExtensionData;
pub use linear::{gl2, Mat2};
pub use selftest::{cyclic_subgroup_bijection, selftest};
pub use t3::{proj_class, proj_line, t3_elements, t3_from_basis, T3Element};
pub use t4::{
    g_action, gh_action, h_canonicalize, h_orbit, in_s4, involution_sigma, permute, s4_elements, t4_elements,
    GhElement, Sym3, T4Element,
};

use crate::error::{Error, Result};

/// A free `Z/n`-module of rank two with a fixed reference basis `(P0, Q0)`.
pub trait RankTwoModule {
    type Elem: Clone + Eq + Ord + Hash + Debug;

    fn order(&self) -> u32;
    fn zero(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn reference_basis(&self) -> (Self::Elem, Self::Elem);
    /// Coordinates with respect to the reference basis.
    fn coords(&self, a: &Self::Elem) -> (u32, u32);
    fn from_coords(&self, a: u32, b: u32) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn double(&self, a: &Self::Elem) -> Self::Elem {
        self.add(a, a)
    }

    fn smul(&self, k: i64, a: &Self::Elem) -> Self::Elem {
        let n = self.order() as i64;
        let (x, y) = self.coords(a);
        let k = k.rem_euclid(n) as u64;
        let n = n as u64;
        self.from_coords((k * x as u64 % n) as u32, (k * y as u64 % n) as u32)
    }

    /// All `n^2` elements in ascending order.
    fn elements(&self) -> Vec<Self::Elem> {
        let n = self.order();
        let mut v: Vec<_> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).map(|(a, b)| self.from_coords(a, b)).collect();
        v.sort();
        v
    }

    /// Image under a linear map given in reference coordinates.
    fn apply(&self, m: &Mat2, a: &Self::Elem) -> Self::Elem {
        let (x, y) = m.apply(self.coords(a));
        self.from_coords(x, y)
    }

    /// `c` with `a ^ b = c (P0 ^ Q0)`.
    fn wedge(&self, a: &Self::Elem, b: &Self::Elem) -> u32 {
        let n = self.order() as i64;
        let (a1, a2) = self.coords(a);
        let (b1, b2) = self.coords(b);
        (a1 as i64 * b2 as i64 - a2 as i64 * b1 as i64).rem_euclid(n) as u32
    }

    fn is_basis(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        linear::is_unit(self.wedge(a, b), self.order())
    }

    /// The change-of-basis matrix whose columns are the coordinates of `(p, q)`.
    fn basis_matrix(&self, p: &Self::Elem, q: &Self::Elem) -> Result<Mat2> {
        if !self.is_basis(p, q) {
            return Err(Error::NotABasis(format!("{p:?}, {q:?}")));
        }
        Ok(Mat2::from_columns(self.order(), self.coords(p), self.coords(q)))
    }

    /// `phi_{P,Q}`: `P -> P`, `Q -> P + Q`, in reference coordinates.
    fn phi(&self, p: &Self::Elem, q: &Self::Elem) -> Result<Mat2> {
        let b = self.basis_matrix(p, q)?;
        let shear = Mat2::new(self.order(), [[1, 1], [0, 1]]);
        Ok(b.mul(&shear).mul(&b.inverse().expect("basis matrix is invertible")))
    }
}

/// The standard module `(Z/n)^2` with basis `e1 = (1,0)`, `e2 = (0,1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ZnSquare {
    n: u32,
}

impl ZnSquare {
    pub fn new(n: u32) -> Result<Self> {
        if !(2..=64).contains(&n) {
            return Err(Error::UnsupportedLevel(n));
        }
        Ok(Self { n })
    }
}

impl RankTwoModule for ZnSquare {
    type Elem = (u32, u32);

    fn order(&self) -> u32 {
        self.n
    }
    fn zero(&self) -> (u32, u32) {
        (0, 0)
    }
    fn add(&self, a: &(u32, u32), b: &(u32, u32)) -> (u32, u32) {
        ((a.0 + b.0) % self.n, (a.1 + b.1) % self.n)
    }
    fn neg(&self, a: &(u32, u32)) -> (u32, u32) {
        ((self.n - a.0) % self.n, (self.n - a.1) % self.n)
    }
    fn reference_basis(&self) -> ((u32, u32), (u32, u32)) {
        ((1, 0), (0, 1))
    }
    fn coords(&self, a: &(u32, u32)) -> (u32, u32) {
        *a
    }
    fn from_coords(&self, a: u32, b: u32) -> (u32, u32) {
        (a % self.n, b % self.n)
    }
}

/// `c (P0 ^ Q0)` in `wedge^2 V = Z/n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WedgeElement(pub u32);

/// An element of `T_3(V)` or `T_4(V)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TorsorElement<E> {
    T3(T3Element<E>),
    T4(T4Element<E>),
}

impl<E: Clone + Eq + Ord + Hash + Debug> TorsorElement<E> {
    /// Image under a linear automorphism of `V` (reference coordinates).
    pub fn apply_linear<M: RankTwoModule<Elem = E>>(&self, m: &M, g: &Mat2) -> Result<Self> {
        match self {
            TorsorElement::T3(t) => Ok(TorsorElement::T3(t.apply_linear(m, g))),
            TorsorElement::T4(t) => Ok(TorsorElement::T4(t.apply_linear(m, g)?)),
        }
    }
}

/// The torsor `T_n(V)` of the module, in ascending order.
pub fn torsor_elements<M: RankTwoModule>(m: &M) -> Result<Vec<TorsorElement<M::Elem>>> {
    match m.order() {
        3 => Ok(t3_elements(m)?.into_iter().map(TorsorElement::T3).collect()),
        4 => Ok(t4_elements(m)?.into_iter().map(TorsorElement::T4).collect()),
        n => Err(Error::UnsupportedLevel(n)),
    }
}

/// Action of `v = c (P0 ^ Q0)`: the `c`-th power of `phi_{P0,Q0}`.
pub fn wedge_action<M: RankTwoModule>(
    m: &M,
    v: WedgeElement,
    t: &TorsorElement<M::Elem>,
) -> Result<TorsorElement<M::Elem>> {
    let (p0, q0) = m.reference_basis();
    let g = m.phi(&p0, &q0)?.pow(v.0 as u64);
    t.apply_linear(m, &g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_fixes_p_and_shears_q() {
        for n in [3, 4] {
            let v = ZnSquare::new(n).unwrap();
            for p in v.elements() {
                for q in v.elements() {
                    if !v.is_basis(&p, &q) {
                        continue;
                    }
                    let f = v.phi(&p, &q).unwrap();
                    assert_eq!(v.apply(&f, &p), p);
                    assert_eq!(v.apply(&f, &q), v.add(&p, &q));
                    assert_eq!(f.det(), 1);
                }
            }
        }
    }

    #[test]
    fn zero_wedge_acts_trivially() {
        for n in [3, 4] {
            let v = ZnSquare::new(n).unwrap();
            for t in torsor_elements(&v).unwrap() {
                assert_eq!(wedge_action(&v, WedgeElement(0), &t).unwrap(), t);
            }
        }
    }
}
