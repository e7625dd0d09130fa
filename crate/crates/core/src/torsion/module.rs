use std::collections::HashMap;

use super::TorsionBasis;
use crate::curve::{CurvePoint, WeierstrassCurve};
use crate::error::{Error, Result};
use crate::field::Fq;
use crate::torsor::RankTwoModule;

/// Index of a torsion point in the ascending list of `E[n]`, so ids order
/// exactly like the points they name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointId(pub u8);

/// `E[n]` as a [`RankTwoModule`], with the basis `(P, Q)` as reference.
///
/// The addition table is filled in with the curve's group law and checked
/// against coordinate addition, so building the module verifies that the
/// torsion points really form `(Z/n)^2` with the claimed basis.
#[derive(Clone, Debug)]
pub struct TorsionModule {
    n: u32,
    curve: WeierstrassCurve<Fq>,
    points: Vec<CurvePoint<Fq>>,
    index: HashMap<CurvePoint<Fq>, PointId>,
    coords: Vec<(u32, u32)>,
    by_coords: Vec<PointId>,
    add_table: Vec<PointId>,
    basis: [PointId; 2],
}

impl TorsionModule {
    pub fn new(b: &TorsionBasis) -> Result<Self> {
        let n = b.n;
        let e = &b.curve;
        let mut labelled = Vec::with_capacity((n * n) as usize);
        for a in 0..n {
            for c in 0..n {
                labelled.push((b.combination(a as i64, c as i64), (a, c)));
            }
        }
        labelled.sort();
        let points: Vec<_> = labelled.iter().map(|(p, _)| p.clone()).collect();
        let mut index = HashMap::new();
        for (i, p) in points.iter().enumerate() {
            if index.insert(p.clone(), PointId(i as u8)).is_some() {
                return Err(Error::NotABasis("combinations aP + bQ repeat".into()));
            }
        }
        let coords: Vec<_> = labelled.iter().map(|(_, c)| *c).collect();
        let mut by_coords = vec![PointId(0); (n * n) as usize];
        for (i, &(a, c)) in coords.iter().enumerate() {
            by_coords[(a * n + c) as usize] = PointId(i as u8);
        }
        let size = points.len();
        let mut add_table = Vec::with_capacity(size * size);
        for (i, p) in points.iter().enumerate() {
            for (j, q) in points.iter().enumerate() {
                let s = e.add(p, q);
                let id = *index.get(&s).ok_or_else(|| Error::NotABasis("E[n] not closed under addition".into()))?;
                let expected = ((coords[i].0 + coords[j].0) % n, (coords[i].1 + coords[j].1) % n);
                if coords[id.0 as usize] != expected {
                    return Err(Error::NotABasis("group law disagrees with coordinates".into()));
                }
                add_table.push(id);
            }
        }
        let basis = [by_coords[n as usize], by_coords[1]];
        Ok(Self { n, curve: e.clone(), points, index, coords, by_coords, add_table, basis })
    }

    pub fn curve(&self) -> &WeierstrassCurve<Fq> {
        &self.curve
    }

    pub fn point(&self, id: PointId) -> &CurvePoint<Fq> {
        &self.points[id.0 as usize]
    }

    pub fn points(&self) -> &[CurvePoint<Fq>] {
        &self.points
    }

    pub fn id_of(&self, p: &CurvePoint<Fq>) -> Option<PointId> {
        self.index.get(p).copied()
    }

    /// `P` for `i = 0`, `Q` for `i = 1`.
    pub fn basis_point(&self, i: usize) -> &CurvePoint<Fq> {
        self.point(self.basis[i])
    }

    /// Affine coordinates of a nonzero torsion point.
    pub fn xy(&self, id: PointId) -> (&Fq, &Fq) {
        match self.point(id) {
            CurvePoint::Affine(x, y) => (x, y),
            CurvePoint::Infinity => panic!("the identity has no affine coordinates"),
        }
    }
}

impl RankTwoModule for TorsionModule {
    type Elem = PointId;

    fn order(&self) -> u32 {
        self.n
    }
    fn zero(&self) -> PointId {
        self.by_coords[0]
    }
    fn add(&self, a: &PointId, b: &PointId) -> PointId {
        self.add_table[a.0 as usize * self.points.len() + b.0 as usize]
    }
    fn neg(&self, a: &PointId) -> PointId {
        let (x, y) = self.coords[a.0 as usize];
        self.from_coords((self.n - x) % self.n, (self.n - y) % self.n)
    }
    fn reference_basis(&self) -> (PointId, PointId) {
        (self.basis[0], self.basis[1])
    }
    fn coords(&self, a: &PointId) -> (u32, u32) {
        self.coords[a.0 as usize]
    }
    fn from_coords(&self, a: u32, b: u32) -> PointId {
        self.by_coords[((a % self.n) * self.n + b % self.n) as usize]
    }
}
