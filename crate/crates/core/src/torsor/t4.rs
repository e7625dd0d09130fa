use std::collections::BTreeSet;
use std::fmt::Debug;
use std::hash::Hash;

use super::{Mat2, RankTwoModule};
use crate::error::{Error, Result};

/// A permutation of `{0, 1, 2}`, stored as its images.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sym3(pub [usize; 3]);

impl Sym3 {
    pub const ID: Sym3 = Sym3([0, 1, 2]);
    /// The 3-cycle `0 -> 1 -> 2 -> 0`.
    pub const CYCLE: Sym3 = Sym3([1, 2, 0]);
    pub const CYCLE2: Sym3 = Sym3([2, 0, 1]);
    pub const T01: Sym3 = Sym3([1, 0, 2]);
    pub const T02: Sym3 = Sym3([2, 1, 0]);
    pub const T12: Sym3 = Sym3([0, 2, 1]);
    pub const ALL: [Sym3; 6] = [Self::ID, Self::CYCLE, Self::CYCLE2, Self::T01, Self::T02, Self::T12];

    pub fn is_even(&self) -> bool {
        matches!(*self, Self::ID | Self::CYCLE | Self::CYCLE2)
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }
}

/// Canonical representative of an `H`-orbit in `S_4(V)`: the orbit minimum.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct T4Element<E> {
    triple: [E; 3],
}

/// An element of `G/H = S_3/A_3 x {+-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GhElement {
    /// Nontrivial in `S_3/A_3`, represented by the transposition of the first two slots.
    pub odd: bool,
    /// The `-1` factor.
    pub negate: bool,
}

impl GhElement {
    pub const ALL: [GhElement; 4] = [
        GhElement { odd: false, negate: false },
        GhElement { odd: false, negate: true },
        GhElement { odd: true, negate: false },
        GhElement { odd: true, negate: true },
    ];

    pub fn compose(&self, o: &Self) -> Self {
        Self { odd: self.odd ^ o.odd, negate: self.negate ^ o.negate }
    }
}

fn require_four<M: RankTwoModule>(m: &M) -> Result<()> {
    if m.order() != 4 {
        return Err(Error::UnsupportedLevel(m.order()));
    }
    Ok(())
}

/// `{2P, 2Q, 2R} = V[2] - 0`.
pub fn in_s4<M: RankTwoModule>(m: &M, t: &[M::Elem; 3]) -> bool {
    let zero = m.zero();
    let d: Vec<_> = t.iter().map(|a| m.double(a)).collect();
    m.order() == 4 && d.iter().all(|x| *x != zero) && d[0] != d[1] && d[1] != d[2] && d[0] != d[2]
}

/// All of `S_4(V)`, ascending (384 triples).
pub fn s4_elements<M: RankTwoModule>(m: &M) -> Result<Vec<[M::Elem; 3]>> {
    require_four(m)?;
    let zero = m.zero();
    let order4: Vec<_> = m.elements().into_iter().filter(|a| m.double(a) != zero).collect();
    let mut out = Vec::new();
    for p in &order4 {
        for q in &order4 {
            for r in &order4 {
                let t = [p.clone(), q.clone(), r.clone()];
                if in_s4(m, &t) {
                    out.push(t);
                }
            }
        }
    }
    Ok(out)
}

/// `[sigma]`: add `2 P_{sigma(1)}` to slot `sigma(2)` (slots numbered from 1).
pub fn involution_sigma<M: RankTwoModule>(m: &M, sigma: Sym3, t: &[M::Elem; 3]) -> [M::Elem; 3] {
    let mut out = t.clone();
    let (src, dst) = (sigma.apply(0), sigma.apply(1));
    out[dst] = m.add(&t[dst], &m.double(&t[src]));
    out
}

/// Permutation action `(tau . P)_{tau(i)} = P_i`.
pub fn permute<E: Clone>(tau: Sym3, t: &[E; 3]) -> [E; 3] {
    let mut out = t.clone();
    for (i, e) in t.iter().enumerate() {
        out[tau.apply(i)] = e.clone();
    }
    out
}

/// Action of `(tau, sum_{sigma in mask} [sigma]) in G = S_3 x| F_2^{S_3}`:
/// the involutions first, then the permutation. Bit `i` of `mask` selects
/// `Sym3::ALL[i]`.
pub fn g_action<M: RankTwoModule>(m: &M, tau: Sym3, mask: u8, t: &[M::Elem; 3]) -> [M::Elem; 3] {
    let mut cur = t.clone();
    for (i, s) in Sym3::ALL.iter().enumerate() {
        if mask & (1 << i) != 0 {
            cur = involution_sigma(m, *s, &cur);
        }
    }
    permute(tau, &cur)
}

/// Generators of `H = A_3 x| N`, written as `G`-elements.
fn h_generators() -> Vec<(Sym3, u8)> {
    let bit = |s: Sym3| 1u8 << Sym3::ALL.iter().position(|x| *x == s).unwrap();
    let mut g = vec![(Sym3::CYCLE, 0)];
    for s in [Sym3::T01, Sym3::T02, Sym3::T12] {
        g.push((Sym3::ID, bit(s)));
    }
    for (a, b) in [(Sym3::ID, Sym3::CYCLE), (Sym3::ID, Sym3::CYCLE2), (Sym3::CYCLE, Sym3::CYCLE2)] {
        g.push((Sym3::ID, bit(a) | bit(b)));
    }
    g
}

/// The `H`-orbit of a triple, ascending.
pub fn h_orbit<M: RankTwoModule>(m: &M, t: &[M::Elem; 3]) -> Vec<[M::Elem; 3]> {
    let gens = h_generators();
    let mut seen = BTreeSet::new();
    seen.insert(t.clone());
    let mut frontier = vec![t.clone()];
    while let Some(cur) = frontier.pop() {
        for (tau, mask) in &gens {
            let next = g_action(m, *tau, *mask, &cur);
            if seen.insert(next.clone()) {
                frontier.push(next);
            }
        }
    }
    seen.into_iter().collect()
}

/// The class `[P, Q, R]` of a triple in `S_4(V)`.
pub fn h_canonicalize<M: RankTwoModule>(m: &M, t: &[M::Elem; 3]) -> Result<T4Element<M::Elem>> {
    require_four(m)?;
    if !in_s4(m, t) {
        return Err(Error::InvalidArgument(format!("triple {t:?} does not halve V[2] - 0")));
    }
    let triple = h_orbit(m, t).into_iter().next().expect("orbit contains t");
    Ok(T4Element { triple })
}

/// The four elements of `T_4(V)`, ascending.
pub fn t4_elements<M: RankTwoModule>(m: &M) -> Result<Vec<T4Element<M::Elem>>> {
    let mut out = BTreeSet::new();
    let mut covered = BTreeSet::new();
    for t in s4_elements(m)? {
        if covered.contains(&t) {
            continue;
        }
        let orbit = h_orbit(m, &t);
        out.insert(T4Element { triple: orbit[0].clone() });
        covered.extend(orbit);
    }
    Ok(out.into_iter().collect())
}

/// `G/H` acting on `T_4(V)`: `-1` negates all three points, the odd class
/// swaps the first two.
pub fn gh_action<M: RankTwoModule>(m: &M, g: GhElement, t: &T4Element<M::Elem>) -> Result<T4Element<M::Elem>> {
    let mut cur = t.triple.clone();
    if g.negate {
        cur = cur.map(|a| m.neg(&a));
    }
    if g.odd {
        cur = permute(Sym3::T01, &cur);
    }
    h_canonicalize(m, &cur)
}

impl<E: Clone + Eq + Ord + Hash + Debug> T4Element<E> {
    pub fn triple(&self) -> &[E; 3] {
        &self.triple
    }

    pub fn apply_linear<M: RankTwoModule<Elem = E>>(&self, m: &M, g: &Mat2) -> Result<Self> {
        let img = self.triple.clone().map(|a| m.apply(g, &a));
        h_canonicalize(m, &img)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torsor::ZnSquare;

    #[test]
    fn counts_and_orbits() {
        let v = ZnSquare::new(4).unwrap();
        let s4 = s4_elements(&v).unwrap();
        assert_eq!(s4.len(), 384);
        let t4 = t4_elements(&v).unwrap();
        assert_eq!(t4.len(), 4);
        for t in &t4 {
            assert_eq!(h_orbit(&v, t.triple()).len(), 96);
        }
    }

    #[test]
    fn sum_of_all_involutions_is_negation() {
        let v = ZnSquare::new(4).unwrap();
        for t in s4_elements(&v).unwrap() {
            assert_eq!(g_action(&v, Sym3::ID, 0b11_1111, &t), t.map(|a| v.neg(&a)));
        }
    }

    #[test]
    fn involutions_commute_and_square_to_identity() {
        let v = ZnSquare::new(4).unwrap();
        let t = [(1, 0), (0, 1), (1, 1)];
        for a in Sym3::ALL {
            assert_eq!(involution_sigma(&v, a, &involution_sigma(&v, a, &t)), t);
            for b in Sym3::ALL {
                let ab = involution_sigma(&v, a, &involution_sigma(&v, b, &t));
                let ba = involution_sigma(&v, b, &involution_sigma(&v, a, &t));
                assert_eq!(ab, ba);
            }
        }
    }

    #[test]
    fn gh_orbit_is_everything() {
        let v = ZnSquare::new(4).unwrap();
        let t4 = t4_elements(&v).unwrap();
        let mut imgs: Vec<_> = GhElement::ALL.iter().map(|g| gh_action(&v, *g, &t4[0]).unwrap()).collect();
        imgs.sort();
        assert_eq!(imgs, t4);
        let minus = GhElement { odd: false, negate: true };
        for t in &t4 {
            let twice = gh_action(&v, minus, &gh_action(&v, minus, t).unwrap()).unwrap();
            assert_eq!(&twice, t);
        }
    }

    #[test]
    fn non_s4_triple_rejected() {
        let v = ZnSquare::new(4).unwrap();
        assert!(h_canonicalize(&v, &[(1, 0), (1, 0), (1, 1)]).is_err());
        assert!(s4_elements(&ZnSquare::new(3).unwrap()).is_err());
    }
}
