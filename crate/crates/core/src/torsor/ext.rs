use num_integer::Integer;

use super::{h_canonicalize, t3_from_basis, RankTwoModule, TorsorElement, WedgeElement};
use crate::error::{Error, Result};

/// An extension `0 -> L -> V -> Z/n -> 0`, given by the surjection
/// `p(a P0 + b Q0) = alpha a + beta b`. `L = ker p` and `T = p^{-1}(1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExtensionData {
    n: u32,
    alpha: u32,
    beta: u32,
}

impl ExtensionData {
    pub fn new(n: u32, alpha: u32, beta: u32) -> Result<Self> {
        let (alpha, beta) = (alpha % n, beta % n);
        if alpha.gcd(&beta).gcd(&n) != 1 {
            return Err(Error::InvalidArgument(format!("({alpha}, {beta}) is not onto Z/{n}")));
        }
        Ok(Self { n, alpha, beta })
    }

    /// Every extension of `Z/n` by a line in `V`.
    pub fn all(n: u32) -> Vec<Self> {
        (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter_map(|(a, b)| Self::new(n, a, b).ok()).collect()
    }

    /// The extension with `p(P) = 0`, `p(Q) = 1` for a basis `(P, Q)`.
    pub fn from_basis<M: RankTwoModule>(m: &M, p: &M::Elem, q: &M::Elem) -> Result<Self> {
        let inv = m.basis_matrix(p, q)?.inverse().expect("basis");
        let [_, [c, d]] = inv.entries();
        Self::new(m.order(), c, d)
    }

    pub fn functional(&self) -> (u32, u32) {
        (self.alpha, self.beta)
    }

    pub fn eval<M: RankTwoModule>(&self, m: &M, a: &M::Elem) -> u32 {
        let (x, y) = m.coords(a);
        ((self.alpha as u64 * x as u64 + self.beta as u64 * y as u64) % self.n as u64) as u32
    }

    fn check<M: RankTwoModule>(&self, m: &M) -> Result<()> {
        if m.order() != self.n {
            return Err(Error::UnsupportedLevel(m.order()));
        }
        Ok(())
    }

    /// `L = ker p`, ascending.
    pub fn line<M: RankTwoModule>(&self, m: &M) -> Vec<M::Elem> {
        m.elements().into_iter().filter(|a| self.eval(m, a) == 0).collect()
    }

    /// Generators of `L`, ascending.
    pub fn line_generators<M: RankTwoModule>(&self, m: &M) -> Vec<M::Elem> {
        let n = self.n as i64;
        self.line(m).into_iter().filter(|a| (1..n).all(|k| m.smul(k, a) != m.zero())).collect()
    }

    /// `T = p^{-1}(1)`, ascending.
    pub fn torsor<M: RankTwoModule>(&self, m: &M) -> Vec<M::Elem> {
        m.elements().into_iter().filter(|a| self.eval(m, a) == 1).collect()
    }

    /// `epsilon(l) = l ^ Q` for the smallest `Q` in `T`.
    pub fn epsilon<M: RankTwoModule>(&self, m: &M, l: &M::Elem) -> Result<WedgeElement> {
        let q = self.torsor(m).into_iter().next().expect("T is nonempty");
        self.epsilon_with(m, l, &q)
    }

    /// `epsilon(l) = l ^ q` for a chosen `q` in `T`.
    pub fn epsilon_with<M: RankTwoModule>(&self, m: &M, l: &M::Elem, q: &M::Elem) -> Result<WedgeElement> {
        self.check(m)?;
        if self.eval(m, l) != 0 {
            return Err(Error::InvalidArgument(format!("{l:?} is not in L")));
        }
        if self.eval(m, q) != 1 {
            return Err(Error::InvalidArgument(format!("{q:?} is not in T")));
        }
        Ok(WedgeElement(m.wedge(l, q)))
    }

    /// `tau(Q)` using the smallest generator of `L`.
    pub fn tau<M: RankTwoModule>(&self, m: &M, q: &M::Elem) -> Result<TorsorElement<M::Elem>> {
        let gen = self.line_generators(m).into_iter().next().expect("L is cyclic of order n");
        self.tau_with(m, &gen, q)
    }

    /// `tau(Q) = [P, Q]` for `n = 3` and `[Q, P, -(P+Q)]` for `n = 4`, with
    /// `P` the given generator of `L`.
    pub fn tau_with<M: RankTwoModule>(&self, m: &M, gen: &M::Elem, q: &M::Elem) -> Result<TorsorElement<M::Elem>> {
        self.check(m)?;
        if !self.line_generators(m).contains(gen) {
            return Err(Error::InvalidArgument(format!("{gen:?} does not generate L")));
        }
        if self.eval(m, q) != 1 {
            return Err(Error::InvalidArgument(format!("{q:?} is not in T")));
        }
        match self.n {
            3 => Ok(TorsorElement::T3(t3_from_basis(m, gen, q)?)),
            4 => {
                let r = m.neg(&m.add(gen, q));
                Ok(TorsorElement::T4(h_canonicalize(m, &[q.clone(), gen.clone(), r])?))
            }
            n => Err(Error::UnsupportedLevel(n)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torsor::ZnSquare;

    #[test]
    fn extension_counts() {
        assert_eq!(ExtensionData::all(3).len(), 8);
        assert_eq!(ExtensionData::all(4).len(), 12);
        assert!(ExtensionData::new(4, 2, 0).is_err());
    }

    #[test]
    fn from_basis_kills_p_and_sends_q_to_one() {
        let v = ZnSquare::new(4).unwrap();
        let (p, q) = ((1, 1), (0, 1));
        let e = ExtensionData::from_basis(&v, &p, &q).unwrap();
        assert_eq!(e.eval(&v, &p), 0);
        assert_eq!(e.eval(&v, &q), 1);
        assert_eq!(e.torsor(&v).len(), 4);
    }

    #[test]
    fn tau_sign_choice_example() {
        let v = ZnSquare::new(4).unwrap();
        let (p, q) = ((1, 0), (0, 1));
        let e = ExtensionData::from_basis(&v, &p, &q).unwrap();
        let minus_p = v.neg(&p);
        assert_eq!(e.tau_with(&v, &p, &q).unwrap(), e.tau_with(&v, &minus_p, &q).unwrap());
        assert!(e.tau_with(&v, &q, &q).is_err());
    }
}
