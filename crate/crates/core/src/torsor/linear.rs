use num_integer::Integer;
use rand::Rng;

/// A 2x2 matrix over `Z/n`. Columns are the images of the basis vectors:
/// `m[i][j]` is row `i`, column `j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Mat2 {
    n: u32,
    m: [[u32; 2]; 2],
}

pub(crate) fn is_unit(a: u32, n: u32) -> bool {
    a.gcd(&n) == 1
}

fn inv_mod(a: u32, n: u32) -> Option<u32> {
    let e = (a as i64).extended_gcd(&(n as i64));
    (e.gcd == 1).then(|| e.x.rem_euclid(n as i64) as u32)
}

impl Mat2 {
    pub fn new(n: u32, m: [[i64; 2]; 2]) -> Self {
        let r = |v: i64| v.rem_euclid(n as i64) as u32;
        Self { n, m: [[r(m[0][0]), r(m[0][1])], [r(m[1][0]), r(m[1][1])]] }
    }

    pub fn identity(n: u32) -> Self {
        Self::new(n, [[1, 0], [0, 1]])
    }

    pub fn from_columns(n: u32, c0: (u32, u32), c1: (u32, u32)) -> Self {
        Self::new(n, [[c0.0 as i64, c1.0 as i64], [c0.1 as i64, c1.1 as i64]])
    }

    pub fn modulus(&self) -> u32 {
        self.n
    }

    pub fn entries(&self) -> [[u32; 2]; 2] {
        self.m
    }

    pub fn column(&self, j: usize) -> (u32, u32) {
        (self.m[0][j], self.m[1][j])
    }

    pub fn apply(&self, v: (u32, u32)) -> (u32, u32) {
        let n = self.n as u64;
        let (a, b) = (v.0 as u64, v.1 as u64);
        let x = (self.m[0][0] as u64 * a + self.m[0][1] as u64 * b) % n;
        let y = (self.m[1][0] as u64 * a + self.m[1][1] as u64 * b) % n;
        (x as u32, y as u32)
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n);
        let mut out = [[0i64; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                *slot = (0..2).map(|k| self.m[i][k] as i64 * o.m[k][j] as i64).sum();
            }
        }
        Self::new(self.n, out)
    }

    pub fn det(&self) -> u32 {
        let d = self.m[0][0] as i64 * self.m[1][1] as i64 - self.m[0][1] as i64 * self.m[1][0] as i64;
        d.rem_euclid(self.n as i64) as u32
    }

    pub fn is_invertible(&self) -> bool {
        is_unit(self.det(), self.n)
    }

    pub fn inverse(&self) -> Option<Self> {
        let di = inv_mod(self.det(), self.n)? as i64;
        let [[a, b], [c, d]] = self.m.map(|r| r.map(|v| v as i64));
        Some(Self::new(self.n, [[d * di, -b * di], [-c * di, a * di]]))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::identity(self.n);
        let mut b = *self;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative order (the matrix must be invertible).
    pub fn order(&self) -> u64 {
        let id = Self::identity(self.n);
        let mut acc = *self;
        let mut k = 1;
        while acc != id {
            acc = acc.mul(self);
            k += 1;
        }
        k
    }

    pub fn random_invertible<R: Rng + ?Sized>(n: u32, rng: &mut R) -> Self {
        loop {
            let m = Self::new(n, [[0; 2]; 2].map(|r: [i64; 2]| r.map(|_| rng.gen_range(0..n as i64))));
            if m.is_invertible() {
                return m;
            }
        }
    }
}

/// Every element of `GL_2(Z/n)`.
pub fn gl2(n: u32) -> Vec<Mat2> {
    let n64 = n as i64;
    let mut out = Vec::new();
    for a in 0..n64 {
        for b in 0..n64 {
            for c in 0..n64 {
                for d in 0..n64 {
                    let m = Mat2::new(n, [[a, b], [c, d]]);
                    if m.is_invertible() {
                        out.push(m);
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_orders() {
        assert_eq!(gl2(3).len(), 48);
        assert_eq!(gl2(4).len(), 96);
    }

    #[test]
    fn inverse_and_det() {
        for m in gl2(4) {
            let inv = m.inverse().unwrap();
            assert_eq!(m.mul(&inv), Mat2::identity(4));
            assert_eq!(m.mul(&inv).det(), 1);
        }
        assert!(Mat2::new(4, [[2, 0], [0, 1]]).inverse().is_none());
    }
}
