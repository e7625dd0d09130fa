use num_bigint::BigUint;
use num_integer::Integer;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Field, FiniteField, Fq, Polynomial};
use crate::error::{Error, Result};

/// Roots are found by exhaustive evaluation when `|F| * deg f` is at most
/// this (and `|F| <= 2^16`); otherwise by equal-degree splitting.
pub const EXHAUSTIVE_LIMIT: u64 = 1 << 16;

/// All roots of `f` in `field`, with multiplicity, in canonical order.
///
/// Exhaustive evaluation for small `|F| * deg f`; otherwise the distinct roots
/// are split out of `gcd(f, x^q - x)` by equal-degree splitting and
/// multiplicities recovered by repeated division.
pub fn poly_roots(f: &Polynomial<Fq>, field: &FiniteField) -> Vec<Fq> {
    let distinct = distinct_roots(f, field);
    let mut out = Vec::new();
    for r in distinct {
        let lin = Polynomial::new(vec![-r.clone(), field.one()]);
        let mut g = f.clone();
        loop {
            let (q, rem) = g.div_rem(&lin);
            if !rem.is_zero() {
                break;
            }
            out.push(r.clone());
            g = q;
        }
    }
    out
}

/// Distinct roots of a nonzero `f` in `field`, canonical order.
pub fn distinct_roots(f: &Polynomial<Fq>, field: &FiniteField) -> Vec<Fq> {
    assert!(!f.is_zero(), "roots of the zero polynomial");
    let deg = f.degree().unwrap_or(0).max(1) as u64;
    let small = field.order_u64().is_some_and(|q| q <= EXHAUSTIVE_LIMIT && q.saturating_mul(deg) <= EXHAUSTIVE_LIMIT);
    if small || field.characteristic() == 2 {
        return roots_by_evaluation(f, field);
    }
    let f = f.monic();
    if f.degree() == Some(0) {
        return Vec::new();
    }
    let x = Polynomial::x(&field.one());
    let xq = x.pow_mod(field.order(), &f);
    let g = xq.sub(&x).gcd(&f);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5e_ed0f_1e1d);
    let half = (field.order() - 1u32) >> 1;
    let mut out = Vec::new();
    split_linear(g, field, &half, &mut rng, &mut out);
    out.sort();
    out
}

/// Roots of `f` found by evaluating at every field element (no multiplicity).
pub fn roots_by_evaluation(f: &Polynomial<Fq>, field: &FiniteField) -> Vec<Fq> {
    field.elements().filter(|x| f.eval(x).is_zero()).collect()
}

fn split_linear(g: Polynomial<Fq>, field: &FiniteField, half: &BigUint, rng: &mut ChaCha8Rng, out: &mut Vec<Fq>) {
    match g.degree() {
        None | Some(0) => {}
        Some(1) => {
            let g = g.monic();
            out.push(-g.coeffs()[0].clone());
        }
        Some(d) => loop {
            let shift = Polynomial::new(vec![field.random(rng), field.one()]);
            let h = shift.pow_mod(half, &g).sub(&Polynomial::constant(field.one())).gcd(&g);
            let dh = h.degree().unwrap_or(0);
            if dh > 0 && dh < d {
                let (rest, _) = g.div_rem(&h);
                split_linear(h, field, half, rng, out);
                split_linear(rest, field, half, rng, out);
                return;
            }
        },
    }
}

/// Whether nonzero `x` lies in `(F_q^*)^n`, i.e. `x^{(q-1)/gcd(n, q-1)} = 1`.
pub fn nth_power_class(x: &Fq, n: u64) -> Result<bool> {
    if x.is_zero() {
        return Err(Error::DivisionByZero);
    }
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let qm1 = x.field().order() - 1u32;
    let g = qm1.gcd(&BigUint::from(n));
    Ok(x.pow_big(&(qm1 / g)).is_one())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(f: &FiniteField, c: &[i64]) -> Polynomial<Fq> {
        Polynomial::new(c.iter().map(|&v| f.from_i64(v)).collect())
    }

    fn residues(v: &[Fq]) -> Vec<u64> {
        v.iter().map(|x| x.residue()).collect()
    }

    #[test]
    fn root_examples() {
        let f5 = FiniteField::prime(5).unwrap();
        assert_eq!(residues(&poly_roots(&poly(&f5, &[-1, 0, 1]), &f5)), vec![1, 4]);
        let f7 = FiniteField::prime(7).unwrap();
        assert_eq!(residues(&poly_roots(&poly(&f7, &[1, 0, 0, 1]), &f7)), vec![3, 5, 6]);
        assert!(poly_roots(&poly(&f7, &[1, 0, 1]), &f7).is_empty());
    }

    #[test]
    fn multiplicity_is_reported() {
        let f7 = FiniteField::prime(7).unwrap();
        // (x - 2)^2 (x - 3)
        let r: Vec<Fq> = [2, 2, 3].iter().map(|&c| f7.from_u64(c)).collect();
        let p = Polynomial::from_roots(&r, &f7.one());
        assert_eq!(residues(&poly_roots(&p, &f7)), vec![2, 2, 3]);
    }

    #[test]
    fn splitting_agrees_with_evaluation_on_a_large_field() {
        // 101^3 > 2^16, so poly_roots takes the splitting route.
        let big = FiniteField::extension(101, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let roots: Vec<Fq> = (0..5).map(|_| big.random(&mut rng)).collect();
        let irreducible_quad = Polynomial::new(vec![big.nonresidue(), big.zero(), big.one()]);
        let p = Polynomial::from_roots(&roots, &big.one()).mul(&irreducible_quad);
        let mut expected = roots.clone();
        expected.sort();
        assert_eq!(poly_roots(&p, &big), expected);
    }

    #[test]
    fn splitting_agrees_with_evaluation_for_high_degree() {
        // 13^3 * 10 > 2^16: the splitting route, checked against brute force.
        let f = FiniteField::extension(13, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let roots: Vec<Fq> = (0..7).map(|_| f.random(&mut rng)).collect();
        let extra = Polynomial::new((0..4).map(|_| f.random(&mut rng)).chain([f.one()]).collect());
        let p = Polynomial::from_roots(&roots, &f.one()).mul(&extra);
        assert_eq!(distinct_roots(&p, &f), roots_by_evaluation(&p, &f));
    }

    #[test]
    fn nth_power_examples() {
        let f13 = FiniteField::prime(13).unwrap();
        assert!(nth_power_class(&f13.one(), 12).unwrap());
        assert!(!nth_power_class(&f13.from_u64(2), 12).unwrap());
        assert!(nth_power_class(&f13.from_u64(2).pow(12), 12).unwrap());
        assert_eq!(nth_power_class(&f13.zero(), 3), Err(Error::DivisionByZero));
    }
}
