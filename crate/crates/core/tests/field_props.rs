use discroot::field::{Field, FiniteField, Fq, Polynomial};
use proptest::prelude::*;

const PRIMES: [u64; 6] = [2, 3, 5, 13, 37, 65_521];

fn element(f: &FiniteField, coeffs: &[u64]) -> Fq {
    let p = f.characteristic();
    let c: Vec<u64> = coeffs.iter().take(f.degree()).map(|c| c % p).collect();
    f.from_coeffs(&c).unwrap()
}

fn field_and_three() -> impl Strategy<Value = (FiniteField, Fq, Fq, Fq)> {
    (prop::sample::select(PRIMES.to_vec()), 1usize..=4, prop::collection::vec(any::<u64>(), 12)).prop_map(|(p, k, c)| {
        let k = if p > 1000 { k.min(2) } else { k };
        let f = FiniteField::extension(p, k).unwrap();
        let (a, b, d) = (element(&f, &c[0..4]), element(&f, &c[4..8]), element(&f, &c[8..12]));
        (f, a, b, d)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn prime_field_matches_integer_arithmetic(p in prop::sample::select(PRIMES.to_vec()), a in any::<u64>(), b in any::<u64>()) {
        let f = FiniteField::prime(p).unwrap();
        let (x, y) = (f.from_u64(a), f.from_u64(b));
        let (a, b) = ((a % p) as u128, (b % p) as u128);
        let p128 = p as u128;
        prop_assert_eq!((x.clone() + y.clone()).residue() as u128, (a + b) % p128);
        prop_assert_eq!((x.clone() - y.clone()).residue() as u128, (a + p128 - b) % p128);
        prop_assert_eq!((x * y).residue() as u128, a * b % p128);
    }

    #[test]
    fn ring_axioms((_f, a, b, c) in field_and_three()) {
        prop_assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
        prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
        prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
        prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
        prop_assert_eq!(a.clone() - a.clone(), a.zero_like());
        prop_assert_eq!(-(-a.clone()), a);
    }

    #[test]
    fn nonzero_elements_invert((_f, a, b, _c) in field_and_three()) {
        match a.inv() {
            None => prop_assert!(a.is_zero()),
            Some(i) => {
                prop_assert!((a.clone() * i).is_one());
                prop_assert_eq!((b.clone() / a.clone()) * a, b);
            }
        }
    }

    #[test]
    fn every_element_has_order_dividing_q_minus_one((f, a, _b, _c) in field_and_three()) {
        let q = f.order_u64().unwrap();
        prop_assert_eq!(a.pow(q), a.clone());
        if !a.is_zero() {
            prop_assert!(a.pow(q - 1).is_one());
        }
    }

    #[test]
    fn frobenius_is_a_ring_map((f, a, b, _c) in field_and_three()) {
        let p = f.characteristic();
        prop_assert_eq!(a.frobenius(), a.pow(p));
        prop_assert_eq!((a.clone() + b.clone()).frobenius(), a.frobenius() + b.frobenius());
        prop_assert_eq!((a.clone() * b.clone()).frobenius(), a.frobenius() * b.frobenius());
        let mut x = a.clone();
        for _ in 0..f.degree() {
            x = x.frobenius();
        }
        prop_assert_eq!(x, a);
    }

    #[test]
    fn square_roots_square_back((f, a, _b, _c) in field_and_three()) {
        prop_assume!(f.characteristic() != 2);
        let sq = a.square();
        let r = sq.sqrt().expect("a square has a root");
        prop_assert_eq!(r.square(), sq);
        if let Some(r) = a.sqrt() {
            prop_assert_eq!(r.square(), a);
        }
    }

    #[test]
    fn polynomial_division_identity(p in prop::sample::select(vec![5u64, 13, 37]), a in prop::collection::vec(0u64..64, 1..10), b in prop::collection::vec(0u64..64, 1..6)) {
        let f = FiniteField::prime(p).unwrap();
        let pa = Polynomial::new(a.iter().map(|&c| f.from_u64(c)).collect());
        let pb = Polynomial::new(b.iter().map(|&c| f.from_u64(c)).collect());
        prop_assume!(!pb.is_zero());
        let (q, r) = pa.div_rem(&pb);
        prop_assert_eq!(q.mul(&pb).add(&r), pa.clone());
        prop_assert!(r.is_zero() || r.degree() < pb.degree());
        let g = pa.gcd(&pb);
        prop_assert!(pa.rem(&g).is_zero() && pb.rem(&g).is_zero());
    }
}

#[test]
#[allow(clippy::mutable_key_type)]
fn element_counts() {
    for (p, k) in [(2, 3), (3, 2), (5, 2), (13, 3)] {
        let f = FiniteField::extension(p, k).unwrap();
        let all: std::collections::BTreeSet<Fq> = f.elements().collect();
        assert_eq!(all.len() as u64, p.pow(k as u32));
    }
}
