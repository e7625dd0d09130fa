use discroot::curve::{CurvePoint, VariableChange, WeierstrassCurve};
use discroot::field::{Field, FiniteField, Fq};
use discroot::isogeny::{point_count, random_point};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn curve_strategy() -> impl Strategy<Value = WeierstrassCurve<Fq>> {
    (prop::sample::select(vec![(5u64, 1usize), (7, 1), (13, 1), (37, 1), (101, 1), (3, 2), (13, 2)]), prop::array::uniform5(0u64..1000))
        .prop_filter_map("nonsingular", |((p, k), a)| {
            let f = FiniteField::extension(p, k).unwrap();
            WeierstrassCurve::from_array(a.map(|c| f.from_u64(c))).ok()
        })
}

fn change_strategy() -> impl Strategy<Value = [u64; 4]> {
    prop::array::uniform4(0u64..1000)
}

fn change_on(e: &WeierstrassCurve<Fq>, c: [u64; 4]) -> Option<VariableChange<Fq>> {
    let f = e.a1().field();
    VariableChange::new(f.from_u64(c[0]), f.from_u64(c[1]), f.from_u64(c[2]), f.from_u64(c[3])).ok()
}

fn points(e: &WeierstrassCurve<Fq>, seed: u64, k: usize) -> Vec<CurvePoint<Fq>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..k).map(|_| random_point(e, &mut rng)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn group_law(e in curve_strategy(), seed in any::<u64>()) {
        let pts = points(&e, seed, 3);
        let (p, q, r) = (&pts[0], &pts[1], &pts[2]);
        let o = CurvePoint::Infinity;
        prop_assert!(e.contains(&e.add(p, q)));
        prop_assert_eq!(e.add(p, q), e.add(q, p));
        prop_assert_eq!(e.add(&e.add(p, q), r), e.add(p, &e.add(q, r)));
        prop_assert_eq!(e.add(p, &o), p.clone());
        prop_assert_eq!(e.add(p, &e.neg(p)), o);
        prop_assert_eq!(e.double(p), e.add(p, p));
        prop_assert_eq!(e.mul(5, p), e.add(&e.double(&e.double(p)), p));
        prop_assert_eq!(e.mul(-3, p), e.neg(&e.mul(3, p)));
    }

    #[test]
    fn group_order_kills_points(e in curve_strategy(), seed in any::<u64>()) {
        let n = point_count(&e).unwrap();
        let q = e.a1().field().order_u64().unwrap();
        // Hasse: |n - (q + 1)| <= 2 sqrt(q).
        let t = n as i64 - (q as i64 + 1);
        prop_assert!((t * t) as u64 <= 4 * q);
        for p in points(&e, seed, 2) {
            prop_assert_eq!(e.mul(n as i64, &p), CurvePoint::Infinity);
        }
    }

    #[test]
    fn changes_of_variables(e in curve_strategy(), c in change_strategy(), d in change_strategy(), seed in any::<u64>()) {
        let (Some(ch), Some(ch2)) = (change_on(&e, c), change_on(&e, d)) else { return Ok(()) };
        let e1 = ch.apply(&e).unwrap();
        let u12 = ch.u.pow(12);
        prop_assert_eq!(e1.discriminant().clone() * u12, e.discriminant().clone());
        prop_assert_eq!(e1.j_invariant(), e.j_invariant());
        let pts = points(&e, seed, 2);
        for p in &pts {
            let moved = ch.forward(p);
            prop_assert!(e1.contains(&moved));
            prop_assert_eq!(&ch.backward(&moved), p);
        }
        prop_assert_eq!(ch.forward(&e.add(&pts[0], &pts[1])), e1.add(&ch.forward(&pts[0]), &ch.forward(&pts[1])));
        let both = ch.compose(&ch2);
        prop_assert_eq!(both.apply(&e).unwrap(), ch2.apply(&e1).unwrap());
        prop_assert_eq!(both.forward(&pts[0]), ch2.forward(&ch.forward(&pts[0])));
        let back = ch.inverse();
        prop_assert_eq!(back.apply(&e1).unwrap(), e.clone());
        prop_assert_eq!(ch.compose(&back), VariableChange::identity(e.a1()));
    }
}

#[test]
fn point_counts_against_brute_force() {
    let f = FiniteField::prime(13).unwrap();
    for (a4, a6) in [(1, 2), (0, 1), (2, 0), (5, 7)] {
        let e = WeierstrassCurve::short(f.from_u64(a4), f.from_u64(a6)).unwrap();
        let mut n = 1;
        for x in 0..13u64 {
            for y in 0..13u64 {
                if (y * y) % 13 == (x * x * x + a4 * x + a6) % 13 {
                    n += 1;
                }
            }
        }
        assert_eq!(point_count(&e).unwrap(), n);
    }
}
