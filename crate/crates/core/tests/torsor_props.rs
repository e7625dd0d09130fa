use discroot::torsor::{gl2, torsor_elements, wedge_action, Mat2, RankTwoModule, WedgeElement, ZnSquare};
use proptest::prelude::*;

fn level() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![3u32, 4])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn wedge_action_is_simply_transitive(n in level(), i in any::<prop::sample::Index>(), a in 0u32..4, b in 0u32..4) {
        let v = ZnSquare::new(n).unwrap();
        let ts = torsor_elements(&v).unwrap();
        prop_assert_eq!(ts.len(), n as usize);
        let t = i.get(&ts);
        let (a, b) = (a % n, b % n);
        let ab = wedge_action(&v, WedgeElement((a + b) % n), t).unwrap();
        let stepwise = wedge_action(&v, WedgeElement(a), &wedge_action(&v, WedgeElement(b), t).unwrap()).unwrap();
        prop_assert_eq!(&ab, &stepwise);
        let orbit: std::collections::BTreeSet<_> = (0..n).map(|c| wedge_action(&v, WedgeElement(c), t).unwrap()).collect();
        prop_assert_eq!(orbit.len(), n as usize);
    }

    #[test]
    fn linear_action_twists_the_wedge_action_by_det(n in level(), gi in any::<prop::sample::Index>(), hi in any::<prop::sample::Index>(), ti in any::<prop::sample::Index>(), c in 0u32..4) {
        let v = ZnSquare::new(n).unwrap();
        let group = gl2(n);
        let (g, h): (&Mat2, &Mat2) = (gi.get(&group), hi.get(&group));
        let ts = torsor_elements(&v).unwrap();
        let t = ti.get(&ts);
        let c = c % n;
        let lhs = wedge_action(&v, WedgeElement(c), t).unwrap().apply_linear(&v, g).unwrap();
        let rhs = wedge_action(&v, WedgeElement(c * g.det() % n), &t.apply_linear(&v, g).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        let composed = t.apply_linear(&v, &g.mul(h)).unwrap();
        let stepwise = t.apply_linear(&v, h).unwrap().apply_linear(&v, g).unwrap();
        prop_assert_eq!(composed, stepwise);
        prop_assert!(ts.contains(&t.apply_linear(&v, g).unwrap()));
    }

    #[test]
    fn wedge_pairing_is_alternating(n in level(), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let v = ZnSquare::new(n).unwrap();
        let els = v.elements();
        let (x, y) = (a.get(&els), b.get(&els));
        prop_assert_eq!(v.wedge(x, x), 0);
        prop_assert_eq!((v.wedge(x, y) + v.wedge(y, x)) % n, 0);
    }
}

#[test]
fn gl2_orders() {
    assert_eq!(gl2(3).len(), 48);
    assert_eq!(gl2(4).len(), 96);
}
