use atl::diagram::Diagram;
use proptest::prelude::*;

/// A product of affine generators (e_i, τ, τ⁻¹) on n points.
fn word(n: u32, max: usize) -> impl Strategy<Value = Diagram> {
    prop::collection::vec(0..n as i64 + 2, 0..max).prop_map(move |letters| {
        let mut d = Diagram::identity(n);
        for l in letters {
            let g = match l {
                l if l < n as i64 && n >= 2 => Diagram::e(n, l).unwrap(),
                l if l == n as i64 => Diagram::tau(n),
                _ => Diagram::tau_inv(n),
            };
            d = Diagram::compose(&g, &d).unwrap().0;
        }
        d
    })
}

fn triple() -> impl Strategy<Value = (Diagram, Diagram, Diagram)> {
    (2u32..=6).prop_flat_map(|n| (word(n, 7), word(n, 7), word(n, 7)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn composition_is_associative((a, b, c) in triple()) {
        let (ab, l1) = Diagram::compose(&a, &b).unwrap();
        let (ab_c, l2) = Diagram::compose(&ab, &c).unwrap();
        let (bc, l3) = Diagram::compose(&b, &c).unwrap();
        let (a_bc, l4) = Diagram::compose(&a, &bc).unwrap();
        prop_assert_eq!(ab_c, a_bc);
        prop_assert_eq!(l1 + l2, l3 + l4);
    }

    #[test]
    fn parity_is_additive((a, b, _) in triple()) {
        let (ba, _) = Diagram::compose(&b, &a).unwrap();
        prop_assert_eq!(ba.is_even(), a.is_even() == b.is_even());
    }

    #[test]
    fn through_lines_never_grow((a, b, _) in triple()) {
        let (ba, _) = Diagram::compose(&b, &a).unwrap();
        prop_assert!(ba.through_lines() <= a.through_lines().min(b.through_lines()));
    }

    #[test]
    fn involution_reverses_products((a, b, _) in triple()) {
        let (ab, la) = Diagram::compose(&a, &b).unwrap();
        let (bt_at, lb) = Diagram::compose(&b.involution(), &a.involution()).unwrap();
        prop_assert_eq!(ab.involution(), bt_at);
        prop_assert_eq!(la, lb);
        prop_assert_eq!(a.involution().involution(), a);
    }

    #[test]
    fn identity_is_neutral((a, _, _) in triple()) {
        let id = Diagram::identity(a.left());
        prop_assert_eq!(Diagram::compose(&id, &a).unwrap(), (a.clone(), 0));
        prop_assert_eq!(Diagram::compose(&a, &id).unwrap(), (a, 0));
    }
}
