use latval_core::group::{complete_primitive, d4_elements, is_d4_invariant};
use latval_core::laws::d4_generators;
use latval_core::rational::rat;
use latval_core::{AffineUnimodular, LatticePolygon, Series2};
use proptest::prelude::*;

fn element() -> impl Strategy<Value = AffineUnimodular> {
    (prop::array::uniform4(-3i64..=3), -4i64..=4, -4i64..=4).prop_filter_map("unimodular", |([a, b, c, d], s, t)| {
        AffineUnimodular::new([[a, b], [c, d]], (s, t)).ok()
    })
}

fn series() -> impl Strategy<Value = Series2> {
    prop::collection::vec(((0u32..=5), (0u32..=5), -9i64..=9), 1..6).prop_map(|terms| {
        Series2::from_terms(5, terms.into_iter().filter(|(p, q, _)| p + q <= 5).map(|(p, q, c)| ((p, q), rat(c, 2))))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn action_respects_composition(a in element(), b in element(), f in series()) {
        let lhs = a.compose(&b).act_on_series(&f);
        let rhs = a.act_on_series(&b.act_on_series(&f));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn inverse_undoes_action(a in element(), f in series()) {
        prop_assert_eq!(a.inverse().act_on_series(&a.act_on_series(&f)), f.clone());
        prop_assert_eq!(a.compose(&a.inverse()), AffineUnimodular::identity());
    }

    #[test]
    fn polygon_action_is_compatible(a in element(), b in element()) {
        let p = LatticePolygon::hull(&[(0, 0), (2, 1), (1, 3), (-1, 1)]).unwrap();
        prop_assert_eq!(a.compose(&b).act_on_polygon(&p), a.act_on_polygon(&b.act_on_polygon(&p)));
        prop_assert_eq!(a.act_on_polygon(&p).area2().unwrap(), p.area2().unwrap());
    }

    #[test]
    fn completion_is_unimodular(w1 in -40i64..=40, w2 in -40i64..=40) {
        let g = num_integer::Integer::gcd(&w1, &w2);
        match complete_primitive((w1, w2)) {
            Ok(m) => {
                prop_assert_eq!(g, 1);
                prop_assert_eq!(m.det(), 1);
                prop_assert_eq!(m.apply((1, 0)), (w1, w2));
            }
            Err(_) => prop_assert_ne!(g, 1),
        }
    }
}

#[test]
fn products_of_generators_are_invariant() {
    let (p1, p2) = d4_generators(10);
    assert_eq!(d4_elements().len(), 8);
    for h in [&p1 * &p2, &(&p1 * &p1) + &p2, Series2::one(10)] {
        assert!(is_d4_invariant(&h).invariant);
    }
}
