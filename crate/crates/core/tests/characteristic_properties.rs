mod common;

use std::collections::BTreeSet;

use num_traits::Zero;
use proptest::prelude::*;

use common::{pair_from_raw, product_of_simplices};
use toric_gkm::characteristic::vertex_determinant;
use toric_gkm::fixtures;
use toric_gkm::zlinalg::is_primitive;
use toric_gkm::{CharacteristicPair, SimplePolytope};

fn polytopes() -> Vec<SimplePolytope> {
    vec![
        fixtures::simplex_polytope(2),
        product_of_simplices(&[1, 1]),
        fixtures::simplex_polytope(3),
        fixtures::prism_polytope(),
        product_of_simplices(&[1, 1, 1]),
    ]
}

/// A random polytope from the list above with a random characteristic function.
fn random_pair() -> impl Strategy<Value = CharacteristicPair> {
    (0..polytopes().len())
        .prop_flat_map(|i| {
            let p = polytopes().swap_remove(i);
            let raw = prop::collection::vec(prop::collection::vec(-3i64..=3, p.dim()), p.facet_count());
            (Just(p), raw)
        })
        .prop_filter_map("degenerate characteristic function", |(p, raw)| pair_from_raw(&p, &raw))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn vertex_group_order_is_determinant(pair in random_pair()) {
        let top = pair.polytope.top();
        for v in 0..pair.polytope.vertex_count() {
            let g = pair.local_group(top, v).unwrap();
            prop_assert_eq!(g.order(), vertex_determinant(&pair, v));
        }
    }

    #[test]
    fn induced_values_are_primitive_and_valid(pair in random_pair()) {
        let p = &pair.polytope;
        for face in 0..p.faces().len() {
            if face == p.top() || p.face_dim(face) == 0 {
                continue;
            }
            let induced = pair.induced(face).unwrap();
            prop_assert!(induced.facets.iter().all(|h| is_primitive(&h.value)));
            let sub = induced.to_pair(&pair).unwrap();
            prop_assert!(sub.validate().is_valid());
        }
    }

    #[test]
    fn double_induction_agrees(pair in random_pair()) {
        let p = &pair.polytope;
        for outer in 0..p.faces().len() {
            if outer == p.top() || p.face_dim(outer) == 0 {
                continue;
            }
            let sub = pair.induced(outer).unwrap().to_pair(&pair).unwrap();
            for inner in 0..p.faces().len() {
                if !p.face(inner).is_subface_of(p.face(outer)) {
                    continue;
                }
                let names: BTreeSet<usize> = p
                    .face(inner)
                    .vertices
                    .iter()
                    .map(|&v| sub.polytope.find_vertex(&p.vertex_names()[v]).unwrap())
                    .collect();
                let inner_sub = sub.polytope.face_by_vertices(&names).unwrap();
                for &v in &p.face(inner).vertices {
                    let w = sub.polytope.find_vertex(&p.vertex_names()[v]).unwrap();
                    let direct = pair.local_group(inner, v).unwrap();
                    let twice = sub.local_group(inner_sub, w).unwrap();
                    prop_assert_eq!(direct, twice);
                }
            }
        }
    }

    #[test]
    fn face_groups_surject_upwards(pair in random_pair()) {
        let p = &pair.polytope;
        for (f, g) in p.covering_pairs() {
            if g == p.top() {
                continue;
            }
            let small = pair.face_group(f).unwrap().order();
            let large = pair.face_group(g).unwrap().order();
            prop_assert!((&small % &large).is_zero(), "|G_F| = {} not divisible by |G_F'| = {}", small, large);
        }
    }
}

#[test]
fn smooth_fixtures_have_trivial_groups() {
    for pair in [
        fixtures::simplex(2),
        fixtures::simplex(3),
        fixtures::square(),
        fixtures::cube(),
    ] {
        let p = &pair.polytope;
        for face in 0..p.faces().len() {
            for &v in &p.face(face).vertices {
                assert!(pair.local_group(face, v).unwrap().is_trivial());
            }
        }
    }
}

#[test]
fn wp235_vertex_orders() {
    let pair = fixtures::wp235();
    let p = &pair.polytope;
    let mut orders: Vec<(Vec<usize>, u64)> = (0..3)
        .map(|v| {
            let facets = p.vertex_facets(v).iter().copied().collect();
            let order = pair.local_group(p.top(), v).unwrap().order();
            (facets, u64::try_from(order).unwrap())
        })
        .collect();
    orders.sort();
    assert_eq!(orders, vec![(vec![0, 1], 5), (vec![0, 2], 3), (vec![1, 2], 2)]);
}
