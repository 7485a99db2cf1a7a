mod common;

use proptest::prelude::*;

use common::{all_fixtures, pair_from_raw, product_of_simplices};
use toric_gkm::fixtures;
use toric_gkm::retraction::{
    count_retractions, enumerate_retractions, is_divisive, step_groups, Divisiveness, RetractionSequence,
};
use toric_gkm::{CharacteristicPair, SimplePolytope};

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

#[test]
fn enumeration_matches_permutation_search() {
    for (name, pair) in all_fixtures() {
        let p = &pair.polytope;
        let valid = permutations(p.vertex_count())
            .iter()
            .filter(|order| RetractionSequence::from_vertex_order(p, order).is_ok())
            .count() as u64;
        assert_eq!(count_retractions(p), valid, "{name}");
    }
}

#[test]
fn sequences_are_well_formed() {
    for (name, pair) in all_fixtures() {
        let p = &pair.polytope;
        for seq in enumerate_retractions(p, None) {
            let order = seq.vertex_order();
            let mut sorted = order.clone();
            sorted.sort_unstable();
            assert_eq!(
                sorted,
                (0..p.vertex_count()).collect::<Vec<_>>(),
                "{name}: each vertex once"
            );
            for (l, step) in seq.steps().iter().enumerate() {
                for &gone in &order[..l] {
                    assert!(
                        !step.complex.vertices(p).any(|v| v == gone),
                        "{name}: removed vertex returns"
                    );
                }
                assert!(p.face(step.face).contains_vertex(step.vertex));
            }
            // every prefix replays on its own
            for l in 1..=order.len() {
                let prefix: Vec<_> = seq.steps()[..l].iter().map(|s| (s.face, s.vertex)).collect();
                let replayed = RetractionSequence::replay(p, &prefix);
                assert!(l < order.len() || replayed.is_ok(), "{name}: full sequence must replay");
                if let Err(e) = replayed {
                    assert!(e.to_string().contains("remain"), "{name}: prefix step rejected: {e}");
                }
            }
            let dims = seq.cell_dimensions(p).dims;
            let skeleton = seq.directed_skeleton(p);
            for (i, &d) in dims.iter().enumerate() {
                assert_eq!(skeleton.in_degree(i), d, "{name}: in-degree at step {i}");
            }
        }
    }
}

/// Divisive iff some enumerated sequence has trivial step groups before the last step.
fn brute_force_divisive(pair: &CharacteristicPair) -> bool {
    enumerate_retractions(&pair.polytope, None).iter().any(|seq| {
        let groups = step_groups(pair, seq).unwrap();
        groups[..groups.len() - 1].iter().all(|g| g.is_trivial())
    })
}

fn polytopes() -> Vec<SimplePolytope> {
    vec![
        fixtures::simplex_polytope(2),
        product_of_simplices(&[1, 1]),
        fixtures::simplex_polytope(3),
        fixtures::prism_polytope(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn divisive_search_matches_exhaustive_check(
        pair in (0..4usize)
            .prop_flat_map(|i| {
                let p = polytopes().swap_remove(i);
                let raw = prop::collection::vec(prop::collection::vec(-3i64..=3, p.dim()), p.facet_count());
                (Just(p), raw)
            })
            .prop_filter_map("degenerate", |(p, raw)| pair_from_raw(&p, &raw))
    ) {
        let verdict = is_divisive(&pair, None).unwrap();
        let expected = brute_force_divisive(&pair);
        match verdict {
            Divisiveness::Divisive(seq) => {
                prop_assert!(expected);
                let groups = step_groups(&pair, &seq).unwrap();
                prop_assert!(groups[..groups.len() - 1].iter().all(|g| g.is_trivial()));
            }
            Divisiveness::NotDivisive(_) => prop_assert!(!expected),
            Divisiveness::Undecided { .. } => prop_assert!(false, "unbounded search gave up"),
        }
    }
}

#[test]
fn tiny_budget_is_undecided() {
    let verdict = is_divisive(&fixtures::prism(), Some(2)).unwrap();
    assert!(matches!(verdict, Divisiveness::Undecided { .. }), "{verdict:?}");
}
