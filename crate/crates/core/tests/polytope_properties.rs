mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;

use common::{all_fixtures, product_of_simplices};
use toric_gkm::SimplePolytope;

/// Vertex sets of all nonempty intersections of facets, by subset enumeration.
fn brute_force_faces(p: &SimplePolytope) -> BTreeSet<BTreeSet<usize>> {
    let m = p.facet_count();
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << m) {
        let vertices: BTreeSet<usize> = (0..p.vertex_count())
            .filter(|&v| (0..m).all(|f| mask & (1 << f) == 0 || p.vertex_facets(v).contains(&f)))
            .collect();
        if !vertices.is_empty() {
            out.insert(vertices);
        }
    }
    out
}

fn check_lattice(p: &SimplePolytope) {
    let faces: BTreeSet<BTreeSet<usize>> = p.faces().iter().map(|f| f.vertices.clone()).collect();
    assert_eq!(faces.len(), p.faces().len(), "faces are distinct");
    assert_eq!(faces, brute_force_faces(p));

    let n = p.dim();
    let mut edges: Vec<(usize, usize)> = p
        .faces()
        .iter()
        .filter(|f| f.facets.len() == n - 1)
        .map(|f| {
            let v: Vec<usize> = f.vertices.iter().copied().collect();
            assert_eq!(v.len(), 2, "an edge has two vertices");
            (v[0], v[1])
        })
        .collect();
    edges.sort_unstable();
    let mut skeleton: Vec<(usize, usize)> = p.edges().iter().map(|e| e.endpoints).collect();
    skeleton.sort_unstable();
    assert_eq!(edges, skeleton);

    for f in p.faces() {
        for &v in &f.vertices {
            assert!(p.vertex_facets(v).is_superset(&f.facets));
        }
    }

    let h = p.h_vector();
    assert_eq!(h.iter().sum::<i64>(), p.vertex_count() as i64);
    let mut reversed = h.clone();
    reversed.reverse();
    assert_eq!(h, reversed, "Dehn–Sommerville");
}

#[test]
fn fixture_lattices() {
    for (_, pair) in all_fixtures() {
        check_lattice(&pair.polytope);
    }
}

#[test]
fn fixture_face_counts() {
    let counts: Vec<(String, usize, usize)> = all_fixtures()
        .iter()
        .map(|(name, pair)| {
            (
                name.to_string(),
                pair.polytope.faces().len(),
                pair.polytope.edges().len(),
            )
        })
        .collect();
    let expected = [
        ("interval", 3, 1),
        ("square", 9, 4),
        ("simplex2", 7, 3),
        ("simplex3", 15, 6),
        ("cube", 27, 12),
        ("prism", 21, 9),
        ("wp235", 7, 3),
    ];
    for ((name, faces, edges), (ename, efaces, eedges)) in counts.iter().zip(expected) {
        assert_eq!((name.as_str(), *faces, *edges), (ename, efaces, eedges));
    }
}

#[test]
fn face_names_round_trip() {
    for (_, pair) in all_fixtures() {
        let p = &pair.polytope;
        for id in 0..p.faces().len() {
            assert_eq!(p.find_face(&p.face_name(id)), Some(id));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn products_of_simplices(dims in prop::collection::vec(1usize..=3, 1..=3)) {
        prop_assume!(dims.iter().sum::<usize>() <= 5);
        let p = product_of_simplices(&dims);
        check_lattice(&p);
        let expected: usize = dims.iter().map(|d| d + 1).product();
        prop_assert_eq!(p.vertex_count(), expected);
    }
}
