//! Small characteristic pairs used throughout the tests and examples.

use crate::characteristic::CharacteristicPair;
use crate::polytope::SimplePolytope;
use crate::zlinalg::int_vector;

fn pair(polytope: SimplePolytope, lambda: &[&[i64]]) -> CharacteristicPair {
    let lambda = lambda.iter().map(|v| int_vector(v)).collect();
    CharacteristicPair::checked(polytope, lambda).expect("fixture is a characteristic pair")
}

/// The `n`-simplex; vertex `v_{i+1}` misses facet `F_{n+1−i}`.
pub fn simplex_polytope(n: usize) -> SimplePolytope {
    let vertex_facets: Vec<Vec<usize>> = (0..=n).map(|i| (0..=n).filter(|&f| f != n - i).collect()).collect();
    SimplePolytope::build(n, n + 1, &vertex_facets).expect("simplex")
}

/// `CP^n`: the simplex with `e_1, …, e_n, −(e_1 + ⋯ + e_n)`.
pub fn simplex(n: usize) -> CharacteristicPair {
    let mut lambda: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    lambda.push(vec![-1; n]);
    let refs: Vec<&[i64]> = lambda.iter().map(Vec::as_slice).collect();
    pair(simplex_polytope(n), &refs)
}

/// `CP^1`.
pub fn interval() -> CharacteristicPair {
    let p = SimplePolytope::build_named(
        1,
        vec!["F1".into(), "F2".into()],
        vec!["a".into(), "b".into()],
        &[vec![0], vec![1]],
    )
    .expect("interval");
    pair(p, &[&[1], &[-1]])
}

/// `CP^1 × CP^1`; facets go around the square.
pub fn square() -> CharacteristicPair {
    let p = SimplePolytope::build(2, 4, &[vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]]).expect("square");
    pair(p, &[&[1, 0], &[0, 1], &[-1, 0], &[0, -1]])
}

/// `(CP^1)^3`; `F_i` and `F_{i+3}` are opposite.
pub fn cube() -> CharacteristicPair {
    let mut vertex_facets = Vec::new();
    for a in [0, 3] {
        for b in [1, 4] {
            for c in [2, 5] {
                vertex_facets.push(vec![a, b, c]);
            }
        }
    }
    let p = SimplePolytope::build(3, 6, &vertex_facets).expect("cube");
    pair(
        p,
        &[
            &[1, 0, 0],
            &[0, 1, 0],
            &[0, 0, 1],
            &[-1, 0, 0],
            &[0, -1, 0],
            &[0, 0, -1],
        ],
    )
}

/// The triangular prism with `F_1`, `F_5` the triangles, carrying a
/// characteristic function with vertex orders `1, 1, 3, 1, 3, 5`.
pub fn prism_polytope() -> SimplePolytope {
    SimplePolytope::build(
        3,
        5,
        &[
            vec![0, 1, 2],
            vec![0, 2, 3],
            vec![0, 1, 3],
            vec![1, 2, 4],
            vec![2, 3, 4],
            vec![1, 3, 4],
        ],
    )
    .expect("prism")
}

pub fn prism() -> CharacteristicPair {
    pair(
        prism_polytope(),
        &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[2, -1, 3], &[1, 1, 4]],
    )
}

/// The triangle of the weighted projective plane `CP(2,3,5)`; the vertex
/// orders are 5, 3 and 2, so no vertex is smooth.
pub fn wp235() -> CharacteristicPair {
    pair(simplex_polytope(2), &[&[1, 1], &[1, -4], &[-1, 2]])
}
