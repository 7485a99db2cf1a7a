use num_bigint::BigInt;
use num_traits::Zero;

use super::ideal::LatticeIdeal;
use super::GkmError;
use crate::characteristic::CharacteristicPair;
use crate::polytope::FaceId;
use crate::retraction::RetractionSequence;
use crate::zlinalg::{kernel_basis, to_i64_vector};

/// Primitive generator of `{ x : ⟨x, λ(F)⟩ = 0 for every facet F ⊇ E }`,
/// first nonzero coordinate positive.
pub fn edge_character(pair: &CharacteristicPair, edge: FaceId) -> Result<Vec<i64>, GkmError> {
    let kernel = kernel_basis(&pair.face_matrix(edge));
    match kernel.as_slice() {
        [u] => to_i64_vector(u).ok_or(GkmError::Overflow),
        _ => Err(GkmError::DegenerateEdge(edge)),
    }
}

/// Generators `u_1, …, u_k` of the face ideal `J_F`: a saturated basis of the
/// kernel of the `n × (n − k)` matrix of characteristic vectors around `F`.
pub fn face_ideal(pair: &CharacteristicPair, face: FaceId) -> Result<Vec<Vec<i64>>, GkmError> {
    let kernel = kernel_basis(&pair.face_matrix(face));
    let k = pair.polytope.face_dim(face);
    if kernel.len() != k {
        return Err(GkmError::DegenerateEdge(face));
    }
    kernel
        .iter()
        .map(|u| to_i64_vector(u).ok_or(GkmError::Overflow))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GkmEdge {
    /// The edge as a face of `Q`, when the graph comes from a polytope.
    pub face: Option<FaceId>,
    /// Vertex ids, smaller first.
    pub endpoints: (usize, usize),
    pub character: Vec<i64>,
}

/// The 1-skeleton with edge characters and the in-neighbor sets of a retraction order.
#[derive(Debug, Clone)]
pub struct GkmGraph {
    dim: usize,
    order: Vec<usize>,
    position: Vec<usize>,
    edges: Vec<GkmEdge>,
    in_neighbors: Vec<Vec<usize>>,
    ideals: Vec<LatticeIdeal>,
}

impl GkmGraph {
    pub fn build(pair: &CharacteristicPair, seq: &RetractionSequence) -> Result<Self, GkmError> {
        let polytope = &pair.polytope;
        let edges = polytope
            .edges()
            .iter()
            .map(|e| {
                Ok(GkmEdge {
                    face: Some(e.face),
                    endpoints: e.endpoints,
                    character: edge_character(pair, e.face)?,
                })
            })
            .collect::<Result<Vec<_>, GkmError>>()?;
        Self::from_parts(pair.dim(), seq.vertex_order(), edges)
    }

    /// Assembles a graph from raw parts; `order` lists every vertex once.
    pub fn from_parts(dim: usize, order: Vec<usize>, mut edges: Vec<GkmEdge>) -> Result<Self, GkmError> {
        let mut position = vec![usize::MAX; order.len()];
        for (i, &v) in order.iter().enumerate() {
            position[v] = i;
        }
        for e in &mut edges {
            if e.endpoints.0 > e.endpoints.1 {
                e.endpoints = (e.endpoints.1, e.endpoints.0);
            }
        }
        edges.sort_by(|a, b| {
            a.endpoints
                .cmp(&b.endpoints)
                .then_with(|| a.character.cmp(&b.character))
        });
        let mut in_neighbors = vec![Vec::new(); order.len()];
        for e in &edges {
            let (a, b) = e.endpoints;
            let (later, earlier) = if position[a] > position[b] { (a, b) } else { (b, a) };
            in_neighbors[position[earlier]].push(position[later]);
        }
        for list in &mut in_neighbors {
            list.sort_unstable();
        }
        let ideals = edges
            .iter()
            .map(|e| {
                if e.character.len() != dim {
                    return Err(GkmError::DimensionMismatch {
                        expected: dim,
                        found: e.character.len(),
                    });
                }
                if e.character.iter().all(|&a| a == 0) {
                    return Err(GkmError::ZeroVector);
                }
                LatticeIdeal::new(dim, vec![e.character.clone()])
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(GkmGraph {
            dim,
            order,
            position,
            edges,
            in_neighbors,
            ideals,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertex_count(&self) -> usize {
        self.order.len()
    }

    /// Vertex ids in retraction order.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn position(&self, v: usize) -> usize {
        self.position[v]
    }

    /// Edges sorted by endpoints.
    pub fn edges(&self) -> &[GkmEdge] {
        &self.edges
    }

    /// `N(i)`: positions `k > i` joined to the `i`-th vertex by an edge.
    pub fn in_neighbors(&self, position: usize) -> &[usize] {
        &self.in_neighbors[position]
    }

    /// The ideal generated by the Euler class of edge `i`.
    pub fn edge_ideal(&self, i: usize) -> &LatticeIdeal {
        &self.ideals[i]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Coprimality {
    Pass,
    /// Two edges at `vertex` with linearly dependent characters.
    Fail {
        vertex: usize,
        edges: (usize, usize),
    },
}

/// Pairwise linear independence of the characters of the edges at each vertex.
pub fn coprimality_check(graph: &GkmGraph) -> Coprimality {
    for &v in graph.order() {
        let incident: Vec<usize> = (0..graph.edges.len())
            .filter(|&i| {
                let (a, b) = graph.edges[i].endpoints;
                a == v || b == v
            })
            .collect();
        for (x, &i) in incident.iter().enumerate() {
            for &j in &incident[x + 1..] {
                if dependent(&graph.edges[i].character, &graph.edges[j].character) {
                    return Coprimality::Fail {
                        vertex: v,
                        edges: (i, j),
                    };
                }
            }
        }
    }
    Coprimality::Pass
}

fn dependent(a: &[i64], b: &[i64]) -> bool {
    // every 2×2 minor vanishes
    (0..a.len()).all(|i| {
        (i + 1..a.len()).all(|j| {
            let m = BigInt::from(a[i]) * b[j] - BigInt::from(a[j]) * b[i];
            m.is_zero()
        })
    })
}
