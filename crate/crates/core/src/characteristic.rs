//! Characteristic functions, their projections to faces, and local groups.

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::polytope::{FaceId, PolytopeError, SimplePolytope};
use crate::zlinalg::{
    express_in_basis, is_primitive, primitive_part, quotient_invariants, quotient_projection, saturate,
    smith_normal_form, FiniteAbelianGroup, IntMatrix, IntVector,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharacteristicError {
    #[error("facet {facet}: characteristic vector has length {found}, expected {expected}")]
    DimensionMismatch {
        facet: usize,
        expected: usize,
        found: usize,
    },
    #[error("{found} characteristic vectors for {expected} facets")]
    FacetCountMismatch { expected: usize, found: usize },
    #[error("invalid face: {0}")]
    InvalidFace(String),
    #[error("vertex {vertex} is not a vertex of face {face}")]
    VertexNotInFace { vertex: usize, face: FaceId },
    #[error("characteristic vectors at vertex {vertex} of face {face} do not span a full-rank lattice")]
    DegenerateVertex { vertex: usize, face: FaceId },
    #[error("not a characteristic pair: {0}")]
    Invalid(ValidationReport),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
}

/// Everything wrong with a candidate characteristic function.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    /// Vertices whose `n` characteristic vectors are linearly dependent.
    pub dependent_vertices: Vec<usize>,
    pub non_primitive_facets: Vec<usize>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.dependent_vertices.is_empty() && self.non_primitive_facets.is_empty()
    }
}

impl std::fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "dependent at vertices {:?}, non-primitive at facets {:?}",
            self.dependent_vertices, self.non_primitive_facets
        )
    }
}

/// A simple polytope with an integer vector on every facet.
#[derive(Debug, Clone)]
pub struct CharacteristicPair {
    pub polytope: SimplePolytope,
    lambda: Vec<IntVector>,
}

impl CharacteristicPair {
    /// Checks shapes only; see [`CharacteristicPair::validate`] for the
    /// primitivity and independence conditions.
    pub fn new(polytope: SimplePolytope, lambda: Vec<IntVector>) -> Result<Self, CharacteristicError> {
        if lambda.len() != polytope.facet_count() {
            return Err(CharacteristicError::FacetCountMismatch {
                expected: polytope.facet_count(),
                found: lambda.len(),
            });
        }
        let n = polytope.dim();
        if let Some((facet, v)) = lambda.iter().enumerate().find(|(_, v)| v.len() != n) {
            return Err(CharacteristicError::DimensionMismatch {
                facet,
                expected: n,
                found: v.len(),
            });
        }
        Ok(CharacteristicPair { polytope, lambda })
    }

    /// Like [`CharacteristicPair::new`] but rejects invalid characteristic functions.
    pub fn checked(polytope: SimplePolytope, lambda: Vec<IntVector>) -> Result<Self, CharacteristicError> {
        let pair = Self::new(polytope, lambda)?;
        let report = pair.validate();
        if !report.is_valid() {
            return Err(CharacteristicError::Invalid(report));
        }
        Ok(pair)
    }

    pub fn dim(&self) -> usize {
        self.polytope.dim()
    }

    pub fn lambda(&self, facet: usize) -> &IntVector {
        &self.lambda[facet]
    }

    pub fn lambdas(&self) -> &[IntVector] {
        &self.lambda
    }

    /// Characteristic vectors of the facets through `v`, in facet order.
    pub fn vertex_vectors(&self, v: usize) -> Vec<IntVector> {
        self.polytope
            .vertex_facets(v)
            .iter()
            .map(|&f| self.lambda[f].clone())
            .collect()
    }

    /// The `n × |facets(F)|` matrix with the characteristic vectors of the
    /// facets containing `F` as columns.
    pub fn face_matrix(&self, face: FaceId) -> IntMatrix {
        let cols: Vec<IntVector> = self
            .polytope
            .face(face)
            .facets
            .iter()
            .map(|&f| self.lambda[f].clone())
            .collect();
        IntMatrix::from_columns(self.dim(), &cols)
    }

    pub fn validate(&self) -> ValidationReport {
        let n = self.dim();
        let non_primitive_facets = (0..self.lambda.len())
            .filter(|&f| !is_primitive(&self.lambda[f]))
            .collect();
        let dependent_vertices = (0..self.polytope.vertex_count())
            .filter(|&v| {
                let m = IntMatrix::from_columns(n, &self.vertex_vectors(v));
                m.determinant().is_some_and(|d| d.is_zero())
            })
            .collect();
        ValidationReport {
            dependent_vertices,
            non_primitive_facets,
        }
    }

    /// Projects `λ` to the face `F`.
    pub fn induced(&self, face: FaceId) -> Result<InducedPair, CharacteristicError> {
        let n = self.dim();
        let f = self.polytope.face(face);
        let generators: Vec<IntVector> = f.facets.iter().map(|&i| self.lambda[i].clone()).collect();
        let projection = quotient_projection(n, &generators);
        let quotient_rank = projection.cols();
        if quotient_rank + f.codim != n {
            return Err(CharacteristicError::InvalidFace(format!(
                "characteristic vectors around {} have rank {} instead of {}",
                self.polytope.face_name(face),
                n - quotient_rank,
                f.codim
            )));
        }
        let mut facets = Vec::new();
        for (i, h) in self.polytope.facets_of_face(face) {
            let image = projection.left_mul_vector(&self.lambda[i]);
            let value = primitive_part(&image).map_err(|_| {
                CharacteristicError::InvalidFace(format!(
                    "λ({}) projects to zero on {}",
                    self.polytope.facet_names()[i],
                    self.polytope.face_name(face)
                ))
            })?;
            facets.push(InducedFacet {
                facet: i,
                face: h,
                value,
            });
        }
        Ok(InducedPair {
            face,
            quotient_rank,
            projection,
            facets,
        })
    }

    /// `G_F(v)`; for `F = Q` this is `G_Q(v) = Z^n / M(v)`.
    pub fn local_group(&self, face: FaceId, v: usize) -> Result<FiniteAbelianGroup, CharacteristicError> {
        if !self.polytope.face(face).contains_vertex(v) {
            return Err(CharacteristicError::VertexNotInFace { vertex: v, face });
        }
        let (rank, vectors) = if face == self.polytope.top() {
            (self.dim(), self.vertex_vectors(v))
        } else {
            let induced = self.induced(face)?;
            let through: Vec<IntVector> = induced
                .facets
                .iter()
                .filter(|h| self.polytope.vertex_facets(v).contains(&h.facet))
                .map(|h| h.value.clone())
                .collect();
            (induced.quotient_rank, through)
        };
        let q = quotient_invariants(rank, &vectors);
        if q.free_rank != 0 || vectors.len() != rank {
            return Err(CharacteristicError::DegenerateVertex { vertex: v, face });
        }
        Ok(q.torsion)
    }

    /// `G_F = M*(F) / M(F)` for a proper face `F`.
    pub fn face_group(&self, face: FaceId) -> Result<FiniteAbelianGroup, CharacteristicError> {
        if face == self.polytope.top() {
            return Err(CharacteristicError::InvalidFace(
                "the face group is defined for proper faces".into(),
            ));
        }
        let n = self.dim();
        let generators: Vec<IntVector> = self
            .polytope
            .face(face)
            .facets
            .iter()
            .map(|&i| self.lambda[i].clone())
            .collect();
        let saturated = saturate(n, &generators);
        if saturated.len() != generators.len() {
            return Err(CharacteristicError::InvalidFace(format!(
                "characteristic vectors around {} are dependent",
                self.polytope.face_name(face)
            )));
        }
        let coordinates: Vec<IntVector> = generators
            .iter()
            .map(|g| express_in_basis(n, &saturated, g).expect("M(F) lies in its saturation"))
            .collect();
        let k = saturated.len();
        let snf = smith_normal_form(&IntMatrix::from_rows(k, &coordinates));
        Ok(FiniteAbelianGroup::from_chain(snf.diagonal()))
    }
}

/// One facet `H_j = F ∩ F_i` of a face together with `λ_F(H_j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedFacet {
    /// The facet `F_i` of `Q`.
    pub facet: usize,
    /// The face `H_j` of `Q`.
    pub face: FaceId,
    pub value: IntVector,
}

/// `(F, λ_F)` together with the projection `Z^n → Z^n/M*(F) ≅ Z^{n−k}` used.
#[derive(Debug, Clone)]
pub struct InducedPair {
    pub face: FaceId,
    pub quotient_rank: usize,
    /// `x ↦ x·projection`.
    pub projection: IntMatrix,
    pub facets: Vec<InducedFacet>,
}

impl InducedPair {
    pub fn value_for(&self, facet: usize) -> Option<&IntVector> {
        self.facets.iter().find(|h| h.facet == facet).map(|h| &h.value)
    }

    /// `(F, λ_F)` as a characteristic pair in its own right; `F` must have
    /// positive dimension. Vertices keep their names from `Q` and facets are
    /// named after the faces `H_j`.
    pub fn to_pair(&self, parent: &CharacteristicPair) -> Result<CharacteristicPair, CharacteristicError> {
        let q = &parent.polytope;
        let face = q.face(self.face);
        let vertices: Vec<usize> = face.vertices.iter().copied().collect();
        let vertex_facets: Vec<Vec<usize>> = vertices
            .iter()
            .map(|&v| {
                self.facets
                    .iter()
                    .enumerate()
                    .filter(|(_, h)| q.vertex_facets(v).contains(&h.facet))
                    .map(|(j, _)| j)
                    .collect()
            })
            .collect();
        let polytope = SimplePolytope::build_named(
            self.quotient_rank,
            self.facets.iter().map(|h| q.face_name(h.face)).collect(),
            vertices.iter().map(|&v| q.vertex_names()[v].clone()).collect(),
            &vertex_facets,
        )?;
        CharacteristicPair::new(polytope, self.facets.iter().map(|h| h.value.clone()).collect())
    }
}

/// `|det|` of the characteristic vectors at `v`.
pub fn vertex_determinant(pair: &CharacteristicPair, v: usize) -> BigInt {
    use num_traits::Signed;
    IntMatrix::from_columns(pair.dim(), &pair.vertex_vectors(v))
        .determinant()
        .expect("square")
        .abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::zlinalg::int_vector;

    #[test]
    fn standard_pairs_are_valid() {
        assert!(fixtures::simplex(2).validate().is_valid());
        assert!(fixtures::prism().validate().is_valid());
        assert!(fixtures::wp235().validate().is_valid());
    }

    #[test]
    fn non_primitive_vector_is_reported() {
        let p = fixtures::simplex_polytope(2);
        let pair =
            CharacteristicPair::new(p, vec![int_vector(&[1, 0]), int_vector(&[0, 1]), int_vector(&[2, 2])]).unwrap();
        let report = pair.validate();
        assert_eq!(report.non_primitive_facets, vec![2]);
        assert!(report.dependent_vertices.is_empty());
    }

    #[test]
    fn dependent_vertex_is_reported() {
        let p = fixtures::simplex_polytope(2);
        let pair =
            CharacteristicPair::new(p, vec![int_vector(&[1, 0]), int_vector(&[-1, 0]), int_vector(&[0, 1])]).unwrap();
        let report = pair.validate();
        // F1 ∩ F2 is the first vertex
        assert_eq!(report.dependent_vertices.len(), 1);
    }

    #[test]
    fn wrong_length_is_rejected() {
        let p = fixtures::simplex_polytope(2);
        let err = CharacteristicPair::new(
            p,
            vec![int_vector(&[1, 0]), int_vector(&[0, 1]), int_vector(&[-1, -1, 0])],
        )
        .unwrap_err();
        assert!(matches!(err, CharacteristicError::DimensionMismatch { facet: 2, .. }));
    }

    #[test]
    fn induced_on_top_is_identity() {
        let pair = fixtures::prism();
        let top = pair.polytope.top();
        let induced = pair.induced(top).unwrap();
        assert_eq!(induced.quotient_rank, 3);
        for h in &induced.facets {
            assert_eq!(&h.value, pair.lambda(h.facet));
        }
    }

    #[test]
    fn induced_on_edge_gives_unit_generators() {
        let pair = fixtures::simplex(2);
        let edge = pair.polytope.facet_face(2);
        let induced = pair.induced(edge).unwrap();
        assert_eq!(induced.quotient_rank, 1);
        assert_eq!(induced.facets.len(), 2);
        for h in &induced.facets {
            assert_eq!(h.value.len(), 1);
            assert_eq!(h.value[0].magnitude(), &1u32.into());
        }
    }

    #[test]
    fn vertex_not_in_face() {
        let pair = fixtures::prism();
        let f5 = pair.polytope.facet_face(4);
        let v1 = pair.polytope.find_vertex("v1").unwrap();
        assert_eq!(
            pair.local_group(f5, v1),
            Err(CharacteristicError::VertexNotInFace { vertex: v1, face: f5 })
        );
    }

    #[test]
    fn face_group_of_top_is_an_error() {
        let pair = fixtures::prism();
        assert!(pair.face_group(pair.polytope.top()).is_err());
    }

    #[test]
    fn face_group_of_non_saturated_edge() {
        // triangle with λ = (1,0), (1,2), (-1,-1): G_Q at F1∩F2 has order 2, but edges are
        // cut out by single primitive vectors, so their face groups are trivial.
        let p = fixtures::simplex_polytope(2);
        let pair =
            CharacteristicPair::checked(p, vec![int_vector(&[1, 0]), int_vector(&[1, 2]), int_vector(&[-1, -1])])
                .unwrap();
        for f in 0..3 {
            assert!(pair.face_group(pair.polytope.facet_face(f)).unwrap().is_trivial());
        }
        let v = pair.polytope.face_by_facets(&[0, 1]).unwrap();
        assert_eq!(pair.face_group(v).unwrap().order(), BigInt::from(2));
    }
}
