//! Simple polytopes given combinatorially by facet–vertex incidence.

use std::collections::{BTreeSet, HashMap, VecDeque};

use thiserror::Error;

/// Index into [`SimplePolytope::faces`].
pub type FaceId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolytopeError {
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("vertex {vertex} references facet {facet}, but there are only {facet_count} facets")]
    FacetOutOfRange {
        vertex: usize,
        facet: usize,
        facet_count: usize,
    },
    #[error("not simple: {0}")]
    NotSimple(String),
    #[error("vertices {0} and {1} lie on the same facets")]
    DuplicateVertex(usize, usize),
    #[error("the vertex-edge graph is disconnected")]
    DisconnectedSkeleton,
    #[error("too few elements: {0}")]
    TooSmall(String),
    #[error("names do not match: {0}")]
    BadNames(String),
}

/// A nonempty face, identified by its vertex set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    /// All facets containing the face.
    pub facets: BTreeSet<usize>,
    pub vertices: BTreeSet<usize>,
    pub codim: usize,
}

impl Face {
    pub fn contains_vertex(&self, v: usize) -> bool {
        self.vertices.contains(&v)
    }

    pub fn is_subface_of(&self, other: &Face) -> bool {
        self.vertices.is_subset(&other.vertices)
    }
}

/// An edge of the 1-skeleton.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub face: FaceId,
    pub endpoints: (usize, usize),
}

/// Simple `n`-polytope as an abstract face lattice.
#[derive(Debug, Clone)]
pub struct SimplePolytope {
    dim: usize,
    facet_names: Vec<String>,
    vertex_names: Vec<String>,
    vertex_facets: Vec<BTreeSet<usize>>,
    faces: Vec<Face>,
    by_vertices: HashMap<BTreeSet<usize>, FaceId>,
    vertex_face: Vec<FaceId>,
    faces_at_vertex: Vec<Vec<FaceId>>,
    edges: Vec<Edge>,
}

impl SimplePolytope {
    /// Validates the incidence data and generates the face lattice.
    /// Facets are named `F1, F2, …` and vertices `v1, v2, …`.
    pub fn build(dim: usize, facet_count: usize, vertex_facets: &[Vec<usize>]) -> Result<Self, PolytopeError> {
        let facet_names = (1..=facet_count).map(|i| format!("F{i}")).collect();
        let vertex_names = (1..=vertex_facets.len()).map(|i| format!("v{i}")).collect();
        Self::build_named(dim, facet_names, vertex_names, vertex_facets)
    }

    pub fn build_named(
        dim: usize,
        facet_names: Vec<String>,
        vertex_names: Vec<String>,
        vertex_facets: &[Vec<usize>],
    ) -> Result<Self, PolytopeError> {
        if dim == 0 {
            return Err(PolytopeError::ZeroDimension);
        }
        if vertex_names.len() != vertex_facets.len() {
            return Err(PolytopeError::BadNames(format!(
                "{} vertex names for {} vertices",
                vertex_names.len(),
                vertex_facets.len()
            )));
        }
        for names in [&facet_names, &vertex_names] {
            let distinct: BTreeSet<&String> = names.iter().collect();
            if distinct.len() != names.len() {
                return Err(PolytopeError::BadNames("names must be distinct".into()));
            }
        }
        let facet_count = facet_names.len();
        let mut sets = Vec::with_capacity(vertex_facets.len());
        for (v, list) in vertex_facets.iter().enumerate() {
            if let Some(&facet) = list.iter().find(|&&f| f >= facet_count) {
                return Err(PolytopeError::FacetOutOfRange {
                    vertex: v,
                    facet,
                    facet_count,
                });
            }
            let set: BTreeSet<usize> = list.iter().copied().collect();
            if set.len() != dim || list.len() != dim {
                return Err(PolytopeError::NotSimple(format!(
                    "vertex {} lies on {} facets, expected {dim}",
                    vertex_names[v],
                    list.len()
                )));
            }
            sets.push(set);
        }
        let mut seen: HashMap<&BTreeSet<usize>, usize> = HashMap::new();
        for (v, set) in sets.iter().enumerate() {
            if let Some(&w) = seen.get(set) {
                return Err(PolytopeError::DuplicateVertex(w, v));
            }
            seen.insert(set, v);
        }
        if facet_count < dim + 1 || sets.len() < dim + 1 {
            return Err(PolytopeError::TooSmall(format!(
                "{facet_count} facets and {} vertices in dimension {dim}",
                sets.len()
            )));
        }
        if let Some(f) = (0..facet_count).find(|f| sets.iter().all(|s| !s.contains(f))) {
            return Err(PolytopeError::TooSmall(format!(
                "facet {} contains no vertex",
                facet_names[f]
            )));
        }

        // every face is the intersection of some facets through one of its vertices
        let mut minimal: HashMap<BTreeSet<usize>, usize> = HashMap::new();
        for set in &sets {
            let facets: Vec<usize> = set.iter().copied().collect();
            for mask in 0u64..(1u64 << dim) {
                let subset: Vec<usize> = (0..dim).filter(|b| mask & (1 << b) != 0).map(|b| facets[b]).collect();
                let verts: BTreeSet<usize> = (0..sets.len())
                    .filter(|&w| subset.iter().all(|f| sets[w].contains(f)))
                    .collect();
                let size = subset.len();
                minimal.entry(verts).and_modify(|s| *s = (*s).min(size)).or_insert(size);
            }
        }

        let mut faces = Vec::with_capacity(minimal.len());
        for (verts, codim) in minimal {
            let mut it = verts.iter();
            let first = *it.next().expect("faces are nonempty");
            let facets: BTreeSet<usize> = it.fold(sets[first].clone(), |acc, &w| {
                acc.intersection(&sets[w]).copied().collect()
            });
            if facets.len() != codim {
                return Err(PolytopeError::NotSimple(format!(
                    "a face cut out by {codim} facets lies on {} facets",
                    facets.len()
                )));
            }
            faces.push(Face {
                facets,
                vertices: verts,
                codim,
            });
        }
        faces.sort_by(|a, b| {
            b.codim
                .cmp(&a.codim)
                .then_with(|| a.vertices.iter().cmp(b.vertices.iter()))
        });

        let by_vertices: HashMap<BTreeSet<usize>, FaceId> =
            faces.iter().enumerate().map(|(i, f)| (f.vertices.clone(), i)).collect();
        let vertex_face: Vec<FaceId> = (0..sets.len()).map(|v| by_vertices[&BTreeSet::from([v])]).collect();
        let mut faces_at_vertex = vec![Vec::new(); sets.len()];
        for (id, face) in faces.iter().enumerate() {
            for &v in &face.vertices {
                faces_at_vertex[v].push(id);
            }
        }

        let mut edges = Vec::new();
        for (id, face) in faces.iter().enumerate() {
            if face.codim + 1 != dim {
                continue;
            }
            let ends: Vec<usize> = face.vertices.iter().copied().collect();
            if ends.len() != 2 {
                return Err(PolytopeError::NotSimple(format!("an edge has {} vertices", ends.len())));
            }
            edges.push(Edge {
                face: id,
                endpoints: (ends[0], ends[1]),
            });
        }

        let polytope = SimplePolytope {
            dim,
            facet_names,
            vertex_names,
            vertex_facets: sets,
            faces,
            by_vertices,
            vertex_face,
            faces_at_vertex,
            edges,
        };
        if !polytope.skeleton_connected() {
            return Err(PolytopeError::DisconnectedSkeleton);
        }
        Ok(polytope)
    }

    fn skeleton_connected(&self) -> bool {
        let n = self.vertex_count();
        let mut adjacent = vec![Vec::new(); n];
        for e in &self.edges {
            adjacent[e.endpoints.0].push(e.endpoints.1);
            adjacent[e.endpoints.1].push(e.endpoints.0);
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for &w in &adjacent[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn facet_count(&self) -> usize {
        self.facet_names.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_facets.len()
    }

    pub fn facet_names(&self) -> &[String] {
        &self.facet_names
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertex_names
    }

    pub fn vertex_facets(&self, v: usize) -> &BTreeSet<usize> {
        &self.vertex_facets[v]
    }

    /// All nonempty faces, vertices first and `Q` last.
    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, id: FaceId) -> &Face {
        &self.faces[id]
    }

    pub fn face_dim(&self, id: FaceId) -> usize {
        self.dim - self.faces[id].codim
    }

    /// The face `Q` itself.
    pub fn top(&self) -> FaceId {
        self.faces.len() - 1
    }

    pub fn vertex_face(&self, v: usize) -> FaceId {
        self.vertex_face[v]
    }

    /// Faces containing `v`, in face order.
    pub fn faces_at_vertex(&self, v: usize) -> &[FaceId] {
        &self.faces_at_vertex[v]
    }

    pub fn face_by_vertices(&self, vertices: &BTreeSet<usize>) -> Option<FaceId> {
        self.by_vertices.get(vertices).copied()
    }

    /// The intersection of the given facets, if it is nonempty.
    pub fn face_by_facets(&self, facets: &[usize]) -> Option<FaceId> {
        let verts: BTreeSet<usize> = (0..self.vertex_count())
            .filter(|&v| facets.iter().all(|f| self.vertex_facets[v].contains(f)))
            .collect();
        if verts.is_empty() {
            return None;
        }
        self.face_by_vertices(&verts)
    }

    pub fn facet_face(&self, facet: usize) -> FaceId {
        self.face_by_facets(&[facet]).expect("facets are nonempty")
    }

    /// Facets of the face `F` as pairs `(i, H)` with `H = F ∩ F_i`, ordered by `i`.
    pub fn facets_of_face(&self, id: FaceId) -> Vec<(usize, FaceId)> {
        let face = &self.faces[id];
        let mut out = Vec::new();
        for i in 0..self.facet_count() {
            if face.facets.contains(&i) {
                continue;
            }
            let mut facets: Vec<usize> = face.facets.iter().copied().collect();
            facets.push(i);
            if let Some(h) = self.face_by_facets(&facets) {
                if self.faces[h].codim == face.codim + 1 && self.faces[h].facets.contains(&i) {
                    out.push((i, h));
                }
            }
        }
        out
    }

    /// Pairs `(F, F′)` with `F ⊂ F′` and `dim F′ = dim F + 1`.
    pub fn covering_pairs(&self) -> Vec<(FaceId, FaceId)> {
        let mut out = Vec::new();
        for (a, fa) in self.faces.iter().enumerate() {
            for (b, fb) in self.faces.iter().enumerate() {
                if fb.codim + 1 == fa.codim && fa.is_subface_of(fb) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Edges incident to `v`.
    pub fn edges_at(&self, v: usize) -> impl Iterator<Item = &Edge> {
        self.edges
            .iter()
            .filter(move |e| e.endpoints.0 == v || e.endpoints.1 == v)
    }

    /// Canonical display name: `Q`, a vertex name, or facet names joined by `∩`.
    pub fn face_name(&self, id: FaceId) -> String {
        let face = &self.faces[id];
        if face.facets.is_empty() {
            return "Q".to_string();
        }
        if face.codim == self.dim {
            let v = *face.vertices.iter().next().expect("vertex face");
            return self.vertex_names[v].clone();
        }
        face.facets
            .iter()
            .map(|&f| self.facet_names[f].as_str())
            .collect::<Vec<_>>()
            .join("∩")
    }

    /// Resolves `Q`, a vertex name, or facet names separated by `∩`, `^`, `&` or `,`.
    pub fn find_face(&self, name: &str) -> Option<FaceId> {
        let name = name.trim();
        if name == "Q" {
            return Some(self.top());
        }
        if let Some(v) = self.vertex_names.iter().position(|n| n == name) {
            return Some(self.vertex_face[v]);
        }
        let mut facets = Vec::new();
        for part in name.split(['∩', '^', '&', ',']) {
            let part = part.trim();
            facets.push(self.facet_names.iter().position(|n| n == part)?);
        }
        self.face_by_facets(&facets)
    }

    pub fn find_vertex(&self, name: &str) -> Option<usize> {
        self.vertex_names.iter().position(|n| n == name)
    }

    /// `f_k` = number of `k`-dimensional faces, `k = 0..=n`.
    pub fn f_vector(&self) -> Vec<u64> {
        let mut f = vec![0; self.dim + 1];
        for face in &self.faces {
            f[self.dim - face.codim] += 1;
        }
        f
    }

    /// `h_k = Σ_{i ≥ k} (−1)^{i−k} C(i, k) f_i`.
    pub fn h_vector(&self) -> Vec<i64> {
        let f = self.f_vector();
        (0..=self.dim)
            .map(|k| {
                (k..=self.dim)
                    .map(|i| {
                        let sign = if (i - k) % 2 == 0 { 1 } else { -1 };
                        sign * binomial(i, k) * f[i] as i64
                    })
                    .sum()
            })
            .collect()
    }
}

fn binomial(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i as i64 + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn triangle_has_seven_faces() {
        let t = fixtures::simplex_polytope(2);
        assert_eq!(t.vertex_count(), 3);
        assert_eq!(t.faces().len(), 7);
        assert_eq!(t.edges().len(), 3);
        assert_eq!(t.h_vector(), vec![1, 1, 1]);
    }

    #[test]
    fn interval_faces() {
        let p = fixtures::interval().polytope;
        assert_eq!(p.faces().len(), 3);
        assert_eq!(p.edges().len(), 1);
        assert_eq!(p.edges()[0].face, p.top());
        assert_eq!(p.h_vector(), vec![1, 1]);
    }

    #[test]
    fn square_h_vector() {
        let p = fixtures::square().polytope;
        assert_eq!(p.f_vector(), vec![4, 4, 1]);
        assert_eq!(p.h_vector(), vec![1, 2, 1]);
    }

    #[test]
    fn non_simple_vertex_is_rejected() {
        let err = SimplePolytope::build(2, 4, &[vec![0, 1, 2], vec![1, 2], vec![2, 3], vec![3, 0]]).unwrap_err();
        assert!(matches!(err, PolytopeError::NotSimple(_)));
    }

    #[test]
    fn duplicate_vertex_is_rejected() {
        let err = SimplePolytope::build(2, 3, &[vec![0, 1], vec![1, 0], vec![1, 2], vec![0, 2]]).unwrap_err();
        assert_eq!(err, PolytopeError::DuplicateVertex(0, 1));
    }

    #[test]
    fn disconnected_skeleton_is_rejected() {
        // two disjoint triangles sharing no facet
        let err = SimplePolytope::build(
            2,
            6,
            &[vec![0, 1], vec![1, 2], vec![0, 2], vec![3, 4], vec![4, 5], vec![3, 5]],
        )
        .unwrap_err();
        assert_eq!(err, PolytopeError::DisconnectedSkeleton);
    }

    #[test]
    fn out_of_range_facet_is_rejected() {
        let err = SimplePolytope::build(2, 3, &[vec![0, 1], vec![1, 5], vec![0, 2]]).unwrap_err();
        assert!(matches!(err, PolytopeError::FacetOutOfRange { facet: 5, .. }));
    }

    #[test]
    fn face_names_resolve() {
        let p = fixtures::prism().polytope;
        for id in 0..p.faces().len() {
            assert_eq!(p.find_face(&p.face_name(id)), Some(id));
        }
        assert_eq!(p.find_face("F4^F2"), p.find_face("F2∩F4"));
        assert_eq!(p.find_face("F1,F5"), None);
    }

    #[test]
    fn facets_of_a_facet_are_its_edges() {
        let p = fixtures::prism().polytope;
        let f5 = p.facet_face(4);
        let sub = p.facets_of_face(f5);
        assert_eq!(sub.len(), 3);
        assert!(sub.iter().all(|&(_, h)| p.face_dim(h) == 1));
    }
}
