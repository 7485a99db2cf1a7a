//! Retraction sequences of simple polytopes and divisiveness certificates.
//!
//! A retraction removes one free vertex at a time. A vertex `v` of a
//! subcomplex `B` is free when the faces of `B` containing `v` have a unique
//! maximal element `P`; the step then records `P` and passes to the union of
//! the faces of `B` avoiding `v`.

use std::collections::HashMap;
use std::ops::ControlFlow;

use thiserror::Error;

use crate::characteristic::{CharacteristicError, CharacteristicPair};
use crate::polytope::{FaceId, SimplePolytope};
use crate::zlinalg::FiniteAbelianGroup;

/// Default node budget for the divisiveness search.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RetractionError {
    #[error("vertex {0} is not a free vertex of the subcomplex")]
    NotFreeVertex(usize),
    #[error("step {step}: {reason}")]
    InvalidStep { step: usize, reason: String },
    #[error(transparent)]
    Characteristic(#[from] CharacteristicError),
}

/// A subcomplex of the face lattice, closed under taking faces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subcomplex {
    members: Vec<bool>,
    removed: Vec<usize>,
}

impl Subcomplex {
    /// All faces of `Q`.
    pub fn full(polytope: &SimplePolytope) -> Self {
        Subcomplex {
            members: vec![true; polytope.faces().len()],
            removed: Vec::new(),
        }
    }

    /// The faces of `face` as a subcomplex, with nothing removed.
    pub fn of_face(polytope: &SimplePolytope, face: FaceId) -> Self {
        let top = polytope.face(face);
        Subcomplex {
            members: polytope.faces().iter().map(|g| g.is_subface_of(top)).collect(),
            removed: Vec::new(),
        }
    }

    /// The union of the given faces and all their subfaces.
    pub fn generated_by(polytope: &SimplePolytope, faces: &[FaceId]) -> Self {
        let members = polytope
            .faces()
            .iter()
            .map(|g| faces.iter().any(|&f| g.is_subface_of(polytope.face(f))))
            .collect();
        Subcomplex {
            members,
            removed: Vec::new(),
        }
    }

    pub fn contains(&self, face: FaceId) -> bool {
        self.members[face]
    }

    pub fn is_empty(&self) -> bool {
        !self.members.iter().any(|&m| m)
    }

    pub fn faces(&self) -> impl Iterator<Item = FaceId> + '_ {
        self.members.iter().enumerate().filter(|(_, &m)| m).map(|(i, _)| i)
    }

    /// Vertices removed by the steps leading to this complex, in order.
    pub fn removed(&self) -> &[usize] {
        &self.removed
    }

    pub fn vertices<'a>(&'a self, polytope: &'a SimplePolytope) -> impl Iterator<Item = usize> + 'a {
        (0..polytope.vertex_count()).filter(move |&v| self.members[polytope.vertex_face(v)])
    }

    /// Faces of the complex not contained in another of its faces.
    pub fn maximal_faces(&self, polytope: &SimplePolytope) -> Vec<FaceId> {
        let members: Vec<FaceId> = self.faces().collect();
        members
            .iter()
            .copied()
            .filter(|&f| {
                !members
                    .iter()
                    .any(|&g| g != f && polytope.face(f).is_subface_of(polytope.face(g)))
            })
            .collect()
    }

    /// The unique maximal face of the complex at `v`, if `v` is free.
    pub fn free_face(&self, polytope: &SimplePolytope, v: usize) -> Option<FaceId> {
        if !self.members[polytope.vertex_face(v)] {
            return None;
        }
        let star: Vec<FaceId> = polytope
            .faces_at_vertex(v)
            .iter()
            .copied()
            .filter(|&f| self.members[f])
            .collect();
        let top = *star
            .iter()
            .max_by_key(|&&f| polytope.face_dim(f))
            .expect("the vertex itself is in the star");
        let p = polytope.face(top);
        // the star must be exactly the faces of P through v
        let covered = star.iter().all(|&f| polytope.face(f).is_subface_of(p));
        let complete = polytope
            .faces_at_vertex(v)
            .iter()
            .filter(|&&f| polytope.face(f).is_subface_of(p))
            .all(|&f| self.members[f]);
        (covered && complete).then_some(top)
    }

    /// Free vertices together with their maximal faces, in vertex order.
    pub fn free_vertices(&self, polytope: &SimplePolytope) -> Vec<(usize, FaceId)> {
        (0..polytope.vertex_count())
            .filter_map(|v| self.free_face(polytope, v).map(|p| (v, p)))
            .collect()
    }

    /// Removes the free vertex `v`, returning `P` and the union of faces avoiding `v`.
    pub fn retract(&self, polytope: &SimplePolytope, v: usize) -> Result<(FaceId, Subcomplex), RetractionError> {
        let p = self.free_face(polytope, v).ok_or(RetractionError::NotFreeVertex(v))?;
        let members = self
            .members
            .iter()
            .enumerate()
            .map(|(f, &m)| m && !polytope.face(f).contains_vertex(v))
            .collect();
        let mut removed = self.removed.clone();
        removed.push(v);
        Ok((p, Subcomplex { members, removed }))
    }
}

/// One triple `(B_ℓ, P_ℓ, v_ℓ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RetractionStep {
    pub complex: Subcomplex,
    pub face: FaceId,
    pub vertex: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RetractionSequence {
    steps: Vec<RetractionStep>,
}

impl RetractionSequence {
    pub fn steps(&self) -> &[RetractionStep] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn vertex_order(&self) -> Vec<usize> {
        self.steps.iter().map(|s| s.vertex).collect()
    }

    /// Replays a vertex order from `B_1 = Q`.
    pub fn from_vertex_order(polytope: &SimplePolytope, order: &[usize]) -> Result<Self, RetractionError> {
        let mut complex = Subcomplex::full(polytope);
        let mut steps = Vec::with_capacity(order.len());
        for (i, &v) in order.iter().enumerate() {
            let (face, next) = complex.retract(polytope, v).map_err(|_| RetractionError::InvalidStep {
                step: i + 1,
                reason: format!("{} is not free", polytope.vertex_names()[v]),
            })?;
            steps.push(RetractionStep {
                complex: std::mem::replace(&mut complex, next),
                face,
                vertex: v,
            });
        }
        if !complex.is_empty() {
            return Err(RetractionError::InvalidStep {
                step: order.len(),
                reason: "vertices remain after the last step".into(),
            });
        }
        Ok(RetractionSequence { steps })
    }

    /// Replays `(P_ℓ, v_ℓ)` pairs, checking each stated `P_ℓ`.
    pub fn replay(polytope: &SimplePolytope, steps: &[(FaceId, usize)]) -> Result<Self, RetractionError> {
        let order: Vec<usize> = steps.iter().map(|&(_, v)| v).collect();
        let seq = Self::from_vertex_order(polytope, &order)?;
        for (i, (step, &(face, _))) in seq.steps.iter().zip(steps).enumerate() {
            if step.face != face {
                return Err(RetractionError::InvalidStep {
                    step: i + 1,
                    reason: format!(
                        "maximal face at {} is {}, not {}",
                        polytope.vertex_names()[step.vertex],
                        polytope.face_name(step.face),
                        polytope.face_name(face)
                    ),
                });
            }
        }
        Ok(seq)
    }

    /// `dim P_ℓ` for every step.
    pub fn cell_dimensions(&self, polytope: &SimplePolytope) -> CellDimensions {
        let dims: Vec<usize> = self.steps.iter().map(|s| polytope.face_dim(s.face)).collect();
        let mut counts = vec![0; polytope.dim() + 1];
        for &d in &dims {
            counts[d] += 1;
        }
        CellDimensions { dims, counts }
    }

    pub fn directed_skeleton(&self, polytope: &SimplePolytope) -> DirectedSkeleton {
        DirectedSkeleton::new(polytope, &self.vertex_order())
    }
}

/// Dimensions of the invariant cells, one per step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellDimensions {
    pub dims: Vec<usize>,
    /// `counts[k] = #{ ℓ : dim P_ℓ = k }`.
    pub counts: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DirectedEdge {
    pub edge: FaceId,
    /// Later vertex in the order.
    pub from: usize,
    pub to: usize,
}

/// The 1-skeleton with every edge pointing from the later vertex to the earlier one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedSkeleton {
    pub order: Vec<usize>,
    pub position: Vec<usize>,
    pub edges: Vec<DirectedEdge>,
    /// `in_neighbors[i]` = positions `k > i` with an edge `v_k → v_i`.
    pub in_neighbors: Vec<Vec<usize>>,
}

impl DirectedSkeleton {
    pub fn new(polytope: &SimplePolytope, order: &[usize]) -> Self {
        let mut position = vec![usize::MAX; polytope.vertex_count()];
        for (i, &v) in order.iter().enumerate() {
            position[v] = i;
        }
        let mut in_neighbors = vec![Vec::new(); order.len()];
        let mut edges = Vec::new();
        for e in polytope.edges() {
            let (a, b) = e.endpoints;
            let (from, to) = if position[a] > position[b] { (a, b) } else { (b, a) };
            in_neighbors[position[to]].push(position[from]);
            edges.push(DirectedEdge { edge: e.face, from, to });
        }
        for list in &mut in_neighbors {
            list.sort_unstable();
        }
        DirectedSkeleton {
            order: order.to_vec(),
            position,
            edges,
            in_neighbors,
        }
    }

    pub fn in_degree(&self, position: usize) -> usize {
        self.in_neighbors[position].len()
    }
}

/// Depth-first traversal of all retraction sequences in vertex order.
///
/// `admit(step, is_last, face, vertex)` prunes candidate steps; `sink` sees
/// every complete sequence and may stop the walk. Returns `Err(nodes)` when
/// the node budget runs out.
pub fn walk_retractions<A, S>(
    polytope: &SimplePolytope,
    budget: Option<u64>,
    mut admit: A,
    mut sink: S,
) -> Result<ControlFlow<()>, u64>
where
    A: FnMut(usize, bool, FaceId, usize) -> bool,
    S: FnMut(&[RetractionStep]) -> ControlFlow<()>,
{
    struct Walk<'p, A, S> {
        polytope: &'p SimplePolytope,
        budget: Option<u64>,
        nodes: u64,
        admit: A,
        sink: S,
        path: Vec<RetractionStep>,
    }

    impl<A, S> Walk<'_, A, S>
    where
        A: FnMut(usize, bool, FaceId, usize) -> bool,
        S: FnMut(&[RetractionStep]) -> ControlFlow<()>,
    {
        fn visit(&mut self, complex: Subcomplex) -> Result<ControlFlow<()>, u64> {
            let remaining = complex.vertices(self.polytope).count();
            for (v, face) in complex.free_vertices(self.polytope) {
                self.nodes += 1;
                if self.budget.is_some_and(|b| self.nodes > b) {
                    return Err(self.nodes);
                }
                if !(self.admit)(self.path.len(), remaining == 1, face, v) {
                    continue;
                }
                let (_, next) = complex.retract(self.polytope, v).expect("free vertex");
                self.path.push(RetractionStep {
                    complex: complex.clone(),
                    face,
                    vertex: v,
                });
                let flow = if next.is_empty() {
                    (self.sink)(&self.path)
                } else {
                    self.visit(next)?
                };
                self.path.pop();
                if flow.is_break() {
                    return Ok(flow);
                }
            }
            Ok(ControlFlow::Continue(()))
        }
    }

    let mut walk = Walk {
        polytope,
        budget,
        nodes: 0,
        admit: &mut admit,
        sink: &mut sink,
        path: Vec::new(),
    };
    walk.visit(Subcomplex::full(polytope))
}

/// All retraction sequences in depth-first order, at most `cap` of them.
pub fn enumerate_retractions(polytope: &SimplePolytope, cap: Option<usize>) -> Vec<RetractionSequence> {
    let mut out = Vec::new();
    let _ = walk_retractions(
        polytope,
        None,
        |_, _, _, _| true,
        |steps| {
            out.push(RetractionSequence { steps: steps.to_vec() });
            if cap.is_some_and(|c| out.len() >= c) {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        },
    )
    .expect("no budget");
    out
}

/// Number of retraction sequences, without storing them.
pub fn count_retractions(polytope: &SimplePolytope) -> u64 {
    let mut count = 0;
    let _ = walk_retractions(
        polytope,
        None,
        |_, _, _, _| true,
        |_| {
            count += 1;
            ControlFlow::Continue(())
        },
    )
    .expect("no budget");
    count
}

/// The first retraction sequence in depth-first order.
pub fn first_retraction(polytope: &SimplePolytope) -> RetractionSequence {
    enumerate_retractions(polytope, Some(1))
        .pop()
        .expect("every simple polytope has a retraction sequence")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NotDivisiveReason {
    /// `G_Q(v)` is nontrivial for every vertex.
    NoAdmissibleStart,
    /// The search tree was exhausted.
    NoCertificate,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Divisiveness {
    Divisive(RetractionSequence),
    NotDivisive(NotDivisiveReason),
    /// The node budget ran out after visiting `nodes` candidate steps.
    Undecided {
        nodes: u64,
    },
}

/// Searches for a retraction with `G_{P_ℓ}(v_ℓ)` trivial for `ℓ < m`.
pub fn is_divisive(pair: &CharacteristicPair, budget: Option<u64>) -> Result<Divisiveness, RetractionError> {
    let polytope = &pair.polytope;
    let mut memo: HashMap<(FaceId, usize), bool> = HashMap::new();
    let mut error = None;
    let mut found = None;
    let mut started = false;
    let outcome = walk_retractions(
        polytope,
        budget,
        |step, is_last, face, v| {
            if is_last {
                return true;
            }
            let ok = *memo
                .entry((face, v))
                .or_insert_with(|| match pair.local_group(face, v) {
                    Ok(g) => g.is_trivial(),
                    Err(e) => {
                        error.get_or_insert(e);
                        false
                    }
                });
            started |= ok && step == 0;
            ok
        },
        |steps| {
            found = Some(RetractionSequence { steps: steps.to_vec() });
            ControlFlow::Break(())
        },
    );
    if let Some(e) = error {
        return Err(e.into());
    }
    Ok(match (outcome, found) {
        (_, Some(seq)) => Divisiveness::Divisive(seq),
        (Err(nodes), None) => Divisiveness::Undecided { nodes },
        (Ok(_), None) if !started => Divisiveness::NotDivisive(NotDivisiveReason::NoAdmissibleStart),
        (Ok(_), None) => Divisiveness::NotDivisive(NotDivisiveReason::NoCertificate),
    })
}

/// Local groups `G_{P_ℓ}(v_ℓ)` along a sequence.
pub fn step_groups(
    pair: &CharacteristicPair,
    seq: &RetractionSequence,
) -> Result<Vec<FiniteAbelianGroup>, CharacteristicError> {
    seq.steps().iter().map(|s| pair.local_group(s.face, s.vertex)).collect()
}
