//! GKM presentations of equivariant K-theory and cohomology.
//!
//! A vertex section assigns a ring element to every vertex; it lies in the
//! GKM ring when, along every edge `E = {v, w}`, the Euler class of the edge
//! character `u_E` divides `a_v − a_w`. The piecewise description assigns to
//! every face `F` a residue modulo the face ideal `J_F`, compatibly along
//! face inclusions. Both descriptions are implemented here together with the
//! maps between them.

mod graph;
mod ideal;
mod poly;
mod section;

use thiserror::Error;

use crate::characteristic::CharacteristicError;
use crate::polytope::FaceId;

pub use graph::{coprimality_check, edge_character, face_ideal, Coprimality, GkmEdge, GkmGraph};
pub use ideal::{euler_divides_graded, euler_divides_laurent, laurent_divides, LatticeIdeal};
pub use poly::{Exponent, GradedPolynomial, LaurentPolynomial};
pub use section::{
    check_piecewise, check_section, check_section_h, check_section_k, piecewise_from_section, section_from_piecewise,
    CoefficientRing, EdgeVerdict, PiecewiseElement, PiecewiseVerdict, Section, SectionVerdict, Theory,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GkmError {
    #[error("edge {0}: the characteristic vectors around it do not cut out a line")]
    DegenerateEdge(FaceId),
    #[error("the zero vector has no Euler class")]
    ZeroVector,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("section has {found} entries for {expected} vertices")]
    SizeMismatch { expected: usize, found: usize },
    #[error("piecewise element has no entry for face {0}")]
    MissingFace(FaceId),
    #[error("generators {0:?} do not form a basis of a saturated lattice")]
    NotSaturated(Vec<Vec<i64>>),
    #[error("{0} is not of the form 1 - x^(-u)")]
    NotEulerClass(String),
    #[error("face {face}: stored ideal generators differ from the face ideal")]
    GeneratorMismatch { face: FaceId },
    #[error("section fails the edge condition on edge {edge} ({from}, {to})")]
    NotInGamma { edge: usize, from: usize, to: usize },
    #[error("face {face}: values at vertices {first} and {other} are not congruent")]
    Incongruent { face: FaceId, first: usize, other: usize },
    #[error("integer overflow in exponent arithmetic")]
    Overflow,
    #[error(transparent)]
    Characteristic(#[from] CharacteristicError),
}
