//! Combinatorial invariants of characteristic pairs `(Q, λ)` over simple
//! polytopes and the GKM presentations of the equivariant K-theory and
//! cohomology of divisive toric orbifolds.
//!
//! * [`zlinalg`]: exact integer linear algebra (Smith form, kernels, saturation).
//! * [`polytope`]: simple polytopes as face lattices.
//! * [`characteristic`]: characteristic functions, induced pairs, local groups.
//! * [`retraction`]: retraction sequences and divisiveness certificates.
//! * [`gkm`]: edge characters, vertex sections and piecewise elements.

pub mod characteristic;
pub mod fixtures;
pub mod gkm;
pub mod polytope;
pub mod retraction;
pub mod zlinalg;

pub use characteristic::{CharacteristicError, CharacteristicPair, InducedPair, ValidationReport};
pub use polytope::{Face, FaceId, PolytopeError, SimplePolytope};
pub use retraction::{Divisiveness, RetractionError, RetractionSequence};
pub use zlinalg::{FiniteAbelianGroup, IntMatrix, IntVector};
