use std::fmt;

use super::graph::{face_ideal, GkmGraph};
use super::ideal::LatticeIdeal;
use super::poly::{GradedPolynomial, LaurentPolynomial};
use super::GkmError;
use crate::characteristic::CharacteristicPair;
use crate::polytope::FaceId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Theory {
    /// Equivariant K-theory, coefficients in `Z[x^±]`.
    K,
    /// Equivariant cohomology, coefficients in `Z[x]`.
    H,
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Theory::K => write!(f, "K"),
            Theory::H => write!(f, "H"),
        }
    }
}

/// Coefficient ring `E*_T` of an equivariant theory.
pub trait CoefficientRing: Clone + PartialEq + fmt::Debug + fmt::Display {
    const THEORY: Theory;

    fn zero(nvars: usize) -> Self;
    fn one(nvars: usize) -> Self;
    fn nvars(&self) -> usize;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// Euler class of the character `u`.
    fn euler_class(u: &[i64]) -> Self;
    /// Canonical image in the quotient by `ideal`.
    fn reduce(ideal: &LatticeIdeal, f: &Self) -> Self;

    fn in_ideal(ideal: &LatticeIdeal, f: &Self) -> bool {
        Self::reduce(ideal, f).is_zero()
    }
}

impl CoefficientRing for LaurentPolynomial {
    const THEORY: Theory = Theory::K;

    fn zero(nvars: usize) -> Self {
        LaurentPolynomial::zero(nvars)
    }
    fn one(nvars: usize) -> Self {
        LaurentPolynomial::one(nvars)
    }
    fn nvars(&self) -> usize {
        LaurentPolynomial::nvars(self)
    }
    fn is_zero(&self) -> bool {
        LaurentPolynomial::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn euler_class(u: &[i64]) -> Self {
        LaurentPolynomial::euler_class(u)
    }
    fn reduce(ideal: &LatticeIdeal, f: &Self) -> Self {
        ideal.reduce_laurent(f)
    }
}

impl CoefficientRing for GradedPolynomial {
    const THEORY: Theory = Theory::H;

    fn zero(nvars: usize) -> Self {
        GradedPolynomial::zero(nvars)
    }
    fn one(nvars: usize) -> Self {
        GradedPolynomial::one(nvars)
    }
    fn nvars(&self) -> usize {
        GradedPolynomial::nvars(self)
    }
    fn is_zero(&self) -> bool {
        GradedPolynomial::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn euler_class(u: &[i64]) -> Self {
        GradedPolynomial::linear_form(u)
    }
    fn reduce(ideal: &LatticeIdeal, f: &Self) -> Self {
        ideal.reduce_graded(f)
    }
}

/// One coefficient per vertex, indexed by vertex id.
#[derive(Debug, Clone, PartialEq)]
pub struct Section<R> {
    pub values: Vec<R>,
}

impl<R: CoefficientRing> Section<R> {
    pub fn new(values: Vec<R>) -> Self {
        Section { values }
    }

    pub fn constant(vertex_count: usize, c: R) -> Self {
        Section {
            values: vec![c; vertex_count],
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Section {
            values: self.values.iter().zip(&other.values).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Section {
            values: self.values.iter().zip(&other.values).map(|(a, b)| a.mul(b)).collect(),
        }
    }

    /// Multiplies every entry by the same ring element.
    pub fn scale(&self, c: &R) -> Self {
        Section {
            values: self.values.iter().map(|a| c.mul(a)).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeVerdict {
    /// Index into [`GkmGraph::edges`].
    pub edge: usize,
    pub endpoints: (usize, usize),
    pub divisible: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectionVerdict {
    pub edges: Vec<EdgeVerdict>,
}

impl SectionVerdict {
    pub fn passes(&self) -> bool {
        self.edges.iter().all(|e| e.divisible)
    }

    /// The failing edge with the smallest endpoints.
    pub fn first_failure(&self) -> Option<&EdgeVerdict> {
        self.edges.iter().find(|e| !e.divisible)
    }
}

fn check_shape<R: CoefficientRing>(dim: usize, expected: usize, values: &[R]) -> Result<(), GkmError> {
    if values.len() != expected {
        return Err(GkmError::SizeMismatch {
            expected,
            found: values.len(),
        });
    }
    if let Some(v) = values.iter().find(|v| v.nvars() != dim) {
        return Err(GkmError::DimensionMismatch {
            expected: dim,
            found: v.nvars(),
        });
    }
    Ok(())
}

/// Tests the edge conditions: `e(u_E) | a_v − a_w` along every edge `{v, w}`.
pub fn check_section<R: CoefficientRing>(graph: &GkmGraph, s: &Section<R>) -> Result<SectionVerdict, GkmError> {
    check_shape(graph.dim(), graph.vertex_count(), &s.values)?;
    let edges = graph
        .edges()
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let (a, b) = e.endpoints;
            let diff = s.values[a].sub(&s.values[b]);
            EdgeVerdict {
                edge: i,
                endpoints: e.endpoints,
                divisible: R::in_ideal(graph.edge_ideal(i), &diff),
            }
        })
        .collect();
    Ok(SectionVerdict { edges })
}

pub fn check_section_k(graph: &GkmGraph, s: &Section<LaurentPolynomial>) -> Result<SectionVerdict, GkmError> {
    check_section(graph, s)
}

pub fn check_section_h(graph: &GkmGraph, s: &Section<GradedPolynomial>) -> Result<SectionVerdict, GkmError> {
    check_section(graph, s)
}

/// A residue modulo `J_F`, given by a representative.
#[derive(Debug, Clone, PartialEq)]
pub struct FaceResidue<R> {
    pub representative: R,
    pub generators: Vec<Vec<i64>>,
}

/// One residue per face, indexed by face id.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseElement<R> {
    pub residues: Vec<FaceResidue<R>>,
}

impl<R: CoefficientRing> PiecewiseElement<R> {
    /// Attaches the face ideals of `pair` to one representative per face.
    pub fn new(pair: &CharacteristicPair, representatives: Vec<R>) -> Result<Self, GkmError> {
        let count = pair.polytope.faces().len();
        if representatives.len() < count {
            return Err(GkmError::MissingFace(representatives.len()));
        }
        let residues = representatives
            .into_iter()
            .enumerate()
            .map(|(f, representative)| {
                Ok(FaceResidue {
                    representative,
                    generators: face_ideal(pair, f)?,
                })
            })
            .collect::<Result<Vec<_>, GkmError>>()?;
        Ok(PiecewiseElement { residues })
    }

    /// The same ring element on every face.
    pub fn constant(pair: &CharacteristicPair, c: R) -> Result<Self, GkmError> {
        Self::new(pair, vec![c; pair.polytope.faces().len()])
    }

    pub fn representative(&self, face: FaceId) -> &R {
        &self.residues[face].representative
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, R::add)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.zip_with(other, R::mul)
    }

    fn zip_with(&self, other: &Self, op: impl Fn(&R, &R) -> R) -> Self {
        let residues = self
            .residues
            .iter()
            .zip(&other.residues)
            .map(|(a, b)| FaceResidue {
                representative: op(&a.representative, &b.representative),
                generators: a.generators.clone(),
            })
            .collect();
        PiecewiseElement { residues }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiecewiseVerdict {
    /// Number of covering pairs examined.
    pub checked: usize,
    /// First covering pair `(F, F′)` whose representatives differ modulo `J_{F′}`.
    pub first_failure: Option<(FaceId, FaceId)>,
}

impl PiecewiseVerdict {
    pub fn passes(&self) -> bool {
        self.first_failure.is_none()
    }
}

fn face_ideals(pair: &CharacteristicPair) -> Result<Vec<LatticeIdeal>, GkmError> {
    (0..pair.polytope.faces().len())
        .map(|f| LatticeIdeal::new(pair.dim(), face_ideal(pair, f)?))
        .collect()
}

/// Compatibility along every covering pair `F ⊂ F′`: `f_F ≡ f_{F′} mod J_{F′}`.
pub fn check_piecewise<R: CoefficientRing>(
    pair: &CharacteristicPair,
    p: &PiecewiseElement<R>,
) -> Result<PiecewiseVerdict, GkmError> {
    let count = pair.polytope.faces().len();
    if p.residues.len() < count {
        return Err(GkmError::MissingFace(p.residues.len()));
    }
    let ideals = face_ideals(pair)?;
    for (f, (residue, ideal)) in p.residues.iter().zip(&ideals).enumerate() {
        if residue.generators != ideal.generators() {
            return Err(GkmError::GeneratorMismatch { face: f });
        }
        if residue.representative.nvars() != pair.dim() {
            return Err(GkmError::DimensionMismatch {
                expected: pair.dim(),
                found: residue.representative.nvars(),
            });
        }
    }
    let pairs = pair.polytope.covering_pairs();
    let first_failure = pairs.iter().copied().find(|&(f, g)| {
        let diff = p.residues[f].representative.sub(&p.residues[g].representative);
        !R::in_ideal(&ideals[g], &diff)
    });
    Ok(PiecewiseVerdict {
        checked: pairs.len(),
        first_failure,
    })
}

/// `h(a)_F = a_{i_1}` for the first vertex of `F`, after checking that all
/// vertex values of `F` agree modulo `J_F`.
pub fn piecewise_from_section<R: CoefficientRing>(
    pair: &CharacteristicPair,
    graph: &GkmGraph,
    s: &Section<R>,
) -> Result<PiecewiseElement<R>, GkmError> {
    let verdict = check_section(graph, s)?;
    if let Some(bad) = verdict.first_failure() {
        return Err(GkmError::NotInGamma {
            edge: bad.edge,
            from: bad.endpoints.0,
            to: bad.endpoints.1,
        });
    }
    let ideals = face_ideals(pair)?;
    let mut residues = Vec::with_capacity(ideals.len());
    for (f, ideal) in ideals.into_iter().enumerate() {
        let mut vertices = pair.polytope.face(f).vertices.iter().copied();
        let first = vertices.next().expect("faces are nonempty");
        let a = &s.values[first];
        if let Some(other) = vertices.find(|&w| !R::in_ideal(&ideal, &s.values[w].sub(a))) {
            return Err(GkmError::Incongruent { face: f, first, other });
        }
        residues.push(FaceResidue {
            representative: a.clone(),
            generators: ideal.generators().to_vec(),
        });
    }
    Ok(PiecewiseElement { residues })
}

/// Restriction of a piecewise element to the vertices.
pub fn section_from_piecewise<R: CoefficientRing>(pair: &CharacteristicPair, p: &PiecewiseElement<R>) -> Section<R> {
    let values = (0..pair.polytope.vertex_count())
        .map(|v| p.representative(pair.polytope.vertex_face(v)).clone())
        .collect();
    Section { values }
}
