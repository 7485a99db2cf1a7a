//! JSON input documents: characteristic pairs, sections, piecewise elements
//! and retraction sequences.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use num_bigint::BigInt;
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::Value;

use toric_gkm::gkm::{CoefficientRing, GradedPolynomial, LaurentPolynomial, PiecewiseElement, Section};
use toric_gkm::retraction::RetractionSequence;
use toric_gkm::zlinalg::int_vector;
use toric_gkm::{CharacteristicPair, SimplePolytope};

use crate::CliError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairDocument {
    pub dim: usize,
    pub facets: Vec<String>,
    pub vertices: Vec<VertexDocument>,
    pub lambda: BTreeMap<String, Vec<i64>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexDocument {
    pub name: String,
    pub facets: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDocument {
    pub exp: Vec<i64>,
    /// An integer, or a decimal string for values beyond 64 bits.
    pub coef: Value,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SectionDocument {
    vertices: BTreeMap<String, Vec<TermDocument>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ElementDocument {
    faces: BTreeMap<String, Vec<TermDocument>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SequenceDocument {
    steps: Vec<StepDocument>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct StepDocument {
    face: Option<String>,
    vertex: String,
}

fn read<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::input(path, e))?;
    serde_json::from_str(&text).map_err(|e| CliError::input(path, e))
}

pub fn load_pair(path: &Path) -> Result<CharacteristicPair, CliError> {
    let doc: PairDocument = read(path)?;
    doc.into_pair().map_err(|e| CliError::input(path, e))
}

impl PairDocument {
    pub fn into_pair(self) -> Result<CharacteristicPair, String> {
        let facet_index = |name: &str| self.facets.iter().position(|f| f == name);
        let mut vertex_facets = Vec::with_capacity(self.vertices.len());
        for (i, v) in self.vertices.iter().enumerate() {
            let ids = v
                .facets
                .iter()
                .map(|f| facet_index(f).ok_or_else(|| format!("vertices[{i}].facets: unknown facet \"{f}\"")))
                .collect::<Result<Vec<_>, _>>()?;
            vertex_facets.push(ids);
        }
        if let Some(extra) = self.lambda.keys().find(|k| facet_index(k).is_none()) {
            return Err(format!("lambda.{extra}: not a facet"));
        }
        let mut lambda = Vec::with_capacity(self.facets.len());
        for f in &self.facets {
            let v = self.lambda.get(f).ok_or_else(|| format!("lambda.{f}: missing"))?;
            if v.len() != self.dim {
                return Err(format!("lambda.{f}: expected {} entries, found {}", self.dim, v.len()));
            }
            lambda.push(int_vector(v));
        }
        let names = self.vertices.iter().map(|v| v.name.clone()).collect();
        let polytope = SimplePolytope::build_named(self.dim, self.facets.clone(), names, &vertex_facets)
            .map_err(|e| e.to_string())?;
        CharacteristicPair::new(polytope, lambda).map_err(|e| e.to_string())
    }
}

fn coefficient(value: &Value) -> Result<BigInt, String> {
    match value {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| format!("coefficient {n} is not an integer")),
        Value::String(s) => s.parse().map_err(|_| format!("coefficient \"{s}\" is not an integer")),
        other => Err(format!("coefficient {other} is not an integer")),
    }
}

/// Ring elements that can be read from a list of terms.
pub trait FromTerms: Sized {
    fn from_terms(nvars: usize, terms: &[TermDocument]) -> Result<Self, String>;
}

fn collect_terms(nvars: usize, terms: &[TermDocument]) -> Result<Vec<(Vec<i64>, BigInt)>, String> {
    terms
        .iter()
        .enumerate()
        .map(|(i, t)| {
            if t.exp.len() != nvars {
                return Err(format!(
                    "term {i}: exponent has {} entries, expected {nvars}",
                    t.exp.len()
                ));
            }
            Ok((
                t.exp.clone(),
                coefficient(&t.coef).map_err(|e| format!("term {i}: {e}"))?,
            ))
        })
        .collect()
}

impl FromTerms for LaurentPolynomial {
    fn from_terms(nvars: usize, terms: &[TermDocument]) -> Result<Self, String> {
        Ok(LaurentPolynomial::from_terms(nvars, collect_terms(nvars, terms)?))
    }
}

impl FromTerms for GradedPolynomial {
    fn from_terms(nvars: usize, terms: &[TermDocument]) -> Result<Self, String> {
        GradedPolynomial::from_terms(nvars, collect_terms(nvars, terms)?)
            .ok_or_else(|| "negative exponent in a cohomology class".to_string())
    }
}

pub fn load_section<R: FromTerms + Clone>(path: &Path, pair: &CharacteristicPair) -> Result<Section<R>, CliError> {
    let doc: SectionDocument = read(path)?;
    let p = &pair.polytope;
    let mut values: Vec<Option<R>> = vec![None; p.vertex_count()];
    for (name, terms) in &doc.vertices {
        let v = p
            .find_vertex(name)
            .ok_or_else(|| CliError::input(path, format!("vertices.{name}: unknown vertex")))?;
        let value =
            R::from_terms(pair.dim(), terms).map_err(|e| CliError::input(path, format!("vertices.{name}: {e}")))?;
        values[v] = Some(value);
    }
    let values = values
        .into_iter()
        .enumerate()
        .map(|(v, x)| x.ok_or_else(|| CliError::input(path, format!("vertices.{}: missing", p.vertex_names()[v]))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Section { values })
}

pub fn load_element<R>(path: &Path, pair: &CharacteristicPair) -> Result<PiecewiseElement<R>, CliError>
where
    R: FromTerms + CoefficientRing,
{
    let doc: ElementDocument = read(path)?;
    let p = &pair.polytope;
    let mut values: Vec<Option<R>> = vec![None; p.faces().len()];
    for (name, terms) in &doc.faces {
        let f = p
            .find_face(name)
            .ok_or_else(|| CliError::input(path, format!("faces.{name}: unknown face")))?;
        let value =
            R::from_terms(pair.dim(), terms).map_err(|e| CliError::input(path, format!("faces.{name}: {e}")))?;
        if values[f].replace(value).is_some() {
            return Err(CliError::input(path, format!("faces.{name}: face given twice")));
        }
    }
    let representatives = values
        .into_iter()
        .enumerate()
        .map(|(f, x)| x.ok_or_else(|| CliError::input(path, format!("faces.{}: missing", p.face_name(f)))))
        .collect::<Result<Vec<_>, _>>()?;
    PiecewiseElement::new(pair, representatives).map_err(|e| CliError::input(path, e))
}

pub fn load_sequence(path: &Path, pair: &CharacteristicPair) -> Result<RetractionSequence, CliError> {
    let doc: SequenceDocument = read(path)?;
    let p = &pair.polytope;
    let mut order = Vec::with_capacity(doc.steps.len());
    let mut stated = Vec::with_capacity(doc.steps.len());
    for (i, step) in doc.steps.iter().enumerate() {
        let v = p
            .find_vertex(&step.vertex)
            .ok_or_else(|| CliError::input(path, format!("steps[{i}].vertex: unknown vertex \"{}\"", step.vertex)))?;
        order.push(v);
        if let Some(face) = &step.face {
            let f = p
                .find_face(face)
                .ok_or_else(|| CliError::input(path, format!("steps[{i}].face: unknown face \"{face}\"")))?;
            stated.push((f, v));
        }
    }
    let seq = if stated.len() == order.len() {
        RetractionSequence::replay(p, &stated)
    } else if stated.is_empty() {
        RetractionSequence::from_vertex_order(p, &order)
    } else {
        return Err(CliError::input(path, "either every step or no step names its face"));
    };
    seq.map_err(|e| CliError::input(path, e))
}
