//! Shared fixtures, independent oracles and random generators for the
//! integration suites.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use toric_gkm::fixtures;
use toric_gkm::gkm::{CoefficientRing, GkmGraph, GradedPolynomial, LaurentPolynomial, Section};
use toric_gkm::retraction::first_retraction;
use toric_gkm::zlinalg::{int_vector, primitive_part};
use toric_gkm::{CharacteristicPair, SimplePolytope};

pub fn all_fixtures() -> Vec<(&'static str, CharacteristicPair)> {
    vec![
        ("interval", fixtures::interval()),
        ("square", fixtures::square()),
        ("simplex2", fixtures::simplex(2)),
        ("simplex3", fixtures::simplex(3)),
        ("cube", fixtures::cube()),
        ("prism", fixtures::prism()),
        ("wp235", fixtures::wp235()),
    ]
}

pub fn graph_of(pair: &CharacteristicPair) -> GkmGraph {
    GkmGraph::build(pair, &first_retraction(&pair.polytope)).expect("fixture graph")
}

/// Determinant by cofactor expansion along the first row.
pub fn cofactor_det(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut total = BigInt::zero();
    for j in 0..n {
        if m[0][j] == 0 {
            continue;
        }
        let minor: Vec<Vec<i64>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, &x)| x)
                    .collect()
            })
            .collect();
        let term = BigInt::from(m[0][j]) * cofactor_det(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// Decides `(1 − x^{−u}) | f` by solving `(1 − x^{−u})·q = f` over `Q` with
/// `q` supported in the bounding box of `f`, by sparse Gaussian elimination.
///
/// The box suffices: the Newton polytope of a factor `q` is contained in the
/// Newton polytope of the product.
pub fn laurent_divisible_oracle(u: &[i64], f: &LaurentPolynomial) -> bool {
    if f.is_zero() {
        return true;
    }
    let n = u.len();
    let mut lo = vec![i64::MAX; n];
    let mut hi = vec![i64::MIN; n];
    for (e, _) in f.terms() {
        for i in 0..n {
            lo[i] = lo[i].min(e[i]);
            hi[i] = hi[i].max(e[i]);
        }
    }
    let in_box = |e: &[i64]| (0..n).all(|i| lo[i] <= e[i] && e[i] <= hi[i]);
    let mut unknowns: Vec<Vec<i64>> = vec![lo.clone()];
    for i in 0..n {
        unknowns = unknowns
            .into_iter()
            .flat_map(|e| {
                (lo[i]..=hi[i]).map(move |k| {
                    let mut e = e.clone();
                    e[i] = k;
                    e
                })
            })
            .collect();
    }
    let index: BTreeMap<Vec<i64>, usize> = unknowns.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();

    // coefficient of x^e in (1 − x^{−u})·q is q_e − q_{e+u}
    let mut equations: BTreeMap<Vec<i64>, (BTreeMap<usize, BigRational>, BigRational)> = BTreeMap::new();
    for (e, &i) in &index {
        let shifted: Vec<i64> = e.iter().zip(u).map(|(a, b)| a - b).collect();
        for (target, coef) in [(e.clone(), 1), (shifted, -1)] {
            let row = equations
                .entry(target)
                .or_insert_with(|| (BTreeMap::new(), BigRational::zero()));
            row.0.insert(i, BigRational::from_integer(BigInt::from(coef)));
        }
    }
    for (e, c) in f.terms() {
        debug_assert!(in_box(e));
        equations.get_mut(e).expect("box covers f").1 = BigRational::from_integer(c.clone());
    }

    let mut rows: Vec<(BTreeMap<usize, BigRational>, BigRational)> = equations.into_values().collect();
    let mut occurs: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); unknowns.len()];
    for (r, row) in rows.iter().enumerate() {
        for &k in row.0.keys() {
            occurs[k].insert(r);
        }
    }
    let mut used = vec![false; rows.len()];
    for col in 0..unknowns.len() {
        let Some(p) = occurs[col].iter().copied().find(|&r| !used[r]) else {
            continue;
        };
        used[p] = true;
        let pivot = rows[p].clone();
        let pv = pivot.0[&col].clone();
        let targets: Vec<usize> = occurs[col].iter().copied().filter(|&r| r != p).collect();
        for r in targets {
            let row = &mut rows[r];
            let factor = row.0[&col].clone() / &pv;
            for (k, v) in &pivot.0 {
                let entry = row.0.entry(*k).or_insert_with(BigRational::zero);
                *entry -= &factor * v;
                if entry.is_zero() {
                    row.0.remove(k);
                    occurs[*k].remove(&r);
                } else {
                    occurs[*k].insert(r);
                }
            }
            row.1 -= &factor * &pivot.1;
        }
    }
    rows.iter().all(|(coefs, rhs)| !coefs.is_empty() || rhs.is_zero())
}

/// Ring elements that can be sampled at random.
pub trait Sample: CoefficientRing {
    /// A random element with at most `terms` terms and small exponents.
    fn sample<G: Rng>(rng: &mut G, nvars: usize, terms: usize) -> Self;
}

fn random_terms<G: Rng>(rng: &mut G, nvars: usize, terms: usize, lo: i64, hi: i64) -> Vec<(Vec<i64>, BigInt)> {
    let count = rng.gen_range(0..=terms);
    (0..count)
        .map(|_| {
            let e = (0..nvars).map(|_| rng.gen_range(lo..=hi)).collect();
            (e, BigInt::from(rng.gen_range(-3i64..=3)))
        })
        .collect()
}

impl Sample for LaurentPolynomial {
    fn sample<G: Rng>(rng: &mut G, nvars: usize, terms: usize) -> Self {
        LaurentPolynomial::from_terms(nvars, random_terms(rng, nvars, terms, -2, 2))
    }
}

impl Sample for GradedPolynomial {
    fn sample<G: Rng>(rng: &mut G, nvars: usize, terms: usize) -> Self {
        GradedPolynomial::from_terms(nvars, random_terms(rng, nvars, terms, 0, 2)).expect("nonnegative exponents")
    }
}

/// The section equal to the product of the Euler classes of the edges at `v`
/// at `v`, and zero elsewhere. Along an edge at `v` the difference carries the
/// edge's own Euler class as a factor; along other edges it vanishes.
pub fn thom_class<R: CoefficientRing>(graph: &GkmGraph, v: usize) -> Section<R> {
    let n = graph.dim();
    let mut values = vec![R::zero(n); graph.vertex_count()];
    let mut product = R::one(n);
    for e in graph.edges() {
        if e.endpoints.0 == v || e.endpoints.1 == v {
            product = product.mul(&R::euler_class(&e.character));
        }
    }
    values[v] = product;
    Section::new(values)
}

/// A random element of the GKM ring: a global element plus ring multiples of
/// vertex Thom classes, sometimes multiplied by a second such element.
pub fn random_gamma<R: Sample, G: Rng>(rng: &mut G, graph: &GkmGraph) -> Section<R> {
    let mut s = random_gamma_linear(rng, graph);
    if rng.gen_bool(0.3) {
        s = s.mul(&random_gamma_linear(rng, graph));
    }
    s
}

fn random_gamma_linear<R: Sample, G: Rng>(rng: &mut G, graph: &GkmGraph) -> Section<R> {
    let n = graph.dim();
    let m = graph.vertex_count();
    let mut s = Section::constant(m, R::sample(rng, n, 3));
    for _ in 0..rng.gen_range(0..=3) {
        let v = rng.gen_range(0..m);
        s = s.add(&thom_class::<R>(graph, v).scale(&R::sample(rng, n, 2)));
    }
    s
}

/// Adds a nonzero integer constant at one random vertex.
pub fn perturb<R: CoefficientRing, G: Rng>(
    rng: &mut G,
    s: &Section<R>,
    constant: impl Fn(i64) -> R,
) -> (usize, Section<R>) {
    let v = rng.gen_range(0..s.values.len());
    let mut c = 0;
    while c == 0 {
        c = rng.gen_range(-3..=3);
    }
    let mut out = s.clone();
    out.values[v] = out.values[v].add(&constant(c));
    (v, out)
}

/// A section with unrelated random entries; usually outside the GKM ring.
pub fn random_section<R: Sample, G: Rng>(rng: &mut G, graph: &GkmGraph) -> Section<R> {
    Section::new(
        (0..graph.vertex_count())
            .map(|_| R::sample(rng, graph.dim(), 3))
            .collect(),
    )
}

/// Primitive vectors in `[−r, r]^n`.
pub fn primitive_vectors(n: usize, r: i64) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (-r..=r).map(move |k| {
                    let mut v = v.clone();
                    v.push(k);
                    v
                })
            })
            .collect();
    }
    out.retain(|v| v.iter().fold(0i64, |g, &x| num_integer::gcd(g, x)) == 1);
    out
}

/// A random `f` with at most six terms and exponents in `[−3, 3]^n`; half the
/// time a multiple of `1 − x^{−u}` built from a random cofactor, flagged `true`.
pub fn random_divisibility_instance<G: Rng>(rng: &mut G, u: &[i64]) -> (LaurentPolynomial, bool) {
    let n = u.len();
    if rng.gen_bool(0.5) {
        let terms = (0..rng.gen_range(0..=6))
            .map(|_| {
                let e = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
                (e, BigInt::from(rng.gen_range(-3i64..=3)))
            })
            .collect::<Vec<_>>();
        return (LaurentPolynomial::from_terms(n, terms), false);
    }
    // cofactor exponents e with e and e − u both in range
    let fits = |e: &[i64]| {
        e.iter()
            .zip(u)
            .all(|(&a, &b)| (-3..=3).contains(&a) && (-3..=3).contains(&(a - b)))
    };
    let mut q = LaurentPolynomial::zero(n);
    for _ in 0..rng.gen_range(1..=3) {
        let e: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
        if fits(&e) {
            q = &q + &LaurentPolynomial::monomial(e, rng.gen_range(-2i64..=2));
        }
    }
    (&LaurentPolynomial::euler_class(u) * &q, true)
}

/// `Δ^{d_1} × ⋯ × Δ^{d_r}`; vertex `j` of each factor misses that factor's facet `j`.
pub fn product_of_simplices(dims: &[usize]) -> SimplePolytope {
    let mut offsets = Vec::new();
    let mut facet_count = 0;
    for &d in dims {
        offsets.push(facet_count);
        facet_count += d + 1;
    }
    let mut vertex_facets: Vec<Vec<usize>> = vec![Vec::new()];
    for (&d, &offset) in dims.iter().zip(&offsets) {
        vertex_facets = vertex_facets
            .into_iter()
            .flat_map(|fs| {
                (0..=d).map(move |j| {
                    let mut fs = fs.clone();
                    fs.extend((0..=d).filter(|&i| i != j).map(|i| offset + i));
                    fs
                })
            })
            .collect();
    }
    SimplePolytope::build(dims.iter().sum(), facet_count, &vertex_facets).expect("product of simplices")
}

/// A characteristic pair on `polytope` with `λ(F_i)` the primitive part of
/// `raw[i]`, if every vertex is nondegenerate.
pub fn pair_from_raw(polytope: &SimplePolytope, raw: &[Vec<i64>]) -> Option<CharacteristicPair> {
    let lambda = raw
        .iter()
        .map(|v| primitive_part(&int_vector(v)).ok())
        .collect::<Option<Vec<_>>>()?;
    CharacteristicPair::checked(polytope.clone(), lambda).ok()
}
