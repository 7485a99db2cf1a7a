//! Exact integer linear algebra.
//!
//! Everything here works over arbitrary-precision integers: Smith normal form
//! with transforms, row Hermite normal form, kernels of `x ↦ x·A`, saturation
//! of sublattices and invariant factors of lattice quotients.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// An integer vector.
pub type IntVector = Vec<BigInt>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("the zero vector has no primitive part")]
    ZeroVector,
    #[error("dimension mismatch: expected length {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// Converts a slice of machine integers into an [`IntVector`].
pub fn int_vector(values: &[i64]) -> IntVector {
    values.iter().map(|&x| BigInt::from(x)).collect()
}

/// Converts back to machine integers, `None` on overflow.
pub fn to_i64_vector(v: &[BigInt]) -> Option<Vec<i64>> {
    v.iter().map(|x| x.to_i64()).collect()
}

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from machine-integer rows. All rows must have `cols` entries.
    pub fn from_i64_rows(cols: usize, rows: &[Vec<i64>]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged row {i}");
            for (j, x) in row.iter().enumerate() {
                m[(i, j)] = BigInt::from(*x);
            }
        }
        m
    }

    /// Stacks vectors of length `cols` as rows.
    pub fn from_rows(cols: usize, rows: &[IntVector]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged row {i}");
            for (j, x) in row.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    /// Places vectors of length `rows` side by side as columns.
    pub fn from_columns(rows: usize, columns: &[IntVector]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "ragged column {j}");
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> IntVector {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> IntVector {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Row vector times matrix.
    pub fn left_mul_vector(&self, x: &[BigInt]) -> IntVector {
        assert_eq!(x.len(), self.rows);
        (0..self.cols)
            .map(|j| {
                x.iter()
                    .enumerate()
                    .fold(BigInt::zero(), |acc, (i, xi)| acc + xi * &self[(i, j)])
            })
            .collect()
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Option<BigInt> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(BigInt::one());
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return Some(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                    a[(i, j)] = v;
                }
            }
            prev = a[(k, k)].clone();
        }
        Some(sign * &a[(n - 1, n - 1)])
    }

    pub fn is_unimodular(&self) -> bool {
        self.determinant().is_some_and(|d| d.abs().is_one())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[dst] += k * row[src]`
    fn add_row_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        for j in 0..self.cols {
            let v = &self[(src, j)] * k;
            self[(dst, j)] += v;
        }
    }

    /// `col[dst] += k * col[src]`
    fn add_col_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        for i in 0..self.rows {
            let v = &self[(i, src)] * k;
            self[(i, dst)] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;

    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "incompatible shapes");
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = a * &rhs[(k, j)];
                    out[(i, j)] += v;
                }
            }
        }
        out
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// `U·A·V = D` with `U`, `V` unimodular and `D` diagonal with
/// `d_1 | d_2 | ⋯ | d_r`, all positive.
#[derive(Debug, Clone)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub rank: usize,
}

impl SmithForm {
    /// The nonzero diagonal entries, including units.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d[(i, i)].clone()).collect()
    }
}

fn min_abs_position(a: &IntMatrix, cells: impl Iterator<Item = (usize, usize)>) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for (i, j) in cells {
        let x = &a[(i, j)];
        if x.is_zero() {
            continue;
        }
        let ax = x.abs();
        if best.as_ref().is_none_or(|(_, b)| ax < *b) {
            best = Some(((i, j), ax));
        }
    }
    best.map(|(p, _)| p)
}

/// Smith normal form by elementary row and column operations, always pivoting
/// on an entry of minimal absolute value.
pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let (m, n) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    let mut t = 0;

    while t < m.min(n) {
        let cells = (t..m).flat_map(|i| (t..n).map(move |j| (i, j)));
        let Some((pi, pj)) = min_abs_position(&d, cells) else {
            break;
        };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let mut clean = true;
            for i in t + 1..m {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = -(&d[(i, t)] / &d[(t, t)]);
                d.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                clean &= d[(i, t)].is_zero();
            }
            for j in t + 1..n {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = -(&d[(t, j)] / &d[(t, t)]);
                d.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                clean &= d[(t, j)].is_zero();
            }
            if !clean {
                // a remainder smaller than the pivot survived; move it in
                let cells = (t..m).map(|i| (i, t)).chain((t + 1..n).map(|j| (t, j)));
                let (pi, pj) = min_abs_position(&d, cells).expect("pivot is nonzero");
                d.swap_rows(t, pi);
                u.swap_rows(t, pi);
                d.swap_cols(t, pj);
                v.swap_cols(t, pj);
                continue;
            }
            let pivot = d[(t, t)].clone();
            let offender = (t + 1..m)
                .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !d[(i, j)].is_multiple_of(&pivot));
            match offender {
                Some((i, _)) => {
                    let one = BigInt::one();
                    d.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }

    SmithForm { u, d, v, rank: t }
}

/// Row-style Hermite normal form of the lattice spanned by `rows`.
///
/// Zero rows are dropped. Each returned row has a positive pivot, pivots move
/// strictly right, and entries above a pivot lie in `[0, pivot)`.
pub fn hermite_rows(cols: usize, rows: &[IntVector]) -> Vec<IntVector> {
    let mut a = IntMatrix::from_rows(cols, rows);
    let m = a.rows;
    let mut pr = 0;
    for c in 0..cols {
        if pr == m {
            break;
        }
        while let Some((pi, _)) = min_abs_position(&a, (pr..m).map(|i| (i, c))) {
            a.swap_rows(pr, pi);
            let mut done = true;
            for i in pr + 1..m {
                if a[(i, c)].is_zero() {
                    continue;
                }
                let q = -(&a[(i, c)] / &a[(pr, c)]);
                a.add_row_multiple(i, pr, &q);
                done &= a[(i, c)].is_zero();
            }
            if done {
                break;
            }
        }
        if a[(pr, c)].is_zero() {
            continue;
        }
        if a[(pr, c)].is_negative() {
            a.negate_row(pr);
        }
        let pivot = a[(pr, c)].clone();
        for i in 0..pr {
            let q = -a[(i, c)].div_floor(&pivot);
            a.add_row_multiple(i, pr, &q);
        }
        pr += 1;
    }
    (0..pr).map(|i| a.row(i)).collect()
}

/// Basis of `{ x ∈ Z^n : x·A = 0 }` where `A` is `n × c`.
///
/// The result spans a saturated sublattice and is returned in Hermite form,
/// so every vector is primitive with its first nonzero coordinate positive.
pub fn kernel_basis(a: &IntMatrix) -> Vec<IntVector> {
    let n = a.rows;
    if a.cols == 0 {
        return (0..n).map(|i| IntMatrix::identity(n).row(i)).collect();
    }
    let snf = smith_normal_form(a);
    let raw: Vec<IntVector> = (snf.rank..n).map(|i| snf.u.row(i)).collect();
    hermite_rows(n, &raw)
}

/// Basis of the saturation `span_R(L) ∩ Z^n` of the span of `vectors`.
pub fn saturate(n: usize, vectors: &[IntVector]) -> Vec<IntVector> {
    // the annihilator of the annihilator
    let orthogonal = kernel_basis(&IntMatrix::from_columns(n, vectors));
    kernel_basis(&IntMatrix::from_columns(n, &orthogonal))
}

/// `v / gcd(v)`, keeping the sign.
pub fn primitive_part(v: &[BigInt]) -> Result<IntVector, LinalgError> {
    let g = content(v);
    if g.is_zero() {
        return Err(LinalgError::ZeroVector);
    }
    Ok(v.iter().map(|x| x / &g).collect())
}

/// Nonnegative gcd of the entries.
pub fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

pub fn is_primitive(v: &[BigInt]) -> bool {
    content(v).is_one()
}

/// Solves `c·B = x` for the row basis `B` of a lattice; `None` if `x` is not in it.
pub fn express_in_basis(n: usize, basis: &[IntVector], x: &[BigInt]) -> Option<IntVector> {
    let b = IntMatrix::from_rows(n, basis);
    let snf = smith_normal_form(&b);
    // c·U⁻¹·D = x·V
    let w = snf.v.left_mul_vector(x);
    let mut y = vec![BigInt::zero(); basis.len()];
    for (j, wj) in w.iter().enumerate() {
        if j < snf.rank {
            let (q, r) = wj.div_rem(&snf.d[(j, j)]);
            if !r.is_zero() {
                return None;
            }
            y[j] = q;
        } else if !wj.is_zero() {
            return None;
        }
    }
    // for a dependent family the coordinates past the rank stay zero
    Some(snf.u.left_mul_vector(&y))
}

/// A finite abelian group `Z/d_1 ⊕ ⋯ ⊕ Z/d_r` with `d_1 | ⋯ | d_r`, all `d_i ≥ 2`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FiniteAbelianGroup {
    invariant_factors: Vec<BigInt>,
}

impl FiniteAbelianGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    /// Builds the group from a divisibility chain, dropping unit factors.
    pub fn from_chain(factors: impl IntoIterator<Item = BigInt>) -> Self {
        let invariant_factors: Vec<BigInt> = factors.into_iter().map(|d| d.abs()).filter(|d| !d.is_one()).collect();
        debug_assert!(invariant_factors.windows(2).all(|w| w[1].is_multiple_of(&w[0])));
        FiniteAbelianGroup { invariant_factors }
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.invariant_factors.iter().map(|d| format!("Z/{d}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `Z^n / span(L)` split as torsion plus free rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientGroup {
    pub torsion: FiniteAbelianGroup,
    pub free_rank: usize,
}

pub fn quotient_invariants(n: usize, vectors: &[IntVector]) -> QuotientGroup {
    if vectors.is_empty() {
        return QuotientGroup {
            torsion: FiniteAbelianGroup::trivial(),
            free_rank: n,
        };
    }
    let snf = smith_normal_form(&IntMatrix::from_columns(n, vectors));
    QuotientGroup {
        torsion: FiniteAbelianGroup::from_chain(snf.diagonal()),
        free_rank: n - snf.rank,
    }
}

/// Matrix `P` (`n × (n−r)`) such that `x ↦ x·P` is a surjection `Z^n → Z^{n−r}`
/// whose kernel is the saturation of `span(vectors)`, `r` being its rank.
pub fn quotient_projection(n: usize, vectors: &[IntVector]) -> IntMatrix {
    if vectors.is_empty() {
        return IntMatrix::identity(n);
    }
    let snf = smith_normal_form(&IntMatrix::from_rows(n, vectors));
    let r = snf.rank;
    let mut p = IntMatrix::zeros(n, n - r);
    for i in 0..n {
        for j in r..n {
            p[(i, j - r)] = snf.v[(i, j)].clone();
        }
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(cols: usize, rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64_rows(cols, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    fn check_snf(a: &IntMatrix) -> SmithForm {
        let s = smith_normal_form(a);
        assert_eq!(&(&s.u * a) * &s.v, s.d);
        assert!(s.u.is_unimodular());
        assert!(s.v.is_unimodular());
        s
    }

    #[test]
    fn snf_of_diag_2_3() {
        let s = check_snf(&m(2, &[&[2, 0], &[0, 3]]));
        assert_eq!(s.d, m(2, &[&[1, 0], &[0, 6]]));
    }

    #[test]
    fn snf_of_identity() {
        let s = check_snf(&IntMatrix::identity(3));
        assert_eq!(s.d, IntMatrix::identity(3));
    }

    #[test]
    fn snf_of_column() {
        let s = check_snf(&m(1, &[&[1], &[1], &[4]]));
        assert_eq!(s.d, m(1, &[&[1], &[0], &[0]]));
    }

    #[test]
    fn snf_of_zero_and_empty() {
        let s = check_snf(&IntMatrix::zeros(2, 3));
        assert_eq!(s.rank, 0);
        let s = smith_normal_form(&IntMatrix::zeros(0, 2));
        assert_eq!(s.rank, 0);
        assert_eq!(s.v, IntMatrix::identity(2));
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_basis(&m(1, &[&[0], &[1]])), vec![int_vector(&[1, 0])]);
        assert_eq!(kernel_basis(&m(1, &[&[-1], &[-1]])), vec![int_vector(&[1, -1])]);
        assert_eq!(
            kernel_basis(&IntMatrix::zeros(2, 0)),
            vec![int_vector(&[1, 0]), int_vector(&[0, 1])]
        );
    }

    #[test]
    fn saturate_examples() {
        assert_eq!(saturate(2, &[int_vector(&[2, 0])]), vec![int_vector(&[1, 0])]);
        assert_eq!(saturate(3, &[int_vector(&[1, 1, 4])]), vec![int_vector(&[1, 1, 4])]);
        assert_eq!(
            saturate(2, &[int_vector(&[2, 0]), int_vector(&[0, 3])]),
            vec![int_vector(&[1, 0]), int_vector(&[0, 1])]
        );
        assert!(saturate(2, &[]).is_empty());
    }

    #[test]
    fn primitive_part_examples() {
        assert_eq!(primitive_part(&int_vector(&[2, 4])).unwrap(), int_vector(&[1, 2]));
        assert_eq!(primitive_part(&int_vector(&[-2, 0])).unwrap(), int_vector(&[-1, 0]));
        assert_eq!(primitive_part(&int_vector(&[3, 5])).unwrap(), int_vector(&[3, 5]));
        assert_eq!(primitive_part(&int_vector(&[0, 0])), Err(LinalgError::ZeroVector));
    }

    #[test]
    fn quotient_examples() {
        let q = quotient_invariants(2, &[int_vector(&[1, 0]), int_vector(&[-1, -2])]);
        assert_eq!(q.torsion.invariant_factors(), &[BigInt::from(2)]);
        assert_eq!(q.free_rank, 0);

        let id: Vec<_> = (0..3).map(|i| IntMatrix::identity(3).row(i)).collect();
        let q = quotient_invariants(3, &id);
        assert!(q.torsion.is_trivial());
        assert_eq!(q.free_rank, 0);

        let q = quotient_invariants(3, &[int_vector(&[2, 0, 0])]);
        assert_eq!(q.torsion.order(), BigInt::from(2));
        assert_eq!(q.free_rank, 2);
    }

    #[test]
    fn express_in_basis_roundtrip() {
        let basis = vec![int_vector(&[1, 1, 4]), int_vector(&[0, 1, 0])];
        let x = int_vector(&[2, -1, 8]);
        let c = express_in_basis(3, &basis, &x).unwrap();
        assert_eq!(c, int_vector(&[2, -3]));
        assert!(express_in_basis(3, &basis, &int_vector(&[0, 0, 1])).is_none());
    }

    #[test]
    fn projection_kills_saturation() {
        let p = quotient_projection(3, &[int_vector(&[2, 2, 8])]);
        assert_eq!(p.cols(), 2);
        assert!(p.left_mul_vector(&int_vector(&[1, 1, 4])).iter().all(Zero::is_zero));
    }

    #[test]
    fn hermite_normalizes_sign_and_order() {
        let h = hermite_rows(2, &[int_vector(&[0, -3]), int_vector(&[-2, 5])]);
        assert_eq!(h, vec![int_vector(&[2, 1]), int_vector(&[0, 3])]);
    }

    #[test]
    fn bareiss_matches_known_determinants() {
        assert_eq!(m(2, &[&[1, 1], &[1, -4]]).determinant(), Some(BigInt::from(-5)));
        assert_eq!(m(2, &[&[0, 1], &[1, 0]]).determinant(), Some(BigInt::from(-1)));
        assert_eq!(m(2, &[&[1, 2], &[2, 4]]).determinant(), Some(BigInt::zero()));
    }
}
