//! Ideals generated by Euler classes of a saturated sublattice of characters.
//!
//! For a saturated sublattice `K ⊆ Z^n` with basis `u_1, …, u_k`:
//!
//! * in `Z[x^±]`, `(1 − x^{−u_1}, …, 1 − x^{−u_k})` is the kernel of
//!   `Z[Z^n] → Z[Z^n / K]`, so a Laurent polynomial lies in the ideal iff all
//!   of its coefficient sums over cosets of `K` vanish;
//! * in `Z[x]`, after a unimodular change of variables the linear forms
//!   `⟨u_i, x⟩` become `y_1, …, y_k`, and a polynomial lies in the ideal iff
//!   it vanishes at `y_1 = ⋯ = y_k = 0`.
//!
//! Both reductions go through one unimodular matrix `V` with `u_i·V` in the
//! span of the first `k` standard basis vectors.

use num_traits::{One, ToPrimitive};

use super::poly::{Exponent, GradedPolynomial, LaurentPolynomial};
use super::GkmError;
use crate::zlinalg::{smith_normal_form, IntMatrix};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeIdeal {
    nvars: usize,
    generators: Vec<Vec<i64>>,
    /// `V`, row-major `n × n`.
    transform: Vec<Vec<i64>>,
}

impl LatticeIdeal {
    /// Requires the generators to be a basis of a saturated sublattice.
    pub fn new(nvars: usize, generators: Vec<Vec<i64>>) -> Result<Self, GkmError> {
        if let Some(g) = generators.iter().find(|g| g.len() != nvars) {
            return Err(GkmError::DimensionMismatch {
                expected: nvars,
                found: g.len(),
            });
        }
        let transform = if generators.is_empty() {
            (0..nvars)
                .map(|i| (0..nvars).map(|j| i64::from(i == j)).collect())
                .collect()
        } else {
            let snf = smith_normal_form(&IntMatrix::from_i64_rows(nvars, &generators));
            let unit_chain = snf.rank == generators.len() && snf.diagonal().iter().all(|d| d.is_one());
            if !unit_chain {
                return Err(GkmError::NotSaturated(generators));
            }
            (0..nvars)
                .map(|i| {
                    (0..nvars)
                        .map(|j| snf.v[(i, j)].to_i64().ok_or(GkmError::Overflow))
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?
        };
        Ok(LatticeIdeal {
            nvars,
            generators,
            transform,
        })
    }

    pub fn generators(&self) -> &[Vec<i64>] {
        &self.generators
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Number of variables of the quotient ring.
    pub fn quotient_rank(&self) -> usize {
        self.nvars - self.generators.len()
    }

    /// `a ↦ (a·V)_{k..n}`: the coset of `a` modulo the lattice.
    pub fn coset(&self, a: &[i64]) -> Exponent {
        let k = self.generators.len();
        (k..self.nvars)
            .map(|j| {
                let s: i128 = a
                    .iter()
                    .zip(&self.transform)
                    .map(|(&ai, row)| i128::from(ai) * i128::from(row[j]))
                    .sum();
                i64::try_from(s).expect("exponent overflow")
            })
            .collect()
    }

    /// Image in `Z[Z^n / K]`, written in `n − k` variables; zero iff `f` is in the ideal.
    pub fn reduce_laurent(&self, f: &LaurentPolynomial) -> LaurentPolynomial {
        assert_eq!(f.nvars(), self.nvars, "variable count");
        f.map_exponents(self.quotient_rank(), |a| self.coset(a))
    }

    /// Image in `Z[y_{k+1}, …, y_n]`; zero iff `f` is in the ideal.
    pub fn reduce_graded(&self, f: &GradedPolynomial) -> GradedPolynomial {
        assert_eq!(f.nvars(), self.nvars, "variable count");
        let k = self.generators.len();
        // x = y·Vᵀ, then y_1 = ⋯ = y_k = 0
        let forms: Vec<Vec<i64>> = self.transform.iter().map(|row| row[k..].to_vec()).collect();
        f.substitute_linear(self.quotient_rank(), &forms)
    }

    pub fn contains_laurent(&self, f: &LaurentPolynomial) -> bool {
        self.reduce_laurent(f).is_zero()
    }

    pub fn contains_graded(&self, f: &GradedPolynomial) -> bool {
        self.reduce_graded(f).is_zero()
    }
}

/// Whether `1 − x^{−u}` divides `f` in `Z[x^±]`, for primitive `u`.
///
/// Invariant under `u ↦ −u`, since `1 − x^{u} = −x^{u}(1 − x^{−u})`.
pub fn euler_divides_laurent(u: &[i64], f: &LaurentPolynomial) -> Result<bool, GkmError> {
    Ok(LatticeIdeal::new(u.len(), vec![u.to_vec()])?.contains_laurent(f))
}

/// Whether the divisor, which must have the form `1 − x^{−u}` with `u` primitive, divides `f`.
pub fn laurent_divides(divisor: &LaurentPolynomial, f: &LaurentPolynomial) -> Result<bool, GkmError> {
    let u = divisor
        .as_euler_class()
        .ok_or_else(|| GkmError::NotEulerClass(divisor.to_string()))?;
    euler_divides_laurent(&u, f)
}

/// Whether `⟨u, x⟩` divides `f` in `Z[x]`, for primitive `u`.
pub fn euler_divides_graded(u: &[i64], f: &GradedPolynomial) -> Result<bool, GkmError> {
    Ok(LatticeIdeal::new(u.len(), vec![u.to_vec()])?.contains_graded(f))
}
