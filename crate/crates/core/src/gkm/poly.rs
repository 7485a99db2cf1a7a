//! Laurent polynomials `Z[x_1^±, …, x_n^±]` and polynomials `Z[x_1, …, x_n]`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Exponent vector of a monomial.
pub type Exponent = Vec<i64>;

/// Element of the representation ring `R(T) = Z[x_1^±, …, x_n^±]`.
///
/// Terms are kept sorted by exponent and zero coefficients are never stored,
/// so structural equality is ring equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPolynomial {
    nvars: usize,
    terms: BTreeMap<Exponent, BigInt>,
}

impl LaurentPolynomial {
    pub fn zero(nvars: usize) -> Self {
        LaurentPolynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    pub fn monomial(exp: Exponent, coef: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(exp.len());
        p.add_term(exp, coef.into());
        p
    }

    /// `x_i` (zero-based).
    pub fn variable(nvars: usize, i: usize) -> Self {
        let mut exp = vec![0; nvars];
        exp[i] = 1;
        Self::monomial(exp, 1)
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exponent, BigInt)>) -> Self {
        let mut p = Self::zero(nvars);
        for (exp, c) in terms {
            assert_eq!(exp.len(), nvars, "exponent length");
            p.add_term(exp, c);
        }
        p
    }

    fn add_term(&mut self, exp: Exponent, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exp: &[i64]) -> BigInt {
        self.terms.get(exp).cloned().unwrap_or_default()
    }

    /// Whether every exponent is nonnegative.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&a| a >= 0))
    }

    /// Applies `exp ↦ map(exp)` to every monomial, summing colliding terms.
    pub fn map_exponents(&self, nvars: usize, mut map: impl FnMut(&[i64]) -> Exponent) -> Self {
        Self::from_terms(nvars, self.terms.iter().map(|(e, c)| (map(e), c.clone())))
    }

    /// Multiplies by the monomial `x^shift`.
    pub fn shift(&self, shift: &[i64]) -> Self {
        self.map_exponents(self.nvars, |e| e.iter().zip(shift).map(|(a, b)| a + b).collect())
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(self.nvars), |acc, _| &acc * self)
    }

    /// `1 − x^{−u}`: the K-theoretic Euler class of the character `u`.
    pub fn euler_class(u: &[i64]) -> Self {
        let minus: Exponent = u.iter().map(|a| -a).collect();
        &Self::one(u.len()) - &Self::monomial(minus, 1)
    }

    /// Recovers `u` if `self = 1 − x^{−u}` with `u ≠ 0`.
    pub fn as_euler_class(&self) -> Option<Vec<i64>> {
        if self.terms.len() != 2 || !self.coefficient(&vec![0; self.nvars]).is_one() {
            return None;
        }
        let (exp, c) = self.terms.iter().find(|(e, _)| e.iter().any(|&a| a != 0))?;
        (-c).is_one().then(|| exp.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (exp, c) in &self.terms {
            let mono: Vec<String> = exp
                .iter()
                .enumerate()
                .filter(|(_, &a)| a != 0)
                .map(|(i, &a)| {
                    if a == 1 {
                        format!("x{}", i + 1)
                    } else {
                        format!("x{}^{a}", i + 1)
                    }
                })
                .collect();
            let sign = if c.is_negative() {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            if !first {
                write!(f, " ")?;
            }
            let mag = c.abs();
            if mono.is_empty() {
                write!(f, "{sign}{mag}")?;
            } else if mag.is_one() {
                write!(f, "{sign}{}", mono.join("*"))?;
            } else {
                write!(f, "{sign}{mag}*{}", mono.join("*"))?;
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Laurent({self})")
    }
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        assert_eq!(self.nvars, rhs.nvars, "variable count");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        assert_eq!(self.nvars, rhs.nvars, "variable count");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        assert_eq!(self.nvars, rhs.nvars, "variable count");
        let mut out = LaurentPolynomial::zero(self.nvars);
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                let e: Exponent = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

macro_rules! owned_ops {
    ($t:ty) => {
        impl Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                &self + &rhs
            }
        }
        impl Sub for $t {
            type Output = $t;
            fn sub(self, rhs: $t) -> $t {
                &self - &rhs
            }
        }
        impl Mul for $t {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t {
                &self * &rhs
            }
        }
        impl Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                -&self
            }
        }
    };
}

owned_ops!(LaurentPolynomial);

/// Element of `H*_T = Z[x_1, …, x_n]`; exponents are nonnegative.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GradedPolynomial(LaurentPolynomial);

impl GradedPolynomial {
    pub fn zero(nvars: usize) -> Self {
        GradedPolynomial(LaurentPolynomial::zero(nvars))
    }

    pub fn one(nvars: usize) -> Self {
        GradedPolynomial(LaurentPolynomial::one(nvars))
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        GradedPolynomial(LaurentPolynomial::constant(nvars, c))
    }

    pub fn variable(nvars: usize, i: usize) -> Self {
        GradedPolynomial(LaurentPolynomial::variable(nvars, i))
    }

    /// `None` if some exponent is negative.
    pub fn from_laurent(p: LaurentPolynomial) -> Option<Self> {
        p.is_polynomial().then_some(GradedPolynomial(p))
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exponent, BigInt)>) -> Option<Self> {
        Self::from_laurent(LaurentPolynomial::from_terms(nvars, terms))
    }

    /// `⟨u, x⟩ = Σ u_i x_i`: the cohomological Euler class of `u`.
    pub fn linear_form(u: &[i64]) -> Self {
        let n = u.len();
        let terms = u.iter().enumerate().map(|(i, &a)| {
            let mut e = vec![0; n];
            e[i] = 1;
            (e, BigInt::from(a))
        });
        GradedPolynomial(LaurentPolynomial::from_terms(n, terms))
    }

    pub fn as_laurent(&self) -> &LaurentPolynomial {
        &self.0
    }

    pub fn into_laurent(self) -> LaurentPolynomial {
        self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &BigInt)> {
        self.0.terms()
    }

    pub fn degree(&self) -> Option<i64> {
        self.0.terms().map(|(e, _)| e.iter().sum()).max()
    }

    pub fn pow(&self, k: u32) -> Self {
        GradedPolynomial(self.0.pow(k))
    }

    /// Substitutes `x_i ↦ forms[i]`, each form a linear form in `nvars` new variables.
    pub fn substitute_linear(&self, nvars: usize, forms: &[Vec<i64>]) -> Self {
        assert_eq!(forms.len(), self.nvars(), "one form per variable");
        let images: Vec<GradedPolynomial> = forms
            .iter()
            .map(|f| {
                assert_eq!(f.len(), nvars);
                GradedPolynomial::linear_form(f)
            })
            .collect();
        let mut power_cache: BTreeMap<(usize, i64), GradedPolynomial> = BTreeMap::new();
        let mut out = GradedPolynomial::zero(nvars);
        for (exp, c) in self.terms() {
            let mut term = GradedPolynomial::constant(nvars, c.clone());
            for (i, &a) in exp.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                let p = power_cache
                    .entry((i, a))
                    .or_insert_with(|| images[i].pow(a as u32))
                    .clone();
                term = &term * &p;
                if term.is_zero() {
                    break;
                }
            }
            out = &out + &term;
        }
        out
    }
}

impl fmt::Display for GradedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Debug for GradedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graded({})", self.0)
    }
}

impl Add for &GradedPolynomial {
    type Output = GradedPolynomial;
    fn add(self, rhs: &GradedPolynomial) -> GradedPolynomial {
        GradedPolynomial(&self.0 + &rhs.0)
    }
}

impl Sub for &GradedPolynomial {
    type Output = GradedPolynomial;
    fn sub(self, rhs: &GradedPolynomial) -> GradedPolynomial {
        GradedPolynomial(&self.0 - &rhs.0)
    }
}

impl Mul for &GradedPolynomial {
    type Output = GradedPolynomial;
    fn mul(self, rhs: &GradedPolynomial) -> GradedPolynomial {
        GradedPolynomial(&self.0 * &rhs.0)
    }
}

impl Neg for &GradedPolynomial {
    type Output = GradedPolynomial;
    fn neg(self) -> GradedPolynomial {
        GradedPolynomial(-&self.0)
    }
}

owned_ops!(GradedPolynomial);
