//! Sparse multivariate polynomials over ℚ.
//!
//! Terms live in a `BTreeMap` keyed by [`Monomial`], whose order is graded
//! lexicographic with variable 0 the most significant. Zero coefficients are
//! never stored, so structural equality is mathematical equality.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::RatMatrix;
use crate::rat::Rat;

/// Exponent vector. The derived order compares total degree first and then
/// exponents lexicographically, which is graded lex.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    degree: u32,
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        let degree = exps.iter().sum();
        Monomial { degree, exps }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial {
            degree: 0,
            exps: vec![0; nvars],
        }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Monomial { degree: 1, exps }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    /// Degree restricted to the variables in `range`.
    pub fn partial_degree(&self, range: core::ops::Range<usize>) -> u32 {
        self.exps[range].iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a + b)
            .collect();
        Monomial {
            degree: self.degree + other.degree,
            exps,
        }
    }

    /// Every exponent vector of total degree `d` in `nvars` variables, in
    /// descending graded-lex order.
    pub fn all_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
        fn go(nvars: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if prefix.len() + 1 == nvars {
                prefix.push(left);
                out.push(Monomial::new(prefix.clone()));
                prefix.pop();
                return;
            }
            for e in (0..=left).rev() {
                prefix.push(e);
                go(nvars, left - e, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if nvars == 0 {
            if d == 0 {
                out.push(Monomial::one(0));
            }
            return out;
        }
        go(nvars, d, &mut Vec::with_capacity(nvars), &mut out);
        out
    }

    /// Exponent vectors whose weighted degree `Σ eᵢ·weights[i]` equals `d`,
    /// in ascending graded-lex order. Weights must be positive.
    pub fn all_of_weighted_degree(weights: &[u32], d: u32) -> Vec<Monomial> {
        fn go(weights: &[u32], left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            let i = prefix.len();
            if i == weights.len() {
                if left == 0 {
                    out.push(Monomial::new(prefix.clone()));
                }
                return;
            }
            for e in 0..=left / weights[i] {
                prefix.push(e);
                go(weights, left - e * weights[i], prefix, out);
                prefix.pop();
            }
        }
        debug_assert!(weights.iter().all(|&w| w > 0));
        let mut out = Vec::new();
        go(weights, d, &mut Vec::with_capacity(weights.len()), &mut out);
        out.sort();
        out
    }
}

/// Sparse polynomial in `nvars` variables with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rat>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rat::one())
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        Self::from_monomial(Monomial::one(nvars), c)
    }

    /// The coordinate function `x_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        Self::from_monomial(Monomial::var(nvars, i), Rat::one())
    }

    pub fn from_monomial(m: Monomial, c: Rat) -> Self {
        let nvars = m.nvars();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { nvars, terms }
    }

    /// Builds a polynomial from `(coefficient, exponents)` pairs, merging
    /// repeated exponent vectors.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Rat, Vec<u32>)>,
    {
        let mut p = MultiPoly::zero(nvars);
        for (c, exps) in terms {
            if exps.len() != nvars {
                return Err(Error::VariableCountMismatch {
                    expected: nvars,
                    found: exps.len(),
                });
            }
            p.add_term(Monomial::new(exps), c);
        }
        Ok(p)
    }

    /// Wraps an already sparse map; zero entries are dropped.
    pub(crate) fn from_map(nvars: usize, mut terms: BTreeMap<Monomial, Rat>) -> Self {
        terms.retain(|_, c| !c.is_zero());
        debug_assert!(terms.keys().all(|m| m.nvars() == nvars));
        MultiPoly { nvars, terms }
    }

    pub(crate) fn into_map(self) -> BTreeMap<Monomial, Rat> {
        self.terms
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rat)> + '_ {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.leading_term().map(|(m, _)| m.degree())
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Same polynomial viewed in more variables (new ones appended, unused).
    pub fn extend_vars(&self, nvars: usize) -> MultiPoly {
        assert!(nvars >= self.nvars);
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut exps = m.exps.clone();
                exps.resize(nvars, 0);
                (Monomial::new(exps), c.clone())
            })
            .collect();
        MultiPoly { nvars, terms }
    }

    fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        use alloc::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_same(&self, other: &MultiPoly) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::VariableCountMismatch {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_same(other)?;
        let mut out = MultiPoly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &MultiPoly, c: &Rat) {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        if c.is_zero() {
            return;
        }
        for (m, v) in &other.terms {
            self.add_term(m.clone(), v * c);
        }
    }

    pub fn scale(&self, c: &Rat) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        let terms = self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect();
        MultiPoly {
            nvars: self.nvars,
            terms,
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Scales so the graded-lex leading coefficient is 1. Zero stays zero.
    pub fn monic(&self) -> MultiPoly {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    /// Returns `q` with `q(x) = p(M x)`.
    pub fn compose_linear(&self, m: &RatMatrix) -> Result<MultiPoly> {
        if m.rows() != m.cols() {
            return Err(Error::DimensionMismatch {
                expected: m.rows(),
                found: m.cols(),
            });
        }
        if m.rows() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: m.rows(),
            });
        }
        let n = self.nvars;
        let forms: Vec<MultiPoly> = (0..n)
            .map(|i| {
                let mut f = MultiPoly::zero(n);
                for j in 0..n {
                    f.add_term(Monomial::var(n, j), m.get(i, j).clone());
                }
                f
            })
            .collect();
        Ok(self.substitute_unchecked(&forms, n))
    }

    /// Substitutes `subs[i]` for variable `i`; every substitute must have
    /// `nvars` variables, and the result lives in `nvars` variables.
    pub fn compose(&self, subs: &[MultiPoly], nvars: usize) -> Result<MultiPoly> {
        if subs.len() != self.nvars {
            return Err(Error::VariableCountMismatch {
                expected: self.nvars,
                found: subs.len(),
            });
        }
        if let Some(s) = subs.iter().find(|s| s.nvars != nvars) {
            return Err(Error::VariableCountMismatch {
                expected: nvars,
                found: s.nvars,
            });
        }
        Ok(self.substitute_unchecked(subs, nvars))
    }

    /// Images of several monomials under the substitution `xᵢ ↦ subs[i]`,
    /// sharing one table of powers.
    pub fn monomial_images(subs: &[MultiPoly], nvars: usize, monos: &[Monomial]) -> Vec<MultiPoly> {
        let mut cache = PowerCache::new(subs, nvars);
        monos.iter().map(|m| cache.monomial(m)).collect()
    }

    fn substitute_unchecked(&self, subs: &[MultiPoly], nvars: usize) -> MultiPoly {
        let mut cache = PowerCache::new(subs, nvars);
        let mut out = MultiPoly::zero(nvars);
        for (m, c) in &self.terms {
            let image = cache.monomial(m);
            out.add_scaled(&image, c);
        }
        out
    }

    /// Formal partial derivative with respect to variable `i`.
    pub fn partial(&self, i: usize) -> Result<MultiPoly> {
        if i >= self.nvars {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: self.nvars,
            });
        }
        let mut out = MultiPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exps[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.exps.clone();
            exps[i] -= 1;
            out.add_term(Monomial::new(exps), c * Rat::from_integer(e.into()));
        }
        Ok(out)
    }

    /// Sum of the terms of total degree exactly `d`.
    pub fn homogeneous_part(&self, d: u32) -> MultiPoly {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.degree == d)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        MultiPoly {
            nvars: self.nvars,
            terms,
        }
    }

    /// Nonzero homogeneous components keyed by degree.
    pub fn homogeneous_components(&self) -> BTreeMap<u32, MultiPoly> {
        let mut out: BTreeMap<u32, MultiPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.degree)
                .or_insert_with(|| MultiPoly::zero(self.nvars))
                .terms
                .insert(m.clone(), c.clone());
        }
        out
    }

    /// Exact value at `point`.
    pub fn eval(&self, point: &[Rat]) -> Result<Rat> {
        if point.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: point.len(),
            });
        }
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.exps) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }
}

/// Lazily tabulated powers of a list of substitutes.
struct PowerCache<'a> {
    subs: &'a [MultiPoly],
    nvars: usize,
    powers: Vec<Vec<MultiPoly>>,
}

impl<'a> PowerCache<'a> {
    fn new(subs: &'a [MultiPoly], nvars: usize) -> Self {
        let powers = subs.iter().map(|_| vec![MultiPoly::one(nvars)]).collect();
        PowerCache {
            subs,
            nvars,
            powers,
        }
    }

    fn power(&mut self, i: usize, e: u32) -> &MultiPoly {
        while self.powers[i].len() <= e as usize {
            let next = self.powers[i].last().unwrap() * &self.subs[i];
            self.powers[i].push(next);
        }
        &self.powers[i][e as usize]
    }

    fn monomial(&mut self, m: &Monomial) -> MultiPoly {
        let mut acc = MultiPoly::one(self.nvars);
        for (i, &e) in m.exps.iter().enumerate() {
            if e > 0 {
                acc = &acc * self.power(i, e);
            }
        }
        acc
    }
}

/// Panics on a variable-count mismatch; use [`MultiPoly::try_add`] for a
/// checked version.
impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_add(rhs).expect("variable count mismatch")
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_sub(rhs).expect("variable count mismatch")
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_mul(rhs).expect("variable count mismatch")
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-Rat::one())
    }
}

impl fmt::Display for MultiPoly {
    /// Highest graded-lex term first, variables named `x1..xn`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c < &Rat::zero();
            let abs = if negative { -c.clone() } else { c.clone() };
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mut factors = Vec::new();
            for (i, &e) in m.exps.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(alloc::format!("x{}", i + 1)),
                    _ => factors.push(alloc::format!("x{}^{}", i + 1, e)),
                }
            }
            if factors.is_empty() {
                write!(f, "{}", abs)?;
            } else {
                if !abs.is_one() {
                    write!(f, "{}*", abs)?;
                }
                f.write_str(&factors.join("*"))?;
            }
        }
        Ok(())
    }
}
