//! Invariant polynomials of a finite matrix group.
//!
//! The invariant space of each degree is computed by averaging every monomial
//! of that degree and row-reducing the results. Ring generators are collected
//! degree by degree as a complement of the span of products of lower-degree
//! generators; every level is checked against the Molien series.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::actions::{require_invariant, reynolds, PolyAction};
use crate::error::{Error, Result};
use crate::group::MatGroup;
use crate::linalg::{Echelon, Inserted, SparseVec};
use crate::poly::{Monomial, MultiPoly};
use crate::rat::Rat;
use crate::univariate::UniPoly;

/// A power series in `t` given as a reduced quotient `numer / denom` with
/// `denom(0) = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MolienSeries {
    numer: UniPoly,
    denom: UniPoly,
}

impl MolienSeries {
    /// `(1/|G|) Σ_g weight(g) / det(I - t·g⁻¹)`.
    pub(crate) fn average<F>(group: &MatGroup, mut weight: F) -> Result<MolienSeries>
    where
        F: FnMut(usize) -> Rat,
    {
        // Group terms sharing a denominator before clearing fractions.
        let mut by_denom: BTreeMap<UniPoly, Rat> = BTreeMap::new();
        for g in 0..group.order() {
            let inv = group.element(group.inverse_of(g)?)?;
            let d = inv.det_identity_minus_t()?;
            *by_denom.entry(d).or_insert_with(Rat::zero) += weight(g);
        }
        by_denom.retain(|_, w| !w.is_zero());

        let mut common = UniPoly::one();
        for d in by_denom.keys() {
            let g = common.gcd(d);
            let (q, _) = d.div_rem(&g);
            common = common.mul(&q);
        }
        let mut numer = UniPoly::zero();
        for (d, w) in &by_denom {
            let (cofactor, _) = common.div_rem(d);
            numer = numer.add(&cofactor.scale(w));
        }
        let order = Rat::from_integer((group.order() as i64).into());
        Ok(MolienSeries::reduced(numer.scale(&order.recip()), common))
    }

    fn reduced(numer: UniPoly, denom: UniPoly) -> MolienSeries {
        if numer.is_zero() {
            return MolienSeries {
                numer,
                denom: UniPoly::one(),
            };
        }
        let g = numer.gcd(&denom);
        let (mut numer, _) = numer.div_rem(&g);
        let (mut denom, _) = denom.div_rem(&g);
        let c = denom.coeff(0).recip();
        numer = numer.scale(&c);
        denom = denom.scale(&c);
        MolienSeries { numer, denom }
    }

    pub fn numer(&self) -> &UniPoly {
        &self.numer
    }

    pub fn denom(&self) -> &UniPoly {
        &self.denom
    }

    /// Coefficients `c_0 .. c_{count-1}` of the expansion.
    pub fn coefficients(&self, count: usize) -> Vec<Rat> {
        self.numer.series_div(&self.denom, count)
    }

    pub fn coefficient(&self, d: u32) -> Rat {
        self.coefficients(d as usize + 1).pop().unwrap()
    }

    /// Coefficients as dimensions. They are always non-negative integers for
    /// a genuine group.
    pub fn dimensions(&self, count: usize) -> Vec<usize> {
        self.coefficients(count)
            .into_iter()
            .map(|c| {
                debug_assert!(c.is_integer() && !c.is_negative());
                c.to_integer().to_usize().unwrap_or(0)
            })
            .collect()
    }
}

/// Molien series of the action on polynomials: `c_d = dim P_d(ℝⁿ)^G`.
pub fn molien(group: &MatGroup) -> Result<MolienSeries> {
    MolienSeries::average(group, |_| Rat::one())
}

pub(crate) fn to_vec(p: MultiPoly) -> SparseVec<Monomial> {
    p.into_map()
}

pub(crate) fn from_vec(nvars: usize, v: SparseVec<Monomial>) -> MultiPoly {
    MultiPoly::from_map(nvars, v)
}

/// Basis of the degree-`d` invariants in reduced row echelon form, leading
/// monomials in descending graded-lex order, each with leading coefficient 1.
pub fn invariant_basis(group: &MatGroup, d: u32) -> Result<Vec<MultiPoly>> {
    let n = group.dim();
    let mut ech = Echelon::new();
    for (t, m) in Monomial::all_of_degree(n, d).into_iter().enumerate() {
        let avg = reynolds::<PolyAction>(group, &MultiPoly::from_monomial(m, Rat::one()))?;
        ech.insert(to_vec(avg), t);
    }
    Ok(ech
        .into_rows()
        .into_iter()
        .map(|v| from_vec(n, v))
        .collect())
}

/// Bookkeeping for one degree of [`invariant_ring_generators`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantLevel {
    pub degree: u32,
    /// Molien coefficient `c_d`.
    pub molien: usize,
    /// Dimension of the span of products of lower-degree generators.
    pub products: usize,
    pub new_generators: usize,
}

/// Homogeneous generators `p₁..p_k` of the invariant ring, ordered by degree
/// and then by descending leading monomial, each with leading coefficient 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantGens {
    group: MatGroup,
    gens: Vec<MultiPoly>,
    degrees: Vec<u32>,
    levels: Vec<InvariantLevel>,
}

/// Generators of the invariant ring up to `degree_bound` (default: the
/// Noether bound `|G|`).
pub fn invariant_ring_generators(
    group: &MatGroup,
    degree_bound: Option<u32>,
) -> Result<InvariantGens> {
    let n = group.dim();
    let bound = degree_bound.unwrap_or(group.order() as u32);
    let dims = molien(group)?.dimensions(bound as usize + 1);

    let mut gens: Vec<MultiPoly> = Vec::new();
    let mut degrees: Vec<u32> = Vec::new();
    let mut levels = Vec::new();
    for d in 1..=bound {
        let expected = dims[d as usize];
        let basis = invariant_basis(group, d)?;
        if basis.len() != expected {
            return Err(Error::DimensionMismatchWithMolien {
                degree: d,
                expected,
                found: basis.len(),
            });
        }

        let mut span = product_span(&gens, &degrees, n, d);
        let products = span.rank();
        let mut fresh = 0;
        for (t, b) in basis.into_iter().enumerate() {
            let (residual, _) = span.reduce(to_vec(b));
            if residual.is_empty() {
                continue;
            }
            let g = from_vec(n, residual.clone()).monic();
            span.insert(residual, usize::MAX - t);
            require_invariant::<PolyAction>(group, &g)
                .map_err(|_| Error::Internal("selected generator is not invariant"))?;
            gens.push(g);
            degrees.push(d);
            fresh += 1;
        }
        if span.rank() != expected {
            return Err(Error::DimensionMismatchWithMolien {
                degree: d,
                expected,
                found: span.rank(),
            });
        }
        levels.push(InvariantLevel {
            degree: d,
            molien: expected,
            products,
            new_generators: fresh,
        });
    }
    Ok(InvariantGens {
        group: group.clone(),
        gens,
        degrees,
        levels,
    })
}

/// Echelon form of `{ P^β(p) : β of weighted degree d }`, tagged by the index
/// of `β` in ascending graded-lex order.
fn product_span(gens: &[MultiPoly], degrees: &[u32], n: usize, d: u32) -> Echelon<Monomial> {
    let monos = Monomial::all_of_weighted_degree(degrees, d);
    let mut span = Echelon::new();
    for (t, img) in MultiPoly::monomial_images(gens, n, &monos)
        .into_iter()
        .enumerate()
    {
        span.insert(to_vec(img), t);
    }
    span
}

impl InvariantGens {
    /// Wraps externally supplied generators after checking that each one is
    /// a nonzero homogeneous invariant of positive degree.
    pub fn from_parts(group: MatGroup, gens: Vec<MultiPoly>) -> Result<InvariantGens> {
        let mut degrees = Vec::with_capacity(gens.len());
        for g in &gens {
            if g.nvars() != group.dim() {
                return Err(Error::VariableCountMismatch {
                    expected: group.dim(),
                    found: g.nvars(),
                });
            }
            match g.degree() {
                Some(d) if d > 0 && g.is_homogeneous() => degrees.push(d),
                _ => return Err(Error::NotHomogeneous),
            }
            require_invariant::<PolyAction>(&group, g)?;
        }
        Ok(InvariantGens {
            group,
            gens,
            degrees,
            levels: Vec::new(),
        })
    }

    pub fn group(&self) -> &MatGroup {
        &self.group
    }

    pub fn gens(&self) -> &[MultiPoly] {
        &self.gens
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// Per-degree bookkeeping from generation; empty for [`from_parts`](Self::from_parts).
    pub fn levels(&self) -> &[InvariantLevel] {
        &self.levels
    }

    /// Hilbert map `σ(x) = (p₁(x), …, p_k(x))`.
    pub fn hilbert_map_eval(&self, x: &[Rat]) -> Result<Vec<Rat>> {
        self.gens.iter().map(|g| g.eval(x)).collect()
    }

    /// `F(p₁, …, p_k)` for a polynomial `F` in `k` variables.
    pub fn substitute(&self, f: &MultiPoly) -> Result<MultiPoly> {
        f.compose(&self.gens, self.group.dim())
    }

    /// Dimension of the span of generator products of degree `d`.
    pub fn generated_dimension(&self, d: u32) -> usize {
        if d == 0 {
            return 1;
        }
        product_span(&self.gens, &self.degrees, self.group.dim(), d).rank()
    }

    /// Finds `F` with `F(p₁, …, p_k) = q`.
    ///
    /// Each homogeneous part is solved exactly over the generator monomials
    /// of matching weighted degree. Candidate monomials are pivoted in
    /// ascending graded-lex order, so when relations make `F` non-unique the
    /// solution avoids the largest monomials.
    pub fn express(&self, q: &MultiPoly) -> Result<MultiPoly> {
        let n = self.group.dim();
        if q.nvars() != n {
            return Err(Error::VariableCountMismatch {
                expected: n,
                found: q.nvars(),
            });
        }
        require_invariant::<PolyAction>(&self.group, q)?;
        let k = self.gens.len();
        let mut out = MultiPoly::zero(k);
        for (d, part) in q.homogeneous_components() {
            let monos = Monomial::all_of_weighted_degree(&self.degrees, d);
            let span = {
                let mut e = Echelon::new();
                for (t, img) in MultiPoly::monomial_images(&self.gens, n, &monos)
                    .into_iter()
                    .enumerate()
                {
                    e.insert(to_vec(img), t);
                }
                e
            };
            let (residual, combo) = span.reduce(to_vec(part));
            if !residual.is_empty() {
                return Err(Error::NoSolution { degree: d });
            }
            for (t, c) in combo {
                out.add_scaled(&MultiPoly::from_monomial(monos[t].clone(), c), &Rat::one());
            }
        }
        Ok(out)
    }

    /// Polynomial relations among the generators up to weighted degree
    /// `d_max`, skipping any that follow from lower-degree ones by
    /// multiplication with generator monomials.
    pub fn relations(&self, d_max: u32) -> RelationSet {
        let n = self.group.dim();
        let k = self.gens.len();
        let mut rels: Vec<MultiPoly> = Vec::new();
        let mut rel_degrees: Vec<u32> = Vec::new();
        for d in 1..=d_max {
            let monos = Monomial::all_of_weighted_degree(&self.degrees, d);
            let mut span = Echelon::new();
            let mut kernel = Vec::new();
            for (t, img) in MultiPoly::monomial_images(&self.gens, n, &monos)
                .into_iter()
                .enumerate()
            {
                if let Inserted::Dependent(combo) = span.insert(to_vec(img), t) {
                    let mut r = SparseVec::new();
                    for (s, c) in combo {
                        r.insert(monos[s].clone(), c);
                    }
                    kernel.push(r);
                }
            }
            if kernel.is_empty() {
                continue;
            }

            // Consequences of earlier relations at this weighted degree.
            let mut ideal = Echelon::new();
            let mut tag = 0;
            for (r, &e) in rels.iter().zip(&rel_degrees) {
                for m in Monomial::all_of_weighted_degree(&self.degrees, d - e) {
                    let shifted = r * &MultiPoly::from_monomial(m, Rat::one());
                    ideal.insert(to_vec(shifted), tag);
                    tag += 1;
                }
            }
            for v in kernel {
                let (residual, _) = ideal.reduce(v);
                if residual.is_empty() {
                    continue;
                }
                let rel = from_vec(k, residual.clone()).monic();
                ideal.insert(residual, tag);
                tag += 1;
                rels.push(rel);
                rel_degrees.push(d);
            }
        }
        RelationSet {
            weights: self.degrees.clone(),
            rels,
            degrees: rel_degrees,
        }
    }
}

/// Relations `R(P₁, …, P_k)` that vanish after substituting `Pᵢ ↦ pᵢ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationSet {
    weights: Vec<u32>,
    rels: Vec<MultiPoly>,
    degrees: Vec<u32>,
}

impl RelationSet {
    pub fn rels(&self) -> &[MultiPoly] {
        &self.rels
    }

    /// Weighted degree of each relation.
    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    /// Weight of each variable `Pᵢ`, i.e. the degree of `pᵢ`.
    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.rels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rels.is_empty()
    }

    /// Whether every relation substitutes to the zero polynomial.
    pub fn verify(&self, gens: &InvariantGens) -> Result<bool> {
        for r in &self.rels {
            if !gens.substitute(r)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
