//! Equivariant polynomial vector fields.
//!
//! Degree-`m` equivariant fields are computed as invariants of the phase
//! action on polynomials of bidegree `(m, 1)` in `(x, ξ)`, then read back as
//! vector fields through [`unpairing`]. Module generators over the invariant
//! ring are collected degree by degree, as for ring generators.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::One;

use crate::actions::{
    pairing, require_invariant, reynolds, unpairing, PhaseAction, PhasePoly, PolyVectorField,
    VectorFieldAction,
};
use crate::error::{Error, Result};
use crate::group::MatGroup;
use crate::invariants::{from_vec, invariant_basis, to_vec, InvariantGens, MolienSeries};
use crate::linalg::Echelon;
use crate::poly::{Monomial, MultiPoly};
use crate::rat::Rat;

/// Basis of the equivariant fields of degree `m`, in reduced row echelon form
/// of their paired phase polynomials.
pub fn equivariant_basis(group: &MatGroup, m: u32) -> Result<Vec<PolyVectorField>> {
    let n = group.dim();
    let mut ech = Echelon::new();
    let mut tag = 0;
    for alpha in Monomial::all_of_degree(n, m) {
        for i in 0..n {
            let mut exps = alpha.exps().to_vec();
            exps.resize(2 * n, 0);
            exps[n + i] = 1;
            let q = PhasePoly::new(n, MultiPoly::from_monomial(Monomial::new(exps), Rat::one()))?;
            let avg = reynolds::<PhaseAction>(group, &q)?;
            ech.insert(to_vec(avg.into_poly()), tag);
            tag += 1;
        }
    }
    ech.into_rows()
        .into_iter()
        .map(|v| unpairing(&PhasePoly::new(n, from_vec(2 * n, v))?))
        .collect()
}

/// `(1/|G|) Σ_g tr(g) / det(I - t·g⁻¹)`; coefficient `d` is the dimension of
/// degree-`d` equivariant fields.
pub fn molien_equivariant(group: &MatGroup) -> Result<MolienSeries> {
    let traces: Vec<Rat> = group.elements().iter().map(|g| g.trace()).collect();
    MolienSeries::average(group, |g| traces[g].clone())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleLevel {
    pub degree: u32,
    pub molien: usize,
    /// Dimension of the span of invariant multiples of earlier generators.
    pub products: usize,
    pub new_generators: usize,
}

/// Generators of the equivariant fields as a module over the invariant ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivariantGens {
    vgens: Vec<PolyVectorField>,
    degrees: Vec<u32>,
    invariant_gens: InvariantGens,
    levels: Vec<ModuleLevel>,
}

fn paired_vec(v: &PolyVectorField) -> crate::linalg::SparseVec<Monomial> {
    to_vec(pairing(v).into_poly())
}

/// Module generators up to `degree_bound`, by default `|G| - 1`.
pub fn equivariant_module_generators(
    group: &MatGroup,
    inv: &InvariantGens,
    degree_bound: Option<u32>,
) -> Result<EquivariantGens> {
    if inv.group() != group {
        return Err(Error::GroupMismatch);
    }
    let n = group.dim();
    let bound = degree_bound.unwrap_or(group.order() as u32 - 1);
    let dims = molien_equivariant(group)?.dimensions(bound as usize + 1);

    let mut inv_bases: Vec<Vec<MultiPoly>> = vec![vec![MultiPoly::one(n)]];
    for d in 1..=bound {
        inv_bases.push(invariant_basis(group, d)?);
    }

    let mut vgens: Vec<PolyVectorField> = Vec::new();
    let mut degrees: Vec<u32> = Vec::new();
    let mut levels = Vec::new();
    for m in 0..=bound {
        let expected = dims[m as usize];
        let basis = equivariant_basis(group, m)?;
        if basis.len() != expected {
            return Err(Error::DimensionMismatchWithMolien {
                degree: m,
                expected,
                found: basis.len(),
            });
        }

        let mut span = Echelon::new();
        let mut tag = 0;
        for (w, &mw) in vgens.iter().zip(&degrees) {
            for b in &inv_bases[(m - mw) as usize] {
                span.insert(paired_vec(&w.mul_poly(b)?), tag);
                tag += 1;
            }
        }
        let products = span.rank();
        let mut fresh = 0;
        for e in basis {
            let (residual, _) = span.reduce(paired_vec(&e));
            if residual.is_empty() {
                continue;
            }
            let q = from_vec(2 * n, residual.clone()).monic();
            span.insert(residual, tag);
            tag += 1;
            let v = unpairing(&PhasePoly::new(n, q)?)?;
            require_invariant::<VectorFieldAction>(group, &v)
                .map_err(|_| Error::Internal("selected module generator is not equivariant"))?;
            vgens.push(v);
            degrees.push(m);
            fresh += 1;
        }
        if span.rank() != expected {
            return Err(Error::DimensionMismatchWithMolien {
                degree: m,
                expected,
                found: span.rank(),
            });
        }
        levels.push(ModuleLevel {
            degree: m,
            molien: expected,
            products,
            new_generators: fresh,
        });
    }
    Ok(EquivariantGens {
        vgens,
        degrees,
        invariant_gens: inv.clone(),
        levels,
    })
}

impl EquivariantGens {
    /// Wraps externally supplied generators after checking that each one is a
    /// nonzero homogeneous equivariant field.
    pub fn from_parts(inv: InvariantGens, vgens: Vec<PolyVectorField>) -> Result<EquivariantGens> {
        let group = inv.group();
        let mut degrees = Vec::with_capacity(vgens.len());
        for v in &vgens {
            if v.dim() != group.dim() {
                return Err(Error::DimensionMismatch {
                    expected: group.dim(),
                    found: v.dim(),
                });
            }
            let d = v.degree().ok_or(Error::NotHomogeneous)?;
            if v.homogeneous_part(d) != *v {
                return Err(Error::NotHomogeneous);
            }
            require_invariant::<VectorFieldAction>(group, v)?;
            degrees.push(d);
        }
        Ok(EquivariantGens {
            vgens,
            degrees,
            invariant_gens: inv,
            levels: Vec::new(),
        })
    }

    pub fn vgens(&self) -> &[PolyVectorField] {
        &self.vgens
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn invariant_gens(&self) -> &InvariantGens {
        &self.invariant_gens
    }

    pub fn group(&self) -> &MatGroup {
        self.invariant_gens.group()
    }

    pub fn levels(&self) -> &[ModuleLevel] {
        &self.levels
    }

    pub fn len(&self) -> usize {
        self.vgens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vgens.is_empty()
    }

    /// Dimension of `span{ b·W }` at degree `m`, where `W` runs over the
    /// generators and `b` over generator-monomials of matching degree.
    pub fn generated_dimension(&self, m: u32) -> Result<usize> {
        let n = self.group().dim();
        let inv = &self.invariant_gens;
        let mut span = Echelon::new();
        let mut tag = 0;
        for (w, &mw) in self.vgens.iter().zip(&self.degrees) {
            if mw > m {
                continue;
            }
            let monos = Monomial::all_of_weighted_degree(inv.degrees(), m - mw);
            for b in MultiPoly::monomial_images(inv.gens(), n, &monos) {
                span.insert(paired_vec(&w.mul_poly(&b)?), tag);
                tag += 1;
            }
        }
        Ok(span.rank())
    }

    /// Finds `F_a` with `X = Σ_a F_a(p₁, …, p_k)·V_a`.
    ///
    /// Solved per homogeneous degree; unknowns are ordered by ascending
    /// generator-monomial and then generator index, and the earliest
    /// independent ones are used, as in [`InvariantGens::express`].
    pub fn express_equivariant(&self, x: &PolyVectorField) -> Result<Vec<MultiPoly>> {
        let group = self.group();
        let n = group.dim();
        if x.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: x.dim(),
            });
        }
        require_invariant::<VectorFieldAction>(group, x)?;
        let inv = &self.invariant_gens;
        let k = inv.len();
        let mut coeffs = vec![MultiPoly::zero(k); self.vgens.len()];

        let mut present: Vec<u32> = x
            .comps()
            .iter()
            .flat_map(|c| c.homogeneous_components().into_keys())
            .collect();
        present.sort_unstable();
        present.dedup();

        for m in present {
            let mut unknowns: Vec<(Monomial, usize)> = Vec::new();
            for (a, &ma) in self.degrees.iter().enumerate() {
                if ma <= m {
                    for beta in Monomial::all_of_weighted_degree(inv.degrees(), m - ma) {
                        unknowns.push((beta, a));
                    }
                }
            }
            unknowns.sort();
            let mut span = Echelon::new();
            for (t, (beta, a)) in unknowns.iter().enumerate() {
                let b = inv.substitute(&MultiPoly::from_monomial(beta.clone(), Rat::one()))?;
                span.insert(paired_vec(&self.vgens[*a].mul_poly(&b)?), t);
            }
            let (residual, combo) = span.reduce(paired_vec(&x.homogeneous_part(m)));
            if !residual.is_empty() {
                return Err(Error::NoSolution { degree: m });
            }
            for (t, c) in combo {
                let (beta, a) = &unknowns[t];
                coeffs[*a].add_scaled(&MultiPoly::from_monomial(beta.clone(), c), &Rat::one());
            }
        }
        Ok(coeffs)
    }

    /// `Σ_a F_a(p)·V_a`.
    pub fn combine(&self, coeffs: &[MultiPoly]) -> Result<PolyVectorField> {
        if coeffs.len() != self.vgens.len() {
            return Err(Error::DimensionMismatch {
                expected: self.vgens.len(),
                found: coeffs.len(),
            });
        }
        let n = self.group().dim();
        let mut out = PolyVectorField::zero(n);
        for (f, v) in coeffs.iter().zip(&self.vgens) {
            let b = self.invariant_gens.substitute(f)?;
            out.add_scaled(&v.mul_poly(&b)?, &Rat::one());
        }
        Ok(out)
    }
}
