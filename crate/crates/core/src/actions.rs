//! The linear actions induced by `G ⊂ GL(n)` on polynomials, polynomial vector
//! fields and polynomials in `(x, ξ) ∈ ℝⁿ ⊕ (ℝⁿ)*`, together with their
//! averaging (Reynolds) projectors.
//!
//! * functions: `(g·p)(x) = p(g⁻¹x)`
//! * vector fields: `(g·V)(x) = g·V(g⁻¹x)`, the pushforward by `g`
//! * phase polynomials: `(g·q)(x, ξ) = q(g⁻¹x, gᵀξ)`
//!
//! [`pairing`] sends `V` to `Σ Vᵢ(x) ξᵢ` and intertwines the last two
//! actions, so equivariant fields of degree `m` are exactly the invariant
//! phase polynomials that are linear in `ξ` and of total degree `m + 1`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::One;

use crate::error::{Error, Result};
use crate::group::MatGroup;
use crate::poly::{Monomial, MultiPoly};
use crate::rat::Rat;

/// A polynomial map `ℝⁿ → ℝⁿ`, one polynomial in `n` variables per component.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyVectorField {
    comps: Vec<MultiPoly>,
}

impl PolyVectorField {
    pub fn new(comps: Vec<MultiPoly>) -> Result<Self> {
        let n = comps.len();
        if let Some(c) = comps.iter().find(|c| c.nvars() != n) {
            return Err(Error::VariableCountMismatch {
                expected: n,
                found: c.nvars(),
            });
        }
        Ok(PolyVectorField { comps })
    }

    pub fn zero(n: usize) -> Self {
        PolyVectorField {
            comps: vec![MultiPoly::zero(n); n],
        }
    }

    /// `e_i` scaled by the polynomial `p`.
    pub fn basis(p: MultiPoly, i: usize) -> Self {
        let n = p.nvars();
        let mut comps = vec![MultiPoly::zero(n); n];
        comps[i] = p;
        PolyVectorField { comps }
    }

    pub fn dim(&self) -> usize {
        self.comps.len()
    }

    pub fn comps(&self) -> &[MultiPoly] {
        &self.comps
    }

    pub fn into_comps(self) -> Vec<MultiPoly> {
        self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(MultiPoly::is_zero)
    }

    /// Largest component degree; `None` for the zero field.
    pub fn degree(&self) -> Option<u32> {
        self.comps.iter().filter_map(MultiPoly::degree).max()
    }

    pub fn homogeneous_part(&self, d: u32) -> PolyVectorField {
        PolyVectorField {
            comps: self.comps.iter().map(|c| c.homogeneous_part(d)).collect(),
        }
    }

    pub fn add_scaled(&mut self, other: &PolyVectorField, c: &Rat) {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        for (a, b) in self.comps.iter_mut().zip(&other.comps) {
            a.add_scaled(b, c);
        }
    }

    pub fn sub(&self, other: &PolyVectorField) -> Result<PolyVectorField> {
        check_dim(self.dim(), other.dim())?;
        let mut out = self.clone();
        out.add_scaled(other, &-Rat::one());
        Ok(out)
    }

    /// `p · V` for a scalar polynomial `p`.
    pub fn mul_poly(&self, p: &MultiPoly) -> Result<PolyVectorField> {
        let comps = self
            .comps
            .iter()
            .map(|c| c.try_mul(p))
            .collect::<Result<Vec<_>>>()?;
        Ok(PolyVectorField { comps })
    }

    pub fn eval(&self, x: &[Rat]) -> Result<Vec<Rat>> {
        self.comps.iter().map(|c| c.eval(x)).collect()
    }
}

/// A polynomial in `2n` variables: `x₁..xₙ` (indices `0..n`) followed by
/// `ξ₁..ξₙ` (indices `n..2n`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PhasePoly {
    n: usize,
    poly: MultiPoly,
}

impl PhasePoly {
    pub fn new(n: usize, poly: MultiPoly) -> Result<Self> {
        if poly.nvars() != 2 * n {
            return Err(Error::VariableCountMismatch {
                expected: 2 * n,
                found: poly.nvars(),
            });
        }
        Ok(PhasePoly { n, poly })
    }

    pub fn zero(n: usize) -> Self {
        PhasePoly {
            n,
            poly: MultiPoly::zero(2 * n),
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn poly(&self) -> &MultiPoly {
        &self.poly
    }

    pub fn into_poly(self) -> MultiPoly {
        self.poly
    }

    /// `(x-degree, ξ-degree)` of a monomial in the `2n` variables.
    pub fn bidegree(&self, m: &Monomial) -> (u32, u32) {
        (
            m.partial_degree(0..self.n),
            m.partial_degree(self.n..2 * self.n),
        )
    }

    /// Bidegrees of all terms, sorted and deduplicated.
    pub fn bidegrees(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<_> = self.poly.terms().map(|(m, _)| self.bidegree(m)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn is_xi_linear(&self) -> bool {
        self.poly.terms().all(|(m, _)| self.bidegree(m).1 == 1)
    }
}

/// `Σ Vᵢ(x) ξᵢ`.
pub fn pairing(v: &PolyVectorField) -> PhasePoly {
    let n = v.dim();
    let mut q = MultiPoly::zero(2 * n);
    for (i, c) in v.comps.iter().enumerate() {
        for (m, coeff) in c.terms() {
            let mut exps = m.exps().to_vec();
            exps.resize(2 * n, 0);
            exps[n + i] += 1;
            q.add_scaled(
                &MultiPoly::from_monomial(Monomial::new(exps), coeff.clone()),
                &Rat::one(),
            );
        }
    }
    PhasePoly { n, poly: q }
}

/// Inverse of [`pairing`]; every term must have `ξ`-degree exactly 1.
pub fn unpairing(q: &PhasePoly) -> Result<PolyVectorField> {
    let n = q.n;
    let mut comps: Vec<BTreeMap<Monomial, Rat>> = vec![BTreeMap::new(); n];
    for (m, c) in q.poly.terms() {
        let xi = &m.exps()[n..];
        let Some(i) = xi
            .iter()
            .position(|&e| e == 1)
            .filter(|_| q.bidegree(m).1 == 1)
        else {
            return Err(Error::NotXiLinear);
        };
        comps[i].insert(Monomial::new(m.exps()[..n].to_vec()), c.clone());
    }
    Ok(PolyVectorField {
        comps: comps
            .into_iter()
            .map(|t| MultiPoly::from_map(n, t))
            .collect(),
    })
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

/// `(g·p)(x) = p(g⁻¹x)`.
pub fn act_phi_dagger(group: &MatGroup, g: usize, p: &MultiPoly) -> Result<MultiPoly> {
    check_dim(group.dim(), p.nvars())?;
    let inv = group.element(group.inverse_of(g)?)?;
    p.compose_linear(inv)
}

/// `(g·V)(x) = g·V(g⁻¹x)`.
pub fn act_theta(group: &MatGroup, g: usize, v: &PolyVectorField) -> Result<PolyVectorField> {
    let n = group.dim();
    check_dim(n, v.dim())?;
    let gm = group.element(g)?;
    let inv = group.element(group.inverse_of(g)?)?;
    let pulled = v
        .comps
        .iter()
        .map(|c| c.compose_linear(inv))
        .collect::<Result<Vec<_>>>()?;
    let mut comps = vec![MultiPoly::zero(n); n];
    for (i, out) in comps.iter_mut().enumerate() {
        for (j, p) in pulled.iter().enumerate() {
            out.add_scaled(p, gm.get(i, j));
        }
    }
    Ok(PolyVectorField { comps })
}

/// `(g·q)(x, ξ) = q(g⁻¹x, gᵀξ)`.
pub fn act_psi(group: &MatGroup, g: usize, q: &PhasePoly) -> Result<PhasePoly> {
    check_dim(group.dim(), q.n)?;
    let inv = group.element(group.inverse_of(g)?)?;
    let block = inv.block_diag(&group.transpose_of(g)?);
    Ok(PhasePoly {
        n: q.n,
        poly: q.poly.compose_linear(&block)?,
    })
}

/// A linear action of a matrix group on a space of polynomial objects.
pub trait LinearAction {
    type Object: Clone + PartialEq;

    fn act(group: &MatGroup, g: usize, obj: &Self::Object) -> Result<Self::Object>;

    fn zero_like(obj: &Self::Object) -> Self::Object;

    /// `acc += c · obj`.
    fn add_scaled(acc: &mut Self::Object, obj: &Self::Object, c: &Rat);

    /// Polynomial components, used to report invariance witnesses.
    fn components(obj: &Self::Object) -> Vec<MultiPoly>;
}

/// Functions on `ℝⁿ`.
pub struct PolyAction;

/// Polynomial vector fields on `ℝⁿ`.
pub struct VectorFieldAction;

/// Polynomials on `ℝⁿ ⊕ (ℝⁿ)*`.
pub struct PhaseAction;

impl LinearAction for PolyAction {
    type Object = MultiPoly;

    fn act(group: &MatGroup, g: usize, obj: &MultiPoly) -> Result<MultiPoly> {
        act_phi_dagger(group, g, obj)
    }

    fn zero_like(obj: &MultiPoly) -> MultiPoly {
        MultiPoly::zero(obj.nvars())
    }

    fn add_scaled(acc: &mut MultiPoly, obj: &MultiPoly, c: &Rat) {
        acc.add_scaled(obj, c);
    }

    fn components(obj: &MultiPoly) -> Vec<MultiPoly> {
        vec![obj.clone()]
    }
}

impl LinearAction for VectorFieldAction {
    type Object = PolyVectorField;

    fn act(group: &MatGroup, g: usize, obj: &PolyVectorField) -> Result<PolyVectorField> {
        act_theta(group, g, obj)
    }

    fn zero_like(obj: &PolyVectorField) -> PolyVectorField {
        PolyVectorField::zero(obj.dim())
    }

    fn add_scaled(acc: &mut PolyVectorField, obj: &PolyVectorField, c: &Rat) {
        acc.add_scaled(obj, c);
    }

    fn components(obj: &PolyVectorField) -> Vec<MultiPoly> {
        obj.comps.clone()
    }
}

impl LinearAction for PhaseAction {
    type Object = PhasePoly;

    fn act(group: &MatGroup, g: usize, obj: &PhasePoly) -> Result<PhasePoly> {
        act_psi(group, g, obj)
    }

    fn zero_like(obj: &PhasePoly) -> PhasePoly {
        PhasePoly::zero(obj.n)
    }

    fn add_scaled(acc: &mut PhasePoly, obj: &PhasePoly, c: &Rat) {
        acc.poly.add_scaled(&obj.poly, c);
    }

    fn components(obj: &PhasePoly) -> Vec<MultiPoly> {
        vec![obj.poly.clone()]
    }
}

/// Average of `g·obj` over the whole group, summed in element order.
pub fn reynolds<A: LinearAction>(group: &MatGroup, obj: &A::Object) -> Result<A::Object> {
    let mut acc = A::zero_like(obj);
    let one = Rat::one();
    for g in 0..group.order() {
        let moved = A::act(group, g, obj)?;
        A::add_scaled(&mut acc, &moved, &one);
    }
    let mut out = A::zero_like(obj);
    A::add_scaled(
        &mut out,
        &acc,
        &Rat::new(1.into(), (group.order() as i64).into()),
    );
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub enum Invariance<O> {
    Invariant,
    /// `difference = obj - act(element, obj)`.
    Violated {
        element: usize,
        difference: O,
    },
}

impl<O> Invariance<O> {
    pub fn holds(&self) -> bool {
        matches!(self, Invariance::Invariant)
    }
}

/// Checks `g·obj = obj` for each generator of the group; by the action law
/// this is equivalent to invariance under every element.
pub fn is_invariant<A: LinearAction>(
    group: &MatGroup,
    obj: &A::Object,
) -> Result<Invariance<A::Object>> {
    for &g in group.gen_indices() {
        let moved = A::act(group, g, obj)?;
        if moved != *obj {
            let mut difference = obj.clone();
            A::add_scaled(&mut difference, &moved, &-Rat::one());
            return Ok(Invariance::Violated {
                element: g,
                difference,
            });
        }
    }
    Ok(Invariance::Invariant)
}

/// Like [`is_invariant`], but turns a violation into [`Error::NotInvariant`].
pub(crate) fn require_invariant<A: LinearAction>(group: &MatGroup, obj: &A::Object) -> Result<()> {
    match is_invariant::<A>(group, obj)? {
        Invariance::Invariant => Ok(()),
        Invariance::Violated {
            element,
            difference,
        } => Err(Error::NotInvariant {
            element,
            difference: A::components(&difference),
        }),
    }
}
